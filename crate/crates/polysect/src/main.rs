fn main() -> std::process::ExitCode {
    polysect::cli::main()
}
