mod common;

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    common::check_examples_repeat(dir.path());
}
