use std::path::Path;
use std::process::Command;

/// Every documented example command, without output flags. Paths are
/// relative to the crate's `data` directory.
pub const EXAMPLES: &[&[&str]] = &[
    &["section", "--body", "cube.off", "--flat", "n=1,1,1;c=0"],
    &["section", "--body", "ball.json", "--flat", "n=0,0,1;c=1/2"],
    &["project", "--body", "octahedron.off", "--subspace", "d=1,0,0;d=0,1,1"],
    &["project", "--body", "ellipsoid.json", "--subspace", "d=1,0,0;d=0,1,0"],
    &["cone", "--body", "cube.off", "--apex", "0,0,3"],
    &["klee-k1", "--body", "ball.json", "--flats", "5", "--seed", "7"],
    &["klee-k1", "--body", "cube.off", "--flats", "20", "--seed", "7"],
    &["klee-k2", "--body", "ellipsoid.json", "--subspaces", "5", "--seed", "3"],
    &["t11", "--body", "cap_cube.json", "--flats", "10", "--bias", "1,0,0", "--seed", "1"],
    &["t11", "--body", "ball.json", "--delta", "quad:0.3:0,0,1", "--flats", "5"],
    &["t12", "--body", "cube.off", "--apexes", "5", "--radius", "3", "--seed", "2"],
    &["t12", "--body", "ball.json", "--apexes", "3", "--seed", "2"],
    &["epsilon", "--body", "cube.off", "--p", "1,1,1", "--q", "-1,-1,-1"],
    &["walk", "--body", "cube.off", "--xi", "0,0,1"],
    &["walk", "--body", "cube.off", "--xi", "1,1,1"],
    &["mirkil", "--body", "ellipsoid.json", "--apex", "0,0,4", "--scans", "6", "--seed", "9"],
];

/// Report bytes, SVG bytes (if one was written) and exit code.
pub type RunOutput = (Vec<u8>, Option<Vec<u8>>, Option<i32>);

pub fn run_example(args: &[&str], dir: &Path, tag: &str) -> RunOutput {
    let report = dir.join(format!("{tag}.json"));
    let svg = dir.join(format!("{tag}.svg"));
    let status = Command::new(env!("CARGO_BIN_EXE_polysect"))
        .args(args)
        .args(["--report", report.to_str().unwrap(), "--svg", svg.to_str().unwrap()])
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("data"))
        .env_remove("POLYSECT_SEED")
        .status()
        .unwrap();
    (std::fs::read(&report).unwrap(), std::fs::read(&svg).ok(), status.code())
}

/// Runs every example twice; panics on any difference or error exit.
pub fn check_examples_repeat(dir: &Path) {
    for (i, args) in EXAMPLES.iter().enumerate() {
        let a = run_example(args, dir, &format!("a{i}"));
        let b = run_example(args, dir, &format!("b{i}"));
        assert!(matches!(a.2, Some(0) | Some(2)), "{args:?} exited {:?}", a.2);
        assert_eq!(a, b, "{args:?}");
    }
}
