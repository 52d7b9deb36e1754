use std::path::Path;
use std::process::{Command, Output};

const TRIANGLE: &str = "MULTICUT 3 3\n0 1 -2\n0 2 1\n1 2 1\n";
const K4: &str =
    "# wheel with center 0\nMULTICUT 4 6\n0 1 1\n0 2 1\n0 3 1\n1 2 -1\n1 3 -1\n2 3 -1\n";

fn mcmp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcmp"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn triangle_solves_to_optimality() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("tri.txt"), TRIANGLE).unwrap();
    let out = mcmp(
        &[
            "solve",
            "-i",
            "tri.txt",
            "--tighten",
            "cycles",
            "--log",
            "tri.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "LB=-1 UB=-1 status=optimal");
    let csv = std::fs::read_to_string(dir.path().join("tri.csv")).unwrap();
    let last = csv.lines().last().unwrap();
    let lb: f64 = last.split(',').nth(2).unwrap().parse().unwrap();
    assert!((lb + 1.0).abs() <= 1e-6);
}

#[test]
fn k4_writes_log_plot_and_solution() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k4.txt"), K4).unwrap();
    let out = mcmp(
        &[
            "solve",
            "-i",
            "k4.txt",
            "--tighten",
            "cycles+oddwheels",
            "--log",
            "out.csv",
            "--plot",
            "out.svg",
            "--solution",
            "out.sol",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("out.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "time,iter,lb,ub,n_triangles,n_lollipops"
    );
    assert!(csv.lines().last().unwrap().ends_with(",3,1"));
    let svg = std::fs::read_to_string(dir.path().join("out.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("polyline"));
    let sol = std::fs::read_to_string(dir.path().join("out.sol")).unwrap();
    assert_eq!(sol.lines().count(), 6 + 4);
    let costs = [1.0, 1.0, 1.0, -1.0, -1.0, -1.0];
    let cost: f64 = sol
        .lines()
        .take(6)
        .zip(costs)
        .filter(|(l, _)| l.ends_with(" 1"))
        .map(|(_, c)| c)
        .sum();
    assert_eq!(cost, -1.0);
}

#[test]
fn cycles_mode_leaves_the_k4_gap() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k4.txt"), K4).unwrap();
    let out = mcmp(
        &[
            "solve",
            "-i",
            "k4.txt",
            "--tighten",
            "cycles",
            "--max-iter",
            "200",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "LB=-1.5 UB=-1 status=iteration_limit");
}

#[test]
fn oracle_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k4.txt"), K4).unwrap();
    let out = mcmp(&["oracle", "-i", "k4.txt"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next().unwrap(), "OPT=-1");
}

#[test]
fn errors_exit_nonzero_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let missing = mcmp(&["solve", "-i", "missing.txt"], dir.path());
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("missing.txt"));

    std::fs::write(dir.path().join("bad.txt"), "MULTICUT 2 1\n0 0 1\n").unwrap();
    let bad = mcmp(&["solve", "-i", "bad.txt"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("self-loop"));

    std::fs::write(dir.path().join("tri.txt"), TRIANGLE).unwrap();
    let mode = mcmp(
        &["solve", "-i", "tri.txt", "--tighten", "wheels"],
        dir.path(),
    );
    assert_eq!(mode.status.code(), Some(1));
    let interval = mcmp(
        &["solve", "-i", "tri.txt", "--sep-interval", "0"],
        dir.path(),
    );
    assert_eq!(interval.status.code(), Some(1));

    assert_eq!(mcmp(&["--help"], dir.path()).status.code(), Some(0));
    assert_eq!(mcmp(&[], dir.path()).status.code(), Some(1));
}
