use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pvc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvc"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const P4: &str = "p pvc 4 3\nv 1 1\nv 2 1\nv 3 1\nv 4 1\ne 1 2\ne 2 3\ne 3 4\n";

#[test]
fn solve_writes_a_verifiable_solution() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p4.graph", P4);
    let out = pvc(&["solve", "-k", "3", "--alg", "exact", &g]);
    assert_eq!(code(&out), 0);
    let sol = write(
        dir.path(),
        "p4.sol",
        std::str::from_utf8(&out.stdout).unwrap(),
    );
    let v = pvc(&["verify", "-k", "3", "--optimal", &g, &sol]);
    assert_eq!(code(&v), 0);
    let report = String::from_utf8(v.stdout).unwrap();
    assert!(report.contains("status=feasible"), "{report}");
    assert!(report.contains("ratio=1"), "{report}");
}

#[test]
fn empty_solution_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p4.graph", P4);
    let sol = write(dir.path(), "empty.sol", "s pvc 3 0 0\n");
    let out = pvc(&["verify", "-k", "3", &g, &sol]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("status=infeasible"));
}

#[test]
fn parse_and_argument_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.graph", "p pvc 2 1\ne 1 3\n");
    let out = pvc(&["solve", "-k", "3", "--alg", "greedy", &bad]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
    let missing = dir.path().join("missing.graph");
    assert_eq!(
        code(&pvc(&[
            "solve",
            "-k",
            "3",
            "--alg",
            "greedy",
            missing.to_str().unwrap()
        ])),
        2
    );
    assert_eq!(code(&pvc(&["solve", "-k", "3", "--alg", "nope", &bad])), 2);
}

#[test]
fn oversized_exact_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = pvc(&["gen", "-n", "40", "-m", "60", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    let g = write(
        dir.path(),
        "big.graph",
        std::str::from_utf8(&out.stdout).unwrap(),
    );
    assert_eq!(code(&pvc(&["solve", "-k", "3", "--alg", "exact", &g])), 3);
    assert_eq!(
        code(&pvc(&["incremental", "-k", "3", "--reopt", "exact", &g])),
        3
    );
}

#[test]
fn generators_are_deterministic() {
    let a = pvc(&["gen", "-n", "15", "--density", "0.3", "--seed", "9"]);
    let b = pvc(&["gen", "-n", "15", "--density", "0.3", "--seed", "9"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = pvc(&["gen", "-n", "15", "--density", "0.3", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn bench_over_a_suite() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().to_str().unwrap();
    let gen = pvc(&[
        "gen-suite",
        "-k",
        "3",
        "--count",
        "3",
        "--dir",
        suite,
        "-n",
        "8",
        "-m",
        "9",
        "-c",
        "2",
    ]);
    assert_eq!(code(&gen), 0, "{}", String::from_utf8_lossy(&gen.stderr));
    let out = pvc(&[
        "bench", "-k", "3", "--suite", suite, "--alg", "exact", "--alg", "w3:exact",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6, "{text}");
    assert!(
        lines
            .iter()
            .all(|l| l.contains("status=feasible") && l.contains("ratio=1")),
        "{text}"
    );
    assert!(!text.contains("elapsed_ms"));

    let timed_out = pvc(&["bench", "-k", "3", "--suite", suite, "--timeout-sec", "0"]);
    assert_eq!(code(&timed_out), 0);
    assert!(String::from_utf8(timed_out.stdout)
        .unwrap()
        .lines()
        .all(|l| l.contains("status=timeout")));

    write(dir.path(), "zz.graph", "garbage\n");
    assert_eq!(
        code(&pvc(&[
            "bench", "-k", "3", "--suite", suite, "--alg", "exact"
        ])),
        2
    );
}

#[test]
fn empty_suite_is_fine() {
    let dir = tempfile::tempdir().unwrap();
    let out = pvc(&["bench", "-k", "3", "--suite", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
}
