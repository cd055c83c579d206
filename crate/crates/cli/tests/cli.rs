#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::Path;
use std::process::{Command, Output};

use flagcert::certificate::{emit_certificate, Problem};
use flagcert::field::QSqrt2;

fn run_env(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_flagcert"));
    cmd.args(args).env_remove("FLAGCERT_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("FLAGCERT_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn counts_level_six() {
    let o = run(&["enumerate", "-n", "6", "--family", "FC5", "--count-only"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "756\n");
    let o = run(&["enumerate", "-n", "6", "--family", "FC7", "--count-only"]);
    assert_eq!(stdout(&o), "741\n");
}

#[test]
fn flag_basis_sizes() {
    for (ty, want) in [("lambda", "76\n"), ("beta", "33\n"), ("rho", "43\n")] {
        let o = run(&["flags", "--type", ty, "--count-only"]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), want);
    }
}

#[test]
fn formulas_table() {
    let o = run(&["formulas", "--n-max", "100"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 100);
    assert_eq!(lines[5], "6 9");
    assert_eq!(lines[11], "12 33");
    for (i, l) in lines.iter().enumerate() {
        let (n, f) = l.split_once(' ').unwrap();
        assert_eq!(n.parse::<u64>().unwrap(), i as u64 + 1);
        f.parse::<u64>().unwrap();
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["enumerate", "-n", "4", "--bogus"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["enumerate", "-n", "9"])), 2);
    assert_eq!(code(&run(&["oracle", "-n", "12", "-L", "5"])), 2);
    assert_eq!(code(&run(&["oracle", "-n", "6", "-L", "4"])), 2);
    assert_eq!(code(&run(&["verify", "/nonexistent/cert.txt"])), 2);
    assert_eq!(code(&run(&["--threads", "0", "qp", "-n", "10"])), 2);
    let help = run(&["--help"]);
    assert_eq!(code(&help), 0);
    assert!(stdout(&help).contains("export-sdpa"));
}

#[test]
fn verify_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let cert = common::synthetic_certificate(Problem::C5, 11);
    let good = dir.path().join("good.cert");
    std::fs::write(&good, emit_certificate(&cert)).unwrap();
    let o = run(&["verify", good.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("valid\n"));

    let mut bad = cert.clone();
    let (key, _) = bad.target.terms().iter().next().map(|(k, v)| (k.clone(), v.clone())).unwrap();
    bad.target.add_term(key.clone(), QSqrt2::ratio(1, 1000));
    let path = dir.path().join("bad.cert");
    std::fs::write(&path, emit_certificate(&bad)).unwrap();
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("residual\t") && l.contains(&key.to_string())), "{out}");
    assert!(out.ends_with("invalid\n"));

    let o = run(&["--json", "verify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["residual"].as_array().unwrap().len(), 1);

    std::fs::write(&path, "problem C5\nblock nonsense\n").unwrap();
    assert_eq!(code(&run(&["verify", path.to_str().unwrap()])), 1);
}

#[test]
fn rounding_zero_solution_fails() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("problem C7\n");
    for (ty, d) in [("lambda", 76), ("beta", 33), ("rho", 43)] {
        text += &format!("block {ty} {d}\n{}\n", "0 ".repeat(d * (d + 1) / 2));
    }
    let raw = dir.path().join("raw.txt");
    std::fs::write(&raw, text).unwrap();
    let out = dir.path().join("rounded.cert");
    // With nothing on the left, the diagonal part must absorb a negative target.
    let o = run(&["round", raw.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("rounding failure"));
    assert!(!out.exists());
    assert_eq!(code(&run(&["round", "--sdpa-solution", raw.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["round", raw.to_str().unwrap(), "--bound", "abc"])), 2);
}

#[test]
fn export_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c7.sdpa");
    let o = run(&["export-sdpa", "--problem", "C7", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l == "741 = mDIM"));
    let o = run(&["export-sdpa", "--problem", "C7"]);
    assert_eq!(stdout(&o), text);
}

#[test]
fn oracle_and_constructions() {
    let o = run(&["oracle", "-n", "7", "-L", "3", "--duality"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("7\t3\t13\t7\t"), "{out}");
    assert!(out.ends_with("duality\ttrue\n"));

    let o = run(&["construct", "--kind", "g1", "-n", "10", "-L", "5"]);
    assert!(stdout(&o).contains("cycle-edges\t5\t28\n"));
    let o = run(&["construct", "--kind", "g2", "-n", "24", "--quadruple", "4,4,3,13", "-L", "5"]);
    let out = stdout(&o);
    assert!(out.contains("c5-edges-closed-form\t129\n") && out.contains("cycle-edges\t5\t129\n"), "{out}");
    assert_eq!(code(&run(&["construct", "--kind", "g2", "-n", "24", "--quadruple", "4,4,3"])), 2);
    assert_eq!(code(&run(&["construct", "--kind", "g2", "-n", "24", "--quadruple", "4,4,3,12"])), 2);
    let o = run(&["qp", "-n", "20"]);
    assert!(stdout(&o).starts_with("optimum\t10\n"));
}

#[test]
fn every_subcommand_speaks_json() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.cert");
    std::fs::write(&cert, emit_certificate(&common::synthetic_certificate(Problem::C7, 5))).unwrap();
    let cert = cert.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["enumerate", "-n", "3"],
        vec!["flags", "--type", "beta"],
        vec!["target", "--problem", "C5", "--approx"],
        vec!["verify", cert],
        vec!["export-sdpa", "--problem", "C5"],
        vec!["oracle", "-n", "8", "-L", "5"],
        vec!["construct", "--kind", "four-part", "-n", "12"],
        vec!["qp", "-n", "30"],
        vec!["formulas", "--n-max", "10"],
        vec!["stability", "--steps", "20"],
    ];
    for args in cases {
        let mut full = vec!["--json"];
        full.extend(&args);
        let o = run(&full);
        assert_eq!(code(&o), 0, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(v.is_object() || v.is_array(), "{args:?}");
    }
}

#[test]
fn output_is_independent_of_threads() {
    for args in [["enumerate", "-n", "5", "--family", "FC7"], ["oracle", "-n", "8", "-L", "5"]] {
        let one = run(&[&["--threads", "1"][..], &args].concat());
        let four = run(&[&["--threads", "4"][..], &args].concat());
        let again = run(&[&["--threads", "4"][..], &args].concat());
        assert_eq!(code(&one), 0);
        assert_eq!(one.stdout, four.stdout);
        assert_eq!(four.stdout, again.stdout);
    }
}

#[test]
fn cache_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["enumerate", "-n", "5", "--family", "FC5"];
    let plain = run(&args);
    let first = run_env(&args, Some(dir.path()));
    let file = dir.path().join("graphs-FC5-5.v1");
    let written = std::fs::read_to_string(&file).unwrap();
    assert!(written.starts_with("flagcert-graphs v1 FC5 5\nsha256 "));
    let second = run_env(&args, Some(dir.path()));
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&file).unwrap(), written);

    // Drop one graph without fixing the digest: the file must be rebuilt.
    let mut lines: Vec<&str> = written.lines().collect();
    lines.pop();
    std::fs::write(&file, lines.join("\n") + "\n").unwrap();
    let third = run_env(&args, Some(dir.path()));
    assert_eq!(third.stdout, plain.stdout);
    assert_eq!(std::fs::read_to_string(&file).unwrap(), written);

    std::fs::write(&file, "garbage").unwrap();
    assert_eq!(run_env(&args, Some(dir.path())).stdout, plain.stdout);
    assert_eq!(std::fs::read_to_string(&file).unwrap(), written);
}
