use std::path::Path;
use std::process::{Command, Output};

use inducibility::envelope::{EnvelopeTable, Mode};
use rug::Rational;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inducibility"))
        .args(args)
        .env_remove("INDUCIBILITY_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn exact_maxima(mode: Mode, ns: impl Iterator<Item = usize>) -> Vec<(usize, Rational)> {
    let mut t = EnvelopeTable::new(mode);
    ns.map(|n| (n, t.max_density(n).unwrap())).collect()
}

#[test]
fn csv_round_trips_exact_fractions() {
    let out = run_ok(&["--format", "csv", "table", "--mode", "a5", "--n-list", "5..60,100,150"]);
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let (ni, di) = (
        header.iter().position(|&c| c == "n").unwrap(),
        header.iter().position(|&c| c == "density_exact").unwrap(),
    );
    let parsed: Vec<(usize, Rational)> = lines
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            (cells[ni].parse().unwrap(), cells[di].parse().unwrap())
        })
        .collect();
    assert_eq!(parsed, exact_maxima(Mode::A5Binary, (5..=60).chain([100, 150])));
    assert!(out.contains("100,3177631,3177631/12547920,0.253240") || out.contains("3177631/12547920"));
}

#[test]
fn json_round_trips_exact_fractions() {
    let out = run_ok(&["--format", "json", "table", "--mode", "q4", "--n-list", "4..45"]);
    let rows: Vec<Value> = serde_json::from_str(&out).unwrap();
    let parsed: Vec<(usize, Rational)> = rows
        .iter()
        .map(|r| {
            (
                r["n"].as_str().unwrap().parse().unwrap(),
                r["density_exact"].as_str().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(parsed, exact_maxima(Mode::Q4Ternary, 4..=45));
    assert_eq!(parsed.last().unwrap().1, "7948/49665".parse::<Rational>().unwrap());
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "--mode", "a5", "--max-n", "11"][..],
        &["verify", "--mode", "q4", "--max-n", "8"],
        &["verify", "--formula", "qk", "--d", "3", "--k", "4", "--h", "2"],
        &["verify", "--formula", "sk", "--d", "3", "--k", "3", "--h", "2"],
    ] {
        let out = run_ok(args);
        assert!(!out.contains("FAIL"), "{args:?}:\n{out}");
        assert!(out.contains("all checks passed"));
    }
    let out = run_ok(&["verify", "--formula", "qk", "--d", "3", "--k", "4", "--h", "2"]);
    assert!(out.contains("closed form 18 vs brute force 18"));
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(run(&["table", "--mode", "x9", "--n-list", "5"]).status.code(), Some(2));
    assert_eq!(
        run(&["table", "--mode", "a5", "--n-list", "9..5"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["--digits", "10", "bounds", "q4-lower"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--tree", "((**))"]).status.code(), Some(2));
}

#[test]
fn tables_past_the_cap_are_truncated() {
    let o = run(&["table", "--mode", "a5", "--n-list", "299..301"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("# truncated at n = 301"));
    assert!(out.contains("4878916723/19582837560"));
}

fn cached_files(dir: &Path) -> usize {
    std::fs::read_dir(dir.join("q4")).map_or(0, |d| d.count())
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "--cache",
        cache,
        "--format",
        "csv",
        "table",
        "--mode",
        "q4",
        "--n-list",
        "10..80:10",
    ];
    let cold = run_ok(&args);
    // L(1) is built in and never written.
    assert_eq!(cached_files(dir.path()), 79);
    let warm = run_ok(&args);
    assert_eq!(cold, warm);
    assert_eq!(cold, run_ok(&args[2..]));
}

#[test]
fn summary_reads_only_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    assert_eq!(run(&["bounds", "summary", "--mode", "a5"]).status.code(), Some(2));
    assert_eq!(
        run(&["--cache", cache, "bounds", "summary", "--mode", "a5"])
            .status
            .code(),
        Some(2)
    );
    run_ok(&["--cache", cache, "envelope", "--mode", "a5", "--n", "100"]);
    let out = run_ok(&["--cache", cache, "bounds", "summary", "--mode", "a5"]);
    assert!(out.contains("3177631/12547920"), "{out}");
    assert!(out.contains("largest cached n is 100"), "{out}");
    assert!(out.contains("0.247071501785"), "{out}");
}

#[test]
fn bounds_and_densities() {
    let out = run_ok(&["--format", "json", "bounds", "a5-lower", "--starts", "128"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value_decimal"], "0.247071501785");
    assert_eq!(v["hessian_negative_definite"], true);
    let out = run_ok(&["--format", "json", "bounds", "q4-lower"]);
    assert!(out.contains("59/416"), "{out}");
    let out = run_ok(&["bounds", "verify-minpoly", "--starts", "128"]);
    assert!(
        out.lines().any(|l| l.starts_with("passes") && l.ends_with("true")),
        "{out}"
    );
    let out = run_ok(&[
        "--format",
        "json",
        "density",
        "--construction",
        "CD:3,7",
        "--pattern",
        "Q4",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let d: Rational = v["value_exact"].as_str().unwrap().parse().unwrap();
    assert!((d.to_f64() - 1.0 / 13.0).abs() < 1e-3);
}

#[test]
fn envelope_witness_and_counting_agree() {
    let out = run_ok(&["--format", "json", "envelope", "--mode", "a5", "--n", "20", "--witness"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let tree = v["witness"].as_str().expect("witness field").to_string();
    let counted = run_ok(&[
        "--format",
        "json",
        "count",
        "--pattern",
        "a5",
        "--tree",
        &tree,
        "--brute",
    ]);
    let c: Value = serde_json::from_str(&counted).unwrap();
    assert_eq!(c["count"], c["brute_force_count"]);
    assert_eq!(c["density_exact"], "553/1938");
}

#[test]
fn enumeration_counts() {
    let out = run_ok(&[
        "--format",
        "json",
        "enumerate",
        "--n",
        "10",
        "--arity",
        "ternary",
        "--count-only",
    ]);
    assert!(out.contains("1194"), "{out}");
    let out = run_ok(&["enumerate", "--n", "4", "--arity", "binary"]);
    assert!(out.contains("(*(*(**)))") && out.contains("((**)(**))"), "{out}");
}
