use std::io::Write;
use std::process::{Command, Output};

use unisets_cli::RunReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unisets"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (RunReport, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: RunReport = serde_json::from_str(&text)
        .unwrap_or_else(|e| panic!("{e}: {text} {}", String::from_utf8_lossy(&out.stderr)));
    (report, out.status.code().unwrap())
}

#[test]
fn singer_on_cyclic_100() {
    let (r, code) = json(&["universal", "--group", "cyclic:100", "--k", "2", "--method", "singer"]);
    assert_eq!(code, 0);
    assert_eq!(r.exit_code, 0);
    assert!(r.verdicts["universal"].pass);
    assert!(r.sizes["set"] <= 24);
    assert_eq!(r.result["method"], "cyclic");
}

#[test]
fn symmetric_route() {
    let (r, code) = json(&["universal", "--group", "sym:4", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r.parameters["resolved_method"], "symmetric");
    assert_eq!(r.result["method"], "symmetric");
}

#[test]
fn tuple_and_random_methods() {
    let (r, code) = json(&["universal", "--group", "cyclic:30", "--k", "3", "--method", "tuple"]);
    assert_eq!(code, 0);
    assert!(r.checks["tuple_product_bound"] && r.checks["tuple_cost_at_least_k"]);
    let (_, code) = json(&["universal", "--group", "product:4,4", "--k", "2", "--method", "tuple"]);
    assert_eq!(code, 0);
    let (r, code) = json(&["universal", "--group", "cyclic:101", "--k", "2", "--method", "random", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r.seed, Some(4));
}

#[test]
fn sampled_only_exits_one() {
    let (r, code) = json(&["universal", "--group", "cyclic:50", "--k", "2", "--verify", "sampled", "--trials", "2000"]);
    assert_eq!(code, 1);
    assert_eq!(r.verdicts["universal"].trials, Some(2000));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["universal", "--group", "cyclic:10"]).status.code(), Some(2));
    assert_eq!(run(&["powers", "--d", "1", "--n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["universal", "--group", "bogus:3", "--k", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["universal", "--group", "sym:4", "--k", "2", "--method", "singer"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["basis", "--group", "cyclic:10", "--a", "3,x"]).status.code(), Some(2));
    assert_eq!(run(&["basis", "--group", "cyclic:10", "--a", "30"]).status.code(), Some(2));
}

#[test]
fn basis_inline_and_file() {
    let (r, code) = json(&["basis", "--group", "cyclic:100", "--a", "3,14,15"]);
    assert_eq!(code, 0);
    assert!(r.verdicts["basis"].pass);
    assert_eq!(r.parameters["en_bound_applicable"], false);

    let (r, code) = json(&["basis", "--group", "cyclic:100"]);
    assert_eq!(code, 0);
    assert_eq!(r.sizes["a"], 0);
    assert_eq!(r.sizes["basis"], r.sizes["universal"]);

    let mut f = tempfile::NamedTempFile::new().unwrap();
    for v in (0..100).map(|i| (i * 97 + 13) % 10_000) {
        writeln!(f, "{v}").unwrap();
    }
    let path = f.path().to_str().unwrap();
    let (r, code) = json(&["basis", "--group", "cyclic:10000", "--a-file", path, "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(r.sizes["a"], 100);
    assert!(r.verdicts["basis"].pass);
}

#[test]
fn powers_trivial_and_file() {
    let (r, code) = json(&["powers", "--d", "2", "--n", "50", "--basis", "trivial"]);
    assert_eq!(code, 0);
    assert_eq!(r.sizes["edges"], 50);
    assert!(r.checks["core_order_independent"]);
    let exp = r.parameters["exponent"].as_f64().unwrap();
    assert!((exp - (0.75 - 0.5 / 2f64.sqrt() - 0.5)).abs() < 1e-12);

    let mut f = tempfile::NamedTempFile::new().unwrap();
    let mut basis: Vec<u64> = vec![0];
    basis.extend((1..=20).map(|t| t * t));
    basis.extend([2, 3, 5, 7]);
    for v in basis {
        writeln!(f, "{v}").unwrap();
    }
    let path = f.path().to_str().unwrap();
    let (r, code) = json(&["powers", "--d", "2", "--n", "20", "--basis-file", path, "--k", "3"]);
    assert_eq!(code, 0);
    assert!(r.checks["alternating_identity"]);
}

#[test]
fn reports_round_trip_and_replay() {
    let args = ["universal", "--group", "cyclic:101", "--k", "2", "--method", "random", "--seed", "11"];
    let (a, _) = json(&args);
    let (b, _) = json(&args);
    assert_eq!(a.without_timing(), b.without_timing());
    let text = serde_json::to_string(&a).unwrap();
    let back: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, a);

    let args = ["basis", "--group", "cyclic:400", "--a", "1,50,399", "--seed", "2"];
    assert_eq!(json(&args).0.without_timing(), json(&args).0.without_timing());
}

#[test]
fn schedules_agree() {
    let base = ["universal", "--group", "cyclic:60", "--k", "3", "--method", "random", "--seed", "3"];
    let mut seq = vec!["--exec", "sequential"];
    seq.extend_from_slice(&base);
    let mut par = vec!["--exec", "parallel"];
    par.extend_from_slice(&base);
    assert_eq!(json(&seq).0.without_timing(), json(&par).0.without_timing());
}

#[test]
fn text_output() {
    let out = run(&["universal", "--group", "cyclic:7", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verify universal: pass (exact)"));
}
