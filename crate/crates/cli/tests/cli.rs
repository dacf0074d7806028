//! Runs the built binary end to end.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_l1caputo")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_csv_matches_tabulated_orders() {
    let o = run(&["table", "--id", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let golden =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/golden/table1.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "alpha,p,mu,kappa,estimated,theoretical,base_n");
    for (got, want) in lines.zip(golden.lines().skip(1)) {
        let g: Vec<&str> = got.split(',').collect();
        let w: Vec<&str> = want.split(',').collect();
        assert_eq!(g[..4], w[..4]);
        let (ge, we): (f64, f64) = (g[4].parse().unwrap(), w[4].parse().unwrap());
        assert!((ge - we).abs() <= 0.01, "{got} vs {want}");
        assert_eq!(g[5], w[5]);
        assert_eq!(g[6], "1024");
    }
}

#[test]
fn table_output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t3.csv");
    let a = run(&["table", "--id", "3", "--base-n", "64", "--out", path.to_str().unwrap()]);
    assert!(a.status.success());
    let b = run(&["table", "--id", "3", "--base-n", "64", "--threads", "1"]);
    assert_eq!(std::fs::read(&path).unwrap(), b.stdout);
}

#[test]
fn inadmissible_weight_is_a_parameter_error() {
    let o = run(&["order", "--alpha", "0.5", "--profile", "power", "--p", "1.5", "--mu", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mu must satisfy mu < p-1"));
}

#[test]
fn out_of_range_alpha_is_a_parameter_error() {
    let o = run(&["solve-fode", "--alpha", "1.2", "--manufactured", "quadratic", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha must satisfy 0 < alpha < 1"));
}

#[test]
fn unresolvable_singularity_is_a_quadrature_error() {
    // admissible, but the dual weight behaves like (T - t)^{-0.9998}, which
    // double precision cannot integrate
    let o = run(&[
        "truncation",
        "--alpha",
        "0.5",
        "--profile",
        "power",
        "--weight",
        "jacobi",
        "--p",
        "1.5",
        "--mu",
        "0",
        "--gamma",
        "0.4999",
        "--grids",
        "8,16",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn order_reports_theoretical_order() {
    let o = run(&["order", "--alpha", "0.3", "--profile", "jacobi", "--p", "1.5", "--mu", "0.25", "--gamma", "0.25"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("theoretical  0.8667"), "{text}");
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fode.conf");
    std::fs::write(&path, "# manufactured run\nalpha = 0.5\nlambda = 1\nmanufactured = quadratic\nn = 16\n").unwrap();
    let from_file = run(&["solve-fode", "--config", path.to_str().unwrap()]);
    assert!(from_file.status.success(), "{}", String::from_utf8_lossy(&from_file.stderr));
    assert!(stdout(&from_file).contains("N                16"));
    let overridden = run(&["solve-fode", "--config", path.to_str().unwrap(), "--n", "32"]);
    assert!(stdout(&overridden).contains("N                32"));

    std::fs::write(&path, "bogus = 1\n").unwrap();
    let bad = run(&["solve-fode", "--config", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn fode_bound_holds() {
    let o = run(&[
        "solve-fode",
        "--alpha",
        "0.7",
        "--lambda",
        "0",
        "--y0",
        "2",
        "--manufactured",
        "power:1.5",
        "--n",
        "128",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("bound holds      true"), "{}", stdout(&o));
}

#[test]
fn ap_char_verdicts() {
    let one = run(&["ap-char", "--weight", "one", "--p", "2", "--depth", "3"]);
    assert!(stdout(&one).contains("A_p lower bound  1.000000"));
    let bad = run(&["ap-char", "--weight", "power", "--mu", "1.5", "--p", "2", "--depth", "3"]);
    assert!(bad.status.success());
    assert!(stdout(&bad).contains("not in A_p"));
}
