//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;

use l1caputo::experiments::{reproduce_table, truncation_study, TableId, TableOptions};
use l1caputo::weights::{ap_characteristic, lambda_closed_form, lambda_numeric, ApCharacteristic};
use l1caputo::{
    caputo_power, global_error, l1_apply, solve_fode, FodeProblem, FractionalOrder, LebesgueExponent,
    QuadratureSettings, TestFunction, UniformGrid, WeightSpec,
};

type Check = Box<dyn Fn() -> Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn golden(id: u8) -> Vec<(Vec<String>, f64)> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/table{id}.csv"));
    let text = std::fs::read_to_string(&path).expect("golden table present");
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let est = header.iter().position(|h| *h == "estimated").unwrap();
    lines
        .map(|l| {
            let cells: Vec<String> = l.split(',').map(str::to_string).collect();
            let value = cells[est].parse().unwrap();
            (cells[..est].to_vec(), value)
        })
        .collect()
}

fn table_check(id: u8, base_n: usize, tol: f64) -> Outcome {
    let table = TableId::from_number(id).unwrap();
    let opts = TableOptions { base_n: Some(base_n), ..TableOptions::default() };
    let rows = match reproduce_table(table, &opts) {
        Ok(r) => r,
        Err(e) => return Outcome { pass: false, detail: format!("error: {e}") },
    };
    let printed = golden(id);
    if rows.len() != printed.len() {
        return Outcome { pass: false, detail: format!("{} rows vs {} tabulated", rows.len(), printed.len()) };
    }
    let mut worst = (0.0f64, String::new());
    let mut misses = 0;
    for (row, (params, value)) in rows.iter().zip(&printed) {
        if &row.params != params {
            return Outcome { pass: false, detail: format!("row order differs at {params:?}") };
        }
        let dev = (row.estimated - value).abs();
        if dev > tol {
            misses += 1;
        }
        if dev > worst.0 {
            worst = (dev, format!("({}) {:.4} vs {value}", params.join(", "), row.estimated));
        }
    }
    Outcome {
        pass: misses == 0,
        detail: format!(
            "{} rows, base N = {base_n}, {misses} beyond {tol}, worst deviation {:.4} at {}",
            rows.len(),
            worst.0,
            worst.1
        ),
    }
}

const T1_PAIRS: [(f64, f64); 4] = [(1.5, 0.0), (1.5, 0.4), (3.0, 0.0), (3.0, 1.6)];

fn truncation_slopes(kappa_of: impl Fn(f64, f64, f64) -> f64) -> (usize, usize, f64) {
    let settings = QuadratureSettings::default();
    let grids = [64, 128, 256, 512];
    let (mut ok, mut total, mut worst) = (0, 0, 0.0f64);
    for a in [0.3, 0.6] {
        for &(p, mu) in &T1_PAIRS {
            total += 1;
            let alpha = FractionalOrder::new(a).unwrap();
            let exp = LebesgueExponent::new(p).unwrap();
            let f = TestFunction::power(kappa_of(a, p, mu)).unwrap();
            let w = WeightSpec::power(mu).unwrap();
            match truncation_study(alpha, &f, &w, exp, 1.0, &grids, &settings) {
                Ok(st) => {
                    let dev = (st.slope - st.theoretical_order).abs();
                    worst = worst.max(dev);
                    if dev <= 0.05 {
                        ok += 1;
                    }
                }
                Err(_) => worst = f64::INFINITY,
            }
        }
    }
    (ok, total, worst)
}

fn criterion_5() -> Outcome {
    let (ok, total, worst) = truncation_slopes(|_, p, mu| 2.0 - (1.0 + mu) / p + 0.001);
    Outcome {
        pass: ok == total,
        detail: format!("{ok}/{total} slopes within 0.05 of the predicted order, worst deviation {worst:.4}"),
    }
}

fn criterion_6() -> Outcome {
    let mut worst_const = 0.0f64;
    let mut worst_lin = 0.0f64;
    for a in [0.1, 0.3, 0.5, 0.6, 0.9] {
        let alpha = FractionalOrder::new(a).unwrap();
        for n in [4, 64, 1024] {
            let g = UniformGrid::new(1.0, n).unwrap();
            let c = l1_apply(alpha, &g, &g.sample(|_| 3.7)).unwrap();
            worst_const = worst_const.max(c.max_abs());
            let slope = -1.3;
            let d = l1_apply(alpha, &g, &g.sample(|t| 0.4 + slope * t)).unwrap();
            for k in 1..=n {
                let want = slope * caputo_power(alpha, 1.0, g.node(k)).unwrap();
                worst_lin = worst_lin.max(((d.at(k).unwrap() - want) / want).abs());
            }
        }
    }
    Outcome {
        pass: worst_const <= 1e-12 && worst_lin <= 1e-12,
        detail: format!("constants max |δ| = {worst_const:.2e}, linears max rel err = {worst_lin:.2e}"),
    }
}

fn criterion_7() -> Outcome {
    let settings = QuadratureSettings::default();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for &(p, mu) in &T1_PAIRS {
        let exp = LebesgueExponent::new(p).unwrap();
        let w = WeightSpec::power(mu).unwrap();
        for n in [64, 1024] {
            let g = UniformGrid::new(1.0, n).unwrap();
            let num = lambda_numeric(&w, exp, &g, &settings).unwrap().value;
            let closed = lambda_closed_form(&w, exp, g.tau()).unwrap().value();
            worst = worst.max(((num - closed) / closed).abs());
            cases += 1;
        }
    }
    let mut const_dev = 0.0f64;
    for p in [1.5, 3.0] {
        let g = UniformGrid::new(1.0, 1024).unwrap();
        let v =
            lambda_numeric(&WeightSpec::ConstantOne, LebesgueExponent::new(p).unwrap(), &g, &settings).unwrap().value;
        const_dev = const_dev.max((v - 1.0).abs());
    }
    Outcome {
        pass: worst <= 1e-8 && const_dev <= 1e-12,
        detail: format!("{cases} power cases, max rel dev {worst:.2e}; constant weight |Λ - 1| = {const_dev:.1e}"),
    }
}

fn criterion_8() -> Outcome {
    let settings = QuadratureSettings::default();
    let mut pass = true;
    let mut ratios = Vec::new();
    for lambda in [0.0, 1.0] {
        for n in [64, 256] {
            let alpha = FractionalOrder::new(0.5).unwrap();
            let exact = TestFunction::Quadratic;
            let problem = FodeProblem::manufactured(alpha, lambda, &exact, 1.0).unwrap();
            let g = UniformGrid::new(1.0, n).unwrap();
            let sol = solve_fode(&problem, &g).unwrap();
            let d = l1_apply(alpha, &g, &exact.sample(&g).unwrap()).unwrap();
            let max_r = (1..=n)
                .map(|k| {
                    (l1caputo::caputo_reference(alpha, &exact, g.node(k), &settings).unwrap() - d.values()[k - 1]).abs()
                })
                .fold(0.0f64, f64::max);
            let report = global_error(&sol, &exact).unwrap().with_truncation(alpha, 1.0, max_r);
            pass &= report.satisfies_gronwall(1e-6).unwrap();
            ratios.push(report.max_error / report.gronwall_bound.unwrap());
        }
    }
    let alpha = FractionalOrder::new(0.5).unwrap();
    let y0 = 1.75;
    let fixed = FodeProblem::new(alpha, 1.0, std::sync::Arc::new(move |_| y0), y0, 1.0).unwrap();
    let sol = solve_fode(&fixed, &UniformGrid::new(1.0, 256).unwrap()).unwrap();
    let drift = sol.values().iter().fold(0.0f64, |m, v| m.max(((v - y0) / y0).abs()));
    pass &= drift <= 1e-12;
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.3}")).collect();
    Outcome {
        pass,
        detail: format!("error/bound ratios [{}]; constant fixed point drift {drift:.1e}", shown.join(", ")),
    }
}

fn criterion_9() -> Outcome {
    let settings = QuadratureSettings::default();
    let p2 = LebesgueExponent::new(2.0).unwrap();
    let mut notes = Vec::new();
    let mut pass = true;
    for depth in [0, 6, 12] {
        let v = ap_characteristic(&WeightSpec::ConstantOne, p2, 1.0, depth, &settings).unwrap().value();
        pass &= v == Some(1.0);
    }
    notes.push("constant weight = 1".to_string());
    for (p, mu) in [(2.0, 1.0), (2.0, 1.5), (1.5, 0.5), (3.0, 2.2)] {
        let r =
            ap_characteristic(&WeightSpec::power(mu).unwrap(), LebesgueExponent::new(p).unwrap(), 1.0, 4, &settings);
        pass &= matches!(r, Ok(ApCharacteristic::NotInAp { .. }));
    }
    notes.push("4 power weights with mu >= p-1 rejected".to_string());
    let mut last = f64::NEG_INFINITY;
    let mut values = Vec::new();
    for depth in 4..=12 {
        let v = ap_characteristic(&WeightSpec::power(0.5).unwrap(), p2, 1.0, depth, &settings)
            .ok()
            .and_then(|r| r.value())
            .unwrap_or(f64::NAN);
        pass &= v >= last;
        last = v;
        values.push(v);
    }
    notes.push(format!("t^0.5 estimate {:.6} at depth 4 -> {:.6} at depth 12", values[0], last));
    Outcome { pass, detail: notes.join("; ") }
}

fn main() -> ExitCode {
    // behave like a test harness under `--list` and name filters
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let filters: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    if !filters.is_empty() && !filters.iter().any(|f| "acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }

    let checks: Vec<(&str, Check)> = vec![
        ("1 power-profile table", Box::new(|| table_check(1, 1024, 0.01))),
        ("2 Jacobi-profile table", Box::new(|| table_check(2, 2048, 0.01))),
        ("3 log-profile table", Box::new(|| table_check(3, 2048, 0.015))),
        ("4 log-adjusted table", Box::new(|| table_check(4, 2048, 0.02))),
        ("5 truncation slopes", Box::new(criterion_5)),
        ("6 operator exactness", Box::new(criterion_6)),
        ("7 grid factor closed form", Box::new(criterion_7)),
        ("8 FODE stability bound", Box::new(criterion_8)),
        ("9 A_p estimator", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (name, check) in &checks {
        let out = check();
        if !out.pass {
            failed += 1;
        }
        println!("[{}] {name}: {}", if out.pass { "PASS" } else { "FAIL" }, out.detail);
    }

    // informational, not graded
    let info = table_check(2, 1024, 0.01);
    println!("[INFO] Jacobi-profile table at the coarser base: {}", info.detail);
    let (ok, total, worst) = truncation_slopes(|a, p, mu| 2.0 - a - (1.0 + mu) / p + 0.001);
    println!("[INFO] truncation slopes with alpha in the exponent: {ok}/{total} within 0.05, worst {worst:.4}");

    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
