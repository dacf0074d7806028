//! End-to-end behaviour of the order-estimation harness.

use l1caputo::experiments::{
    estimate_order, log_adjusted_order, reproduce_table, write_csv, LogTau, TableId, TableOptions,
};
use l1caputo::{FractionalOrder, LebesgueExponent, TestFunction};

fn alpha(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let opts = TableOptions { base_n: Some(128), ..TableOptions::default() };
    let render = || {
        let rows = reproduce_table(TableId::PowerProfile, &opts).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, TableId::PowerProfile, &rows, &opts).unwrap();
        buf
    };
    assert_eq!(render(), render());
}

#[test]
fn power_profile_orders_are_stable_under_halving_the_base() {
    let full =
        reproduce_table(TableId::PowerProfile, &TableOptions { base_n: Some(1024), ..Default::default() }).unwrap();
    let half =
        reproduce_table(TableId::PowerProfile, &TableOptions { base_n: Some(512), ..Default::default() }).unwrap();
    for (a, b) in full.iter().zip(&half) {
        assert!((a.estimated - b.estimated).abs() < 0.05, "{:?}: {} vs {}", a.params, a.estimated, b.estimated);
    }
}

#[test]
fn log_adjustment_never_lowers_the_order() {
    for (p, mu) in [(1.5, 0.5), (1.5, 2.0), (3.0, 0.5), (3.0, 2.0)] {
        let f = TestFunction::log(2.0 - 1.0 / p, (mu - 1.0) / p - 0.001, 1.0).unwrap();
        let est = log_adjusted_order(alpha(0.6), &f, 1.0, 256, mu, LebesgueExponent::new(p).unwrap(), LogTau::Coarsest)
            .unwrap();
        assert!(est.log_adjusted.unwrap() >= est.order().unwrap());
    }
}

#[test]
fn tabulated_examples() {
    // Jacobi profile with alpha = 0.9, p = 3, mu = 1.6, gamma = 0.4 at base 1024
    let f = TestFunction::jacobi(2.0 - 2.6 / 3.0 + 0.001, 2.0 - 1.4 / 3.0 + 0.001, 1.0).unwrap();
    let o = estimate_order(alpha(0.9), &f, 1.0, 1024).unwrap().order().unwrap();
    assert!((o - 0.236).abs() < 0.01, "{o}");

    // log profile, alpha = 0.1, p = 1.5, mu = 2: plain 1.132, adjusted 1.281
    let f = TestFunction::log(2.0 - 1.0 / 1.5, 1.0 / 1.5 - 0.001, 1.0).unwrap();
    let est = log_adjusted_order(alpha(0.1), &f, 1.0, 2048, 2.0, LebesgueExponent::new(1.5).unwrap(), LogTau::Coarsest)
        .unwrap();
    assert!((est.order().unwrap() - 1.132).abs() < 0.015);
    assert!((est.log_adjusted.unwrap() - 1.281).abs() < 0.02);
}
