//! FODE solver against manufactured solutions.

use l1caputo::experiments::least_squares_slope;
use l1caputo::{global_error, solve_fode, FodeProblem, FractionalOrder, TestFunction, UniformGrid};

fn observed_order(alpha: f64, lambda: f64, exact: &TestFunction) -> f64 {
    let a = FractionalOrder::new(alpha).unwrap();
    let problem = FodeProblem::manufactured(a, lambda, exact, 1.0).unwrap();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for n in [64usize, 128, 256, 512] {
        let g = UniformGrid::new(1.0, n).unwrap();
        let err = global_error(&solve_fode(&problem, &g).unwrap(), exact).unwrap().max_error;
        xs.push(g.tau().ln());
        ys.push(err.ln());
    }
    least_squares_slope(&xs, &ys).unwrap()
}

#[test]
fn smooth_solution_converges_at_two_minus_alpha() {
    for a in [0.3, 0.5, 0.7] {
        for lambda in [0.0, 2.0] {
            let order = observed_order(a, lambda, &TestFunction::Quadratic);
            assert!(order > 2.0 - a - 0.1, "alpha={a} lambda={lambda}: {order}");
        }
    }
}

#[test]
fn singular_solution_still_converges() {
    // y = t^{1.5}: y'' is integrable, so the error still decays
    let order = observed_order(0.5, 1.0, &TestFunction::power(1.5).unwrap());
    assert!(order > 0.9, "{order}");
}

#[test]
fn jacobi_manufactured_solution_uses_quadrature() {
    let a = FractionalOrder::new(0.5).unwrap();
    let exact = TestFunction::jacobi(1.8, 1.8, 1.0).unwrap();
    let problem = FodeProblem::manufactured(a, 1.0, &exact, 1.0).unwrap();
    let e1 = global_error(&solve_fode(&problem, &UniformGrid::new(1.0, 32).unwrap()).unwrap(), &exact).unwrap();
    let e2 = global_error(&solve_fode(&problem, &UniformGrid::new(1.0, 128).unwrap()).unwrap(), &exact).unwrap();
    assert!(e2.max_error < 0.5 * e1.max_error, "{} -> {}", e1.max_error, e2.max_error);
}
