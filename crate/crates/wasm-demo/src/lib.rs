//! Three operations for the browser page: an order estimate, a truncation
//! error curve and a FODE solution.
//!
//! The computations live in plain functions so they can be tested natively;
//! the `#[wasm_bindgen]` wrappers only convert errors.

use l1caputo::experiments::{estimate_order, least_squares_slope, log_adjusted_order, theoretical_order, LogTau};
use l1caputo::{
    caputo_power, l1_apply, solve_fode, FodeProblem, FractionalOrder, LebesgueExponent, TestFunction, UniformGrid,
    WeightSpec,
};
use wasm_bindgen::prelude::*;

const OFFSET: f64 = 0.001;
const MAX_BASE: usize = 2048;
const MAX_STEPS: usize = 1 << 14;

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct OrderReport {
    estimated: f64,
    log_adjusted: f64,
    theoretical: f64,
    d1: f64,
    d2: f64,
}

#[wasm_bindgen]
impl OrderReport {
    #[wasm_bindgen(getter)]
    pub fn estimated(&self) -> f64 {
        self.estimated
    }
    /// `NaN` unless the log-inverse weight was chosen.
    #[wasm_bindgen(getter)]
    pub fn log_adjusted(&self) -> f64 {
        self.log_adjusted
    }
    #[wasm_bindgen(getter)]
    pub fn theoretical(&self) -> f64 {
        self.theoretical
    }
    #[wasm_bindgen(getter)]
    pub fn d1(&self) -> f64 {
        self.d1
    }
    #[wasm_bindgen(getter)]
    pub fn d2(&self) -> f64 {
        self.d2
    }
}

/// Order estimate for the profile that sits just inside the weighted space
/// chosen by `family` ("power", "jacobi" or "log").
pub fn order_report(
    family: &str,
    alpha: f64,
    p: f64,
    mu: f64,
    gamma: f64,
    base_n: usize,
) -> l1caputo::Result<OrderReport> {
    if base_n > MAX_BASE {
        return Err(l1caputo::Error::Parameter(format!("base N is capped at {MAX_BASE} in the demo")));
    }
    let a = FractionalOrder::new(alpha)?;
    let exp = LebesgueExponent::new(p)?;
    let (f, w) = match family {
        "power" => (TestFunction::power(2.0 - (1.0 + mu) / p + OFFSET)?, WeightSpec::power(mu)?),
        "jacobi" => (
            TestFunction::jacobi(2.0 - (1.0 + mu) / p + OFFSET, 2.0 - (1.0 + gamma) / p + OFFSET, 1.0)?,
            WeightSpec::jacobi(mu, gamma, 1.0)?,
        ),
        "log" => (TestFunction::log(2.0 - 1.0 / p, (mu - 1.0) / p - OFFSET, 1.0)?, WeightSpec::log_inverse(mu, 1.0)?),
        other => return Err(l1caputo::Error::Parameter(format!("unknown profile family `{other}`"))),
    };
    let theoretical = theoretical_order(&w, exp, a)?;
    let est = if family == "log" {
        log_adjusted_order(a, &f, 1.0, base_n, mu, exp, LogTau::Coarsest)?
    } else {
        estimate_order(a, &f, 1.0, base_n)?
    };
    Ok(OrderReport {
        estimated: est.order().unwrap_or(f64::INFINITY),
        log_adjusted: est.log_adjusted.unwrap_or(f64::NAN),
        theoretical,
        d1: est.d1,
        d2: est.d2,
    })
}

#[wasm_bindgen(js_name = orderEstimate)]
pub fn order_estimate(
    family: &str,
    alpha: f64,
    p: f64,
    mu: f64,
    gamma: f64,
    base_n: usize,
) -> Result<OrderReport, JsError> {
    order_report(family, alpha, p, mu, gamma, base_n).map_err(|e| JsError::new(&e.to_string()))
}

/// `max_n |D^α t^κ - δ t^κ|` on grids `8, 16, ..., max_n`, flattened as
/// `[τ_0, R_0, τ_1, R_1, ...]` followed by the fitted slope.
pub fn truncation_points(alpha: f64, kappa: f64, max_n: usize) -> l1caputo::Result<Vec<f64>> {
    let a = FractionalOrder::new(alpha)?;
    let f = TestFunction::power(kappa)?;
    if !(16..=MAX_STEPS).contains(&max_n) {
        return Err(l1caputo::Error::Parameter(format!("largest grid must lie in 16..={MAX_STEPS}")));
    }
    let mut out = Vec::new();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut n = 8;
    while n <= max_n {
        let g = UniformGrid::new(1.0, n)?;
        let d = l1_apply(a, &g, &f.sample(&g)?)?;
        let mut worst = 0.0f64;
        for k in 1..=n {
            worst = worst.max((caputo_power(a, kappa, g.node(k))? - d.values()[k - 1]).abs());
        }
        out.extend([g.tau(), worst]);
        xs.push(g.tau().ln());
        ys.push(worst.max(f64::MIN_POSITIVE).ln());
        n *= 2;
    }
    out.push(least_squares_slope(&xs, &ys)?);
    Ok(out)
}

#[wasm_bindgen(js_name = truncationCurve)]
pub fn truncation_curve(alpha: f64, kappa: f64, max_n: usize) -> Result<Vec<f64>, JsError> {
    truncation_points(alpha, kappa, max_n).map_err(|e| JsError::new(&e.to_string()))
}

/// Solves `D^α y + λ y = f` with exact solution `y0 + t^κ` on `(0, 1)`,
/// flattened as `[t_0, Y_0, y_0, t_1, Y_1, y_1, ...]`.
pub fn fode_points(alpha: f64, lambda: f64, y0: f64, kappa: f64, n: usize) -> l1caputo::Result<Vec<f64>> {
    if n > MAX_STEPS {
        return Err(l1caputo::Error::Parameter(format!("N is capped at {MAX_STEPS} in the demo")));
    }
    let a = FractionalOrder::new(alpha)?;
    TestFunction::power(kappa)?;
    let source = std::sync::Arc::new(move |t: f64| {
        caputo_power(a, kappa, t).unwrap_or(f64::NAN) + lambda * (y0 + t.powf(kappa))
    });
    let problem = FodeProblem::new(a, lambda, source, y0, 1.0)?;
    let g = UniformGrid::new(1.0, n)?;
    let sol = solve_fode(&problem, &g)?;
    Ok(sol
        .values()
        .iter()
        .enumerate()
        .flat_map(|(i, y)| {
            let t = g.node(i);
            [t, *y, y0 + t.powf(kappa)]
        })
        .collect())
}

#[wasm_bindgen(js_name = solveFode)]
pub fn solve_fode_js(alpha: f64, lambda: f64, y0: f64, kappa: f64, n: usize) -> Result<Vec<f64>, JsError> {
    fode_points(alpha, lambda, y0, kappa, n).map_err(|e| JsError::new(&e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_for_each_family() {
        let r = order_report("power", 0.5, 1.5, 0.0, 0.0, 1024).unwrap();
        assert!((r.estimated - 0.834).abs() < 0.01);
        assert!(r.log_adjusted.is_nan());
        let r = order_report("jacobi", 0.5, 1.5, 0.25, 0.25, 256).unwrap();
        assert!((r.theoretical - 2.0 / 3.0).abs() < 1e-12);
        let r = order_report("log", 0.9, 3.0, 2.0, 0.0, 1024).unwrap();
        assert!(r.log_adjusted > r.estimated);
        assert!(order_report("cubic", 0.5, 1.5, 0.0, 0.0, 64).is_err());
        assert!(order_report("power", 0.5, 1.5, 0.0, 0.0, 1 << 20).is_err());
    }

    #[test]
    fn truncation_curve_slope() {
        let pts = truncation_points(0.5, 2.0, 512).unwrap();
        assert_eq!(pts.len(), 2 * 7 + 1);
        let slope = *pts.last().unwrap();
        assert!((slope - 1.5).abs() < 0.05, "{slope}");
        assert!(truncation_points(0.5, 2.0, 8).is_err());
    }

    #[test]
    fn fode_solution_tracks_exact() {
        let pts = fode_points(0.5, 1.0, 1.0, 2.0, 128).unwrap();
        assert_eq!(pts.len(), 3 * 129);
        assert_eq!(pts[1], 1.0);
        let worst = pts.chunks(3).map(|c| (c[1] - c[2]).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-3, "{worst}");
    }
}
