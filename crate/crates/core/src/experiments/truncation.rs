//! Measured truncation errors of the L1 operator against the bound
//! `τ^{2-α-1/p} Λ(ω, τ) ||y''||_{L^p_ω}`.

use super::{least_squares_slope, theoretical_order};
use crate::caputo::caputo_reference;
use crate::error::{Error, Result};
use crate::grid::{FractionalOrder, UniformGrid};
use crate::l1::l1_apply;
use crate::profile::TestFunction;
use crate::quadrature::{tanh_sinh, QuadratureSettings};
use crate::weights::{
    lambda_numeric, power_profile_seminorm, weighted_seminorm, wj_factor, LebesgueExponent, WeightSpec,
};

/// Everything measured on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationBreakdown {
    pub steps: usize,
    pub tau: f64,
    /// `R_n = |D^α y(t_n) - δ y(t_n)|` for `n = 1..=N`.
    pub residuals: Vec<f64>,
    /// `max_n R_n`.
    pub max_residual: f64,
    /// `Y_j = ∫_{t_j}^{t_{j+1}} |y''|`, when `y''` is integrable.
    pub second_derivative_mass: Option<Vec<f64>>,
    /// `W_j` for `j = 0..N`.
    pub interval_factors: Vec<f64>,
    /// `Λ(ω, τ)`.
    pub lambda: f64,
    /// `||y''||_{L^p_ω}`, when finite.
    pub seminorm: Option<f64>,
    /// `τ^{2-α-1/p} Λ ||y''||_{L^p_ω}`, when the seminorm is finite.
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationStudy {
    pub breakdowns: Vec<TruncationBreakdown>,
    /// Least-squares slope of `log max R_n` against `log τ`.
    pub slope: f64,
    pub theoretical_order: f64,
    /// `(max R_n / bound)` on each grid divided by its value on the coarsest grid.
    pub normalized_bound_ratios: Option<Vec<f64>>,
}

impl TruncationStudy {
    /// True when `max R_n` stays below the bound curve, scaled to touch it on
    /// the coarsest grid, up to a relative `slack`.
    pub fn bound_holds(&self, slack: f64) -> Option<bool> {
        self.normalized_bound_ratios.as_ref().map(|r| r.iter().all(|v| *v <= 1.0 + slack))
    }
}

fn second_derivative_mass(f: &TestFunction, grid: &UniformGrid, settings: &QuadratureSettings) -> Option<Vec<f64>> {
    let same_horizon = f.horizon() == Some(grid.horizon());
    (0..grid.steps())
        .map(|j| {
            let (a, b) = (grid.node(j), grid.node(j + 1));
            let gap_b = if same_horizon {
                grid.distance_to_horizon(j + 1)
            } else {
                f.horizon().map_or(f64::INFINITY, |h| h - b)
            };
            tanh_sinh(|x| Ok(f.eval_split(a + x.from_left, gap_b + x.to_right, 2)?.abs()), a, b, settings)
                .map(|e| e.value)
                .ok()
        })
        .collect()
}

fn seminorm(
    f: &TestFunction,
    w: &WeightSpec,
    p: LebesgueExponent,
    horizon: f64,
    settings: &QuadratureSettings,
) -> Result<Option<f64>> {
    let closed = match *f {
        TestFunction::Power { kappa } => Some(kappa),
        TestFunction::Quadratic => Some(2.0),
        _ => None,
    };
    let value = match (closed, w) {
        (Some(kappa), WeightSpec::ConstantOne | WeightSpec::Power { .. }) => {
            power_profile_seminorm(kappa, 2, w, p, horizon)
        }
        _ => weighted_seminorm(f, w, p, 2, horizon, settings),
    };
    match value {
        Ok(v) => Ok(Some(v)),
        Err(Error::Divergent(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Measures `max R_n` on each grid, fits its slope against `τ`, and assembles
/// the bound curve with its ingredients.
pub fn truncation_study(
    alpha: FractionalOrder,
    f: &TestFunction,
    w: &WeightSpec,
    p: LebesgueExponent,
    horizon: f64,
    grids: &[usize],
    settings: &QuadratureSettings,
) -> Result<TruncationStudy> {
    if grids.len() < 2 {
        return Err(Error::param("a truncation study needs at least two grids"));
    }
    if !f.is_analytic() {
        return Err(Error::param("a truncation study needs an analytic profile"));
    }
    let theory = theoretical_order(w, p, alpha)?;
    let norm = seminorm(f, w, p, horizon, settings)?;
    let rate = 2.0 - alpha.value() - 1.0 / p.p();
    let mut breakdowns = Vec::with_capacity(grids.len());
    for &n in grids {
        let grid = UniformGrid::new(horizon, n)?;
        let delta = l1_apply(alpha, &grid, &f.sample(&grid)?)?;
        let residuals = (1..=n)
            .map(|k| Ok((caputo_reference(alpha, f, grid.node(k), settings)? - delta.values()[k - 1]).abs()))
            .collect::<Result<Vec<f64>>>()?;
        let max_residual = residuals.iter().fold(0.0f64, |m, r| m.max(*r));
        let interval_factors =
            (0..n).map(|j| wj_factor(w, p, &grid, j, settings).map(|v| v.value)).collect::<Result<Vec<f64>>>()?;
        let lambda = lambda_numeric(w, p, &grid, settings)?.value;
        let bound = norm.map(|s| grid.tau().powf(rate) * lambda * s);
        breakdowns.push(TruncationBreakdown {
            steps: n,
            tau: grid.tau(),
            residuals,
            max_residual,
            second_derivative_mass: second_derivative_mass(f, &grid, settings),
            interval_factors,
            lambda,
            seminorm: norm,
            bound,
        });
    }
    let xs: Vec<f64> = breakdowns.iter().map(|b| b.tau.ln()).collect();
    let ys: Vec<f64> = breakdowns.iter().map(|b| b.max_residual.ln()).collect();
    let slope = least_squares_slope(&xs, &ys)?;
    let normalized_bound_ratios =
        breakdowns.iter().map(|b| b.bound.map(|bd| b.max_residual / bd)).collect::<Option<Vec<f64>>>().and_then(|r| {
            // the coarsest grid fixes the unknown constant
            let (i0, _) = breakdowns.iter().enumerate().min_by_key(|(_, b)| b.steps)?;
            let base = r[i0];
            (base > 0.0).then(|| r.iter().map(|v| v / base).collect())
        });
    Ok(TruncationStudy { breakdowns, slope, theoretical_order: theory, normalized_bound_ratios })
}
