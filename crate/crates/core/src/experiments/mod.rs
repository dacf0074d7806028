//! Convergence-order experiments: extrapolated orders, theoretical orders,
//! truncation studies and the tabulated parameter sweeps.

mod tables;
mod truncation;

pub use tables::{reproduce_table, write_csv, write_text, TableId, TableOptions, TableRow};
pub use truncation::{truncation_study, TruncationBreakdown, TruncationStudy};

use crate::error::{Error, Result};
use crate::grid::{FractionalOrder, UniformGrid};
use crate::l1::l1_apply;
use crate::profile::TestFunction;
use crate::weights::{LebesgueExponent, WeightSpec};

/// Below this relative size both differences count as roundoff, and the
/// scheme is declared exact on the profile.
const EXACTNESS_TOLERANCE: f64 = 1e-11;

/// Which step size enters the logarithmic correction factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogTau {
    /// `τ` of the coarsest of the three grids.
    #[default]
    Coarsest,
    /// `τ/2`, the middle grid.
    Middle,
}

impl LogTau {
    pub fn label(self) -> &'static str {
        match self {
            Self::Coarsest => "coarsest",
            Self::Middle => "middle",
        }
    }
}

impl std::str::FromStr for LogTau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coarsest" => Ok(Self::Coarsest),
            "middle" => Ok(Self::Middle),
            other => Err(Error::param(format!("log tau must be 'coarsest' or 'middle', got '{other}'"))),
        }
    }
}

/// Outcome of comparing the discrete derivative on grids `N`, `2N`, `4N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Convergence {
    /// `log2(d1/d2)`.
    Rate(f64),
    /// Both differences vanish to roundoff: the scheme is exact on the profile.
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderEstimate {
    pub base_n: usize,
    pub tau: f64,
    /// `max_{1<=n<=N} |δ_τ y(t_n) - δ_{τ/2} y(t_n)|`
    pub d1: f64,
    /// `max_{1<=n<=2N} |δ_{τ/2} y(t_n) - δ_{τ/4} y(t_n)|`
    pub d2: f64,
    pub convergence: Convergence,
    pub log_adjusted: Option<f64>,
    pub theoretical: Option<f64>,
}

impl OrderEstimate {
    pub fn order(&self) -> Option<f64> {
        match self.convergence {
            Convergence::Rate(r) => Some(r),
            Convergence::Exact => None,
        }
    }

    pub fn with_theoretical(mut self, order: f64) -> Self {
        self.theoretical = Some(order);
        self
    }
}

/// Largest difference between the coarse values and the fine values at the
/// nested nodes, where fine index `2n` sits on coarse node `n`.
fn nested_max_difference(coarse: &[f64], fine: &[f64]) -> f64 {
    coarse.iter().enumerate().fold(0.0, |m, (i, c)| m.max((c - fine[2 * i + 1]).abs()))
}

/// Estimated convergence order from three nested grids `N`, `2N`, `4N`.
pub fn estimate_order(alpha: FractionalOrder, f: &TestFunction, horizon: f64, base_n: usize) -> Result<OrderEstimate> {
    if base_n < 8 || !base_n.is_power_of_two() {
        return Err(Error::param(format!("base N must be a power of two >= 8, got {base_n}")));
    }
    let coarse = UniformGrid::new(horizon, base_n)?;
    let grids = [coarse, coarse.refine(2)?, coarse.refine(4)?];
    let mut deltas = Vec::with_capacity(3);
    for g in &grids {
        deltas.push(l1_apply(alpha, g, &f.sample(g)?)?);
    }
    // values()[k] holds node k + 1, so coarse node n = i + 1 maps to fine index 2i + 1
    let d1 = nested_max_difference(deltas[0].values(), deltas[1].values());
    let d2 = nested_max_difference(deltas[1].values(), deltas[2].values());
    let scale = deltas.iter().map(|d| d.max_abs()).fold(1.0f64, f64::max);
    let convergence =
        if d2 <= EXACTNESS_TOLERANCE * scale { Convergence::Exact } else { Convergence::Rate((d1 / d2).log2()) };
    Ok(OrderEstimate { base_n, tau: coarse.tau(), d1, d2, convergence, log_adjusted: None, theoretical: None })
}

/// `[ln(2eT/τ) / ln(eT/τ)]^{μ/p}`.
pub fn log_adjustment_factor(horizon: f64, tau: f64, mu: f64, p: LebesgueExponent) -> f64 {
    let l = 1.0 + (horizon / tau).ln();
    ((std::f64::consts::LN_2 + l) / l).powf(mu / p.p())
}

/// [`estimate_order`] plus the order with the logarithmic prefactor removed.
pub fn log_adjusted_order(
    alpha: FractionalOrder,
    f: &TestFunction,
    horizon: f64,
    base_n: usize,
    mu: f64,
    p: LebesgueExponent,
    log_tau: LogTau,
) -> Result<OrderEstimate> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::param(format!("mu must be nonnegative, got {mu}")));
    }
    let mut est = estimate_order(alpha, f, horizon, base_n)?;
    let tau = match log_tau {
        LogTau::Coarsest => est.tau,
        LogTau::Middle => 0.5 * est.tau,
    };
    if let Convergence::Rate(_) = est.convergence {
        let factor = log_adjustment_factor(horizon, tau, mu, p);
        est.log_adjusted = Some((est.d1 / est.d2 * factor).log2());
    }
    Ok(est)
}

/// Predicted convergence order for data in the weighted space.
///
/// Logarithmic weights lose only a logarithmic factor, which is not part of
/// the returned exponent.
pub fn theoretical_order(w: &WeightSpec, p: LebesgueExponent, alpha: FractionalOrder) -> Result<f64> {
    w.check_admissible(p)?;
    let base = 2.0 - alpha.value();
    Ok(match *w {
        WeightSpec::Power { mu } => base - (1.0 + mu) / p.p(),
        WeightSpec::Jacobi { mu, gamma, .. } => base - (1.0 + mu.max(gamma)) / p.p(),
        WeightSpec::ConstantOne | WeightSpec::LogInverse { .. } => base - 1.0 / p.p(),
    })
}

/// Least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::param("slope fit needs at least two paired points"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::param("slope fit needs distinct abscissae"));
    }
    Ok(sxy / sxx)
}
