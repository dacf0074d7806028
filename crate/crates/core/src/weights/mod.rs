//! Weight families, per-interval factors `W_j` and the grid factor `Λ(ω, τ)`.

mod muckenhoupt;
mod norms;

pub use muckenhoupt::{ap_characteristic, ApCharacteristic};
pub use norms::{
    power_profile_seminorm, rl_norm_ratio, weighted_lp_norm, weighted_seminorm, weighted_sobolev_norm, NormInput,
};

use crate::error::{Error, Result};
use crate::grid::UniformGrid;
use crate::quadrature::{tanh_sinh, QuadratureSettings};

/// Lebesgue exponent `p` in `(1, ∞)` and its conjugate `q = p / (p - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LebesgueExponent(f64);

impl LebesgueExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p > 1.0 && p.is_finite() {
            Ok(Self(p))
        } else {
            Err(Error::param(format!("p must satisfy 1 < p < inf, got {p}")))
        }
    }

    #[inline]
    pub fn p(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn q(self) -> f64 {
        self.0 / (self.0 - 1.0)
    }

    /// Exponent of the dual weight `ω^{-q/p} = ω^{-1/(p-1)}`.
    #[inline]
    pub(crate) fn dual_power(self) -> f64 {
        -1.0 / (self.0 - 1.0)
    }
}

/// A weight on `(0, T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightSpec {
    ConstantOne,
    /// `t^mu`
    Power {
        mu: f64,
    },
    /// `t^mu (T - t)^gamma`
    Jacobi {
        mu: f64,
        gamma: f64,
        horizon: f64,
    },
    /// `ln(e T / t)^{-mu}`
    LogInverse {
        mu: f64,
        horizon: f64,
    },
}

impl WeightSpec {
    pub fn power(mu: f64) -> Result<Self> {
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::param(format!("mu must be nonnegative, got {mu}")));
        }
        Ok(Self::Power { mu })
    }

    pub fn jacobi(mu: f64, gamma: f64, horizon: f64) -> Result<Self> {
        if !(mu >= 0.0 && mu.is_finite() && gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::param(format!("Jacobi exponents must be nonnegative, got mu={mu}, gamma={gamma}")));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::param(format!("T must be positive, got {horizon}")));
        }
        Ok(Self::Jacobi { mu, gamma, horizon })
    }

    pub fn log_inverse(mu: f64, horizon: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::param(format!("log weight needs mu > 0, got {mu}")));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::param(format!("T must be positive, got {horizon}")));
        }
        Ok(Self::LogInverse { mu, horizon })
    }

    pub fn horizon(&self) -> Option<f64> {
        match self {
            Self::Jacobi { horizon, .. } | Self::LogInverse { horizon, .. } => Some(*horizon),
            _ => None,
        }
    }

    /// Checks the integrability of the dual weight for exponent `p`.
    pub fn check_admissible(&self, p: LebesgueExponent) -> Result<()> {
        let limit = p.p() - 1.0;
        match *self {
            Self::Power { mu } if mu >= limit => {
                Err(Error::param(format!("mu must satisfy mu < p-1 (mu = {mu}, p = {})", p.p())))
            }
            Self::Jacobi { mu, gamma, .. } if mu >= limit || gamma >= limit => Err(Error::param(format!(
                "Jacobi weight needs mu < p-1 and gamma < p-1 (mu = {mu}, gamma = {gamma}, p = {})",
                p.p()
            ))),
            _ => Ok(()),
        }
    }

    /// `ω(t)^e`, given `t` and `T - t` separately so both endpoints stay exact.
    pub(crate) fn pow_split(&self, t: f64, to_horizon: f64, e: f64) -> f64 {
        match *self {
            Self::ConstantOne => 1.0,
            Self::Power { mu } => t.powf(mu * e),
            Self::Jacobi { mu, gamma, .. } => t.powf(mu * e) * to_horizon.powf(gamma * e),
            Self::LogInverse { mu, horizon } => (1.0 + (horizon / t).ln()).powf(-mu * e),
        }
    }
}

/// `ω(t)`.
pub fn weight_eval(w: &WeightSpec, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain("t must be finite"));
    }
    match *w {
        WeightSpec::ConstantOne => Ok(1.0),
        WeightSpec::Power { mu } => {
            if t > 0.0 || (t == 0.0 && mu == 0.0) {
                Ok(t.powf(mu))
            } else {
                Err(Error::domain(format!("power weight needs t > 0, got {t}")))
            }
        }
        WeightSpec::Jacobi { mu, gamma, horizon } => {
            let inside = t > 0.0 && t < horizon;
            let ok_end = (t == 0.0 && mu == 0.0) || (t == horizon && gamma == 0.0);
            if inside || ok_end {
                Ok(w.pow_split(t, horizon - t, 1.0))
            } else {
                Err(Error::domain(format!("Jacobi weight evaluated at t = {t} outside (0, {horizon})")))
            }
        }
        WeightSpec::LogInverse { horizon, .. } => {
            if t > 0.0 && t <= horizon {
                Ok(w.pow_split(t, horizon - t, 1.0))
            } else {
                Err(Error::domain(format!("log weight evaluated at t = {t} outside (0, {horizon}]")))
            }
        }
    }
}

/// `W_j = ||ω^{-1/p}||_{L^q(t_j, t_{j+1})}` for one grid interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalFactor {
    pub j: usize,
    pub value: f64,
}

/// `W_j` for interval `j` of `grid`.
///
/// The constant weight uses the closed form `τ^{1/q}`; every other weight is
/// integrated numerically, including the singular end intervals.
pub fn wj_factor(
    w: &WeightSpec,
    p: LebesgueExponent,
    grid: &UniformGrid,
    j: usize,
    settings: &QuadratureSettings,
) -> Result<IntervalFactor> {
    if j >= grid.steps() {
        return Err(Error::domain(format!("interval index must satisfy j < N = {}, got {j}", grid.steps())));
    }
    let q = p.q();
    if let WeightSpec::ConstantOne = w {
        return Ok(IntervalFactor { j, value: grid.tau().powf(1.0 / q) });
    }
    w.check_admissible(p).map_err(|e| Error::Divergent(format!("dual weight is not integrable: {e}")))?;
    let a = grid.node(j);
    let b = grid.node(j + 1);
    let to_horizon_b = match w.horizon() {
        Some(h) if h == grid.horizon() => grid.distance_to_horizon(j + 1),
        Some(h) => h - b,
        None => f64::INFINITY,
    };
    let e = p.dual_power();
    let est = tanh_sinh(|x| Ok(w.pow_split(a + x.from_left, to_horizon_b + x.to_right, e)), a, b, settings)?;
    Ok(IntervalFactor { j, value: est.value.powf(1.0 / q) })
}

/// `W_0` for `ω = t^μ`: `(p / (p - μ q))^{1/q} τ^{1/q - μ/p}`.
pub fn power_w0_closed_form(mu: f64, p: LebesgueExponent, tau: f64) -> f64 {
    let (pp, q) = (p.p(), p.q());
    (pp / (pp - mu * q)).powf(1.0 / q) * tau.powf(1.0 / q - mu / pp)
}

/// `Λ(ω, τ) = max_j τ^{-1/q} W_j` with the maximizing interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaEstimate {
    pub value: f64,
    pub argmax: usize,
}

pub fn lambda_numeric(
    w: &WeightSpec,
    p: LebesgueExponent,
    grid: &UniformGrid,
    settings: &QuadratureSettings,
) -> Result<LambdaEstimate> {
    if let WeightSpec::ConstantOne = w {
        return Ok(LambdaEstimate { value: 1.0, argmax: 0 });
    }
    let norm = grid.tau().powf(-1.0 / p.q());
    let mut best = LambdaEstimate { value: f64::NEG_INFINITY, argmax: 0 };
    for j in 0..grid.steps() {
        let v = norm * wj_factor(w, p, grid, j, settings)?.value;
        if v > best.value {
            best = LambdaEstimate { value: v, argmax: j };
        }
    }
    Ok(best)
}

/// Closed form, or bound shape with unit constant, of `Λ(ω, τ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaClosedForm {
    /// Exact value (constant and power weights).
    Exact { value: f64 },
    /// `τ^{exponent}` with `exponent = -max(μ, γ)/p` (Jacobi weights).
    Rate { exponent: f64, value: f64 },
    /// `ln(eT/τ)^{power}` with `power = μ/p` (logarithmic weights).
    Logarithmic { power: f64, value: f64 },
}

impl LambdaClosedForm {
    pub fn value(&self) -> f64 {
        match *self {
            Self::Exact { value } | Self::Rate { value, .. } | Self::Logarithmic { value, .. } => value,
        }
    }
}

pub fn lambda_closed_form(w: &WeightSpec, p: LebesgueExponent, tau: f64) -> Result<LambdaClosedForm> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::param(format!("tau must be positive, got {tau}")));
    }
    w.check_admissible(p)?;
    let pp = p.p();
    Ok(match *w {
        WeightSpec::ConstantOne => LambdaClosedForm::Exact { value: 1.0 },
        WeightSpec::Power { mu } => {
            LambdaClosedForm::Exact { value: (pp / (pp - mu * p.q())).powf(1.0 / p.q()) * tau.powf(-mu / pp) }
        }
        WeightSpec::Jacobi { mu, gamma, .. } => {
            let exponent = -mu.max(gamma) / pp;
            LambdaClosedForm::Rate { exponent, value: tau.powf(exponent) }
        }
        WeightSpec::LogInverse { mu, horizon } => {
            let power = mu / pp;
            LambdaClosedForm::Logarithmic { power, value: (1.0 + (horizon / tau).ln()).powf(power) }
        }
    })
}
