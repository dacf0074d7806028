//! Reference values for the Caputo derivative and the Riemann–Liouville integral.

use crate::error::{Error, Result};
use crate::grid::FractionalOrder;
use crate::profile::TestFunction;
use crate::quadrature::{kernel_convolution, Estimate, QuadratureSettings};
use crate::special::{gamma, ln_gamma};

/// Caputo derivative of `t^kappa`: `Γ(κ+1)/Γ(κ+1-α) t^{κ-α}`.
pub fn caputo_power(alpha: FractionalOrder, kappa: f64, t: f64) -> Result<f64> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::domain(format!("power rule needs kappa > 0, got {kappa}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("power rule needs t > 0, got {t}")));
    }
    let a = alpha.value();
    // ratio through ln Γ keeps large kappa finite
    let ratio = if kappa < 100.0 {
        gamma(kappa + 1.0) / gamma(kappa + 1.0 - a)
    } else {
        (ln_gamma(kappa + 1.0) - ln_gamma(kappa + 1.0 - a)).exp()
    };
    Ok(ratio * t.powf(kappa - a))
}

/// `1/Γ(1-α) ∫_0^t (t-s)^{-α} y'(s) ds` by quadrature.
pub fn caputo_quadrature(
    alpha: FractionalOrder,
    f: &TestFunction,
    t: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    caputo_quadrature_estimate(alpha, f, t, settings).map(|e| e.value)
}

/// As [`caputo_quadrature`], returning the error estimate as well.
pub fn caputo_quadrature_estimate(
    alpha: FractionalOrder,
    f: &TestFunction,
    t: f64,
    settings: &QuadratureSettings,
) -> Result<Estimate> {
    let a = alpha.value();
    let horizon_gap = f.horizon().map(|h| h - t).unwrap_or(f64::INFINITY);
    if horizon_gap < 0.0 {
        return Err(Error::domain(format!("t = {t} lies beyond the profile horizon")));
    }
    let est = kernel_convolution(1.0 - a, t, |s, gap| f.eval_split(s, horizon_gap + gap, 1), settings)?;
    let norm = 1.0 / gamma(1.0 - a);
    Ok(Estimate { value: est.value * norm, error: est.error * norm, ..est })
}

/// Caputo derivative of an analytic profile at `t > 0`: the power rule where it
/// applies, quadrature otherwise.
pub fn caputo_reference(
    alpha: FractionalOrder,
    f: &TestFunction,
    t: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("Caputo derivative needs t > 0, got {t}")));
    }
    match *f {
        TestFunction::Power { kappa } => caputo_power(alpha, kappa, t),
        TestFunction::Quadratic => caputo_power(alpha, 2.0, t),
        TestFunction::Linear { b, .. } => Ok(b * caputo_power(alpha, 1.0, t)?),
        TestFunction::Constant { .. } => Ok(0.0),
        TestFunction::Sampled { derivative: None, .. } => {
            Err(Error::param("Caputo reference of node samples needs a derivative evaluator"))
        }
        _ => caputo_quadrature(alpha, f, t, settings),
    }
}

/// Riemann–Liouville integral `I^β g(t) = 1/Γ(β) ∫_0^t (t-s)^{β-1} g(s) ds`.
pub fn rl_integral<G>(beta: f64, g: G, t: f64, settings: &QuadratureSettings) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::param(format!("beta must lie in (0, 1], got {beta}")));
    }
    let est = kernel_convolution(beta, t, |s, _| Ok(g(s)), settings)?;
    Ok(est.value / gamma(beta))
}
