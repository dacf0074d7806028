//! Weighted Lebesgue and Sobolev norms on `(0, T)`.

use super::{LebesgueExponent, WeightSpec};
use crate::caputo::caputo_quadrature;
use crate::error::{Error, Result};
use crate::grid::{FractionalOrder, UniformGrid};
use crate::profile::TestFunction;
use crate::quadrature::{composite_gauss_legendre, tanh_sinh, QuadratureSettings};

/// What to measure: a function of time, or node values joined piecewise linearly.
#[derive(Clone, Copy)]
pub enum NormInput<'a> {
    Function(&'a dyn Fn(f64) -> f64),
    Samples { grid: &'a UniformGrid, values: &'a [f64] },
}

fn check_horizon(horizon: f64) -> Result<()> {
    if horizon > 0.0 && horizon.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("T must be positive, got {horizon}")))
    }
}

/// `T - t` for an abscissa whose distance to the right end `b` is `to_right`.
fn weight_gap(w: &WeightSpec, b: f64, to_right_of_b: f64, to_right: f64) -> f64 {
    match w.horizon() {
        Some(h) if h == b => to_right,
        Some(h) => (h - b) + to_right,
        None => to_right_of_b + to_right,
    }
}

/// `||y||_{L^p_ω(0, T)}`.
pub fn weighted_lp_norm(
    input: NormInput<'_>,
    w: &WeightSpec,
    p: LebesgueExponent,
    horizon: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_horizon(horizon)?;
    let pp = p.p();
    let integral = match input {
        NormInput::Function(y) => {
            tanh_sinh(
                |x| Ok(y(x.x).abs().powf(pp) * w.pow_split(x.from_left, weight_gap(w, horizon, 0.0, x.to_right), 1.0)),
                0.0,
                horizon,
                settings,
            )?
            .value
        }
        NormInput::Samples { grid, values } => {
            if values.len() != grid.steps() + 1 {
                return Err(Error::param(format!("expected {} samples, got {}", grid.steps() + 1, values.len())));
            }
            if (grid.horizon() - horizon).abs() > 1e-12 * horizon {
                return Err(Error::param("sample grid and norm horizon differ"));
            }
            let tau = grid.tau();
            let mut total = 0.0;
            for j in 0..grid.steps() {
                let (a, b) = (grid.node(j), grid.node(j + 1));
                let (ya, yb) = (values[j], values[j + 1]);
                let right_gap = grid.distance_to_horizon(j + 1);
                total += tanh_sinh(
                    |x| {
                        let y = ya + (yb - ya) * (x.from_left / tau);
                        Ok(y.abs().powf(pp)
                            * w.pow_split(a + x.from_left, weight_gap(w, b, right_gap, x.to_right), 1.0))
                    },
                    a,
                    b,
                    settings,
                )?
                .value;
            }
            total
        }
    };
    Ok(integral.powf(1.0 / pp))
}

/// `||y^{(k)}||_{L^p_ω(0, T)}` for an analytic profile, `k` in `0..=2`.
pub fn weighted_seminorm(
    f: &TestFunction,
    w: &WeightSpec,
    p: LebesgueExponent,
    k: u8,
    horizon: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_horizon(horizon)?;
    if !f.is_analytic() {
        return Err(Error::param("weighted Sobolev norms need an analytic profile, not node samples"));
    }
    let pp = p.p();
    let profile_gap = |x: f64, to_right: f64| match f.horizon() {
        Some(h) if h == horizon => to_right,
        Some(h) => h - x,
        None => f64::INFINITY,
    };
    let est = tanh_sinh(
        |x| {
            let d = f.eval_split(x.from_left, profile_gap(x.x, x.to_right), k)?;
            Ok(d.abs().powf(pp) * w.pow_split(x.from_left, weight_gap(w, horizon, 0.0, x.to_right), 1.0))
        },
        0.0,
        horizon,
        settings,
    )
    .map_err(|e| match e {
        Error::Divergent(msg) | Error::Domain(msg) => {
            Error::Divergent(format!("derivative of order {k} is not in the weighted L^p space: {msg}"))
        }
        other => other,
    })?;
    Ok(est.value.powf(1.0 / pp))
}

/// `||y||_{W^{s,p}_ω} = (Σ_{k ≤ s} ||y^{(k)}||^p)^{1/p}` for `s` in `0..=2`.
pub fn weighted_sobolev_norm(
    f: &TestFunction,
    w: &WeightSpec,
    p: LebesgueExponent,
    s: u8,
    horizon: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    if s > 2 {
        return Err(Error::param(format!("smoothness index must be 0, 1 or 2, got {s}")));
    }
    let mut sum = 0.0;
    for k in 0..=s {
        sum += weighted_seminorm(f, w, p, k, horizon, settings)?.powf(p.p());
    }
    Ok(sum.powf(1.0 / p.p()))
}

/// Closed form of `||(t^κ)^{(k)}||_{L^p_ω(0, T)}` for constant and power weights.
pub fn power_profile_seminorm(kappa: f64, k: u8, w: &WeightSpec, p: LebesgueExponent, horizon: f64) -> Result<f64> {
    let mu = match *w {
        WeightSpec::ConstantOne => 0.0,
        WeightSpec::Power { mu } => mu,
        _ => return Err(Error::param("closed-form seminorm covers constant and power weights only")),
    };
    let coeff: f64 = (0..k).map(|i| kappa - i as f64).product();
    if coeff == 0.0 {
        return Ok(0.0);
    }
    let pp = p.p();
    let e = (kappa - k as f64) * pp + mu;
    if e <= -1.0 {
        return Err(Error::Divergent(format!(
            "derivative of order {k} is not in the weighted L^p space (exponent {e} <= -1)"
        )));
    }
    Ok((coeff.abs().powf(pp) * horizon.powf(e + 1.0) / (e + 1.0)).powf(1.0 / pp))
}

/// `||I^{1-α} y'||_{L^p_ω} / ||y'||_{L^p_ω}`.
///
/// The outer integrals use composite Gauss–Legendre on panels that halve in
/// width toward both ends of `(0, T)`, `levels` panels per side.
pub fn rl_norm_ratio(
    alpha: FractionalOrder,
    f: &TestFunction,
    w: &WeightSpec,
    p: LebesgueExponent,
    horizon: f64,
    levels: usize,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_horizon(horizon)?;
    if levels == 0 {
        return Err(Error::param("need at least one panel level"));
    }
    let half = 0.5 * horizon;
    let mut breaks = vec![0.0];
    breaks.extend((0..levels).rev().map(|k| half * 0.5f64.powi(k as i32)));
    breaks.extend((1..levels).map(|k| horizon - half * 0.5f64.powi(k as i32)));
    breaks.push(horizon);
    let pp = p.p();
    let weight = |t: f64| w.pow_split(t, horizon - t, 1.0);
    let num = composite_gauss_legendre(
        |t| Ok(caputo_quadrature(alpha, f, t, settings)?.abs().powf(pp) * weight(t)),
        &breaks,
        settings.nodes_per_panel,
    )?;
    let den =
        composite_gauss_legendre(|t| Ok(f.eval(t, 1)?.abs().powf(pp) * weight(t)), &breaks, settings.nodes_per_panel)?;
    if den == 0.0 {
        return Err(Error::domain("y' vanishes identically"));
    }
    Ok((num / den).powf(1.0 / pp))
}
