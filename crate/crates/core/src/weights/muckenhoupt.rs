//! Lower estimate of the Muckenhoupt `A_p` characteristic over dyadic intervals.

use super::{LebesgueExponent, WeightSpec};
use crate::error::{Error, Result};
use crate::quadrature::{tanh_sinh, QuadratureSettings};

/// Outcome of [`ap_characteristic`].
#[derive(Debug, Clone, PartialEq)]
pub enum ApCharacteristic {
    /// Largest `A_p` quotient found; a lower bound for the true characteristic.
    Finite { value: f64, interval: (f64, f64) },
    /// The dual weight is not integrable on `interval`, so `ω` is not in `A_p`.
    NotInAp { interval: (f64, f64), reason: String },
}

impl ApCharacteristic {
    pub fn value(&self) -> Option<f64> {
        match self {
            Self::Finite { value, .. } => Some(*value),
            Self::NotInAp { .. } => None,
        }
    }
}

/// `sup_J (|J|^{-1} ∫_J ω) (|J|^{-1} ∫_J ω^{-1/(p-1)})^{p-1}` over the dyadic
/// subintervals of `(0, T)` down to level `depth`.
///
/// Dyadic intervals at depth `d` contain those at depth `d - 1`, so the
/// estimate never decreases with depth.
pub fn ap_characteristic(
    w: &WeightSpec,
    p: LebesgueExponent,
    horizon: f64,
    depth: u32,
    settings: &QuadratureSettings,
) -> Result<ApCharacteristic> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::param(format!("T must be positive, got {horizon}")));
    }
    if depth > 24 {
        return Err(Error::param(format!("depth must be at most 24, got {depth}")));
    }
    if let WeightSpec::ConstantOne = w {
        return Ok(ApCharacteristic::Finite { value: 1.0, interval: (0.0, horizon) });
    }
    let pp = p.p();
    let dual = p.dual_power();
    let mut best = ApCharacteristic::Finite { value: f64::NEG_INFINITY, interval: (0.0, horizon) };
    let mut best_value = f64::NEG_INFINITY;
    for level in 0..=depth {
        let count = 1usize << level;
        for k in 0..count {
            let a = horizon * (k as f64 / count as f64);
            let b = horizon * ((k + 1) as f64 / count as f64);
            let right_gap = horizon * ((count - k - 1) as f64 / count as f64);
            let len = b - a;
            let mean = |e: f64| {
                tanh_sinh(|x| Ok(w.pow_split(a + x.from_left, right_gap + x.to_right, e)), a, b, settings)
                    .map(|est| est.value / len)
            };
            let primal = mean(1.0)?;
            let dual_mean = match mean(dual) {
                Ok(v) => v,
                Err(Error::Divergent(reason)) => {
                    return Ok(ApCharacteristic::NotInAp { interval: (a, b), reason });
                }
                Err(e) => return Err(e),
            };
            let q = primal * dual_mean.powf(pp - 1.0);
            if q > best_value {
                best_value = q;
                best = ApCharacteristic::Finite { value: q, interval: (a, b) };
            }
        }
    }
    Ok(best)
}
