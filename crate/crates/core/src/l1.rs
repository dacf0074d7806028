//! The L1 discretization of the Caputo derivative on a uniform grid.
//!
//! ```text
//! δ y(t_n) = τ^{-α} / Γ(2-α) · ( y(t_n) - b_{n-1} y(t_0) - Σ_{i=1}^{n-1} (b_{n-i-1} - b_{n-i}) y(t_i) )
//! b_i = (i+1)^{1-α} - i^{1-α}
//! ```
//!
//! Application is direct O(N²) summation.

use crate::error::{Error, Result};
use crate::grid::{FractionalOrder, UniformGrid};

/// The L1 convolution weights `b_0, b_1, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Coefficients {
    alpha: FractionalOrder,
    b: Vec<f64>,
}

impl L1Coefficients {
    pub fn new(alpha: FractionalOrder, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::param("coefficient count must be at least 1"));
        }
        let e = 1.0 - alpha.value();
        let b = (0..count)
            .map(|i| {
                let i = i as f64;
                (i + 1.0).powf(e) - i.powf(e)
            })
            .collect();
        Ok(Self { alpha, b })
    }

    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// `b_{n-1} y_0 + Σ_{i=1}^{n-1} (b_{n-i-1} - b_{n-i}) y_i`, the part of the
    /// bracket that does not involve `y_n`.
    pub(crate) fn history(&self, samples: &[f64], n: usize) -> f64 {
        let b = &self.b;
        let mut acc = b[n - 1] * samples[0];
        for i in 1..n {
            acc += (b[n - i - 1] - b[n - i]) * samples[i];
        }
        acc
    }
}

/// `b_i` for `i = 0..count`.
pub fn l1_coefficients(alpha: FractionalOrder, count: usize) -> Result<L1Coefficients> {
    L1Coefficients::new(alpha, count)
}

/// `τ^{-α} / Γ(2-α)`.
pub fn l1_scale(alpha: FractionalOrder, grid: &UniformGrid) -> f64 {
    grid.tau().powf(-alpha.value()) / alpha.gamma_two_minus()
}

/// Discrete Caputo derivative on every node `t_1..t_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDerivative {
    grid: UniformGrid,
    values: Vec<f64>,
}

impl DiscreteDerivative {
    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    /// `δ y(t_n)` for `1 <= n <= N`.
    pub fn at(&self, n: usize) -> Result<f64> {
        if n == 0 || n > self.grid.steps() {
            return Err(Error::domain(format!(
                "discrete derivative is defined for nodes 1..={}, got {n}",
                self.grid.steps()
            )));
        }
        Ok(self.values[n - 1])
    }

    /// Values for `n = 1..=N`, in order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn check_samples(grid: &UniformGrid, samples: &[f64]) -> Result<()> {
    if samples.len() != grid.steps() + 1 {
        return Err(Error::param(format!(
            "expected {} samples for a grid with N = {}, got {}",
            grid.steps() + 1,
            grid.steps(),
            samples.len()
        )));
    }
    if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
        return Err(Error::param(format!("sample {i} is not finite")));
    }
    Ok(())
}

/// Applies the L1 operator to `samples = y(t_0), ..., y(t_N)`.
pub fn l1_apply(alpha: FractionalOrder, grid: &UniformGrid, samples: &[f64]) -> Result<DiscreteDerivative> {
    check_samples(grid, samples)?;
    let coeffs = L1Coefficients::new(alpha, grid.steps())?;
    let scale = l1_scale(alpha, grid);
    let values = (1..=grid.steps()).map(|n| scale * (samples[n] - coeffs.history(samples, n))).collect();
    Ok(DiscreteDerivative { grid: *grid, values })
}

/// `δ y(t_n)` at a single node.
pub fn l1_apply_single(alpha: FractionalOrder, grid: &UniformGrid, samples: &[f64], n: usize) -> Result<f64> {
    check_samples(grid, samples)?;
    if n == 0 || n > grid.steps() {
        return Err(Error::domain(format!("node index must satisfy 1 <= n <= {}, got {n}", grid.steps())));
    }
    let coeffs = L1Coefficients::new(alpha, n)?;
    Ok(l1_scale(alpha, grid) * (samples[n] - coeffs.history(samples, n)))
}

/// The same operator written as `1/Γ(1-α) Σ_j u_j ∫_{t_j}^{t_{j+1}} (t_n - s)^{-α} ds`
/// with backward difference quotients `u_j`. Independent of the coefficient
/// form; kept as a cross-check.
pub fn l1_apply_integrated(alpha: FractionalOrder, grid: &UniformGrid, samples: &[f64]) -> Result<DiscreteDerivative> {
    check_samples(grid, samples)?;
    let a = alpha.value();
    let tau = grid.tau();
    let norm = 1.0 / crate::special::gamma(1.0 - a);
    let values = (1..=grid.steps())
        .map(|n| {
            (0..n)
                .map(|j| {
                    let u = (samples[j + 1] - samples[j]) / tau;
                    // ∫_{t_j}^{t_{j+1}} (t_n - s)^{-α} ds, with t_n - s measured in steps
                    let far = ((n - j) as f64 * tau).powf(1.0 - a);
                    let near = ((n - j - 1) as f64 * tau).powf(1.0 - a);
                    u * (far - near) / (1.0 - a)
                })
                .sum::<f64>()
                * norm
        })
        .collect();
    Ok(DiscreteDerivative { grid: *grid, values })
}
