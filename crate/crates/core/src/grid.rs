//! Uniform time grids and the fractional order.

use crate::error::{Error, Result};

/// Fractional order `alpha` of the Caputo derivative, restricted to `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::param(format!("alpha must satisfy 0 < alpha < 1, got {alpha}")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `Gamma(2 - alpha)`, the normalization of the L1 operator.
    pub fn gamma_two_minus(self) -> f64 {
        crate::special::gamma(2.0 - self.0)
    }
}

/// Uniform grid `t_n = n * tau`, `n = 0..=N`, on `[0, T]`.
///
/// Nodes are computed as `T * (n / N)`. The quotient `n / N` is the correctly
/// rounded value of a rational number, so a node of a grid and the matching
/// node of any refinement are bit-identical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    horizon: f64,
    steps: usize,
}

impl UniformGrid {
    pub fn new(horizon: f64, steps: usize) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::param(format!("horizon T must be positive and finite, got {horizon}")));
        }
        if steps == 0 {
            return Err(Error::param("step count N must be at least 1"));
        }
        Ok(Self { horizon, steps })
    }

    /// Horizon `T`.
    #[inline]
    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Number of steps `N`.
    #[inline]
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Step size `tau = T / N`.
    #[inline]
    pub fn tau(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    /// Node `t_n`. Panics if `n > N`.
    #[inline]
    pub fn node(&self, n: usize) -> f64 {
        assert!(n <= self.steps, "node index {n} out of range 0..={}", self.steps);
        if n == self.steps {
            self.horizon
        } else {
            self.horizon * (n as f64 / self.steps as f64)
        }
    }

    /// Distance `T - t_n`, computed without cancellation.
    #[inline]
    pub fn distance_to_horizon(&self, n: usize) -> f64 {
        assert!(n <= self.steps);
        self.horizon * ((self.steps - n) as f64 / self.steps as f64)
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.steps + 1).map(move |n| self.node(n))
    }

    /// Grid with `N * factor` steps over the same horizon.
    pub fn refine(&self, factor: usize) -> Result<Self> {
        if factor < 2 {
            return Err(Error::param(format!("refinement factor must be at least 2, got {factor}")));
        }
        let steps = self.steps.checked_mul(factor).ok_or_else(|| Error::param("refined step count overflows"))?;
        Self::new(self.horizon, steps)
    }

    /// Samples `y(t_n)` for every node.
    pub fn sample(&self, y: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes().map(y).collect()
    }
}
