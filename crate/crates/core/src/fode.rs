//! L1 time stepping for `D^α y + λ y = f`, `y(0) = y0`, with `λ >= 0`.
//!
//! Each step solves the scalar linear equation `δ Y_n + λ Y_n = f(t_n)` for
//! `Y_n` by one division; there is no iteration.

use std::fmt;
use std::sync::Arc;

use crate::caputo::caputo_reference;
use crate::error::{Error, Result};
use crate::grid::{FractionalOrder, UniformGrid};
use crate::l1::{l1_scale, L1Coefficients};
use crate::profile::TestFunction;
use crate::quadrature::QuadratureSettings;
use crate::special::gamma;

/// Source term `f(t)`.
pub type SourceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct FodeProblem {
    alpha: FractionalOrder,
    lambda: f64,
    source: SourceFn,
    y0: f64,
    horizon: f64,
}

impl fmt::Debug for FodeProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FodeProblem")
            .field("alpha", &self.alpha)
            .field("lambda", &self.lambda)
            .field("y0", &self.y0)
            .field("horizon", &self.horizon)
            .finish_non_exhaustive()
    }
}

impl FodeProblem {
    pub fn new(alpha: FractionalOrder, lambda: f64, source: SourceFn, y0: f64, horizon: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::param(format!("lambda must satisfy lambda >= 0, got {lambda}")));
        }
        if !y0.is_finite() {
            return Err(Error::param(format!("y0 must be finite, got {y0}")));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::param(format!("T must be positive, got {horizon}")));
        }
        Ok(Self { alpha, lambda, source, y0, horizon })
    }

    /// Problem whose exact solution is `exact`: `f = D^α y + λ y`, `y0 = y(0)`.
    ///
    /// The Caputo derivative uses the power rule for power-type profiles and
    /// adaptive quadrature otherwise. Sampled profiles are rejected.
    pub fn manufactured(alpha: FractionalOrder, lambda: f64, exact: &TestFunction, horizon: f64) -> Result<Self> {
        if !exact.is_analytic() {
            return Err(Error::param("manufactured solutions need an analytic profile"));
        }
        let y0 = exact.eval(0.0, 0)?;
        let profile = exact.clone();
        let settings = QuadratureSettings::default();
        let source: SourceFn = Arc::new(move |t| {
            let d = if t > 0.0 { caputo_reference(alpha, &profile, t, &settings) } else { Ok(0.0) };
            match (d, profile.eval(t, 0)) {
                (Ok(d), Ok(y)) => d + lambda * y,
                _ => f64::NAN,
            }
        });
        Self::new(alpha, lambda, source, y0, horizon)
    }

    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn source(&self, t: f64) -> f64 {
        (self.source)(t)
    }
}

/// Numerical solution `Y_0, ..., Y_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FodeSolution {
    grid: UniformGrid,
    values: Vec<f64>,
}

impl FodeSolution {
    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub fn solve_fode(problem: &FodeProblem, grid: &UniformGrid) -> Result<FodeSolution> {
    let rel = (grid.horizon() - problem.horizon).abs() / problem.horizon;
    if rel > 1e-12 {
        return Err(Error::param(format!(
            "grid horizon {} does not match problem horizon {}",
            grid.horizon(),
            problem.horizon
        )));
    }
    let n_steps = grid.steps();
    let coeffs = L1Coefficients::new(problem.alpha, n_steps)?;
    let c = l1_scale(problem.alpha, grid);
    let denom = c + problem.lambda;
    let mut y = Vec::with_capacity(n_steps + 1);
    y.push(problem.y0);
    for n in 1..=n_steps {
        let f = problem.source(grid.node(n));
        if !f.is_finite() {
            return Err(Error::domain(format!("source is not finite at node n = {n} (t = {})", grid.node(n))));
        }
        let next = (f + c * coeffs.history(&y, n)) / denom;
        y.push(next);
    }
    Ok(FodeSolution { grid: *grid, values: y })
}

/// Errors `e_n = y(t_n) - Y_n` against a known solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// `e_0, ..., e_N`.
    pub errors: Vec<f64>,
    /// `max_{1 <= n <= N} |e_n|`.
    pub max_error: f64,
    /// `T^α / Γ(1+α) · max_n |R_n|`, once a truncation maximum is supplied.
    pub gronwall_bound: Option<f64>,
}

impl ErrorReport {
    /// Attaches the stability bound for a measured truncation maximum.
    pub fn with_truncation(mut self, alpha: FractionalOrder, horizon: f64, max_truncation: f64) -> Self {
        let a = alpha.value();
        self.gronwall_bound = Some(horizon.powf(a) / gamma(1.0 + a) * max_truncation);
        self
    }

    pub fn satisfies_gronwall(&self, slack: f64) -> Option<bool> {
        self.gronwall_bound.map(|b| self.max_error <= b * (1.0 + slack))
    }
}

pub fn global_error(sol: &FodeSolution, exact: &TestFunction) -> Result<ErrorReport> {
    let exact_values = exact.sample(&sol.grid)?;
    let errors: Vec<f64> = exact_values.iter().zip(&sol.values).map(|(y, yy)| y - yy).collect();
    let max_error = errors[1..].iter().fold(0.0f64, |m, e| m.max(e.abs()));
    Ok(ErrorReport { errors, max_error, gronwall_bound: None })
}
