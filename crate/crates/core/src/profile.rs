//! Analytic test profiles with exact first and second derivatives.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::UniformGrid;

/// Derivative evaluator attached to a [`TestFunction::Sampled`] profile.
pub type DerivativeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function of time used to exercise the discrete operator.
#[derive(Clone)]
pub enum TestFunction {
    /// `y(t) = t^kappa`, `kappa > 0`.
    Power { kappa: f64 },
    /// `y(t) = t^rho0 + (T - t)^rho_t - T^rho_t`, singular at both ends of `[0, T]`.
    Jacobi { rho0: f64, rho_t: f64, horizon: f64 },
    /// `y(t) = t^rho * ln(e T / t)^theta`.
    Log { rho: f64, theta: f64, horizon: f64 },
    /// `y(t) = t^2`.
    Quadratic,
    /// `y(t) = a + b t`.
    Linear { a: f64, b: f64 },
    /// `y(t) = c`.
    Constant { c: f64 },
    /// Node values on a grid, optionally with an evaluator for `y'`.
    Sampled { grid: UniformGrid, values: Vec<f64>, derivative: Option<DerivativeFn> },
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Power { kappa } => write!(f, "Power {{ kappa: {kappa} }}"),
            Self::Jacobi { rho0, rho_t, horizon } => {
                write!(f, "Jacobi {{ rho0: {rho0}, rho_t: {rho_t}, horizon: {horizon} }}")
            }
            Self::Log { rho, theta, horizon } => {
                write!(f, "Log {{ rho: {rho}, theta: {theta}, horizon: {horizon} }}")
            }
            Self::Quadratic => write!(f, "Quadratic"),
            Self::Linear { a, b } => write!(f, "Linear {{ a: {a}, b: {b} }}"),
            Self::Constant { c } => write!(f, "Constant {{ c: {c} }}"),
            Self::Sampled { grid, values, derivative } => f
                .debug_struct("Sampled")
                .field("grid", grid)
                .field("len", &values.len())
                .field("has_derivative", &derivative.is_some())
                .finish(),
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("{name} must be positive, got {v}")))
    }
}

/// `c * t^e` together with its limit at `t = 0`.
fn power_term(coeff: f64, t: f64, e: f64, what: &str) -> Result<f64> {
    if coeff == 0.0 {
        return Ok(0.0);
    }
    if t > 0.0 {
        return Ok(coeff * t.powf(e));
    }
    if e > 0.0 {
        Ok(0.0)
    } else if e == 0.0 {
        Ok(coeff)
    } else {
        Err(Error::domain(format!("{what} is singular at t = 0")))
    }
}

impl TestFunction {
    pub fn power(kappa: f64) -> Result<Self> {
        check_positive("kappa", kappa)?;
        Ok(Self::Power { kappa })
    }

    pub fn jacobi(rho0: f64, rho_t: f64, horizon: f64) -> Result<Self> {
        check_positive("rho0", rho0)?;
        check_positive("rho_T", rho_t)?;
        check_positive("T", horizon)?;
        Ok(Self::Jacobi { rho0, rho_t, horizon })
    }

    pub fn log(rho: f64, theta: f64, horizon: f64) -> Result<Self> {
        check_positive("rho", rho)?;
        check_positive("T", horizon)?;
        if !theta.is_finite() {
            return Err(Error::param("theta must be finite"));
        }
        Ok(Self::Log { rho, theta, horizon })
    }

    pub fn sampled(grid: UniformGrid, values: Vec<f64>, derivative: Option<DerivativeFn>) -> Result<Self> {
        if values.len() != grid.steps() + 1 {
            return Err(Error::param(format!(
                "sampled profile needs {} values, got {}",
                grid.steps() + 1,
                values.len()
            )));
        }
        Ok(Self::Sampled { grid, values, derivative })
    }

    /// Horizon carried by the profile, if any.
    pub fn horizon(&self) -> Option<f64> {
        match self {
            Self::Jacobi { horizon, .. } | Self::Log { horizon, .. } => Some(*horizon),
            Self::Sampled { grid, .. } => Some(grid.horizon()),
            _ => None,
        }
    }

    /// Whether `y`, `y'` and `y''` are available in closed form everywhere.
    pub fn is_analytic(&self) -> bool {
        !matches!(self, Self::Sampled { .. })
    }

    /// `y^{(order)}(t)` for `order` in `0..=2`.
    pub fn eval(&self, t: f64, order: u8) -> Result<f64> {
        let gap = self.horizon().map(|h| h - t).unwrap_or(f64::INFINITY);
        self.eval_split(t, gap, order)
    }

    /// Like [`eval`](Self::eval) but with `T - t` supplied by the caller, so that
    /// profiles singular at the horizon can be evaluated without cancellation.
    pub(crate) fn eval_split(&self, t: f64, to_horizon: f64, order: u8) -> Result<f64> {
        if order > 2 {
            return Err(Error::param(format!("derivative order must be 0, 1 or 2, got {order}")));
        }
        if !t.is_finite() || t < 0.0 {
            return Err(Error::domain(format!("t must be a finite nonnegative time, got {t}")));
        }
        match self {
            Self::Power { kappa } => {
                let k = *kappa;
                let (c, e) = match order {
                    0 => (1.0, k),
                    1 => (k, k - 1.0),
                    _ => (k * (k - 1.0), k - 2.0),
                };
                power_term(c, t, e, "derivative of t^kappa")
            }
            Self::Jacobi { rho0, rho_t, horizon } => {
                if to_horizon < 0.0 {
                    return Err(Error::domain(format!("t = {t} lies beyond the horizon {horizon}")));
                }
                let (r0, rt) = (*rho0, *rho_t);
                let what = "Jacobi profile derivative";
                match order {
                    0 => Ok(power_term(1.0, t, r0, what)? + power_term(1.0, to_horizon, rt, what)? - horizon.powf(rt)),
                    1 => Ok(power_term(r0, t, r0 - 1.0, what)? - power_term(rt, to_horizon, rt - 1.0, what)?),
                    _ => Ok(power_term(r0 * (r0 - 1.0), t, r0 - 2.0, what)?
                        + power_term(rt * (rt - 1.0), to_horizon, rt - 2.0, what)?),
                }
            }
            Self::Log { rho, theta, horizon } => {
                let (r, th) = (*rho, *theta);
                if t == 0.0 {
                    return if r - f64::from(order) > 0.0 {
                        Ok(0.0)
                    } else {
                        Err(Error::domain("log profile derivative is singular at t = 0"))
                    };
                }
                // ln(eT/t) = 1 + ln(T/t)
                let l = 1.0 + (horizon / t).ln();
                if l <= 0.0 {
                    return Err(Error::domain(format!("log profile undefined at t = {t} (needs t < eT)")));
                }
                let v = match order {
                    0 => t.powf(r) * l.powf(th),
                    1 => t.powf(r - 1.0) * l.powf(th - 1.0) * (r * l - th),
                    _ => {
                        let k = r * l - th;
                        t.powf(r - 2.0) * l.powf(th - 2.0) * ((r - 1.0) * l * k - (th - 1.0) * k - r * l)
                    }
                };
                Ok(v)
            }
            Self::Quadratic => Ok(match order {
                0 => t * t,
                1 => 2.0 * t,
                _ => 2.0,
            }),
            Self::Linear { a, b } => Ok(match order {
                0 => a + b * t,
                1 => *b,
                _ => 0.0,
            }),
            Self::Constant { c } => Ok(if order == 0 { *c } else { 0.0 }),
            Self::Sampled { grid, values, derivative } => match order {
                0 => {
                    let n = (t / grid.tau()).round();
                    if n >= 0.0 && (n as usize) <= grid.steps() && grid.node(n as usize) == t {
                        Ok(values[n as usize])
                    } else {
                        Err(Error::domain(format!(
                            "sampled profile queried off-node at t = {t}; interpolation is not provided"
                        )))
                    }
                }
                1 => derivative
                    .as_ref()
                    .map(|d| d(t))
                    .ok_or_else(|| Error::domain("sampled profile has no derivative evaluator")),
                _ => Err(Error::domain("sampled profile has no second derivative")),
            },
        }
    }

    /// Values `y(t_n)` at every node of `grid`.
    pub fn sample(&self, grid: &UniformGrid) -> Result<Vec<f64>> {
        (0..=grid.steps()).map(|n| self.eval_split(grid.node(n), self.gap_at(grid, n), 0)).collect()
    }

    fn gap_at(&self, grid: &UniformGrid, n: usize) -> f64 {
        match self.horizon() {
            // Exact when the profile shares the grid's horizon.
            Some(h) if h == grid.horizon() => grid.distance_to_horizon(n),
            Some(h) => h - grid.node(n),
            None => f64::INFINITY,
        }
    }
}
