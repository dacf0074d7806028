//! Quadrature for integrands with endpoint singularities.
//!
//! The workhorse is tanh-sinh (double-exponential) quadrature. Abscissae are
//! handed to the integrand together with their exact distances to both
//! endpoints, so an integrand like `s^{-0.8}` or `(T - s)^{-0.3}` can be
//! evaluated at points 1e-300 away from the endpoint without cancellation.
//!
//! Singular convolution kernels `(t - s)^{beta - 1}` are removed with the
//! substitution `t - s = u^{1/beta}` on the half of the interval adjacent to
//! `t`, which turns the kernel into the constant `1/beta`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Controls for the adaptive quadrature routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Relative tolerance on successive refinement levels.
    pub rel_tol: f64,
    /// Maximum tanh-sinh refinement level (step `2^-level`).
    pub max_depth: u32,
    /// Gauss–Legendre points per panel for composite panel rules.
    pub nodes_per_panel: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self { rel_tol: 1e-10, max_depth: 12, nodes_per_panel: 8 }
    }
}

impl QuadratureSettings {
    pub fn new(rel_tol: f64, max_depth: u32, nodes_per_panel: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-4) {
            return Err(Error::param(format!("quadrature tolerance must lie in (0, 1e-4], got {rel_tol}")));
        }
        if max_depth < 1 {
            return Err(Error::param("quadrature depth must be at least 1"));
        }
        if nodes_per_panel < 1 {
            return Err(Error::param("nodes per panel must be at least 1"));
        }
        Ok(Self { rel_tol, max_depth, nodes_per_panel })
    }

    pub fn with_tolerance(self, rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, self.max_depth, self.nodes_per_panel)
    }
}

/// Quadrature result with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value + o.value,
            error: self.error + o.error,
            evaluations: self.evaluations + o.evaluations,
        }
    }
}

/// An abscissa in `[a, b]` with its distances to both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    /// `x - a`, exact near `a`.
    pub from_left: f64,
    /// `b - x`, exact near `b`.
    pub to_right: f64,
}

// exp(-2|u|) below this is dropped; keeps endpoint distances above ~1e-300 of the width.
const MIN_TAIL: f64 = 1e-300;
const MIN_LEVEL: u32 = 3;

struct Node {
    offset: f64,
    weight: f64,
}

/// Half-line node with parameter `t > 0`: distance from the nearer endpoint
/// as a fraction of the width, and the Jacobian factor.
fn half_node(t: f64) -> Option<Node> {
    let u = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * u).exp();
    if e < MIN_TAIL {
        return None;
    }
    let denom = 1.0 + e;
    Some(Node { offset: e / denom, weight: 2.0 * std::f64::consts::PI * t.cosh() * e / (denom * denom) })
}

/// Tanh-sinh quadrature of `f` over `[a, b]`.
///
/// The integrand may be singular at either endpoint as long as it is
/// integrable there. Each level halves the step; the difference between
/// successive levels is the error estimate. If the mass beyond the outermost
/// abscissa is not negligible the integral is reported as divergent, which
/// also catches endpoint singularities too strong to be resolved in double
/// precision.
pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, settings: &QuadratureSettings) -> Result<Estimate>
where
    F: FnMut(Abscissa) -> Result<f64>,
{
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::param(format!("invalid integration interval [{a}, {b}]")));
    }
    let width = b - a;
    if width == 0.0 {
        return Ok(Estimate { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let mut evals = 0usize;
    // nearest-to-endpoint tail magnitude |f| * distance, per side
    let mut tail = [0.0f64; 2];
    let mut nearest = [f64::INFINITY; 2];

    let mut eval = |x: Abscissa, evals: &mut usize| -> Result<f64> {
        *evals += 1;
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::Divergent(format!("integrand is not finite at x = {:e}", x.x)));
        }
        Ok(v)
    };

    // Sum of f * weight over the nodes with parameter j*h, j ≡ parity.
    let mut level_sum = |h: f64, start: u64, stride: u64, evals: &mut usize| -> Result<(f64, f64)> {
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        let mut j = start;
        loop {
            let t = j as f64 * h;
            let node = if t == 0.0 { Some(Node { offset: 0.5, weight: FRAC_PI_2 }) } else { half_node(t) };
            let Some(node) = node else { break };
            let d = node.offset * width;
            if t == 0.0 {
                let v = eval(Abscissa { x: a + 0.5 * width, from_left: 0.5 * width, to_right: 0.5 * width }, evals)?;
                sum += v * node.weight;
                abs_sum += v.abs() * node.weight;
            } else {
                let left = Abscissa { x: a + d, from_left: d, to_right: width - d };
                let right = Abscissa { x: b - d, from_left: width - d, to_right: d };
                let vl = eval(left, evals)?;
                let vr = eval(right, evals)?;
                for (side, v) in [(0usize, vl), (1usize, vr)] {
                    if d < nearest[side] {
                        nearest[side] = d;
                        tail[side] = v.abs() * d;
                    }
                }
                sum += (vl + vr) * node.weight;
                abs_sum += (vl.abs() + vr.abs()) * node.weight;
            }
            j += stride;
        }
        Ok((sum, abs_sum))
    };

    let scale = 0.5 * width;
    let (s0, l0) = level_sum(1.0, 0, 1, &mut evals)?;
    let mut value = s0 * scale;
    let mut l1 = l0 * scale;
    let mut diff = f64::INFINITY;
    for level in 1..=settings.max_depth {
        let h = 0.5f64.powi(level as i32);
        let (s, l) = level_sum(h, 1, 2, &mut evals)?;
        let next = 0.5 * value + s * h * scale;
        l1 = 0.5 * l1 + l * h * scale;
        diff = (next - value).abs();
        value = next;
        if level >= MIN_LEVEL && (diff <= settings.rel_tol * value.abs() || diff <= 64.0 * f64::EPSILON * l1) {
            check_tail(tail, value, l1, settings)?;
            return Ok(Estimate { value, error: diff, evaluations: evals });
        }
    }
    check_tail(tail, value, l1, settings)?;
    Err(Error::NotConverged { estimate: value, error_bound: diff })
}

fn check_tail(tail: [f64; 2], value: f64, l1: f64, settings: &QuadratureSettings) -> Result<()> {
    let tail_mass = tail[0].max(tail[1]);
    if tail_mass > settings.rel_tol * value.abs().max(f64::MIN_POSITIVE) && tail_mass > 64.0 * f64::EPSILON * l1 {
        return Err(Error::Divergent(format!(
            "integrand mass near an endpoint does not vanish (tail ~ {tail_mass:e}, integral ~ {value:e})"
        )));
    }
    Ok(())
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            nodes[0] = 0.0;
            weights[0] = 2.0;
            break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre rule over consecutive panels given by `breaks`.
pub fn composite_gauss_legendre<F>(mut f: F, breaks: &[f64], nodes_per_panel: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (xs, ws) = gauss_legendre(nodes_per_panel);
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for (x, wt) in xs.iter().zip(&ws) {
            total += wt * half * f(mid + half * x)?;
        }
    }
    Ok(total)
}

/// `∫_0^t (t - s)^{beta - 1} g(s, t - s) ds` for `beta` in `(0, 1]`.
///
/// `g` receives `s` and the exact gap `t - s`. On `[0, t/2]` the kernel is
/// smooth and tanh-sinh absorbs any singularity of `g` at `s = 0`; on
/// `[t/2, t]` the substitution `t - s = u^{1/beta}` makes the kernel constant.
pub fn kernel_convolution<G>(beta: f64, t: f64, mut g: G, settings: &QuadratureSettings) -> Result<Estimate>
where
    G: FnMut(f64, f64) -> Result<f64>,
{
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::param(format!("kernel exponent beta must lie in (0, 1], got {beta}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("convolution needs t > 0, got {t}")));
    }
    let half = 0.5 * t;
    let near_origin = tanh_sinh(
        |p| {
            let gap = t - p.x;
            Ok(gap.powf(beta - 1.0) * g(p.from_left, gap)?)
        },
        0.0,
        half,
        settings,
    )?;
    let inv = 1.0 / beta;
    let upper = half.powf(beta);
    let near_t = tanh_sinh(
        |p| {
            let gap = p.from_left.powf(inv);
            g(t - gap, gap)
        },
        0.0,
        upper,
        settings,
    )?;
    let near_t = Estimate { value: near_t.value * inv, error: near_t.error * inv, ..near_t };
    Ok(near_origin + near_t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> QuadratureSettings {
        QuadratureSettings::default()
    }

    #[test]
    fn settings_validation() {
        assert!(QuadratureSettings::new(0.0, 5, 4).is_err());
        assert!(QuadratureSettings::new(1e-3, 5, 4).is_err());
        assert!(QuadratureSettings::new(1e-6, 0, 4).is_err());
        assert!(QuadratureSettings::new(1e-6, 3, 0).is_err());
        assert!(QuadratureSettings::new(1e-4, 1, 1).is_ok());
    }

    #[test]
    fn smooth_integrals() {
        let r = tanh_sinh(|p| Ok(p.x.exp()), 0.0, 1.0, &settings()).unwrap();
        assert!((r.value - (1f64.exp() - 1.0)).abs() < 1e-13);
        let r = tanh_sinh(|p| Ok(p.x.sin()), 0.0, std::f64::consts::PI, &settings()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn endpoint_power_singularities() {
        for a in [0.2, 0.5, 0.8, 0.9] {
            let r = tanh_sinh(|p| Ok(p.from_left.powf(-a)), 0.0, 1.0, &settings()).unwrap();
            let want = 1.0 / (1.0 - a);
            assert!(((r.value - want) / want).abs() < 1e-11, "a={a}: {}", r.value);
            let r = tanh_sinh(|p| Ok(p.to_right.powf(-a)), 0.0, 2.0, &settings()).unwrap();
            let want = 2f64.powf(1.0 - a) / (1.0 - a);
            assert!(((r.value - want) / want).abs() < 1e-11, "a={a}: {}", r.value);
        }
    }

    #[test]
    fn log_singularity() {
        // ∫_0^1 ln(x) dx = -1
        let r = tanh_sinh(|p| Ok(p.from_left.ln()), 0.0, 1.0, &settings()).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn divergent_integrals_are_flagged() {
        for a in [1.0, 1.2, 1.5] {
            let r = tanh_sinh(|p| Ok(p.from_left.powf(-a)), 0.0, 1.0, &settings());
            assert!(matches!(r, Err(Error::Divergent(_))), "a={a}: {r:?}");
        }
    }

    #[test]
    fn zero_integrand_converges() {
        let r = tanh_sinh(|_| Ok(0.0), 0.0, 1.0, &settings()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn not_converged_keeps_estimate() {
        let s = QuadratureSettings::new(1e-10, 1, 4).unwrap();
        match tanh_sinh(|p| Ok((40.0 * p.x).sin()), 0.0, 1.0, &s) {
            Err(Error::NotConverged { estimate, error_bound }) => {
                assert!(estimate.is_finite() && error_bound > 0.0)
            }
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }

    #[test]
    fn gauss_legendre_exact_on_polynomials() {
        for n in 1..=12 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for deg in 0..(2 * n) {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn composite_rule() {
        let breaks: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let v = composite_gauss_legendre(|x| Ok(x.exp()), &breaks, 5).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn kernel_convolution_of_constant() {
        // ∫_0^t (t-s)^{beta-1} ds = t^beta / beta
        for beta in [0.1, 0.5, 0.7, 1.0] {
            for t in [0.3, 1.0, 2.5] {
                let r = kernel_convolution(beta, t, |_, _| Ok(1.0), &settings()).unwrap();
                let want = t.powf(beta) / beta;
                assert!(((r.value - want) / want).abs() < 1e-12, "beta={beta} t={t}");
            }
        }
    }

    #[test]
    fn kernel_convolution_beta_function() {
        // ∫_0^t (t-s)^{b-1} s^{c-1} ds = t^{b+c-1} B(b, c)
        use crate::special::gamma;
        for (b, c) in [(0.5, 0.5), (0.3, 0.2), (0.9, 1.7)] {
            let t = 0.8;
            let r = kernel_convolution(b, t, |s, _| Ok(s.powf(c - 1.0)), &settings()).unwrap();
            let want = t.powf(b + c - 1.0) * gamma(b) * gamma(c) / gamma(b + c);
            assert!(((r.value - want) / want).abs() < 1e-10, "b={b} c={c}: {} vs {want}", r.value);
        }
    }
}
