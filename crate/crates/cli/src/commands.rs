//! Subcommand implementations.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use l1caputo::experiments::{
    estimate_order, log_adjusted_order, reproduce_table, theoretical_order, truncation_study, write_csv, write_text,
    Convergence, LogTau, TableId, TableOptions,
};
use l1caputo::fode::SourceFn;
use l1caputo::weights::{ap_characteristic, ApCharacteristic};
use l1caputo::{
    caputo_power, global_error, l1_apply, solve_fode, FodeProblem, FractionalOrder, LebesgueExponent,
    QuadratureSettings, TestFunction, UniformGrid, WeightSpec,
};

use crate::args::{
    ApArgs, Command, FodeArgs, Format, LogTauArg, OrderArgs, ProfileArgs, ProfileKind, TableArgs, TruncationArgs,
    WeightKind,
};

pub const EXIT_PARAMETER: u8 = 2;
pub const EXIT_QUADRATURE: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Numeric(l1caputo::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Numeric(e) if e.is_quadrature_failure() => EXIT_QUADRATURE,
            Self::Numeric(_) => EXIT_PARAMETER,
            Self::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Numeric(e) => write!(f, "{e}"),
            Self::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<l1caputo::Error> for CliError {
    fn from(e: l1caputo::Error) -> Self {
        Self::Numeric(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

type CliResult = Result<(), CliError>;

pub fn run(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Table(a) => table(a, out),
        Command::Order(a) => order(a, out),
        Command::Truncation(a) => truncation(a, out),
        Command::SolveFode(a) => solve(a, out),
        Command::ApChar(a) => ap_char(a, out),
    }
}

fn log_tau(arg: LogTauArg) -> LogTau {
    match arg {
        LogTauArg::Coarsest => LogTau::Coarsest,
        LogTauArg::Middle => LogTau::Middle,
    }
}

fn table(a: TableArgs, out: &mut dyn Write) -> CliResult {
    let id = TableId::from_number(a.id)?;
    let mut opts = TableOptions { base_n: a.base_n, log_tau: log_tau(a.log_tau), ..TableOptions::default() };
    if let Some(t) = a.threads {
        opts.threads = t;
    }
    let rows = reproduce_table(id, &opts)?;
    let mut buf = Vec::new();
    match a.format {
        Format::Csv => write_csv(&mut buf, id, &rows, &opts)?,
        Format::Text => write_text(&mut buf, id, &rows, &opts)?,
    }
    match a.out {
        Some(path) => std::fs::write(path, buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(())
}

fn weight(kind: WeightKind, mu: f64, gamma: f64, horizon: f64) -> l1caputo::Result<WeightSpec> {
    match kind {
        WeightKind::One => Ok(WeightSpec::ConstantOne),
        WeightKind::Power => WeightSpec::power(mu),
        WeightKind::Jacobi => WeightSpec::jacobi(mu, gamma, horizon),
        WeightKind::Loginv => WeightSpec::log_inverse(mu, horizon),
    }
}

/// Profile just inside the weighted space, and the weight that defines it.
fn profile(a: &ProfileArgs) -> l1caputo::Result<(FractionalOrder, LebesgueExponent, TestFunction, WeightSpec)> {
    let alpha = FractionalOrder::new(a.alpha)?;
    let p = LebesgueExponent::new(a.p)?;
    let (f, w) = match a.profile {
        ProfileKind::Power => {
            let w = WeightSpec::power(a.mu)?;
            w.check_admissible(p)?;
            (TestFunction::power(2.0 - (1.0 + a.mu) / a.p + a.offset)?, w)
        }
        ProfileKind::Jacobi => {
            let w = WeightSpec::jacobi(a.mu, a.gamma, a.horizon)?;
            w.check_admissible(p)?;
            let rho0 = 2.0 - (1.0 + a.mu) / a.p + a.offset;
            let rho_t = 2.0 - (1.0 + a.gamma) / a.p + a.offset;
            (TestFunction::jacobi(rho0, rho_t, a.horizon)?, w)
        }
        ProfileKind::Log => {
            let w = WeightSpec::log_inverse(a.mu, a.horizon)?;
            let rho = 2.0 - 1.0 / a.p;
            let theta = (a.mu - 1.0) / a.p - a.offset;
            (TestFunction::log(rho, theta, a.horizon)?, w)
        }
    };
    Ok((alpha, p, f, w))
}

fn order(a: OrderArgs, out: &mut dyn Write) -> CliResult {
    let (alpha, p, f, w) = profile(&a.profile)?;
    let horizon = a.profile.horizon;
    let est = if a.log_adjusted {
        log_adjusted_order(alpha, &f, horizon, a.base_n, a.profile.mu, p, log_tau(a.log_tau))?
    } else {
        estimate_order(alpha, &f, horizon, a.base_n)?
    };
    writeln!(out, "profile      {f:?}")?;
    writeln!(out, "grids        {} / {} / {}", a.base_n, 2 * a.base_n, 4 * a.base_n)?;
    writeln!(out, "d1           {:.6e}", est.d1)?;
    writeln!(out, "d2           {:.6e}", est.d2)?;
    match est.convergence {
        Convergence::Rate(r) => writeln!(out, "estimated    {r:.4}")?,
        Convergence::Exact => writeln!(out, "estimated    exact (differences vanish to roundoff)")?,
    }
    if let Some(l) = est.log_adjusted {
        writeln!(out, "log-adjusted {l:.4}  (log tau: {})", log_tau(a.log_tau).label())?;
    }
    writeln!(out, "theoretical  {:.4}", theoretical_order(&w, p, alpha)?)?;
    Ok(())
}

fn truncation(a: TruncationArgs, out: &mut dyn Write) -> CliResult {
    let (alpha, p, f, _) = profile(&a.profile)?;
    let w = weight(a.weight, a.profile.mu, a.profile.gamma, a.profile.horizon)?;
    w.check_admissible(p)?;
    let st = truncation_study(alpha, &f, &w, p, a.profile.horizon, &a.grids, &QuadratureSettings::default())?;
    writeln!(out, "{:>8}  {:>12}  {:>12}  {:>12}  {:>12}", "N", "tau", "max R_n", "Lambda", "bound")?;
    for b in &st.breakdowns {
        let bound = b.bound.map_or_else(|| "inf".to_string(), |v| format!("{v:.5e}"));
        writeln!(
            out,
            "{:>8}  {:>12.5e}  {:>12.5e}  {:>12.5e}  {:>12}",
            b.steps, b.tau, b.max_residual, b.lambda, bound
        )?;
    }
    writeln!(out, "slope        {:.4}", st.slope)?;
    writeln!(out, "theoretical  {:.4}", st.theoretical_order)?;
    if let Some(r) = &st.normalized_bound_ratios {
        let shown: Vec<String> = r.iter().map(|v| format!("{v:.4}")).collect();
        writeln!(out, "max R_n / bound, normalized on the coarsest grid: {}", shown.join(" "))?;
    }
    Ok(())
}

/// Manufactured exponent from `power:K` or `quadratic`.
fn manufactured_exponent(spec: &str) -> l1caputo::Result<f64> {
    if spec == "quadratic" {
        return Ok(2.0);
    }
    let k = spec.strip_prefix("power:").ok_or_else(|| {
        l1caputo::Error::Parameter(format!("manufactured must be power:K or quadratic, got `{spec}`"))
    })?;
    let k: f64 =
        k.parse().map_err(|_| l1caputo::Error::Parameter(format!("cannot read exponent `{k}` in `{spec}`")))?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(l1caputo::Error::Parameter(format!("manufactured exponent must be positive, got {k}")));
    }
    Ok(k)
}

fn solve(a: FodeArgs, out: &mut dyn Write) -> CliResult {
    let alpha = FractionalOrder::new(a.alpha)?;
    let kappa = manufactured_exponent(&a.manufactured)?;
    let (lambda, y0) = (a.lambda, a.y0);
    // exact solution y0 + t^kappa
    let source: SourceFn =
        Arc::new(move |t| caputo_power(alpha, kappa, t).unwrap_or(f64::NAN) + lambda * (y0 + t.powf(kappa)));
    let problem = FodeProblem::new(alpha, lambda, source, y0, a.horizon)?;
    let grid = UniformGrid::new(a.horizon, a.n)?;
    let sol = solve_fode(&problem, &grid)?;
    let exact = TestFunction::sampled(grid, grid.sample(|t| y0 + t.powf(kappa)), None)?;
    let truncation = TestFunction::power(kappa)?;
    let delta = l1_apply(alpha, &grid, &truncation.sample(&grid)?)?;
    let max_r = (1..=a.n)
        .map(|n| Ok((caputo_power(alpha, kappa, grid.node(n))? - delta.values()[n - 1]).abs()))
        .collect::<l1caputo::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    let report = global_error(&sol, &exact)?.with_truncation(alpha, a.horizon, max_r);
    if a.print_solution {
        writeln!(out, "t,Y,y")?;
        for (n, (y, e)) in sol.values().iter().zip(&report.errors).enumerate() {
            writeln!(out, "{},{},{}", grid.node(n), y, y + e)?;
        }
    }
    writeln!(out, "N                {}", a.n)?;
    writeln!(out, "max error        {:.6e}", report.max_error)?;
    writeln!(out, "max truncation   {max_r:.6e}")?;
    writeln!(out, "stability bound  {:.6e}", report.gronwall_bound.unwrap_or(f64::NAN))?;
    writeln!(out, "bound holds      {}", report.satisfies_gronwall(1e-6).unwrap_or(false))?;
    Ok(())
}

fn ap_char(a: ApArgs, out: &mut dyn Write) -> CliResult {
    let p = LebesgueExponent::new(a.p)?;
    let w = weight(a.weight, a.mu, a.gamma, a.horizon)?;
    match ap_characteristic(&w, p, a.horizon, a.depth, &QuadratureSettings::default())? {
        ApCharacteristic::Finite { value, interval } => {
            writeln!(out, "A_p lower bound  {value:.6}")?;
            writeln!(out, "attained on      [{}, {}]", interval.0, interval.1)?;
        }
        ApCharacteristic::NotInAp { interval, reason } => {
            writeln!(out, "not in A_p: dual weight diverges on [{}, {}] ({reason})", interval.0, interval.1)?;
        }
    }
    Ok(())
}
