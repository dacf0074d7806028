//! The four tabulated parameter sweeps and their CSV / text rendering.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::{estimate_order, log_adjusted_order, theoretical_order, LogTau};
use crate::error::{Error, Result};
use crate::grid::FractionalOrder;
use crate::profile::TestFunction;
use crate::weights::{LebesgueExponent, WeightSpec};

const ALPHAS: [f64; 5] = [0.1, 0.3, 0.5, 0.6, 0.9];
const POWER_PAIRS: [(f64, f64); 4] = [(1.5, 0.0), (1.5, 0.4), (3.0, 0.0), (3.0, 1.6)];
const JACOBI_TRIPLES: [(f64, f64, f64); 8] = [
    (1.5, 0.0, 0.0),
    (1.5, 0.4, 0.1),
    (1.5, 0.1, 0.4),
    (1.5, 0.25, 0.25),
    (3.0, 0.0, 0.0),
    (3.0, 1.6, 0.4),
    (3.0, 0.4, 1.6),
    (3.0, 1.0, 1.0),
];
const LOG_PAIRS: [(f64, f64); 4] = [(1.5, 0.5), (1.5, 2.0), (3.0, 0.5), (3.0, 2.0)];

/// Offset that pushes each exponent just inside the admissible range.
const OFFSET: f64 = 0.001;
const HORIZON: f64 = 1.0;

/// One of the four parameter sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// `t^κ` under power weights.
    PowerProfile = 1,
    /// `t^{ρ0} + (T-t)^{ρT} - T^{ρT}` under Jacobi weights.
    JacobiProfile = 2,
    /// `t^ρ ln(eT/t)^θ` under logarithmic weights, plain order.
    LogProfile = 3,
    /// As the log-profile sweep, with the logarithmic prefactor removed.
    LogProfileAdjusted = 4,
}

impl TableId {
    pub fn from_number(id: u8) -> Result<Self> {
        match id {
            1 => Ok(Self::PowerProfile),
            2 => Ok(Self::JacobiProfile),
            3 => Ok(Self::LogProfile),
            4 => Ok(Self::LogProfileAdjusted),
            other => Err(Error::param(format!("table id must be 1, 2, 3 or 4, got {other}"))),
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    /// Base grid that reproduces the tabulated orders.
    pub fn default_base_n(self) -> usize {
        match self {
            Self::PowerProfile => 1024,
            _ => 2048,
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Self::PowerProfile => &["alpha", "p", "mu", "kappa"],
            Self::JacobiProfile => &["alpha", "p", "mu", "gamma", "rho0", "rho_t", "nu"],
            Self::LogProfile | Self::LogProfileAdjusted => &["alpha", "p", "mu", "rho", "theta"],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableOptions {
    /// Coarsest grid; `None` picks [`TableId::default_base_n`].
    pub base_n: Option<usize>,
    pub log_tau: LogTau,
    /// Worker threads; rows are emitted in order regardless.
    pub threads: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        Self { base_n: None, log_tau: LogTau::Coarsest, threads }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    /// Parameter columns, formatted as tabulated.
    pub params: Vec<String>,
    pub estimated: f64,
    pub theoretical: f64,
}

/// A row before it is computed.
struct RowSpec {
    params: Vec<String>,
    alpha: f64,
    p: f64,
    mu: f64,
    profile: TestFunction,
    weight: WeightSpec,
}

fn lattice(id: TableId) -> Result<Vec<RowSpec>> {
    let mut rows = Vec::new();
    for &a in &ALPHAS {
        match id {
            TableId::PowerProfile => {
                for &(p, mu) in &POWER_PAIRS {
                    let kappa = 2.0 - (1.0 + mu) / p + OFFSET;
                    rows.push(RowSpec {
                        params: vec![format!("{a:.1}"), format!("{p:.1}"), format!("{mu:.2}"), format!("{kappa:.3}")],
                        alpha: a,
                        p,
                        mu,
                        profile: TestFunction::power(kappa)?,
                        weight: WeightSpec::power(mu)?,
                    });
                }
            }
            TableId::JacobiProfile => {
                for &(p, mu, gamma) in &JACOBI_TRIPLES {
                    let rho0 = 2.0 - (1.0 + mu) / p + OFFSET;
                    let rho_t = 2.0 - (1.0 + gamma) / p + OFFSET;
                    let nu = mu.max(gamma);
                    rows.push(RowSpec {
                        params: vec![
                            format!("{a:.1}"),
                            format!("{p:.1}"),
                            format!("{mu:.2}"),
                            format!("{gamma:.2}"),
                            format!("{rho0:.3}"),
                            format!("{rho_t:.3}"),
                            format!("{nu:.2}"),
                        ],
                        alpha: a,
                        p,
                        mu,
                        profile: TestFunction::jacobi(rho0, rho_t, HORIZON)?,
                        weight: WeightSpec::jacobi(mu, gamma, HORIZON)?,
                    });
                }
            }
            TableId::LogProfile | TableId::LogProfileAdjusted => {
                for &(p, mu) in &LOG_PAIRS {
                    let rho = 2.0 - 1.0 / p;
                    let theta = (mu - 1.0) / p - OFFSET;
                    rows.push(RowSpec {
                        params: vec![
                            format!("{a:.1}"),
                            format!("{p:.1}"),
                            format!("{mu:.1}"),
                            format!("{rho:.3}"),
                            format!("{theta:.3}"),
                        ],
                        alpha: a,
                        p,
                        mu,
                        profile: TestFunction::log(rho, theta, HORIZON)?,
                        weight: WeightSpec::log_inverse(mu, HORIZON)?,
                    });
                }
            }
        }
    }
    Ok(rows)
}

fn compute_row(id: TableId, spec: &RowSpec, base_n: usize, log_tau: LogTau) -> Result<TableRow> {
    let alpha = FractionalOrder::new(spec.alpha)?;
    let p = LebesgueExponent::new(spec.p)?;
    let theoretical = theoretical_order(&spec.weight, p, alpha)?;
    let estimated = if id == TableId::LogProfileAdjusted {
        log_adjusted_order(alpha, &spec.profile, HORIZON, base_n, spec.mu, p, log_tau)?.log_adjusted
    } else {
        estimate_order(alpha, &spec.profile, HORIZON, base_n)?.order()
    };
    let estimated = estimated.ok_or_else(|| Error::domain("scheme is exact on a tabulated profile"))?;
    Ok(TableRow { params: spec.params.clone(), estimated, theoretical })
}

/// Runs every row of a sweep, in tabulated order.
pub fn reproduce_table(id: TableId, options: &TableOptions) -> Result<Vec<TableRow>> {
    let base_n = options.base_n.unwrap_or_else(|| id.default_base_n());
    let specs = lattice(id)?;
    let slots: Vec<Mutex<Option<Result<TableRow>>>> = specs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = options.threads.clamp(1, specs.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(spec) = specs.get(i) else { break };
                let row = compute_row(id, spec, base_n, options.log_tau);
                *slots[i].lock().expect("row slot poisoned") = Some(row);
            });
        }
    });
    slots.into_iter().map(|s| s.into_inner().expect("row slot poisoned").expect("every row is computed")).collect()
}

fn metadata(id: TableId, options: &TableOptions) -> (usize, Option<&'static str>) {
    let base_n = options.base_n.unwrap_or_else(|| id.default_base_n());
    let log_tau = (id == TableId::LogProfileAdjusted).then(|| options.log_tau.label());
    (base_n, log_tau)
}

/// CSV with a header row, LF line endings and orders to three decimals.
pub fn write_csv<W: Write>(out: &mut W, id: TableId, rows: &[TableRow], options: &TableOptions) -> std::io::Result<()> {
    let (base_n, log_tau) = metadata(id, options);
    let mut header: Vec<&str> = id.param_names().to_vec();
    header.extend(["estimated", "theoretical", "base_n"]);
    if log_tau.is_some() {
        header.push("log_tau");
    }
    writeln!(out, "{}", header.join(","))?;
    for r in rows {
        let mut cells = r.params.clone();
        cells.push(format!("{:.3}", r.estimated));
        cells.push(format!("{:.3}", r.theoretical));
        cells.push(base_n.to_string());
        if let Some(l) = log_tau {
            cells.push(l.to_string());
        }
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Aligned plain-text table.
pub fn write_text<W: Write>(
    out: &mut W,
    id: TableId,
    rows: &[TableRow],
    options: &TableOptions,
) -> std::io::Result<()> {
    let (base_n, log_tau) = metadata(id, options);
    let mut header: Vec<String> = id.param_names().iter().map(|s| s.to_string()).collect();
    header.extend(["estimated".to_string(), "theoretical".to_string()]);
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut c = r.params.clone();
            c.push(format!("{:.3}", r.estimated));
            c.push(format!("{:.3}", r.theoretical));
            c
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| body.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line =
        |cells: &[String]| cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
    write!(out, "table {}  base N = {base_n}", id.number())?;
    if let Some(l) = log_tau {
        write!(out, "  log tau = {l}")?;
    }
    writeln!(out)?;
    writeln!(out, "{}", line(&header))?;
    for r in &body {
        writeln!(out, "{}", line(r))?;
    }
    Ok(())
}
