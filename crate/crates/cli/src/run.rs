//! Run execution: builds the problem, drives the solvers, and renders the
//! CSV and diagnostic-summary outputs.
//!
//! CSV values use a fixed 12-significant-digit scientific format so that
//! repeated runs are byte-identical.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use fde_core::abm::{solve_pece, AbmConfig};
use fde_core::diagnostics::{derivative_jump, memory_term};
use fde_core::{gdtm, msgdtm, FractionalIvp, PolynomialRhs};

use crate::config::{ConfigError, Method, RunConfig, StepSpec, Violation};

/// Default CSV sample count for the series methods.
const DEFAULT_SAMPLES: usize = 401;

/// Panels per trajectory segment in the memory-term quadrature.
const MEMORY_REFINE: usize = 8;

/// Probe distances for the derivative-jump report.
const JUMP_EPSILONS: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// Failures of a run, ordered by exit code: configuration (2), solver (3),
/// I/O (4).
#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Solver(fde_core::Error),
    Io(io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            Self::Solver(_) => 3,
            Self::Io(_) => 4,
        }
    }

    fn config(message: String) -> Self {
        Self::Config(ConfigError {
            violations: vec![Violation {
                line: None,
                message,
            }],
        })
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(e) => e.fmt(f),
            Self::Solver(e) => write!(f, "solver failure: {e}"),
            Self::Io(e) => write!(f, "i/o failure: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        Self::Config(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

/// Diagnostic summary for compare runs, serialized as JSON.
#[derive(Debug, Clone, Serialize)]
pub struct CompareSummary {
    pub alpha: f64,
    pub t0: f64,
    pub t_end: f64,
    pub abm_step_size: f64,
    pub abm_steps: usize,
    pub sub_intervals: usize,
    pub series_order: usize,
    /// Largest |y_abm − y_msgdtm| over nodes in the first sub-interval.
    pub first_interval_max_deviation: f64,
    /// |y_abm − y_msgdtm| at the horizon.
    pub endpoint_deviation: f64,
    pub memory_terms: Vec<MemoryTermEntry>,
    pub derivative_jumps: Vec<DerivativeJumpEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MemoryTermEntry {
    pub breakpoint_index: usize,
    pub t: f64,
    pub value: f64,
    pub relative_share: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivativeJumpEntry {
    pub breakpoint_index: usize,
    pub t: f64,
    pub probes: Vec<JumpProbe>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JumpProbe {
    pub epsilon: f64,
    pub left_slope: f64,
    pub right_slope: f64,
}

/// In-memory result of a run: the CSV body plus, for compare runs, the
/// diagnostic summary.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub csv: String,
    pub summary: Option<CompareSummary>,
}

impl RunOutput {
    pub fn summary_json(&self) -> Option<String> {
        self.summary.as_ref().map(|s| {
            let mut text = serde_json::to_string_pretty(s).expect("summary serializes");
            text.push('\n');
            text
        })
    }
}

fn fmt_value(x: f64) -> String {
    format!("{x:.11e}")
}

fn build_ivp(config: &RunConfig) -> Result<FractionalIvp, RunError> {
    let rhs =
        PolynomialRhs::new(config.rhs.clone()).map_err(|e| RunError::config(e.to_string()))?;
    FractionalIvp::new(config.alpha, config.t0, config.y0, rhs, config.t_end)
        .map_err(|e| RunError::config(e.to_string()))
}

fn abm_config(ivp: &FractionalIvp, step: StepSpec) -> Result<AbmConfig, RunError> {
    match step {
        StepSpec::Count(n) => {
            AbmConfig::for_problem(ivp, n).map_err(|e| RunError::config(e.to_string()))
        }
        StepSpec::Size(h) => {
            let span = ivp.span();
            let steps = (span / h).round();
            if steps < 1.0 || !steps.is_finite() {
                return Err(RunError::config(format!(
                    "step size {h} exceeds the horizon {span}"
                )));
            }
            let n = steps as usize;
            let tolerance = span * f64::EPSILON * (n as f64 + 2.0);
            if (h * steps - span).abs() > tolerance {
                return Err(RunError::config(format!(
                    "h = {h} does not evenly divide [{}, {}]",
                    ivp.t0(),
                    ivp.t_end()
                )));
            }
            AbmConfig::new(h, n).map_err(|e| RunError::config(e.to_string()))
        }
    }
}

/// Runs the configured computation and renders its outputs in memory.
pub fn execute(config: &RunConfig) -> Result<RunOutput, RunError> {
    let ivp = build_ivp(config)?;
    match config.method {
        Method::Abm => {
            let abm = abm_config(&ivp, config.step.expect("validated"))?;
            let traj = solve_pece(&ivp, &abm).map_err(RunError::Solver)?;
            let mut csv = String::from("t,y\n");
            for (&t, &y) in traj.nodes().iter().zip(traj.values()) {
                csv.push_str(&format!("{},{}\n", fmt_value(t), fmt_value(y)));
            }
            Ok(RunOutput { csv, summary: None })
        }
        Method::Gdtm => {
            let order = config.series_order.expect("validated");
            let series = gdtm::series_coefficients(&ivp, order, ivp.t0(), ivp.y0())
                .map_err(RunError::Solver)?;
            let csv = sampled_csv(config, |t| series.eval(t))?;
            Ok(RunOutput { csv, summary: None })
        }
        Method::Msgdtm => {
            let order = config.series_order.expect("validated");
            let m = config.sub_intervals.expect("validated");
            let pw = msgdtm::solve(&ivp, m, order).map_err(RunError::Solver)?;
            let csv = sampled_csv(config, |t| pw.sample(t))?;
            Ok(RunOutput { csv, summary: None })
        }
        Method::Compare => execute_compare(config, &ivp),
    }
}

fn sampled_csv(
    config: &RunConfig,
    eval: impl Fn(f64) -> fde_core::Result<f64>,
) -> Result<String, RunError> {
    let samples = config.samples.unwrap_or(DEFAULT_SAMPLES);
    let nodes = fde_core::make_uniform_grid(config.t0, config.t_end, samples - 1)
        .map_err(|e| RunError::config(e.to_string()))?;
    let mut csv = String::from("t,y\n");
    for &t in &nodes {
        let y = eval(t).map_err(RunError::Solver)?;
        csv.push_str(&format!("{},{}\n", fmt_value(t), fmt_value(y)));
    }
    Ok(csv)
}

fn execute_compare(config: &RunConfig, ivp: &FractionalIvp) -> Result<RunOutput, RunError> {
    let abm = abm_config(ivp, config.step.expect("validated"))?;
    let m = config.sub_intervals.expect("validated");
    let order = config.series_order.expect("validated");

    let traj = solve_pece(ivp, &abm).map_err(RunError::Solver)?;
    let pw = msgdtm::solve(ivp, m, order).map_err(RunError::Solver)?;

    let mut csv = String::from("t,y_abm,y_msgdtm,abs_diff\n");
    let mut deviations = Vec::with_capacity(traj.len());
    for (&t, &y_abm) in traj.nodes().iter().zip(traj.values()) {
        let y_ms = pw.sample(t).map_err(RunError::Solver)?;
        let diff = (y_abm - y_ms).abs();
        deviations.push((t, diff));
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_value(t),
            fmt_value(y_abm),
            fmt_value(y_ms),
            fmt_value(diff)
        ));
    }

    let first_breakpoint = pw.breakpoints()[1];
    let slack = ivp.span() * 1e-14;
    let first_interval_max_deviation = deviations
        .iter()
        .filter(|(t, _)| *t <= first_breakpoint + slack)
        .map(|(_, d)| *d)
        .fold(0.0, f64::max);
    let endpoint_deviation = deviations.last().map(|(_, d)| *d).unwrap_or(0.0);

    let mut memory_terms = Vec::new();
    let mut jumps = Vec::new();
    let sub_width = ivp.span() / m as f64;
    for k in selected_interior_breakpoints(m) {
        let t = pw.breakpoints()[k];
        let report = memory_term(
            &traj,
            pw.breakpoints(),
            k,
            ivp.alpha(),
            ivp.rhs(),
            MEMORY_REFINE,
        )
        .map_err(RunError::Solver)?;
        memory_terms.push(MemoryTermEntry {
            breakpoint_index: k,
            t,
            value: report.value,
            relative_share: report.relative_share,
        });
        let mut probes = Vec::new();
        for &epsilon in JUMP_EPSILONS.iter().filter(|&&e| e < sub_width) {
            let jump = derivative_jump(&pw, k, epsilon).map_err(RunError::Solver)?;
            probes.push(JumpProbe {
                epsilon,
                left_slope: jump.left_slope,
                right_slope: jump.right_slope,
            });
        }
        if !probes.is_empty() {
            jumps.push(DerivativeJumpEntry {
                breakpoint_index: k,
                t,
                probes,
            });
        }
    }

    let summary = CompareSummary {
        alpha: ivp.alpha(),
        t0: ivp.t0(),
        t_end: ivp.t_end(),
        abm_step_size: ivp.span() / abm.n_steps as f64,
        abm_steps: abm.n_steps,
        sub_intervals: m,
        series_order: order,
        first_interval_max_deviation,
        endpoint_deviation,
        memory_terms,
        derivative_jumps: jumps,
    };
    Ok(RunOutput {
        csv,
        summary: Some(summary),
    })
}

/// Interior breakpoints reported in the summary: all of them for small
/// partitions, one per decile for large ones.
fn selected_interior_breakpoints(m: usize) -> Vec<usize> {
    if m <= 1 {
        return Vec::new();
    }
    if m - 1 <= 12 {
        return (1..m).collect();
    }
    let mut picks: Vec<usize> = (1..=9).map(|i| i * m / 10).collect();
    picks.retain(|&k| k >= 1 && k < m);
    picks.dedup();
    picks
}

/// Executes a run and writes its outputs.
///
/// The CSV goes to `output` when given (falling back to the config's own
/// `output` key, then stdout). A compare summary goes to `summary_path`
/// when given, otherwise next to a file-backed CSV as
/// `<stem>.summary.json`; with the CSV on stdout and no explicit summary
/// path, the summary is skipped.
pub fn run_to_files(
    config: &RunConfig,
    output: Option<&Path>,
    summary_path: Option<&Path>,
) -> Result<(), RunError> {
    let result = execute(config)?;
    let destination: Option<PathBuf> = output
        .map(Path::to_path_buf)
        .or_else(|| config.output.clone());
    match &destination {
        Some(path) => fs::write(path, result.csv.as_bytes())?,
        None => io::stdout().write_all(result.csv.as_bytes())?,
    }
    if let Some(json) = result.summary_json() {
        let summary_dest: Option<PathBuf> = summary_path
            .map(Path::to_path_buf)
            .or_else(|| destination.as_ref().map(|p| summary_sibling(p)));
        if let Some(path) = summary_dest {
            fs::write(path, json.as_bytes())?;
        }
    }
    Ok(())
}

/// `<stem>.summary.json` next to the CSV path.
pub fn summary_sibling(csv_path: &Path) -> PathBuf {
    let stem = csv_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".into());
    csv_path.with_file_name(format!("{stem}.summary.json"))
}
