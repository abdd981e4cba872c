use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fde_cli::config::{ConfigError, Fields, Method, RunConfig, Violation};
use fde_cli::presets;
use fde_cli::run::{run_to_files, RunError};

#[derive(Parser)]
#[command(
    name = "fde",
    version,
    about = "Caputo fractional IVP solvers: Adams-Bashforth-Moulton PECE, GDTM and multi-step GDTM",
    after_help = "Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 i/o failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem with a single method and write a t,y CSV
    Solve {
        /// Method to run: abm, gdtm or msgdtm
        #[arg(long)]
        method: Option<String>,
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Run ABM and MSGDTM on the same problem; writes a comparison CSV and
    /// a JSON diagnostics summary
    Compare {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Summary destination (default: <output stem>.summary.json)
        #[arg(long, value_name = "PATH")]
        summary: Option<PathBuf>,
    },
    /// Run a built-in experiment preset (riccati-fig1, riccati-fig2)
    Preset {
        /// Preset name
        name: String,
        /// CSV destination (default: <name>.csv)
        #[arg(long, short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
        /// Summary destination (default: <name>.summary.json)
        #[arg(long, value_name = "PATH")]
        summary: Option<PathBuf>,
    },
}

/// Problem description, either from a key=value file or from flags.
#[derive(Args)]
struct ProblemArgs {
    /// Plain-text key=value problem description; excludes the other
    /// problem flags
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Fractional order in (0, 1]
    #[arg(long)]
    alpha: Option<f64>,
    /// Start time
    #[arg(long)]
    t0: Option<f64>,
    /// End time
    #[arg(long)]
    t_end: Option<f64>,
    /// Initial value y(t0)
    #[arg(long)]
    y0: Option<f64>,
    /// Comma-separated coefficients c0,c1,... of f(t,y) = sum c_d y^d
    #[arg(long, value_name = "C0,C1,...", allow_hyphen_values = true)]
    rhs: Option<String>,
    /// Step size for the predictor-corrector (exactly one of
    /// --step-size/--steps)
    #[arg(long)]
    step_size: Option<f64>,
    /// Step count for the predictor-corrector
    #[arg(long)]
    steps: Option<usize>,
    /// Sub-interval count M for the multi-step series
    #[arg(long)]
    sub_intervals: Option<usize>,
    /// Series truncation order N
    #[arg(long)]
    series_order: Option<usize>,
    /// CSV sample count for the series methods
    #[arg(long)]
    samples: Option<usize>,
    /// CSV destination (stdout when omitted)
    #[arg(long, short = 'o', value_name = "PATH")]
    output: Option<PathBuf>,
}

impl ProblemArgs {
    fn has_inline_fields(&self) -> bool {
        self.alpha.is_some()
            || self.t0.is_some()
            || self.t_end.is_some()
            || self.y0.is_some()
            || self.rhs.is_some()
            || self.step_size.is_some()
            || self.steps.is_some()
            || self.sub_intervals.is_some()
            || self.series_order.is_some()
            || self.samples.is_some()
    }

    fn into_config(self, method: Option<Method>) -> Result<RunConfig, ConfigError> {
        if let Some(path) = &self.config {
            if self.has_inline_fields() {
                return Err(one_violation(
                    "--config excludes the inline problem flags".into(),
                ));
            }
            let text = std::fs::read_to_string(path).map_err(|e| {
                one_violation(format!("cannot read config {}: {e}", path.display()))
            })?;
            let mut config = RunConfig::parse(&text)?;
            if let Some(method) = method {
                config.method = method;
            }
            return Ok(config);
        }
        let rhs = match &self.rhs {
            Some(list) => Some(fde_cli::config::parse_rhs_list(list).map_err(one_violation)?),
            None => None,
        };
        let fields = Fields {
            method,
            alpha: self.alpha,
            t0: self.t0,
            t_end: self.t_end,
            y0: self.y0,
            rhs,
            h: self.step_size,
            n_steps: self.steps,
            sub_intervals: self.sub_intervals,
            series_order: self.series_order,
            samples: self.samples,
            output: self.output.clone(),
        };
        fields.finish(|_| None)
    }
}

fn one_violation(message: String) -> ConfigError {
    ConfigError {
        violations: vec![Violation {
            line: None,
            message,
        }],
    }
}

fn real_main() -> Result<(), RunError> {
    match Cli::parse().command {
        Command::Solve { method, problem } => {
            let method = match method.as_deref() {
                Some(name) => Some(parse_solve_method(name)?),
                None => None,
            };
            let output = problem.output.clone();
            let config = problem.into_config(method)?;
            if config.method == Method::Compare {
                return Err(RunError::Config(one_violation(
                    "`solve` runs a single method; use the compare subcommand".into(),
                )));
            }
            run_to_files(&config, output.as_deref(), None)
        }
        Command::Compare { problem, summary } => {
            let output = problem.output.clone();
            let config = problem.into_config(Some(Method::Compare))?;
            run_to_files(&config, output.as_deref(), summary.as_deref())
        }
        Command::Preset {
            name,
            output,
            summary,
        } => {
            let config = presets::by_name(&name).ok_or_else(|| {
                RunError::Config(one_violation(format!(
                    "unknown preset `{name}` (available: {})",
                    presets::PRESET_NAMES.join(", ")
                )))
            })?;
            let csv_path = output.unwrap_or_else(|| PathBuf::from(format!("{name}.csv")));
            let summary_path = summary.unwrap_or_else(|| fde_cli::run::summary_sibling(&csv_path));
            run_to_files(&config, Some(&csv_path), Some(&summary_path))
        }
    }
}

fn parse_solve_method(name: &str) -> Result<Method, RunError> {
    let method: Method = name
        .parse()
        .map_err(|e: String| RunError::Config(one_violation(e)))?;
    Ok(method)
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
