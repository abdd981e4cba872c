//! Run configuration: plain-text key=value parsing with per-line error
//! reporting, plus the same semantic validation for flag-built configs.
//!
//! Recognized keys: `method`, `alpha`, `t0`, `t_end`, `y0`, `rhs`, `h`,
//! `n_steps`, `m`, `n`, `samples`, `output`. Blank lines and lines starting
//! with `#` are ignored. `rhs` is a comma-separated coefficient list
//! c0,c1,... so that f(t,y) = Σ c_d y^d.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Which computation a run performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Abm,
    Gdtm,
    Msgdtm,
    Compare,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Abm => "abm",
            Self::Gdtm => "gdtm",
            Self::Msgdtm => "msgdtm",
            Self::Compare => "compare",
        }
    }

    fn uses_step(self) -> bool {
        matches!(self, Self::Abm | Self::Compare)
    }

    fn uses_sub_intervals(self) -> bool {
        matches!(self, Self::Msgdtm | Self::Compare)
    }

    fn uses_series_order(self) -> bool {
        matches!(self, Self::Gdtm | Self::Msgdtm | Self::Compare)
    }

    fn uses_samples(self) -> bool {
        matches!(self, Self::Gdtm | Self::Msgdtm)
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "abm" => Ok(Self::Abm),
            "gdtm" => Ok(Self::Gdtm),
            "msgdtm" => Ok(Self::Msgdtm),
            "compare" => Ok(Self::Compare),
            other => Err(format!(
                "unknown method `{other}` (expected abm, gdtm, msgdtm or compare)"
            )),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Step specification for the predictor-corrector: exactly one of a step
/// size or a step count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSpec {
    Size(f64),
    Count(usize),
}

/// A fully validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub method: Method,
    pub alpha: f64,
    pub t0: f64,
    pub t_end: f64,
    pub y0: f64,
    pub rhs: Vec<f64>,
    /// Present exactly when the method runs the predictor-corrector.
    pub step: Option<StepSpec>,
    /// Sub-interval count M for the multi-step series.
    pub sub_intervals: Option<usize>,
    /// Series truncation order N.
    pub series_order: Option<usize>,
    /// CSV sample count for the series methods (default 401).
    pub samples: Option<usize>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Parses a key=value description, collecting all violations rather
    /// than stopping at the first.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut violations = Vec::new();
        let mut entries: HashMap<&str, (usize, &str)> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                violations.push(Violation::at(line_no, "expected key=value"));
                continue;
            };
            let key = key.trim();
            let value = value.trim();
            if !KNOWN_KEYS.contains(&key) {
                violations.push(Violation::at(line_no, format!("unknown key `{key}`")));
                continue;
            }
            if let Some((first_line, _)) = entries.get(key) {
                violations.push(Violation::at(
                    line_no,
                    format!("duplicate key `{key}` (first set on line {first_line})"),
                ));
                continue;
            }
            entries.insert(key, (line_no, value));
        }

        let mut fields = Fields::default();
        let mut lines: HashMap<&'static str, usize> = HashMap::new();
        for &key in KNOWN_KEYS {
            let Some(&(line_no, value)) = entries.get(key) else {
                continue;
            };
            lines.insert(key, line_no);
            fields.set(key, value, line_no, &mut violations);
        }
        if !violations.is_empty() {
            return Err(ConfigError { violations });
        }
        fields.finish(|key| lines.get(key).copied())
    }

    /// Canonical key=value form; parsing it back yields an equal config.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("method={}\n", self.method));
        out.push_str(&format!("alpha={}\n", self.alpha));
        out.push_str(&format!("t0={}\n", self.t0));
        out.push_str(&format!("t_end={}\n", self.t_end));
        out.push_str(&format!("y0={}\n", self.y0));
        let rhs: Vec<String> = self.rhs.iter().map(|c| format!("{c}")).collect();
        out.push_str(&format!("rhs={}\n", rhs.join(",")));
        match self.step {
            Some(StepSpec::Size(h)) => out.push_str(&format!("h={h}\n")),
            Some(StepSpec::Count(n)) => out.push_str(&format!("n_steps={n}\n")),
            None => {}
        }
        if let Some(m) = self.sub_intervals {
            out.push_str(&format!("m={m}\n"));
        }
        if let Some(n) = self.series_order {
            out.push_str(&format!("n={n}\n"));
        }
        if let Some(s) = self.samples {
            out.push_str(&format!("samples={s}\n"));
        }
        if let Some(path) = &self.output {
            out.push_str(&format!("output={}\n", path.display()));
        }
        out
    }
}

/// One named violation, with the config line it came from when known.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub line: Option<usize>,
    pub message: String,
}

impl Violation {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn general(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// All violations found in one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid configuration:")?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

const KNOWN_KEYS: &[&str] = &[
    "method", "alpha", "t0", "t_end", "y0", "rhs", "h", "n_steps", "m", "n", "samples", "output",
];

/// Partially assembled configuration shared by the file parser and the
/// flag-driven builder; `finish` applies the semantic rules.
#[derive(Debug, Default, Clone)]
pub struct Fields {
    pub method: Option<Method>,
    pub alpha: Option<f64>,
    pub t0: Option<f64>,
    pub t_end: Option<f64>,
    pub y0: Option<f64>,
    pub rhs: Option<Vec<f64>>,
    pub h: Option<f64>,
    pub n_steps: Option<usize>,
    pub sub_intervals: Option<usize>,
    pub series_order: Option<usize>,
    pub samples: Option<usize>,
    pub output: Option<PathBuf>,
}

impl Fields {
    fn set(&mut self, key: &str, value: &str, line: usize, violations: &mut Vec<Violation>) {
        match key {
            "method" => match value.parse() {
                Ok(m) => self.method = Some(m),
                Err(e) => violations.push(Violation::at(line, e)),
            },
            "alpha" => self.alpha = parse_f64(value, key, line, violations),
            "t0" => self.t0 = parse_f64(value, key, line, violations),
            "t_end" => self.t_end = parse_f64(value, key, line, violations),
            "y0" => self.y0 = parse_f64(value, key, line, violations),
            "h" => self.h = parse_f64(value, key, line, violations),
            "n_steps" => self.n_steps = parse_usize(value, key, line, violations),
            "m" => self.sub_intervals = parse_usize(value, key, line, violations),
            "n" => self.series_order = parse_usize(value, key, line, violations),
            "samples" => self.samples = parse_usize(value, key, line, violations),
            "output" => self.output = Some(PathBuf::from(value)),
            "rhs" => match parse_rhs_list(value) {
                Ok(coeffs) => self.rhs = Some(coeffs),
                Err(e) => violations.push(Violation::at(line, e)),
            },
            _ => unreachable!("unknown keys are rejected before dispatch"),
        }
    }

    /// Validates the assembled fields into a [`RunConfig`], attributing
    /// violations to config lines through `line_of` where possible.
    pub fn finish(
        self,
        line_of: impl Fn(&'static str) -> Option<usize>,
    ) -> Result<RunConfig, ConfigError> {
        let mut violations = Vec::new();
        let fail = |key: &'static str, message: String| match line_of(key) {
            Some(line) => Violation::at(line, message),
            None => Violation::general(message),
        };

        let method = self.method;
        if method.is_none() {
            violations.push(fail("method", "missing required key `method`".into()));
        }
        match self.alpha {
            None => violations.push(fail("alpha", "missing required key `alpha`".into())),
            Some(a) if !(a > 0.0 && a <= 1.0) => {
                violations.push(fail("alpha", "alpha out of (0,1]".into()))
            }
            _ => {}
        }
        for (key, value) in [("t0", self.t0), ("t_end", self.t_end), ("y0", self.y0)] {
            match value {
                None => violations.push(fail(key, format!("missing required key `{key}`"))),
                Some(v) if !v.is_finite() => {
                    violations.push(fail(key, format!("`{key}` must be finite")))
                }
                _ => {}
            }
        }
        if let (Some(t0), Some(t_end)) = (self.t0, self.t_end) {
            if t0.is_finite() && t_end.is_finite() && t_end <= t0 {
                violations.push(fail("t_end", format!("t_end {t_end} must exceed t0 {t0}")));
            }
        }
        match &self.rhs {
            None => violations.push(fail("rhs", "rhs coefficients required".into())),
            Some(coeffs) if coeffs.is_empty() => {
                violations.push(fail("rhs", "rhs coefficients required".into()))
            }
            _ => {}
        }
        if let Some(h) = self.h {
            if !(h.is_finite() && h > 0.0) {
                violations.push(fail("h", format!("step size must be positive, got {h}")));
            }
        }
        if self.n_steps == Some(0) {
            violations.push(fail("n_steps", "n_steps must be at least 1".into()));
        }
        if self.sub_intervals == Some(0) {
            violations.push(fail("m", "m must be at least 1".into()));
        }
        if self.series_order == Some(0) {
            violations.push(fail("n", "n must be at least 1".into()));
        }
        if let Some(s) = self.samples {
            if s < 2 {
                violations.push(fail("samples", "samples must be at least 2".into()));
            }
        }

        let mut step = None;
        if let Some(method) = method {
            if method.uses_step() {
                match (self.h, self.n_steps) {
                    (Some(h), None) => step = Some(StepSpec::Size(h)),
                    (None, Some(n)) => step = Some(StepSpec::Count(n)),
                    (Some(_), Some(_)) => violations.push(fail(
                        "h",
                        format!("give exactly one of h and n_steps for method {method}"),
                    )),
                    (None, None) => violations.push(Violation::general(format!(
                        "method {method} needs one of h or n_steps"
                    ))),
                }
            } else {
                for (key, given) in [("h", self.h.is_some()), ("n_steps", self.n_steps.is_some())] {
                    if given {
                        violations.push(fail(
                            key,
                            format!("`{key}` does not apply to method {method}"),
                        ));
                    }
                }
            }
            if method.uses_sub_intervals() {
                if self.sub_intervals.is_none() {
                    violations.push(Violation::general(format!("method {method} needs `m`")));
                }
            } else if self.sub_intervals.is_some() {
                violations.push(fail("m", format!("`m` does not apply to method {method}")));
            }
            if method.uses_series_order() {
                if self.series_order.is_none() {
                    violations.push(Violation::general(format!("method {method} needs `n`")));
                }
            } else if self.series_order.is_some() {
                violations.push(fail("n", format!("`n` does not apply to method {method}")));
            }
            if !method.uses_samples() && self.samples.is_some() {
                violations.push(fail(
                    "samples",
                    format!("`samples` does not apply to method {method}"),
                ));
            }
        }

        if !violations.is_empty() {
            return Err(ConfigError { violations });
        }
        Ok(RunConfig {
            method: method.unwrap(),
            alpha: self.alpha.unwrap(),
            t0: self.t0.unwrap(),
            t_end: self.t_end.unwrap(),
            y0: self.y0.unwrap(),
            rhs: self.rhs.unwrap(),
            step,
            sub_intervals: self.sub_intervals,
            series_order: self.series_order,
            samples: self.samples,
            output: self.output,
        })
    }
}

/// Parses a comma-separated coefficient list.
pub fn parse_rhs_list(value: &str) -> Result<Vec<f64>, String> {
    if value.trim().is_empty() {
        return Err("rhs coefficients required".into());
    }
    let mut coeffs = Vec::new();
    for part in value.split(',') {
        let part = part.trim();
        let c: f64 = part
            .parse()
            .map_err(|_| format!("`{part}` is not a number in rhs list"))?;
        if !c.is_finite() {
            return Err(format!("rhs coefficient `{part}` must be finite"));
        }
        coeffs.push(c);
    }
    Ok(coeffs)
}

fn parse_f64(value: &str, key: &str, line: usize, violations: &mut Vec<Violation>) -> Option<f64> {
    match value.parse::<f64>() {
        Ok(v) => Some(v),
        Err(_) => {
            violations.push(Violation::at(
                line,
                format!("`{value}` is not a number for `{key}`"),
            ));
            None
        }
    }
}

fn parse_usize(
    value: &str,
    key: &str,
    line: usize,
    violations: &mut Vec<Violation>,
) -> Option<usize> {
    match value.parse::<usize>() {
        Ok(v) => Some(v),
        Err(_) => {
            violations.push(Violation::at(
                line,
                format!("`{value}` is not a non-negative integer for `{key}`"),
            ));
            None
        }
    }
}
