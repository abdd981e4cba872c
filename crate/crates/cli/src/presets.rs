//! Built-in experiment presets: the two Riccati comparison runs.
//!
//! Both solve D^α y = 2y − y² + 1, y(0) = 0 at α = 0.7 in compare mode.
//! `riccati-fig1` looks at [0, 0.4] with two sub-intervals against a fine
//! h = 0.001 reference, where the restarted series tracks the first
//! sub-interval and then drifts. `riccati-fig2` runs [0, 3] with 300
//! sub-intervals against h = 0.01, where the restarts pile up and the
//! series races ahead to the equilibrium.

use crate::config::{Method, RunConfig, StepSpec};

pub const RICCATI_FIG1: &str = "riccati-fig1";
pub const RICCATI_FIG2: &str = "riccati-fig2";

pub const PRESET_NAMES: [&str; 2] = [RICCATI_FIG1, RICCATI_FIG2];

/// Looks a preset up by name.
pub fn by_name(name: &str) -> Option<RunConfig> {
    match name {
        RICCATI_FIG1 => Some(riccati_fig1()),
        RICCATI_FIG2 => Some(riccati_fig2()),
        _ => None,
    }
}

fn riccati(alpha: f64, t_end: f64, step: StepSpec, sub_intervals: usize) -> RunConfig {
    RunConfig {
        method: Method::Compare,
        alpha,
        t0: 0.0,
        t_end,
        y0: 0.0,
        rhs: vec![1.0, 2.0, -1.0],
        step: Some(step),
        sub_intervals: Some(sub_intervals),
        series_order: Some(5),
        samples: None,
        output: None,
    }
}

/// Two sub-intervals on [0, 0.4] against an h = 0.001 reference.
pub fn riccati_fig1() -> RunConfig {
    riccati(0.7, 0.4, StepSpec::Size(0.001), 2)
}

/// Three hundred sub-intervals on [0, 3] against an h = 0.01 reference.
pub fn riccati_fig2() -> RunConfig {
    riccati(0.7, 3.0, StepSpec::Size(0.01), 300)
}
