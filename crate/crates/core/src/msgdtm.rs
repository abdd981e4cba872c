//! Multi-step GDTM: restarted series over an equal partition of the
//! horizon.
//!
//! The horizon is split into M equal sub-intervals and the differential
//! transform series is rebuilt on each one, using the previous piece's
//! endpoint value as the new initial condition. The restart anchors a fresh
//! Caputo operator at every sub-interval start and therefore drops the
//! memory integral over all earlier history. That neglect is deliberate;
//! it is the behaviour this crate exists to measure, not an oversight; see
//! the diagnostics module for the quantification.

use crate::error::{Error, Result};
use crate::gdtm::{series_coefficients, TransformSeries};
use crate::problem::{make_uniform_grid, FractionalIvp};

/// Ordered series pieces over consecutive sub-intervals.
///
/// Piece i is anchored at breakpoint i and valid on
/// [breakpoint i, breakpoint i+1]; its Y(0) equals the previous piece's
/// value at the shared breakpoint exactly, by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseSeries {
    pieces: Vec<TransformSeries>,
    breakpoints: Vec<f64>,
}

impl PiecewiseSeries {
    pub fn pieces(&self) -> &[TransformSeries] {
        &self.pieces
    }

    /// Sub-interval boundaries t_0 < t_1 < … < t_M.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn sub_intervals(&self) -> usize {
        self.pieces.len()
    }

    /// Evaluates the piece whose half-open interval [t_i, t_i+1) contains
    /// t; the final breakpoint maps to the last piece, so sampling is total
    /// on the closed horizon.
    pub fn sample(&self, t: f64) -> Result<f64> {
        let first = self.breakpoints[0];
        let last = *self.breakpoints.last().unwrap();
        if !t.is_finite() || t < first || t > last {
            return Err(Error::OutOfDomain {
                what: "sample time",
                value: t,
            });
        }
        let idx = self.breakpoints.partition_point(|&b| b <= t);
        let piece = (idx - 1).min(self.pieces.len() - 1);
        self.pieces[piece].eval(t)
    }
}

/// Runs GDTM of the given order on M equal sub-intervals, handing each
/// piece's endpoint value to the next as its initial condition.
pub fn solve(ivp: &FractionalIvp, sub_intervals: usize, order: usize) -> Result<PiecewiseSeries> {
    if sub_intervals == 0 {
        return Err(Error::InvalidParameter {
            name: "sub_intervals",
            message: "at least one sub-interval required".into(),
        });
    }
    let breakpoints = make_uniform_grid(ivp.t0(), ivp.t_end(), sub_intervals)?;
    let mut pieces = Vec::with_capacity(sub_intervals);
    let mut y_current = ivp.y0();
    for i in 0..sub_intervals {
        let piece = series_coefficients(ivp, order, breakpoints[i], y_current)
            .map_err(|e| tag_piece(e, i))?;
        y_current = piece.eval(breakpoints[i + 1])?;
        if !y_current.is_finite() {
            return Err(Error::NonFinite {
                context: format!("hand-off value after piece {i}"),
            });
        }
        pieces.push(piece);
    }
    Ok(PiecewiseSeries {
        pieces,
        breakpoints,
    })
}

fn tag_piece(e: Error, piece: usize) -> Error {
    match e {
        Error::NonFinite { context } => Error::NonFinite {
            context: format!("piece {piece}: {context}"),
        },
        other => other,
    }
}
