//! Quantifies the two failure signatures of the restarted series method:
//! the neglected memory integral and the derivative discontinuity at
//! sub-interval starts.

use crate::error::{Error, Result};
use crate::msgdtm::PiecewiseSeries;
use crate::problem::{PolynomialRhs, Trajectory};
use crate::special::gamma_pos;

/// Size of the history integral a restarted scheme drops at breakpoint k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryTermReport {
    pub breakpoint_index: usize,
    /// (1/Γ(α)) ∫ over [t_0, t_k] of (t_k+1 − s)^(α−1) f(s, y(s)) ds.
    pub value: f64,
    /// `value` divided by the same integral taken over the full history
    /// [t_0, t_k+1]. Lies in [0, 1] whenever f ≥ 0 along the trajectory.
    pub relative_share: f64,
}

/// One-sided difference quotients around a breakpoint.
///
/// For α < 1 the right slope diverges like ε^(α−1) as ε shrinks, the
/// visible symptom of restarting the fractional operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeJump {
    pub left_slope: f64,
    pub right_slope: f64,
}

/// Evaluates the neglected memory term at breakpoint k against a densely
/// sampled solution.
///
/// The integrand is evaluated along `traj` with linear interpolation
/// between its nodes. Over [t_0, t_k] the kernel stays away from its
/// singularity, so a composite midpoint rule on a `refine`-fold refinement
/// of the trajectory grid converges fast; the share's denominator extends
/// the integral over [t_k, t_k+1], where the kernel factor is integrated
/// exactly per panel to absorb the endpoint singularity.
pub fn memory_term(
    traj: &Trajectory,
    breakpoints: &[f64],
    k: usize,
    alpha: f64,
    rhs: &PolynomialRhs,
    refine: usize,
) -> Result<MemoryTermReport> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            message: "alpha out of (0,1]".into(),
        });
    }
    if refine == 0 {
        return Err(Error::InvalidParameter {
            name: "refine",
            message: "at least one panel per trajectory segment required".into(),
        });
    }
    if breakpoints.len() < 2 || breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter {
            name: "breakpoints",
            message: "need at least two strictly increasing breakpoints".into(),
        });
    }
    if k + 1 >= breakpoints.len() {
        return Err(Error::IndexOutOfRange {
            what: "breakpoint",
            index: k,
            limit: breakpoints.len() - 1,
        });
    }
    let t_upper = breakpoints[k + 1];
    if traj.start_time() > breakpoints[0] || traj.end_time() < t_upper {
        return Err(Error::OutOfDomain {
            what: "memory-term upper limit (trajectory coverage)",
            value: t_upper,
        });
    }
    if k == 0 {
        // empty history interval [t_0, t_0]
        return Ok(MemoryTermReport {
            breakpoint_index: 0,
            value: 0.0,
            relative_share: 0.0,
        });
    }
    let inv_gamma = 1.0 / gamma_pos(alpha);
    let value = inv_gamma
        * kernel_midpoint(
            traj,
            rhs,
            alpha,
            breakpoints[0],
            breakpoints[k],
            t_upper,
            refine,
        );
    let tail =
        inv_gamma * kernel_product_midpoint(traj, rhs, alpha, breakpoints[k], t_upper, refine);
    let full = value + tail;
    let relative_share = if full == 0.0 { 0.0 } else { value / full };
    Ok(MemoryTermReport {
        breakpoint_index: k,
        value,
        relative_share,
    })
}

/// Midpoint rule for ∫ (upper − s)^(α−1) f(s, y(s)) ds over [lo, hi],
/// with panels aligned to the trajectory grid so the interpolation kinks
/// never fall inside a panel. Requires hi < upper.
fn kernel_midpoint(
    traj: &Trajectory,
    rhs: &PolynomialRhs,
    alpha: f64,
    lo: f64,
    hi: f64,
    upper: f64,
    refine: usize,
) -> f64 {
    let nodes = traj.nodes();
    let values = traj.values();
    let mut acc = 0.0;
    for i in 0..nodes.len() - 1 {
        let a = nodes[i].max(lo);
        let b = nodes[i + 1].min(hi);
        if b <= a {
            continue;
        }
        let seg = nodes[i + 1] - nodes[i];
        let panel = (b - a) / refine as f64;
        for p in 0..refine {
            let s = a + (p as f64 + 0.5) * panel;
            let w = (s - nodes[i]) / seg;
            let y = values[i] + w * (values[i + 1] - values[i]);
            acc += panel * (upper - s).powf(alpha - 1.0) * rhs.eval(s, y);
        }
    }
    acc
}

/// Product-midpoint rule over [lo, upper]: f is frozen at each panel
/// midpoint while the kernel factor is integrated in closed form, which
/// keeps the integrable singularity at s = upper exact.
fn kernel_product_midpoint(
    traj: &Trajectory,
    rhs: &PolynomialRhs,
    alpha: f64,
    lo: f64,
    upper: f64,
    refine: usize,
) -> f64 {
    let nodes = traj.nodes();
    let values = traj.values();
    let mut acc = 0.0;
    for i in 0..nodes.len() - 1 {
        let a = nodes[i].max(lo);
        let b = nodes[i + 1].min(upper);
        if b <= a {
            continue;
        }
        let seg = nodes[i + 1] - nodes[i];
        let panel = (b - a) / refine as f64;
        for p in 0..refine {
            let u = a + p as f64 * panel;
            let v = if p + 1 == refine {
                b
            } else {
                a + (p + 1) as f64 * panel
            };
            let s = 0.5 * (u + v);
            let w = (s - nodes[i]) / seg;
            let y = values[i] + w * (values[i + 1] - values[i]);
            let kernel = ((upper - u).powf(alpha) - (upper - v).powf(alpha)) / alpha;
            acc += kernel * rhs.eval(s, y);
        }
    }
    acc
}

/// One-sided difference quotients of a piecewise series at interior
/// breakpoint i, probed at distance `epsilon`.
///
/// The left quotient uses piece i−1, the right quotient piece i; both read
/// the breakpoint value itself from the construction-exact hand-off.
pub fn derivative_jump(
    piecewise: &PiecewiseSeries,
    i: usize,
    epsilon: f64,
) -> Result<DerivativeJump> {
    let m = piecewise.sub_intervals();
    if i == 0 || i >= m {
        return Err(Error::IndexOutOfRange {
            what: "interior breakpoint",
            index: i,
            limit: m,
        });
    }
    let bps = piecewise.breakpoints();
    let width_left = bps[i] - bps[i - 1];
    let width_right = bps[i + 1] - bps[i];
    if !(epsilon.is_finite() && epsilon > 0.0 && epsilon < width_left.min(width_right)) {
        return Err(Error::OutOfDomain {
            what: "probe epsilon",
            value: epsilon,
        });
    }
    let t_i = bps[i];
    let left_piece = &piecewise.pieces()[i - 1];
    let right_piece = &piecewise.pieces()[i];
    let left_slope = (left_piece.eval(t_i)? - left_piece.eval(t_i - epsilon)?) / epsilon;
    let right_slope = (right_piece.eval(t_i + epsilon)? - right_piece.eval(t_i)?) / epsilon;
    Ok(DerivativeJump {
        left_slope,
        right_slope,
    })
}
