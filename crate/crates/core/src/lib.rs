//! Solvers for single-term Caputo fractional initial value problems
//! D^α y = f(t, y), y(t0) = y0, with 0 < α ≤ 1 and polynomial f.
//!
//! Three methods plus the instrumentation to compare them:
//!
//! - [`abm`]: Adams-Bashforth-Moulton PECE on the equivalent Volterra
//!   integral equation, with product-rectangle predictor weights and
//!   product-trapezoid corrector weights. The workhorse reference method.
//! - [`gdtm`]: generalized differential transform, a truncated fractional
//!   power series Σ Y(k)(t−t0)^(kα) whose coefficients come from a
//!   gamma-ratio recurrence.
//! - [`msgdtm`]: multi-step GDTM, the series restarted on M equal
//!   sub-intervals. The restart discards the fractional memory of earlier
//!   sub-intervals, so for α < 1 it solves a slightly wrong equation on
//!   every piece. It is faithfully reproduced here so the failure can be
//!   measured.
//! - [`diagnostics`]: the neglected memory integral and the derivative
//!   discontinuity at sub-interval starts, quantified.
//!
//! All types are immutable after construction and all solvers are pure
//! functions of their inputs, so distinct solves can run concurrently.
//!
//! # Example
//!
//! ```
//! use fde_core::abm::{solve_pece, AbmConfig};
//! use fde_core::{msgdtm, FractionalIvp, PolynomialRhs};
//!
//! // D^0.7 y = 1 + 2y − y², y(0) = 0 on [0, 0.4]
//! let rhs = PolynomialRhs::new([1.0, 2.0, -1.0])?;
//! let ivp = FractionalIvp::new(0.7, 0.0, 0.0, rhs, 0.4)?;
//!
//! let reference = solve_pece(&ivp, &AbmConfig::for_problem(&ivp, 400)?)?;
//! let restarted = msgdtm::solve(&ivp, 2, 5)?;
//!
//! // the restarted series stays close on the first sub-interval and
//! // drifts visibly by the end of the second
//! let at_02 = (restarted.sample(0.2)? - reference.values()[200]).abs();
//! let at_04 = (restarted.sample(0.4)? - reference.values()[400]).abs();
//! assert!(at_02 < 0.01);
//! assert!(at_04 > 0.1);
//! # Ok::<(), fde_core::Error>(())
//! ```

pub mod abm;
pub mod diagnostics;
mod error;
pub mod gdtm;
pub mod msgdtm;
pub mod problem;
pub mod special;

pub use error::{Error, Result};
pub use problem::{make_uniform_grid, FractionalIvp, PolynomialRhs, Trajectory};
