//! Generalized differential transform method for polynomial right-hand
//! sides.
//!
//! The solution is represented as a fractional power series
//! y(t) = Σ Y(k)·(t − base)^(kα). Coefficients follow from the gamma-ratio
//! recurrence Y(k+1) = Γ(αk+1)/Γ(α(k+1)+1)·F(k), where F(k) is the
//! differential transform of f(t, y): the constant term contributes via
//! δ(k) and a degree-d term via the d-fold Cauchy self-convolution of Y.
//!
//! The truncated series deliberately carries only (t − base)^(kα) powers,
//! never mixed integer/fractional ones; exhibiting the consequences of that
//! restriction is the point of the multi-step experiments built on top.

use crate::error::{Error, Result};
use crate::problem::{FractionalIvp, PolynomialRhs};
use crate::special::gamma_pos;

/// Truncated fractional power series anchored at a base time.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformSeries {
    alpha: f64,
    base: f64,
    coeffs: Vec<f64>,
}

impl TransformSeries {
    pub fn new(alpha: f64, base: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                message: "alpha out of (0,1]".into(),
            });
        }
        if !base.is_finite() {
            return Err(Error::InvalidParameter {
                name: "base",
                message: format!("base time must be finite, got {base}"),
            });
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter {
                name: "coeffs",
                message: "series needs at least Y(0)".into(),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "coeffs",
                message: "series coefficients must be finite".into(),
            });
        }
        Ok(Self {
            alpha,
            base,
            coeffs,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    /// Coefficients Y(0)..Y(N).
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates Σ Y(k)·(t − base)^(kα) for t ≥ base.
    ///
    /// The t = base case short-circuits to Y(0) so no 0^0 is ever formed;
    /// fractional powers of negative offsets are rejected.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t < self.base {
            return Err(Error::OutOfDomain {
                what: "series evaluation time",
                value: t,
            });
        }
        if t == self.base {
            return Ok(self.coeffs[0]);
        }
        let dt = t - self.base;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c * dt.powf(self.alpha * k as f64))
            .sum())
    }
}

/// Truncated Cauchy product of two coefficient prefixes of equal length.
fn cauchy_product(a: &[f64], b: &[f64]) -> Vec<f64> {
    let len = a.len();
    let mut out = vec![0.0; len];
    for (m, slot) in out.iter_mut().enumerate() {
        *slot = (0..=m).map(|i| a[i] * b[m - i]).sum();
    }
    out
}

/// Differential transform F(k) of a polynomial right-hand side, given the
/// solution coefficients Y(0)..Y(k).
///
/// F(k) = c0·δ(k) + Σ_{d≥1} c_d·(Y^{*d})(k), with (Y^{*d}) the d-fold
/// Cauchy self-convolution. The powers are built by iterated pairwise
/// products, each reused for the next degree.
pub fn rhs_transform(rhs: &PolynomialRhs, coeffs: &[f64], k: usize) -> Result<f64> {
    if coeffs.len() <= k {
        return Err(Error::IndexOutOfRange {
            what: "transform prefix",
            index: k,
            limit: coeffs.len(),
        });
    }
    let c = rhs.coeffs();
    let mut f = if k == 0 { c[0] } else { 0.0 };
    if c.len() > 1 {
        let prefix = &coeffs[..=k];
        let mut power = prefix.to_vec();
        f += c[1] * power[k];
        for &c_d in &c[2..] {
            power = cauchy_product(&power, prefix);
            f += c_d * power[k];
        }
    }
    Ok(f)
}

/// Builds the series coefficients for an initial value y_base imposed at an
/// arbitrary anchor time.
///
/// The anchor may differ from the problem's own t0: the multi-step method
/// re-runs this constructor at each sub-interval start. Only alpha and the
/// right-hand side are read from the problem.
pub fn series_coefficients(
    ivp: &FractionalIvp,
    order: usize,
    base: f64,
    y_base: f64,
) -> Result<TransformSeries> {
    if order == 0 {
        return Err(Error::InvalidParameter {
            name: "order",
            message: "series order must be at least 1".into(),
        });
    }
    if !y_base.is_finite() {
        return Err(Error::InvalidParameter {
            name: "y_base",
            message: format!("initial value must be finite, got {y_base}"),
        });
    }
    let alpha = ivp.alpha();
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(y_base);
    for k in 0..order {
        let f_k = rhs_transform(ivp.rhs(), &coeffs, k)?;
        let ratio = gamma_pos(alpha * k as f64 + 1.0) / gamma_pos(alpha * (k + 1) as f64 + 1.0);
        let next = ratio * f_k;
        if !next.is_finite() {
            return Err(Error::NonFinite {
                context: format!("series coefficient Y({}) at base {base}", k + 1),
            });
        }
        coeffs.push(next);
    }
    TransformSeries::new(alpha, base, coeffs)
}
