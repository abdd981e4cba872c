//! Problem and solution data model shared by all solvers.

use crate::error::{Error, Result};

/// Autonomous polynomial right-hand side f(t, y) = Σ c_d y^d.
///
/// This is exactly the class the differential transform rules in this crate
/// support (constants via δ(k), powers of y via iterated Cauchy products),
/// and pointwise evaluation is all the predictor-corrector solver needs, so
/// one type serves both methods.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialRhs {
    coeffs: Vec<f64>,
}

impl PolynomialRhs {
    /// Builds f(t, y) = Σ c_d y^d from coefficients ordered by degree.
    /// Trailing zero coefficients are normalized away.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Result<Self> {
        let mut coeffs = coeffs.into();
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter {
                name: "rhs",
                message: "at least one coefficient required".into(),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "rhs",
                message: "coefficients must be finite".into(),
            });
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    /// Coefficients c_0..c_D ordered by degree.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates f(t, y) by Horner's scheme. The right-hand side is
    /// autonomous; the time argument only preserves the f(t, y) call shape.
    pub fn eval(&self, _t: f64, y: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * y + c)
    }
}

/// A single-term Caputo initial value problem
/// D^α y = f(t, y) on [t0, t_end], y(t0) = y0, with 0 < α ≤ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalIvp {
    alpha: f64,
    t0: f64,
    y0: f64,
    rhs: PolynomialRhs,
    t_end: f64,
}

impl FractionalIvp {
    pub fn new(alpha: f64, t0: f64, y0: f64, rhs: PolynomialRhs, t_end: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                message: "alpha out of (0,1]".into(),
            });
        }
        if !t0.is_finite() || !y0.is_finite() || !t_end.is_finite() {
            return Err(Error::InvalidParameter {
                name: "ivp",
                message: "t0, y0 and t_end must be finite".into(),
            });
        }
        if t_end <= t0 {
            return Err(Error::InvalidParameter {
                name: "t_end",
                message: format!("horizon {t_end} must exceed t0 {t0}"),
            });
        }
        Ok(Self {
            alpha,
            t0,
            y0,
            rhs,
            t_end,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn rhs(&self) -> &PolynomialRhs {
        &self.rhs
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn span(&self) -> f64 {
        self.t_end - self.t0
    }
}

/// A discrete solution: strictly increasing time nodes with finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl Trajectory {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::InvalidParameter {
                name: "trajectory",
                message: format!("{} nodes but {} values", nodes.len(), values.len()),
            });
        }
        if nodes.is_empty() {
            return Err(Error::InvalidParameter {
                name: "trajectory",
                message: "empty trajectory".into(),
            });
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter {
                name: "trajectory",
                message: "nodes must be strictly increasing".into(),
            });
        }
        if nodes.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "trajectory",
                message: "nodes and values must be finite".into(),
            });
        }
        Ok(Self { nodes, values })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of nodes; the constructor guarantees at least one.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn start_time(&self) -> f64 {
        self.nodes[0]
    }

    pub fn end_time(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Linear interpolation between nodes; exact at the nodes themselves.
    pub fn interpolate(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t < self.start_time() || t > self.end_time() {
            return Err(Error::OutOfDomain {
                what: "interpolation time",
                value: t,
            });
        }
        if t == self.end_time() {
            return Ok(*self.values.last().unwrap());
        }
        let i = self.nodes.partition_point(|&n| n <= t) - 1;
        let w = (t - self.nodes[i]) / (self.nodes[i + 1] - self.nodes[i]);
        Ok(self.values[i] + w * (self.values[i + 1] - self.values[i]))
    }
}

/// Uniform grid t_j = t0 + j·h, j = 0..n_steps, with the last node pinned to
/// `t_end` exactly rather than accumulated, so no drift builds up over many
/// sub-intervals.
pub fn make_uniform_grid(t0: f64, t_end: f64, n_steps: usize) -> Result<Vec<f64>> {
    if n_steps == 0 {
        return Err(Error::InvalidParameter {
            name: "n_steps",
            message: "at least one step required".into(),
        });
    }
    if !t0.is_finite() || !t_end.is_finite() || t_end <= t0 {
        return Err(Error::InvalidParameter {
            name: "grid",
            message: format!("invalid interval [{t0}, {t_end}]"),
        });
    }
    let h = (t_end - t0) / n_steps as f64;
    let mut nodes: Vec<f64> = (0..n_steps).map(|j| t0 + j as f64 * h).collect();
    nodes.push(t_end);
    Ok(nodes)
}
