//! Fractional Adams-Bashforth-Moulton PECE solver.
//!
//! The Caputo problem is solved through its Volterra form
//! y(t) = y0 + (1/Γ(α)) ∫ (t−s)^(α−1) f(s, y(s)) ds using product
//! quadrature: a rectangle interpolant of f gives the predictor weights, a
//! piecewise-linear interpolant gives the corrector weights. One predictor
//! pass and one corrector pass per step (PECE); extra corrector sweeps are
//! available as a knob but default to one.
//!
//! Weights are computed on demand, O(k) per step and O(n²) per solve. The
//! experiments this crate targets stay in the hundreds of steps, where the
//! direct form is both negligible in cost and easy to audit against the
//! closed-form weight expressions.

use crate::error::{Error, Result};
use crate::problem::{make_uniform_grid, FractionalIvp, Trajectory};
use crate::special::gamma_pos;

/// Step configuration for [`solve_pece`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbmConfig {
    /// Step size; must satisfy h·n_steps = t_end − t0 up to rounding.
    pub h: f64,
    pub n_steps: usize,
    /// Corrector sweeps per step; 1 is the plain PECE scheme.
    pub corrector_iterations: usize,
}

impl AbmConfig {
    pub fn new(h: f64, n_steps: usize) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidParameter {
                name: "h",
                message: format!("step size must be positive and finite, got {h}"),
            });
        }
        if n_steps == 0 {
            return Err(Error::InvalidParameter {
                name: "n_steps",
                message: "at least one step required".into(),
            });
        }
        Ok(Self {
            h,
            n_steps,
            corrector_iterations: 1,
        })
    }

    /// Config whose step size exactly partitions the problem horizon.
    pub fn for_problem(ivp: &FractionalIvp, n_steps: usize) -> Result<Self> {
        Self::new(ivp.span() / n_steps.max(1) as f64, n_steps)
    }

    pub fn with_corrector_iterations(mut self, iterations: usize) -> Result<Self> {
        if iterations == 0 {
            return Err(Error::InvalidParameter {
                name: "corrector_iterations",
                message: "at least one corrector pass required".into(),
            });
        }
        self.corrector_iterations = iterations;
        Ok(self)
    }
}

/// Predictor (product-rectangle) weight for node j in step k:
/// (h^α/α)·((k−j)^α − (k−1−j)^α), valid for 0 ≤ j ≤ k−1.
pub fn predictor_weight(j: usize, k: usize, alpha: f64, h: f64) -> Result<f64> {
    if j >= k {
        return Err(Error::IndexOutOfRange {
            what: "predictor weight",
            index: j,
            limit: k,
        });
    }
    let d = (k - j) as f64;
    Ok(h.powf(alpha) / alpha * (d.powf(alpha) - (d - 1.0).powf(alpha)))
}

/// Corrector (product-trapezoid) weight for node j in step k, valid for
/// 0 ≤ j ≤ k with k ≥ 1. All three cases share the factor h^α/(α(α+1)).
pub fn corrector_weight(j: usize, k: usize, alpha: f64, h: f64) -> Result<f64> {
    if j > k || k == 0 {
        return Err(Error::IndexOutOfRange {
            what: "corrector weight",
            index: j,
            limit: k + 1,
        });
    }
    let scale = h.powf(alpha) / (alpha * (alpha + 1.0));
    let kf = k as f64;
    let factor = if j == 0 {
        (kf - 1.0).powf(alpha + 1.0) - kf.powf(alpha) * (kf - 1.0 - alpha)
    } else if j == k {
        1.0
    } else {
        let d = (k - j) as f64;
        (d + 1.0).powf(alpha + 1.0) + (d - 1.0).powf(alpha + 1.0) - 2.0 * d.powf(alpha + 1.0)
    };
    Ok(scale * factor)
}

/// Predicted value y_k^P from the corrected history y_0..y_(k−1).
///
/// History entry j is taken to sit at node t0 + j·h.
pub fn predictor(history: &[f64], ivp: &FractionalIvp, config: &AbmConfig) -> Result<f64> {
    let k = history.len();
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "history",
            message: "predictor needs at least the initial value".into(),
        });
    }
    let alpha = ivp.alpha();
    let mut acc = 0.0;
    for (j, &yj) in history.iter().enumerate() {
        let t_j = ivp.t0() + j as f64 * config.h;
        acc += predictor_weight(j, k, alpha, config.h)? * ivp.rhs().eval(t_j, yj);
    }
    Ok(ivp.y0() + acc / gamma_pos(alpha))
}

/// Corrected value y_k from the history y_0..y_(k−1) and the predicted
/// y_k^P. With more than one corrector sweep, each pass re-evaluates the
/// implicit term at the latest iterate.
pub fn corrector_step(
    history: &[f64],
    predicted: f64,
    ivp: &FractionalIvp,
    config: &AbmConfig,
) -> Result<f64> {
    let k = history.len();
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "history",
            message: "corrector needs at least the initial value".into(),
        });
    }
    if !predicted.is_finite() {
        return Err(Error::NonFinite {
            context: format!("predicted value at step {k}"),
        });
    }
    let alpha = ivp.alpha();
    let inv_gamma = 1.0 / gamma_pos(alpha);
    let mut fixed = 0.0;
    for (j, &yj) in history.iter().enumerate() {
        let t_j = ivp.t0() + j as f64 * config.h;
        fixed += corrector_weight(j, k, alpha, config.h)? * ivp.rhs().eval(t_j, yj);
    }
    let a_kk = corrector_weight(k, k, alpha, config.h)?;
    let t_k = ivp.t0() + k as f64 * config.h;
    let mut y = ivp.y0() + (fixed + a_kk * ivp.rhs().eval(t_k, predicted)) * inv_gamma;
    for _ in 1..config.corrector_iterations {
        y = ivp.y0() + (fixed + a_kk * ivp.rhs().eval(t_k, y)) * inv_gamma;
    }
    Ok(y)
}

/// Runs the full predict-evaluate-correct-evaluate sweep over the horizon.
///
/// The configured step size must partition [t0, t_end] into n_steps equal
/// parts (verified up to n_steps ulps); the solver then works with the step
/// implied by the horizon so grid and weights stay consistent.
pub fn solve_pece(ivp: &FractionalIvp, config: &AbmConfig) -> Result<Trajectory> {
    let span = ivp.span();
    let n = config.n_steps;
    let tolerance = span * f64::EPSILON * (n as f64 + 2.0);
    if (config.h * n as f64 - span).abs() > tolerance {
        return Err(Error::InvalidParameter {
            name: "h",
            message: format!(
                "h·n_steps = {} does not match the horizon {span}",
                config.h * n as f64
            ),
        });
    }
    let effective = AbmConfig {
        h: span / n as f64,
        ..*config
    };
    let nodes = make_uniform_grid(ivp.t0(), ivp.t_end(), n)?;
    let mut values = Vec::with_capacity(n + 1);
    values.push(ivp.y0());
    for k in 1..=n {
        let predicted = predictor(&values, ivp, &effective)?;
        if !predicted.is_finite() {
            return Err(Error::NonFinite {
                context: format!("predictor iterate at step {k} (t = {})", nodes[k]),
            });
        }
        let corrected = corrector_step(&values, predicted, ivp, &effective)?;
        if !corrected.is_finite() {
            return Err(Error::NonFinite {
                context: format!("corrector iterate at step {k} (t = {})", nodes[k]),
            });
        }
        values.push(corrected);
    }
    Trajectory::new(nodes, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::PolynomialRhs;
    use crate::special::gamma_pos;
    use proptest::prelude::*;

    fn riccati_ivp(alpha: f64, t_end: f64) -> FractionalIvp {
        let rhs = PolynomialRhs::new([1.0, 2.0, -1.0]).unwrap();
        FractionalIvp::new(alpha, 0.0, 0.0, rhs, t_end).unwrap()
    }

    fn constant_ivp(alpha: f64, t_end: f64) -> FractionalIvp {
        let rhs = PolynomialRhs::new([1.0]).unwrap();
        FractionalIvp::new(alpha, 0.0, 0.0, rhs, t_end).unwrap()
    }

    #[test]
    fn predictor_weight_reduces_to_h_for_alpha_one() {
        for (j, k) in [(0usize, 1usize), (0, 5), (3, 7), (6, 7)] {
            let w = predictor_weight(j, k, 1.0, 0.02).unwrap();
            assert!((w - 0.02).abs() < 1e-16, "b({j},{k}) = {w}");
        }
    }

    #[test]
    fn predictor_weight_last_node() {
        // j = k−1 gives h^α/α for any α
        let w = predictor_weight(4, 5, 0.7, 0.01).unwrap();
        assert!((w - 0.01f64.powf(0.7) / 0.7).abs() < 1e-16);
    }

    #[test]
    fn predictor_weight_derived_value() {
        // (0.01^0.7 / 0.7)·(2^0.7 − 1), cross-checked at high precision
        let w = predictor_weight(0, 2, 0.7, 0.01).unwrap();
        assert!((w - 0.035517119431980022).abs() < 1e-15, "w = {w}");
    }

    #[test]
    fn weight_index_errors() {
        assert!(predictor_weight(2, 2, 0.7, 0.01).is_err());
        assert!(predictor_weight(5, 3, 0.7, 0.01).is_err());
        assert!(corrector_weight(4, 3, 0.7, 0.01).is_err());
        assert!(corrector_weight(0, 0, 0.7, 0.01).is_err());
    }

    #[test]
    fn corrector_weight_cases() {
        let (alpha, h) = (0.7, 0.01);
        let akk = corrector_weight(9, 9, alpha, h).unwrap();
        assert!((akk - h.powf(alpha) / (alpha * (alpha + 1.0))).abs() < 1e-18);
        // α = 1 collapses to the classical trapezoid rule
        for k in [1usize, 2, 10] {
            assert!((corrector_weight(0, k, 1.0, h).unwrap() - h / 2.0).abs() < 1e-17);
            assert!((corrector_weight(k, k, 1.0, h).unwrap() - h / 2.0).abs() < 1e-17);
            for j in 1..k {
                assert!((corrector_weight(j, k, 1.0, h).unwrap() - h).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn weight_sums_match_kernel_integral() {
        // Σ b = Σ a = t_k^α/α: both rules integrate a constant exactly
        let h = 0.05;
        for &alpha in &[0.3, 0.7, 1.0] {
            for k in 1..=100usize {
                let t_k = k as f64 * h;
                let exact = t_k.powf(alpha) / alpha;
                let b_sum: f64 = (0..k)
                    .map(|j| predictor_weight(j, k, alpha, h).unwrap())
                    .sum();
                let a_sum: f64 = (0..=k)
                    .map(|j| corrector_weight(j, k, alpha, h).unwrap())
                    .sum();
                assert!(
                    (b_sum - exact).abs() <= 1e-12 * exact,
                    "b sum k={k} α={alpha}"
                );
                assert!(
                    (a_sum - exact).abs() <= 1e-12 * exact,
                    "a sum k={k} α={alpha}"
                );
            }
        }
    }

    #[test]
    fn corrector_weights_exact_for_linear_integrand() {
        // Σ a_jk·t_j = t_k^(α+1)/(α(α+1)): trapezoid rule is exact in s
        let h = 0.05;
        for &alpha in &[0.3, 0.7, 1.0] {
            for k in 1..=50usize {
                let t_k = k as f64 * h;
                let exact = t_k.powf(alpha + 1.0) / (alpha * (alpha + 1.0));
                let sum: f64 = (0..=k)
                    .map(|j| corrector_weight(j, k, alpha, h).unwrap() * (j as f64 * h))
                    .sum();
                assert!((sum - exact).abs() <= 1e-10 * exact, "k={k} α={alpha}");
            }
        }
    }

    #[test]
    fn predictor_single_step_constant_rhs() {
        // one-term sum: y_1^P = h^α/(α Γ(α)) = h^α/Γ(α+1)
        let ivp = constant_ivp(0.7, 1.0);
        let config = AbmConfig::new(0.01, 100).unwrap();
        let y1 = predictor(&[0.0], &ivp, &config).unwrap();
        let exact = 0.01f64.powf(0.7) / gamma_pos(1.7);
        assert!((y1 - exact).abs() < 1e-15);
    }

    #[test]
    fn predictor_single_step_riccati_derived() {
        let ivp = riccati_ivp(0.7, 1.0);
        let config = AbmConfig::new(0.01, 100).unwrap();
        let y1 = predictor(&[0.0], &ivp, &config).unwrap();
        assert!((y1 - 0.043813581367301889).abs() < 1e-15, "y1 = {y1}");
    }

    #[test]
    fn zero_rhs_keeps_initial_value() {
        let rhs = PolynomialRhs::new([0.0]).unwrap();
        let ivp = FractionalIvp::new(0.7, 0.0, 2.5, rhs, 1.0).unwrap();
        let config = AbmConfig::for_problem(&ivp, 10).unwrap();
        let pred = predictor(&[2.5, 2.5], &ivp, &config).unwrap();
        assert_eq!(pred, 2.5);
        let traj = solve_pece(&ivp, &config).unwrap();
        assert!(traj.values().iter().all(|&y| y == 2.5));
    }

    #[test]
    fn constant_rhs_solved_exactly() {
        // D^α y = 1, y(0) = 0 has solution t^α/Γ(α+1); both quadratures are
        // exact for constants so every node should match to roundoff.
        for &alpha in &[0.3, 0.7, 1.0] {
            let ivp = constant_ivp(alpha, 1.0);
            let config = AbmConfig::for_problem(&ivp, 100).unwrap();
            let traj = solve_pece(&ivp, &config).unwrap();
            for (k, (&t, &y)) in traj.nodes().iter().zip(traj.values()).enumerate().skip(1) {
                let exact = t.powf(alpha) / gamma_pos(alpha + 1.0);
                assert!(
                    (y - exact).abs() <= 1e-12 * exact,
                    "α={alpha} k={k}: {y} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn riccati_near_paper_value_at_02() {
        let ivp = riccati_ivp(0.7, 0.4);
        let config = AbmConfig::for_problem(&ivp, 400).unwrap();
        let traj = solve_pece(&ivp, &config).unwrap();
        let y_02 = traj.values()[200];
        assert!((y_02 - 0.55).abs() <= 0.005, "y(0.2) = {y_02}");
        // pin against an independent implementation of the same scheme
        assert!((y_02 - 0.5466991902909097).abs() < 1e-9);
    }

    #[test]
    fn mismatched_step_rejected() {
        let ivp = riccati_ivp(0.7, 0.4);
        let config = AbmConfig::new(0.003, 400).unwrap();
        assert!(matches!(
            solve_pece(&ivp, &config),
            Err(Error::InvalidParameter { name: "h", .. })
        ));
    }

    #[test]
    fn blow_up_reports_non_finite() {
        // D^1 y = y² from y(0)=10 explodes almost immediately at this step
        let rhs = PolynomialRhs::new([0.0, 0.0, 1.0]).unwrap();
        let ivp = FractionalIvp::new(1.0, 0.0, 10.0, rhs, 2.0).unwrap();
        let config = AbmConfig::for_problem(&ivp, 20).unwrap();
        assert!(matches!(
            solve_pece(&ivp, &config),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn corrector_rejects_non_finite_prediction() {
        let ivp = riccati_ivp(0.7, 0.4);
        let config = AbmConfig::for_problem(&ivp, 4).unwrap();
        assert!(corrector_step(&[0.0], f64::NAN, &ivp, &config).is_err());
    }

    proptest! {
        #[test]
        fn predictor_weights_positive(
            alpha in 0.05f64..=1.0,
            h in 1e-4f64..1.0,
            k in 1usize..60,
        ) {
            for j in 0..k {
                prop_assert!(predictor_weight(j, k, alpha, h).unwrap() > 0.0);
            }
        }
    }
}
