//! Cross-cutting behaviour of the PECE solver: reduction to the classical
//! trapezoidal method at α = 1 and self-consistency under step refinement.

use fde_core::abm::{corrector_step, predictor, solve_pece, AbmConfig};
use fde_core::{FractionalIvp, PolynomialRhs};

fn riccati_ivp(alpha: f64, t_end: f64) -> FractionalIvp {
    let rhs = PolynomialRhs::new([1.0, 2.0, -1.0]).unwrap();
    FractionalIvp::new(alpha, 0.0, 0.0, rhs, t_end).unwrap()
}

fn f_riccati(y: f64) -> f64 {
    1.0 + y * (2.0 - y)
}

/// Classical trapezoidal PECE written in its cumulative form, independently
/// of the fractional weight machinery: predict with the composite rectangle
/// rule over the whole history, correct with the composite trapezoid rule
/// closed by the predicted endpoint.
fn trapezoid_pece(y0: f64, h: f64, n: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut ys = vec![y0];
    let mut fs = vec![f(y0)];
    for _k in 1..=n {
        let rectangle: f64 = fs.iter().sum::<f64>() * h;
        let predicted = y0 + rectangle;
        let interior: f64 = fs[1..].iter().sum::<f64>() * h;
        let corrected = y0 + 0.5 * h * fs[0] + interior + 0.5 * h * f(predicted);
        ys.push(corrected);
        fs.push(f(corrected));
    }
    ys
}

#[test]
fn alpha_one_matches_classical_trapezoid_pece_nodewise() {
    let n = 300;
    let ivp = riccati_ivp(1.0, 3.0);
    let config = AbmConfig::for_problem(&ivp, n).unwrap();
    let traj = solve_pece(&ivp, &config).unwrap();
    let oracle = trapezoid_pece(0.0, 3.0 / n as f64, n, f_riccati);
    for (k, (&got, &want)) in traj.values().iter().zip(&oracle).enumerate() {
        assert!(
            (got - want).abs() <= 1e-12,
            "node {k}: {got} vs {want} (diff {})",
            (got - want).abs()
        );
    }
}

#[test]
fn alpha_one_single_corrector_step_matches_oracle() {
    // drive both schemes from the same (already corrected) history
    let n = 50;
    let h = 3.0 / 300.0;
    let ivp = riccati_ivp(1.0, 3.0);
    let config = AbmConfig::new(h, 300).unwrap();
    let history = trapezoid_pece(0.0, h, n - 1, f_riccati);
    let predicted = predictor(&history, &ivp, &config).unwrap();
    let corrected = corrector_step(&history, predicted, &ivp, &config).unwrap();
    let oracle = trapezoid_pece(0.0, h, n, f_riccati)[n];
    assert!(
        (corrected - oracle).abs() <= 1e-12,
        "{corrected} vs {oracle}"
    );
}

#[test]
fn refinement_shrinks_successive_differences() {
    // max node-wise gap between the h and h/2 solutions must fall as h is
    // halved across h = 0.02, 0.01, 0.005, 0.0025 on [0, 1]
    let steps = [50usize, 100, 200, 400, 800];
    let solutions: Vec<Vec<f64>> = steps
        .iter()
        .map(|&n| {
            let ivp = riccati_ivp(0.7, 1.0);
            let config = AbmConfig::for_problem(&ivp, n).unwrap();
            solve_pece(&ivp, &config).unwrap().values().to_vec()
        })
        .collect();
    let mut previous = f64::INFINITY;
    for (level, &n) in steps[..4].iter().enumerate() {
        let coarse = &solutions[level];
        let fine = &solutions[level + 1];
        let gap = (0..=n)
            .map(|k| (coarse[k] - fine[2 * k]).abs())
            .fold(0.0, f64::max);
        assert!(
            gap < previous,
            "h = {} gap {gap} did not shrink from {previous}",
            1.0 / n as f64
        );
        previous = gap;
    }
}

#[test]
fn corrector_iterations_change_little_on_smooth_problem() {
    let ivp = riccati_ivp(0.7, 0.4);
    let one = AbmConfig::for_problem(&ivp, 100).unwrap();
    let three = one.with_corrector_iterations(3).unwrap();
    let y_one = solve_pece(&ivp, &one).unwrap();
    let y_three = solve_pece(&ivp, &three).unwrap();
    let max_shift = y_one
        .values()
        .iter()
        .zip(y_three.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(max_shift > 0.0, "extra sweeps should move the iterates");
    assert!(max_shift < 1e-3, "sweeps shifted nodes by {max_shift}");
}
