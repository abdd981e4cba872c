//! Cross-module behaviour of the series methods against the PECE reference:
//! the restarted series tracks the first sub-interval and drifts afterwards.

use fde_core::abm::{solve_pece, AbmConfig};
use fde_core::{msgdtm, FractionalIvp, PolynomialRhs};

fn riccati_ivp(alpha: f64, t_end: f64) -> FractionalIvp {
    let rhs = PolynomialRhs::new([1.0, 2.0, -1.0]).unwrap();
    FractionalIvp::new(alpha, 0.0, 0.0, rhs, t_end).unwrap()
}

// Deviations of the two-piece restarted series from the h = 0.001 PECE
// reference on [0, 0.4], frozen from an independent implementation of both
// methods.
const FIRST_INTERVAL_MAX_DEV: f64 = 0.0021991560140005584;
const ENDPOINT_DEV: f64 = 0.2158216970557747;

#[test]
fn restart_divergence_on_second_interval() {
    let ivp = riccati_ivp(0.7, 0.4);
    let reference = solve_pece(&ivp, &AbmConfig::for_problem(&ivp, 400).unwrap()).unwrap();
    let pw = msgdtm::solve(&ivp, 2, 5).unwrap();

    let mut first_interval_max = 0.0f64;
    for (&t, &y_ref) in reference.nodes().iter().zip(reference.values()) {
        if t <= 0.2 {
            let dev = (pw.sample(t).unwrap() - y_ref).abs();
            first_interval_max = first_interval_max.max(dev);
        }
    }
    let endpoint_dev = (pw.sample(0.4).unwrap() - reference.values()[400]).abs();

    assert!(
        endpoint_dev > first_interval_max,
        "endpoint deviation {endpoint_dev} should exceed first-interval max {first_interval_max}"
    );
    assert!(
        (first_interval_max - FIRST_INTERVAL_MAX_DEV).abs() <= 1e-3,
        "first-interval max {first_interval_max}"
    );
    assert!(
        (endpoint_dev - ENDPOINT_DEV).abs() <= 1e-3,
        "endpoint deviation {endpoint_dev}"
    );
}

#[test]
fn msgdtm_endpoint_value_frozen() {
    let pw = msgdtm::solve(&riccati_ivp(0.7, 0.4), 2, 5).unwrap();
    let y = pw.sample(0.4).unwrap();
    assert!((y - 1.2427549766549307).abs() < 1e-12, "y(0.4) = {y}");
}

#[test]
fn continuity_at_every_breakpoint() {
    let pw = msgdtm::solve(&riccati_ivp(0.7, 3.0), 300, 5).unwrap();
    for i in 1..pw.sub_intervals() {
        let t = pw.breakpoints()[i];
        let left = pw.pieces()[i - 1].eval(t).unwrap();
        let right = pw.pieces()[i].coeffs()[0];
        assert!(
            (left - right).abs() <= 1e-12,
            "breakpoint {i}: {left} vs {right}"
        );
    }
}
