//! Inputs shared by the benchmarks.

use compliant_core::{CPolynomial, MechanismParams, Point2};
use num_complex::Complex64;

pub fn reference_params() -> MechanismParams {
    MechanismParams {
        p_m: Point2::new(19.5, 6.25),
        alpha: 150f64.to_radians(),
        p_a1_in1: Point2::new(5.5, 0.0),
        p_a2_in2: Point2::new(4.5, 0.0),
        p_p_in2: Point2::new(2.25, 2.5),
        p_o1: Point2::new(5.0, 3.5),
        phi1: 20f64.to_radians(),
        k: [1.5, 1.85, 1.45],
        free_lengths: [0.0; 3],
    }
}

pub fn one_free_length_params() -> MechanismParams {
    MechanismParams { free_lengths: [1.0, 0.0, 0.0], ..reference_params() }
}

/// Degree 48 with roots spread over a golden-angle spiral in `0.5 <= |z| <= 2`.
pub fn spiral_polynomial() -> CPolynomial<f64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let roots: Vec<Complex64> =
        (0..48).map(|k| Complex64::from_polar(0.5 + 1.5 * k as f64 / 47.0, golden * k as f64)).collect();
    CPolynomial::from_roots(&roots)
}
