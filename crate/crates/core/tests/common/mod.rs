#![allow(dead_code)]

use compliant_core::{MechanismParams, Point2};
use rand::Rng;

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

pub fn one_free_length_params(l01: f64) -> MechanismParams {
    MechanismParams { free_lengths: [l01, 0.0, 0.0], ..reference_params() }
}

/// Random mechanism with a surface well away from the origin and not
/// parallel to the base X axis.
pub fn random_params<R: Rng>(rng: &mut R, free_lengths: [f64; 3]) -> MechanismParams {
    loop {
        let phi1: f64 = rng.gen_range(-0.8..0.8);
        let alpha: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        if (alpha - phi1).sin().abs() < 0.3 {
            continue;
        }
        let p_o1 = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let p_m = p_o1 + rng.gen_range(8.0..20.0) * Point2::unit(rng.gen_range(0.0..std::f64::consts::TAU));
        let p = MechanismParams {
            p_m,
            alpha,
            p_a1_in1: Point2::new(rng.gen_range(2.0..8.0), 0.0),
            p_a2_in2: Point2::new(rng.gen_range(2.0..8.0), 0.0),
            p_p_in2: Point2::new(rng.gen_range(0.0..4.0), rng.gen_range(0.5..4.0)),
            p_o1,
            phi1,
            k: [rng.gen_range(0.5..3.0), rng.gen_range(0.5..3.0), rng.gen_range(0.5..3.0)],
            free_lengths,
        };
        if p.plane().offset.abs() > 1.0 {
            return p;
        }
    }
}
