//! All free lengths zero: both equilibrium equations are linear in `L`, and
//! eliminating `L` after the tan-half-angle substitution leaves a quartic.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::model::{
    contact_normal_force, force_projection_residual, moment_residual, pose_from, residual_scales, ContactFrame,
    MechanismParams,
};
use crate::resultant::{poly_roots, CPolynomial};
use crate::solution::{pair_conjugates, sort_solutions, EquilibriumSolution, Verdict};

/// Residual bound for a returned root, relative to the residual's term scale.
pub const VERIFY_TOLERANCE: f64 = 1e-8;
/// `|C4|` below this fraction of `max |C_k|` counts as a lost degree.
pub const DEGENERATE_TOLERANCE: f64 = 1e-12;

/// Force = `J1 L + J2 cos b + J3 sin b + J4`;
/// moment = `(K1 + K2 cos b + K3 sin b) L + K4 cos b + K5 sin b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseICoefficients {
    pub j: [f64; 4],
    pub k: [f64; 5],
}

impl CaseICoefficients {
    pub fn force(&self, l: Complex64, beta: Complex64) -> Complex64 {
        let [j1, j2, j3, j4] = self.j;
        j1 * l + j2 * beta.cos() + j3 * beta.sin() + j4
    }

    pub fn moment(&self, l: Complex64, beta: Complex64) -> Complex64 {
        let [k1, k2, k3, k4, k5] = self.k;
        let (c, s) = (beta.cos(), beta.sin());
        (k1 + k2 * c + k3 * s) * l + k4 * c + k5 * s
    }

    /// After multiplying by `1 + x^2`, force = `a(x) L + b(x)` and
    /// moment = `c(x) L + d(x)`.
    pub fn linear_forms(&self) -> [CPolynomial; 4] {
        let [j1, j2, j3, j4] = self.j;
        let [k1, k2, k3, k4, k5] = self.k;
        [
            CPolynomial::from_real(&[j1, 0.0, j1]),
            CPolynomial::from_real(&[j2 + j4, 2.0 * j3, j4 - j2]),
            CPolynomial::from_real(&[k1 + k2, 2.0 * k3, k1 - k2]),
            CPolynomial::from_real(&[k4, 2.0 * k5, -k4]),
        ]
    }

    /// `b c - a d`, whose roots are the `x = tan(beta / 2)` of all solutions.
    pub fn quartic(&self) -> CPolynomial {
        let [a, b, c, d] = self.linear_forms();
        CPolynomial::from_raw((&(&b * &c) - &(&a * &d)).into_coeffs())
    }
}

fn require_zero_free_lengths(params: &MechanismParams) -> Result<()> {
    for (i, &l0) in params.free_lengths.iter().enumerate() {
        if l0 != 0.0 {
            return Err(Error::NonZeroFreeLength { spring: i + 1, value: l0 });
        }
    }
    Ok(())
}

/// Extracts `J` and `K` by sampling the residuals at
/// `(L, beta)` in `{(0,0), (1,0), (0,pi/2), (0,pi), (1,pi/2), (1,pi)}`.
pub fn case_i_coefficients(params: &MechanismParams, p_e: Point2) -> Result<CaseICoefficients> {
    require_zero_free_lengths(params)?;
    let frame = ContactFrame { e: p_e, ..params.frame()? };
    // exact cos/sin at the probe angles
    let probe = |l: f64, c: f64, s: f64| {
        let t = frame.zero_free_terms(Complex64::from(l), Complex64::from(c), Complex64::from(s));
        (t.force.re, t.moment.re)
    };
    let (f00, m00) = probe(0.0, 1.0, 0.0);
    let (f10, m10) = probe(1.0, 1.0, 0.0);
    let (f0h, m0h) = probe(0.0, 0.0, 1.0);
    let (f0p, _) = probe(0.0, -1.0, 0.0);
    let (_, m1h) = probe(1.0, 0.0, 1.0);
    let (_, m1p) = probe(1.0, -1.0, 0.0);

    let j1 = f10 - f00;
    let j2 = 0.5 * (f00 - f0p);
    let j4 = 0.5 * (f00 + f0p);
    let j3 = f0h - j4;

    let k4 = m00;
    let k5 = m0h;
    let k1_plus_k2 = m10 - k4;
    let k1_minus_k2 = m1p + k4;
    let k1 = 0.5 * (k1_plus_k2 + k1_minus_k2);
    let k2 = 0.5 * (k1_plus_k2 - k1_minus_k2);
    let k3 = m1h - k5 - k1;
    Ok(CaseICoefficients { j: [j1, j2, j3, j4], k: [k1, k2, k3, k4, k5] })
}

/// Full case-i outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseIOutcome {
    pub coefficients: CaseICoefficients,
    /// Quartic coefficients, ascending powers of `x`.
    pub quartic: Vec<f64>,
    /// Moment residual at `beta = pi` with `L` from the force equation; zero
    /// exactly when `beta = pi` is a solution the quartic cannot see.
    pub beta_pi_residual: f64,
    pub solutions: Vec<EquilibriumSolution>,
}

pub fn solve_case_i(params: &MechanismParams) -> Result<Vec<EquilibriumSolution>> {
    Ok(solve_case_i_detailed(params)?.solutions)
}

pub fn solve_case_i_detailed(params: &MechanismParams) -> Result<CaseIOutcome> {
    params.validate()?;
    let p_e = params.point_e()?;
    let coefficients = case_i_coefficients(params, p_e)?;
    let quartic = coefficients.quartic();
    let max = quartic.max_abs();
    let lead = quartic.coeff(4).norm();
    if !(lead > DEGENERATE_TOLERANCE * max) {
        let degree = (0..4).rev().find(|&k| quartic.coeff(k).norm() > DEGENERATE_TOLERANCE * max).unwrap_or(0);
        return Err(Error::DegenerateQuartic { degree });
    }

    let [j1, j2, _, j4] = coefficients.j;
    let beta_pi_residual = {
        let l = (j2 - j4) / j1;
        coefficients.moment(Complex64::from(l), Complex64::from(std::f64::consts::PI)).norm()
    };

    let [a, b, c, d] = coefficients.linear_forms();
    let mut solutions = Vec::with_capacity(4);
    for x in pair_conjugates(poly_roots(&quartic)?) {
        let (ax, cx) = (a.eval(x), c.eval(x));
        let l_force = -b.eval(x) / ax;
        let l_moment = -d.eval(x) / cx;
        // take L from the better-conditioned linear form
        let l = if ax.norm() >= cx.norm() * 1e-3 { l_force } else { l_moment };
        let beta = 2.0 * x.atan();
        let mut sol = verify(params, p_e, beta, l, x)?;
        let spread = (l_force - l_moment).norm();
        if spread > 1e-8 * l.norm().max(1.0) {
            sol.note = Some(format!("force and moment forms give L differing by {spread:.3e}"));
        }
        solutions.push(sol);
    }
    sort_solutions(&mut solutions);
    Ok(CaseIOutcome {
        coefficients,
        quartic: quartic.coeffs().iter().map(|c| c.re).collect(),
        beta_pi_residual,
        solutions,
    })
}

fn verify(
    params: &MechanismParams,
    p_e: Point2,
    beta: Complex64,
    l: Complex64,
    x: Complex64,
) -> Result<EquilibriumSolution> {
    let pose = pose_from(l, beta, params, p_e);
    let f = force_projection_residual(&pose, params)?;
    let m = moment_residual(&pose, params)?;
    let scales = residual_scales(&pose, params)?;
    let scaled = (f.norm() / scales.force).max(m.norm() / scales.moment);
    let is_real = EquilibriumSolution::classify_real(beta, l);
    let accepted = scaled <= VERIFY_TOLERANCE;
    Ok(EquilibriumSolution {
        index: 0,
        beta,
        l,
        x_beta: x,
        residual_force: f.norm(),
        residual_moment: m.norm(),
        scaled_residual: scaled,
        is_real,
        accepted,
        verdict: if accepted { Verdict::Accepted } else { Verdict::ResidualTooLarge },
        contact_force: if is_real { Some(contact_normal_force(&pose, params)?) } else { None },
        branch: None,
        unsquared_residual: None,
        back_substitution: None,
        note: None,
    })
}
