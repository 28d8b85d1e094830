//! Spring 1 with a nonzero free length, springs 2 and 3 with zero free
//! length.
//!
//! Multiplying the equilibrium equations by the spring-1 length `L1` gives
//! `A L1 = B` and `C L1 = D`. Squaring and substituting `L1^2` yields two
//! quartics in `L` whose coefficients depend on `beta` only. Their 8x8
//! dialytic determinant, after the tan-half-angle substitution and clearing
//! of denominators, is a polynomial in `x = tan(beta / 2)`.

use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::model::{
    contact_normal_force, force_projection_residual, moment_residual, pose_from, ContactFrame, MechanismParams,
};
use crate::resultant::dense::solve;
use crate::resultant::{
    back_substitute, dialytic_matrix, poly_roots_refined, polymatrix_det, BackSubMethod, BackSubstitution, CPolynomial,
};
use crate::scalar::{lift, lower, modulus, real, Cx, DoubleDouble, Real};
use crate::solution::{pair_conjugates, sort_solutions, EquilibriumSolution, SqrtBranch, Verdict};

/// Default acceptance tolerance, relative to the term scale.
pub const TOL_ACC: f64 = 1e-6;
/// Degree the resultant is expected to have.
pub const EXPECTED_DEGREE: usize = 48;
/// Held-out bound for the quartic probes, relative to `sum |F_k| |L|^k`.
pub const PROBE_TOLERANCE: f64 = 1e-9;
/// `(1 + x^2)` divides out while the remainder stays below this fraction of `sum |c_k|`.
pub const DEFLATION_TOLERANCE: f64 = 1e-12;
/// Common-root gap at `beta = pi` below which that pose is a solution.
pub const BETA_PI_TOLERANCE: f64 = 1e-6;

const PROBE_NODES: [[f64; 5]; 2] = [[-2.0, -1.0, 0.0, 1.0, 2.0], [-1.5, -0.5, 0.5, 1.5, 2.5]];
const HELD_OUT_L: [f64; 3] = [-3.0, 0.25, 3.5];
const CLEARING_EXPONENTS: std::ops::RangeInclusive<usize> = 2..=6;

/// How candidates are accepted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcceptanceFilter {
    /// Both squared equations hold at the back-substituted `L`.
    #[default]
    Squared,
    /// Both unsquared equations hold with the principal `L1`.
    PrincipalBranch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseIIOptions {
    pub tol_acc: f64,
    pub filter: AcceptanceFilter,
}

impl Default for CaseIIOptions {
    fn default() -> Self {
        Self { tol_acc: TOL_ACC, filter: AcceptanceFilter::default() }
    }
}

/// `A`, `B`, `C`, `D` and the principal `L1` at one pose.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Abcd {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub l1: Complex64,
}

impl Abcd {
    /// `|A L1 - B|` and `|C L1 - D|` with `L1` times `sign`, each over its term scale.
    pub fn scaled_residuals(&self, sign: f64) -> (f64, f64) {
        let l1 = sign * self.l1;
        let rel = |x: Complex64, y: Complex64| {
            let s = (x * l1).norm() + y.norm();
            if s == 0.0 {
                0.0
            } else {
                (x * l1 - y).norm() / s
            }
        };
        (rel(self.a, self.b), rel(self.c, self.d))
    }
}

/// Returns `L01` for a valid pattern.
pub fn require_one_nonzero(params: &MechanismParams) -> Result<f64> {
    let [l01, l02, l03] = params.free_lengths;
    if l01 > 0.0 && l02 == 0.0 && l03 == 0.0 {
        Ok(l01)
    } else {
        Err(Error::WrongFreeLengthPattern { free_lengths: params.free_lengths })
    }
}

fn frame_at(params: &MechanismParams, p_e: Point2) -> Result<ContactFrame> {
    Ok(ContactFrame { e: p_e, ..params.frame()? })
}

/// `(A, B, C, D, L1^2)`.
fn abcd_terms<T: Real>(frame: &ContactFrame, l01: f64, l: Cx<T>, cos_b: Cx<T>, sin_b: Cx<T>) -> [Cx<T>; 5] {
    let t = frame.zero_free_terms(l, cos_b, sin_b);
    let l01 = real::<T>(l01);
    [t.force, l01 * t.b, t.moment, l01 * t.d, t.l1_sq]
}

pub fn abcd_at(l: Complex64, beta: Complex64, params: &MechanismParams, p_e: Point2) -> Result<Abcd> {
    let l01 = require_one_nonzero(params)?;
    let frame = frame_at(params, p_e)?;
    let [a, b, c, d, l1_sq] = abcd_terms(&frame, l01, l, beta.cos(), beta.sin());
    Ok(Abcd { a, b, c, d, l1: l1_sq.sqrt() })
}

/// Coefficients of a polynomial of degree at most 4 from its values at five
/// probe nodes, validated at held-out nodes.
pub fn probe_quartic<T: Real, F: Fn(Cx<T>) -> Cx<T>>(f: F) -> Result<[Cx<T>; 5]> {
    let mut last_mismatch = None;
    for nodes in PROBE_NODES {
        let a: Vec<Vec<Cx<T>>> = nodes
            .iter()
            .map(|&l| {
                let l = real::<T>(l);
                let mut row = Vec::with_capacity(5);
                let mut p = Cx::<T>::one();
                for _ in 0..5 {
                    row.push(p);
                    p *= l;
                }
                row
            })
            .collect();
        let b: Vec<Cx<T>> = nodes.iter().map(|&l| f(real(l))).collect();
        let Some(x) = solve(a, b) else { continue };
        let coeffs: [Cx<T>; 5] = std::array::from_fn(|k| x[k]);
        let poly = CPolynomial::from_raw(coeffs.to_vec());
        let mismatch = HELD_OUT_L
            .iter()
            .map(|&l| {
                let scale = poly.abs_eval(l.abs()).max(f64::MIN_POSITIVE);
                modulus(poly.eval(real(l)) - f(real(l))) / scale
            })
            .fold(0.0, f64::max);
        if mismatch <= PROBE_TOLERANCE {
            return Ok(coeffs);
        }
        last_mismatch = Some(mismatch);
    }
    Err(match last_mismatch {
        Some(mismatch) => Error::ProbeMismatch { mismatch },
        None => Error::ProbeSingularity,
    })
}

/// `F(L) = A^2 L1^2 - B^2` and `M(L) = C^2 L1^2 - D^2`, coefficients ascending in `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticPair<T = f64> {
    pub f: [Cx<T>; 5],
    pub m: [Cx<T>; 5],
}

impl<T: Real> QuarticPair<T> {
    pub fn scaled(&self, s: Cx<T>) -> Self {
        Self { f: self.f.map(|c| c * s), m: self.m.map(|c| c * s) }
    }

    /// `|F(L)|` and `|M(L)|`, each over `sum |coef| |L|^k`.
    pub fn scaled_residuals(&self, l: Cx<T>) -> (f64, f64) {
        let rel = |c: &[Cx<T>; 5]| {
            let p = CPolynomial::from_raw(c.to_vec());
            let s = p.abs_eval(modulus(l));
            if s == 0.0 {
                0.0
            } else {
                modulus(p.eval(l)) / s
            }
        };
        (rel(&self.f), rel(&self.m))
    }

    pub fn lower(&self) -> QuarticPair<f64> {
        QuarticPair { f: self.f.map(lower), m: self.m.map(lower) }
    }
}

/// Quartic pair at `(cos beta, sin beta)`.
pub fn quartic_pair_trig<T: Real>(
    frame: &ContactFrame,
    l01: f64,
    cos_b: Cx<T>,
    sin_b: Cx<T>,
) -> Result<QuarticPair<T>> {
    let f = probe_quartic(|l| {
        let [a, b, _, _, l1_sq] = abcd_terms(frame, l01, l, cos_b, sin_b);
        a * a * l1_sq - b * b
    })?;
    let m = probe_quartic(|l| {
        let [_, _, c, d, l1_sq] = abcd_terms(frame, l01, l, cos_b, sin_b);
        c * c * l1_sq - d * d
    })?;
    Ok(QuarticPair { f, m })
}

/// Quartic pair at `x = tan(beta / 2)`, before clearing denominators.
pub fn quartic_pair_at_x<T: Real>(frame: &ContactFrame, l01: f64, x: Cx<T>) -> Result<QuarticPair<T>> {
    let x2 = x * x;
    let w = Cx::<T>::one() + x2;
    let cos_b = (Cx::<T>::one() - x2) / w;
    let sin_b = (x + x) / w;
    quartic_pair_trig(frame, l01, cos_b, sin_b)
}

pub fn quartic_pair_at(beta: Complex64, params: &MechanismParams, p_e: Point2) -> Result<QuarticPair> {
    let l01 = require_one_nonzero(params)?;
    let frame = frame_at(params, p_e)?;
    quartic_pair_trig(&frame, l01, beta.cos(), beta.sin())
}

fn pow<T: Real>(z: Cx<T>, e: usize) -> Cx<T> {
    (0..e).fold(Cx::<T>::one(), |acc, _| acc * z)
}

/// Resultant in `x` with its `(1 + x^2)` factors split off.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultantPolynomial<T = DoubleDouble> {
    /// Determinant times `(1 + x^2)^(8 E)`.
    pub cleared: CPolynomial<T>,
    /// `cleared / (1 + x^2)^pole_multiplicity`.
    pub deflated: CPolynomial<T>,
    /// `E`: each quartic coefficient is multiplied by `(1 + x^2)^E`.
    pub clearing_exponent: usize,
    pub pole_multiplicity: usize,
}

impl<T: Real> ResultantPolynomial<T> {
    pub fn effective_degree(&self) -> usize {
        self.cleared.degree()
    }

    pub fn summary(&self) -> ResultantSummary {
        let effective_degree = self.effective_degree();
        ResultantSummary {
            effective_degree,
            clearing_exponent: self.clearing_exponent,
            pole_multiplicity: self.pole_multiplicity,
            deflated_degree: self.deflated.degree(),
            degree_warning: (effective_degree != EXPECTED_DEGREE)
                .then(|| Error::DegreeMismatch { expected: EXPECTED_DEGREE, actual: effective_degree }.to_string()),
            coefficients: self.cleared.coeffs().iter().map(|&c| lower(c)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultantSummary {
    pub effective_degree: usize,
    pub clearing_exponent: usize,
    /// Multiplicity of each of `x = i` and `x = -i`.
    pub pole_multiplicity: usize,
    pub deflated_degree: usize,
    pub degree_warning: Option<String>,
    /// Cleared resultant, ascending powers of `x`.
    pub coefficients: Vec<Complex64>,
}

/// Resultant in the working precision `T`.
pub fn resultant_polynomial_in<T: Real>(params: &MechanismParams, p_e: Point2) -> Result<ResultantPolynomial<T>> {
    let l01 = require_one_nonzero(params)?;
    let frame = frame_at(params, p_e)?;
    let mut last_err = None;
    for e in CLEARING_EXPONENTS {
        let eval = |x: Cx<T>| {
            let w = pow(Cx::<T>::one() + x * x, e);
            match quartic_pair_at_x(&frame, l01, x) {
                Ok(q) => {
                    let q = q.scaled(w);
                    dialytic_matrix(&q.f, &q.m)
                }
                // a NaN row makes held-out validation fail
                Err(_) => vec![vec![real(f64::NAN); 8]; 8],
            }
        };
        match polymatrix_det(eval, 16 * e) {
            Ok(cleared) => {
                let cleared = realified(cleared);
                let (deflated, pole_multiplicity) = deflate_unit_pairs(&cleared);
                return Ok(ResultantPolynomial { cleared, deflated, clearing_exponent: e, pole_multiplicity });
            }
            Err(err @ Error::InterpolationMismatch { .. }) => last_err = Some(err),
            Err(err) => return Err(err),
        }
    }
    Err(last_err.unwrap_or(Error::ZeroPolynomial))
}

/// Resultant in double-double precision.
pub fn resultant_polynomial(params: &MechanismParams) -> Result<ResultantPolynomial> {
    params.validate()?;
    resultant_polynomial_in(params, params.point_e()?)
}

/// Drops imaginary parts that are pure rounding noise.
fn realified<T: Real>(p: CPolynomial<T>) -> CPolynomial<T> {
    let max = p.max_abs();
    if p.coeffs().iter().all(|c| c.im.abs().to_f64() <= 1e-20 * max) {
        CPolynomial::from_raw(p.coeffs().iter().map(|c| Cx::new(c.re, T::zero())).collect())
    } else {
        p
    }
}

fn deflate_unit_pairs<T: Real>(p: &CPolynomial<T>) -> (CPolynomial<T>, usize) {
    let mut cur = p.clone();
    let mut count = 0;
    while cur.degree() >= 2 {
        let (q, [r0, r1]) = cur.div_unit_pair();
        if modulus(r0) + modulus(r1) > DEFLATION_TOLERANCE * cur.abs_sum() {
            break;
        }
        cur = q;
        count += 1;
    }
    (cur, count)
}

/// Whether `beta = pi`, invisible to `x = tan(beta / 2)`, solves the squared pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaPiCheck {
    /// Midpoint of the closest root pair of the two quartics.
    pub l: Complex64,
    pub gap: f64,
    pub shared: bool,
}

/// Separation between accepted and rejected candidates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    /// Largest filter residual among accepted candidates.
    pub max_accepted: f64,
    /// Smallest filter residual among rejected ones; infinite at the poles.
    pub min_rejected: f64,
    /// `min_rejected / max_accepted`.
    pub ratio: f64,
    /// Largest unsquared residual with the principal `L1` among accepted candidates.
    pub max_accepted_unsquared: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseIIOutcome {
    pub resultant: ResultantSummary,
    pub beta_pi: BetaPiCheck,
    pub margin: MarginReport,
    pub solutions: Vec<EquilibriumSolution>,
}

pub fn solve_case_ii(params: &MechanismParams) -> Result<Vec<EquilibriumSolution>> {
    Ok(solve_case_ii_detailed(params, &CaseIIOptions::default())?.solutions)
}

pub fn solve_case_ii_detailed(params: &MechanismParams, options: &CaseIIOptions) -> Result<CaseIIOutcome> {
    params.validate()?;
    let l01 = require_one_nonzero(params)?;
    let p_e = params.point_e()?;
    let frame = frame_at(params, p_e)?;
    let resultant = resultant_polynomial_in::<DoubleDouble>(params, p_e)?;

    let mut solutions = Vec::with_capacity(resultant.effective_degree() + 1);
    let roots =
        if resultant.deflated.degree() > 0 { poly_roots_refined(&resultant.deflated)?.roots } else { Vec::new() };
    for x in pair_conjugates(roots) {
        solutions.push(candidate(params, &frame, l01, p_e, x, options));
    }
    for _ in 0..resultant.pole_multiplicity {
        for sign in [1.0, -1.0] {
            solutions.push(pole_candidate(Complex64::new(0.0, sign)));
        }
    }

    let pi_pair = quartic_pair_trig::<DoubleDouble>(&frame, l01, real(-1.0), real(0.0))?;
    let bs = back_substitute(&pi_pair.f, &pi_pair.m)?;
    let beta_pi = BetaPiCheck {
        l: bs.matched_l,
        gap: bs.match_gap,
        shared: bs.match_gap <= BETA_PI_TOLERANCE * bs.matched_l.norm().max(1.0),
    };
    if beta_pi.shared {
        let beta = Complex64::from(std::f64::consts::PI);
        let mut s = judge(params, p_e, &pi_pair, beta, Complex64::new(f64::INFINITY, 0.0), bs, options);
        s.note = Some("beta = pi, outside the tan-half-angle chart".into());
        solutions.push(s);
    }

    sort_solutions(&mut solutions);
    let margin = margin_report(&solutions);
    Ok(CaseIIOutcome { resultant: resultant.summary(), beta_pi, margin, solutions })
}

fn pole_candidate(x: Complex64) -> EquilibriumSolution {
    EquilibriumSolution {
        index: 0,
        beta: Complex64::new(0.0, x.im.signum() * f64::INFINITY),
        l: Complex64::new(f64::NAN, f64::NAN),
        x_beta: x,
        residual_force: f64::INFINITY,
        residual_moment: f64::INFINITY,
        scaled_residual: f64::INFINITY,
        is_real: false,
        accepted: false,
        verdict: Verdict::TanHalfAngleSingularity,
        contact_force: None,
        branch: None,
        unsquared_residual: None,
        back_substitution: None,
        note: Some("factor 1 + x^2 of the cleared resultant".into()),
    }
}

fn failed(x: Complex64, err: &Error) -> EquilibriumSolution {
    EquilibriumSolution {
        index: 0,
        beta: 2.0 * x.atan(),
        l: Complex64::new(f64::NAN, f64::NAN),
        x_beta: x,
        residual_force: f64::NAN,
        residual_moment: f64::NAN,
        scaled_residual: f64::INFINITY,
        is_real: false,
        accepted: false,
        verdict: Verdict::EvaluationFailed,
        contact_force: None,
        branch: None,
        unsquared_residual: None,
        back_substitution: None,
        note: Some(err.to_string()),
    }
}

fn candidate(
    params: &MechanismParams,
    frame: &ContactFrame,
    l01: f64,
    p_e: Point2,
    x: Complex64,
    options: &CaseIIOptions,
) -> EquilibriumSolution {
    let pair = match quartic_pair_at_x::<DoubleDouble>(frame, l01, lift(x)) {
        Ok(p) => p,
        Err(e) => return failed(x, &e),
    };
    let bs = match back_substitute(&pair.f, &pair.m) {
        Ok(b) => b,
        Err(e) => return failed(x, &e),
    };
    judge(params, p_e, &pair, 2.0 * x.atan(), x, bs, options)
}

fn judge(
    params: &MechanismParams,
    p_e: Point2,
    pair: &QuarticPair<DoubleDouble>,
    beta: Complex64,
    x: Complex64,
    bs: BackSubstitution,
    options: &CaseIIOptions,
) -> EquilibriumSolution {
    let l = bs.l;
    let (sf, sm) = pair.scaled_residuals(lift(l));
    let squared = sf.max(sm);
    let abcd = match abcd_at(l, beta, params, p_e) {
        Ok(v) => v,
        Err(e) => return failed(x, &e),
    };
    let (pf, pm) = abcd.scaled_residuals(1.0);
    let (ff, fm) = abcd.scaled_residuals(-1.0);
    let unsquared = pf.max(pm);
    let branch = if unsquared <= options.tol_acc {
        SqrtBranch::Principal
    } else if ff.max(fm) <= options.tol_acc {
        SqrtBranch::Flipped
    } else {
        SqrtBranch::Mixed
    };
    let filtered = match options.filter {
        AcceptanceFilter::Squared => squared,
        AcceptanceFilter::PrincipalBranch => unsquared,
    };
    let accepted = filtered <= options.tol_acc;
    let is_real = EquilibriumSolution::classify_real(beta, l);
    let pose = pose_from(l, beta, params, p_e);
    let residual = |r: Result<Complex64>| r.map(|z| z.norm()).unwrap_or(f64::NAN);
    let contact_force = if is_real { contact_normal_force(&pose, params).ok() } else { None };
    let mut notes = Vec::new();
    if bs.method == BackSubMethod::RootMatching {
        notes.push(format!("L by root matching (condition {:.1e})", bs.condition));
    } else if !bs.agrees {
        notes.push(format!("linear and root-matching L differ (gap {:.1e})", bs.match_gap));
    }
    if is_real && branch != SqrtBranch::Principal {
        notes.push("real root needs a negative spring-1 length".into());
    }
    EquilibriumSolution {
        index: 0,
        beta,
        l,
        x_beta: x,
        residual_force: residual(force_projection_residual(&pose, params)),
        residual_moment: residual(moment_residual(&pose, params)),
        scaled_residual: filtered,
        is_real,
        accepted,
        verdict: if accepted { Verdict::Accepted } else { Verdict::ResidualTooLarge },
        contact_force,
        branch: Some(branch),
        unsquared_residual: Some(unsquared),
        back_substitution: Some(bs.method),
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    }
}

fn margin_report(solutions: &[EquilibriumSolution]) -> MarginReport {
    let max_accepted = solutions.iter().filter(|s| s.accepted).map(|s| s.scaled_residual).fold(0.0, f64::max);
    let min_rejected =
        solutions.iter().filter(|s| !s.accepted).map(|s| s.scaled_residual).fold(f64::INFINITY, f64::min);
    let max_accepted_unsquared =
        solutions.iter().filter(|s| s.accepted).filter_map(|s| s.unsquared_residual).fold(0.0, f64::max);
    MarginReport { max_accepted, min_rejected, ratio: min_rejected / max_accepted, max_accepted_unsquared }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::case_i::solve_case_i;
    use crate::model::fixtures::reference_params;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn case_ii_params() -> MechanismParams {
        MechanismParams { free_lengths: [1.0, 0.0, 0.0], ..reference_params() }
    }

    #[test]
    fn pattern_is_enforced() {
        let p = reference_params();
        assert!(matches!(
            abcd_at(Complex64::from(7.0), Complex64::from(0.1), &p, p.point_e().unwrap()),
            Err(Error::WrongFreeLengthPattern { .. })
        ));
        let p = MechanismParams { free_lengths: [1.0, 0.5, 0.0], ..reference_params() };
        assert!(matches!(resultant_polynomial(&p), Err(Error::WrongFreeLengthPattern { .. })));
    }

    #[test]
    fn identities_tie_to_model_residuals() {
        let p = case_ii_params();
        let e = p.point_e().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let l = Complex64::from(rng.gen_range(0.0..15.0));
            let beta = Complex64::from(rng.gen_range(-3.0..3.0));
            let v = abcd_at(l, beta, &p, e).unwrap();
            let pose = pose_from(l, beta, &p, e);
            let fr = force_projection_residual(&pose, &p).unwrap();
            let mr = moment_residual(&pose, &p).unwrap();
            let lhs_f = v.a * v.l1 - v.b;
            let lhs_m = v.c * v.l1 - v.d;
            assert!((lhs_f - v.l1 * fr).norm() <= 1e-9 * ((v.a * v.l1).norm() + v.b.norm()));
            assert!((lhs_m - v.l1 * mr).norm() <= 1e-9 * ((v.c * v.l1).norm() + v.d.norm()));
        }
    }

    #[test]
    fn vanishing_free_length_reduces_to_case_i_forms() {
        let p = MechanismParams { free_lengths: [1e-300, 0.0, 0.0], ..reference_params() };
        let e = p.point_e().unwrap();
        let (l, beta) = (Complex64::from(6.0), Complex64::from(0.4));
        let v = abcd_at(l, beta, &p, e).unwrap();
        assert!(v.b.norm() < 1e-290 && v.d.norm() < 1e-290);
        let frame = frame_at(&reference_params(), e).unwrap();
        let t = crate::model::zero_free_terms_at(&frame, l, beta);
        assert_eq!(v.a, t.force);
        assert_eq!(v.c, t.moment);
    }

    #[test]
    fn synthetic_probe() {
        let c = probe_quartic::<f64, _>(|l| l * l).unwrap();
        for (k, v) in c.iter().enumerate() {
            let expect = if k == 2 { 1.0 } else { 0.0 };
            assert!((v - Complex64::from(expect)).norm() < 1e-12);
        }
        assert!(matches!(probe_quartic::<f64, _>(|l| l.powu(5)), Err(Error::ProbeMismatch { .. })));
    }

    #[test]
    fn quartic_pair_matches_direct_evaluation() {
        let p = case_ii_params();
        let e = p.point_e().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let beta = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-0.5..0.5));
            let q = quartic_pair_at(beta, &p, e).unwrap();
            // a sixth node off the probe grid
            let l = Complex64::new(rng.gen_range(-5.0..12.0), rng.gen_range(-1.0..1.0));
            let v = abcd_at(l, beta, &p, e).unwrap();
            let f = v.a * v.a * v.l1 * v.l1 - v.b * v.b;
            let fp = CPolynomial::from_raw(q.f.to_vec());
            assert!((fp.eval(l) - f).norm() <= 1e-9 * fp.abs_eval(l.norm()));
        }
    }

    #[test]
    fn tan_half_angle_pair_matches_trig_pair() {
        let p = case_ii_params();
        let e = p.point_e().unwrap();
        let frame = frame_at(&p, e).unwrap();
        let x = Complex64::new(0.3, -0.7);
        let a = quartic_pair_at_x::<f64>(&frame, 1.0, x).unwrap();
        let b = quartic_pair_at(2.0 * x.atan(), &p, e).unwrap();
        for k in 0..5 {
            assert!((a.f[k] - b.f[k]).norm() <= 1e-9 * b.f[k].norm().max(1.0));
            assert!((a.m[k] - b.m[k]).norm() <= 1e-9 * b.m[k].norm().max(1.0));
        }
    }

    #[test]
    fn resultant_degree_and_poles() {
        let r = resultant_polynomial(&case_ii_params()).unwrap();
        assert_eq!(r.effective_degree(), 48);
        assert_eq!(r.clearing_exponent, 3);
        assert_eq!(r.pole_multiplicity, 6);
        assert_eq!(r.deflated.degree(), 36);
        assert!(r.cleared.lower().is_real(1e-12));
        assert!(r.summary().degree_warning.is_none());
    }

    #[test]
    fn counts_on_worked_instance() {
        let out = solve_case_ii_detailed(&case_ii_params(), &CaseIIOptions::default()).unwrap();
        let s = &out.solutions;
        assert_eq!(s.len(), 48);
        assert_eq!(s.iter().filter(|s| s.accepted).count(), 36);
        assert_eq!(s.iter().filter(|s| s.verdict == Verdict::TanHalfAngleSingularity).count(), 12);
        assert_eq!(s.iter().filter(|s| s.is_real).count(), 8);
        assert!(s.iter().filter(|s| s.is_real).all(|s| s.accepted));
        assert!(!out.beta_pi.shared);
        let principal: Vec<_> = s.iter().filter(|s| s.branch == Some(SqrtBranch::Principal)).collect();
        assert_eq!(principal.len(), 10);
        for (beta, l) in [(-0.2386, 7.3217), (2.8577, 6.7974)] {
            assert!(principal
                .iter()
                .any(|s| s.is_real && (s.beta.re - beta).abs() < 1e-3 && (s.l.re - l).abs() < 1e-3));
        }
    }

    #[test]
    fn principal_branch_closure() {
        let p = case_ii_params();
        let e = p.point_e().unwrap();
        for s in solve_case_ii(&p).unwrap().iter().filter(|s| s.branch == Some(SqrtBranch::Principal)) {
            let v = abcd_at(s.l, s.beta, &p, e).unwrap();
            let (f, m) = v.scaled_residuals(1.0);
            assert!(f <= TOL_ACC && m <= TOL_ACC, "{} {}", s.beta, s.l);
        }
    }

    #[test]
    fn accepted_set_is_conjugate_closed() {
        let s = solve_case_ii(&case_ii_params()).unwrap();
        let acc: Vec<_> = s.iter().filter(|s| s.accepted).collect();
        for a in &acc {
            assert!(acc.iter().any(|b| (b.beta - a.beta.conj()).norm() < 1e-6 && (b.l - a.l.conj()).norm() < 1e-6));
        }
    }

    #[test]
    fn principal_filter_is_stricter() {
        let options = CaseIIOptions { filter: AcceptanceFilter::PrincipalBranch, ..Default::default() };
        let out = solve_case_ii_detailed(&case_ii_params(), &options).unwrap();
        assert_eq!(out.solutions.iter().filter(|s| s.accepted).count(), 10);
    }

    #[test]
    fn small_free_length_tracks_zero_free_length_roots() {
        // below about 1e-2 the two quartics nearly share the roots of L1^2 and
        // the real roots are lost to conditioning
        let p = MechanismParams { free_lengths: [0.1, 0.0, 0.0], ..reference_params() };
        let reference: Vec<f64> =
            solve_case_i(&reference_params()).unwrap().iter().filter(|s| s.is_real).map(|s| s.beta.re).collect();
        let sols = solve_case_ii(&p).unwrap();
        let real: Vec<_> = sols.iter().filter(|s| s.is_real && s.accepted).collect();
        assert_eq!(real.len(), 8);
        for s in real {
            assert!(reference.iter().any(|b| (s.beta.re - b).abs() < 1e-2), "beta {}", s.beta);
        }
    }
}
