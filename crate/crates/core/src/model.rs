//! Mechanism parameters, the contact-constrained pose `(L, beta)` and the
//! two equilibrium residuals.
//!
//! Pose arithmetic is written over complex numbers so complex roots of the
//! elimination polynomials can be checked by direct substitution.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{intersect_lines, line_through, make_plane, make_transform, PlaneSpec, Point2, Transform2H};
use crate::scalar::{real, Cx, Real};

/// Springs shorter than this (m) have no defined direction.
pub const MIN_SPRING_LENGTH: f64 = 1e-12;

/// All given quantities of the mechanism. Angles are in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MechanismParams {
    /// A point on the contact surface, fixed frame.
    pub p_m: Point2,
    /// Direction of the surface line.
    pub alpha: f64,
    /// Base anchor A1 in the base-platform frame.
    pub p_a1_in1: Point2,
    /// Top anchor A2 in the top-platform frame.
    pub p_a2_in2: Point2,
    /// Contact pin P in the top-platform frame.
    pub p_p_in2: Point2,
    /// Base-platform origin O1 in the fixed frame.
    pub p_o1: Point2,
    /// Base-platform orientation.
    pub phi1: f64,
    /// Spring constants k1, k2, k3 (N/m).
    pub k: [f64; 3],
    /// Free lengths L01, L02, L03 (m).
    pub free_lengths: [f64; 3],
}

impl MechanismParams {
    pub fn validate(&self) -> Result<()> {
        let points = [
            ("p_m", self.p_m),
            ("p_a1_in1", self.p_a1_in1),
            ("p_a2_in2", self.p_a2_in2),
            ("p_p_in2", self.p_p_in2),
            ("p_o1", self.p_o1),
        ];
        for (field, p) in points {
            if !p.is_finite() {
                return Err(Error::invalid(field, "coordinates must be finite"));
            }
        }
        if !self.alpha.is_finite() {
            return Err(Error::invalid("alpha", "must be finite"));
        }
        if !self.phi1.is_finite() {
            return Err(Error::invalid("phi1", "must be finite"));
        }
        for (i, &k) in self.k.iter().enumerate() {
            if !(k.is_finite() && k > 0.0) {
                return Err(Error::invalid("k", format!("k{} = {k} must be positive", i + 1)));
            }
        }
        for (i, &l0) in self.free_lengths.iter().enumerate() {
            if !(l0.is_finite() && l0 >= 0.0) {
                return Err(Error::invalid("free_lengths", format!("L0{} = {l0} must be non-negative", i + 1)));
            }
        }
        for (field, p) in [("p_a1_in1", self.p_a1_in1), ("p_a2_in2", self.p_a2_in2)] {
            if !(p.x > 0.0) {
                return Err(Error::invalid(field, "anchor must lie on the positive X axis"));
            }
            if p.y.abs() > 1e-12 * p.x.max(1.0) {
                return Err(Error::invalid(field, "anchor must lie on the X axis (y = 0)"));
            }
        }
        Ok(())
    }

    pub fn d_o1a1(&self) -> f64 {
        self.p_a1_in1.norm()
    }

    pub fn d_o2a2(&self) -> f64 {
        self.p_a2_in2.norm()
    }

    pub fn base_transform(&self) -> Transform2H {
        make_transform(self.phi1, self.p_o1)
    }

    pub fn a1_fixed(&self) -> Point2 {
        self.base_transform().apply(self.p_a1_in1)
    }

    pub fn surface_direction(&self) -> Point2 {
        Point2::unit(self.alpha)
    }

    /// Intersection of the base X axis with the surface line.
    pub fn point_e(&self) -> Result<Point2> {
        intersect_lines(&line_through(self.p_o1, self.phi1), &line_through(self.p_m, self.alpha))
    }

    pub fn plane(&self) -> PlaneSpec {
        make_plane(self.alpha, self.p_m)
    }

    /// Pins every fixed quantity the pose evaluation needs.
    pub fn frame(&self) -> Result<ContactFrame> {
        Ok(ContactFrame {
            e: self.point_e()?,
            o1: self.p_o1,
            a1: self.a1_fixed(),
            dir: self.surface_direction(),
            p_top: self.p_p_in2,
            a_top: self.p_a2_in2,
            k: self.k,
        })
    }

    /// Same mechanism seen from a fixed frame moved by `t`.
    pub fn transformed(&self, t: &Transform2H) -> MechanismParams {
        MechanismParams {
            p_m: t.apply(self.p_m),
            alpha: self.alpha + t.angle,
            p_o1: t.apply(self.p_o1),
            phi1: self.phi1 + t.angle,
            ..*self
        }
    }

    /// All lengths multiplied by `s`.
    pub fn scaled(&self, s: f64) -> MechanismParams {
        MechanismParams {
            p_m: s * self.p_m,
            p_a1_in1: s * self.p_a1_in1,
            p_a2_in2: s * self.p_a2_in2,
            p_p_in2: s * self.p_p_in2,
            p_o1: s * self.p_o1,
            free_lengths: self.free_lengths.map(|l| s * l),
            ..*self
        }
    }
}

/// Fixed-frame data shared by every pose evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactFrame {
    pub e: Point2,
    pub o1: Point2,
    pub a1: Point2,
    /// `(cos alpha, sin alpha)`.
    pub dir: Point2,
    pub p_top: Point2,
    pub a_top: Point2,
    pub k: [f64; 3],
}

/// Planar point with complex coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CPoint<T = f64> {
    pub x: Cx<T>,
    pub y: Cx<T>,
}

impl<T: Real> CPoint<T> {
    pub fn new(x: Cx<T>, y: Cx<T>) -> Self {
        Self { x, y }
    }

    pub fn lift(p: Point2) -> Self {
        Self { x: real(p.x), y: real(p.y) }
    }

    pub fn dot(self, o: Self) -> Cx<T> {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> Cx<T> {
        self.x * o.y - self.y * o.x
    }

    /// `x^2 + y^2` without conjugation, analytic in the coordinates.
    pub fn sq_len(self) -> Cx<T> {
        self.x * self.x + self.y * self.y
    }

    pub fn scale(self, s: Cx<T>) -> Self {
        Self { x: s * self.x, y: s * self.y }
    }
}

impl CPoint<f64> {
    pub fn re(self) -> Point2 {
        Point2::new(self.x.re, self.y.re)
    }

    pub fn max_imag(self) -> f64 {
        self.x.im.abs().max(self.y.im.abs())
    }
}

impl<T: Real> Add for CPoint<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { x: self.x + o.x, y: self.y + o.y }
    }
}

impl<T: Real> Sub for CPoint<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { x: self.x - o.x, y: self.y - o.y }
    }
}

impl<T: Real> Mul<CPoint<T>> for Cx<T> {
    type Output = CPoint<T>;
    fn mul(self, p: CPoint<T>) -> CPoint<T> {
        p.scale(self)
    }
}

/// Platform points for a pose given by `L` and `(cos beta, sin beta)`.
#[derive(Debug, Clone, Copy)]
pub struct PosePoints<T> {
    pub p: CPoint<T>,
    pub o2: CPoint<T>,
    pub a2: CPoint<T>,
}

fn rotate<T: Real>(v: Point2, c: Cx<T>, s: Cx<T>) -> CPoint<T> {
    let (vx, vy) = (real::<T>(v.x), real::<T>(v.y));
    CPoint::new(c * vx - s * vy, s * vx + c * vy)
}

impl ContactFrame {
    pub fn pose_points<T: Real>(&self, l: Cx<T>, cos_b: Cx<T>, sin_b: Cx<T>) -> PosePoints<T> {
        let (ca, sa) = (real::<T>(self.dir.x), real::<T>(self.dir.y));
        // rotation by alpha + beta
        let c = ca * cos_b - sa * sin_b;
        let s = sa * cos_b + ca * sin_b;
        let p = CPoint::lift(self.e) + CPoint::<T>::lift(self.dir).scale(l);
        let o2 = p + rotate(self.p_top, c, s);
        // the top frame points at alpha + beta + pi
        let a2 = o2 - rotate(self.a_top, c, s);
        PosePoints { p, o2, a2 }
    }

    /// Equilibrium terms with the free lengths set to zero, plus the pieces
    /// that carry the free length of spring 1.
    pub fn zero_free_terms<T: Real>(&self, l: Cx<T>, cos_b: Cx<T>, sin_b: Cx<T>) -> ZeroFreeTerms<T> {
        let PosePoints { p, o2, a2 } = self.pose_points(l, cos_b, sin_b);
        let o1 = CPoint::<T>::lift(self.o1);
        let a1 = CPoint::<T>::lift(self.a1);
        let dir = CPoint::<T>::lift(self.dir);
        let [k1, k2, k3] = self.k.map(real::<T>);
        let d1 = o2 - o1;
        let f1 = d1.scale(k1);
        let f2 = (a2 - o1).scale(k2);
        let f3 = (a2 - a1).scale(k3);
        let r_o = o1 - p;
        let r_a = a1 - p;
        ZeroFreeTerms {
            force: (f1 + f2 + f3).dot(dir),
            moment: r_o.cross(f1 + f2) + r_a.cross(f3),
            b: f1.dot(dir),
            d: r_o.cross(f1),
            l1_sq: d1.sq_len(),
        }
    }
}

/// With `L1 = sqrt(l1_sq)` the true residuals are
/// `force - L01 * b / L1` and `moment - L01 * d / L1`.
#[derive(Debug, Clone, Copy)]
pub struct ZeroFreeTerms<T> {
    pub force: Cx<T>,
    pub moment: Cx<T>,
    pub b: Cx<T>,
    pub d: Cx<T>,
    pub l1_sq: Cx<T>,
}

/// Pose of the top platform in contact with the surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactPose {
    pub l: Complex64,
    pub beta: Complex64,
    pub p_e: Point2,
    pub p_p: CPoint,
    pub p_o2: CPoint,
    pub p_a2: CPoint,
    pub phi2: Complex64,
}

impl ContactPose {
    pub fn is_real(&self, tol: f64) -> bool {
        self.l.im.abs() <= tol && self.beta.im.abs() <= tol
    }
}

pub fn pose_from(l: Complex64, beta: Complex64, params: &MechanismParams, p_e: Point2) -> ContactPose {
    let frame = frame_unchecked(params, p_e);
    let pts = frame.pose_points(l, beta.cos(), beta.sin());
    ContactPose {
        l,
        beta,
        p_e,
        p_p: pts.p,
        p_o2: pts.o2,
        p_a2: pts.a2,
        phi2: Complex64::from(params.alpha) + beta + Complex64::from(std::f64::consts::PI),
    }
}

fn frame_unchecked(params: &MechanismParams, e: Point2) -> ContactFrame {
    ContactFrame {
        e,
        o1: params.p_o1,
        a1: params.a1_fixed(),
        dir: params.surface_direction(),
        p_top: params.p_p_in2,
        a_top: params.p_a2_in2,
        k: params.k,
    }
}

/// Spring lengths, unit vectors and force magnitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpringState {
    /// Principal square roots of the squared distances.
    pub lengths: [Complex64; 3],
    pub directions: [CPoint; 3],
    pub forces: [Complex64; 3],
}

impl SpringState {
    /// `f_i * S_i`, the force each spring exerts.
    pub fn force_vectors(&self) -> [CPoint; 3] {
        [0, 1, 2].map(|i| self.directions[i].scale(self.forces[i]))
    }
}

pub fn spring_state(pose: &ContactPose, params: &MechanismParams) -> Result<SpringState> {
    let o1 = CPoint::lift(params.p_o1);
    let a1 = CPoint::lift(params.a1_fixed());
    let diffs = [pose.p_o2 - o1, pose.p_a2 - o1, pose.p_a2 - a1];
    let mut lengths = [Complex64::zero(); 3];
    let mut directions = [CPoint::lift(Point2::ORIGIN); 3];
    let mut forces = [Complex64::zero(); 3];
    for i in 0..3 {
        let len = diffs[i].sq_len().sqrt();
        if len.norm() < MIN_SPRING_LENGTH {
            return Err(Error::ZeroLengthSpring { spring: i + 1 });
        }
        lengths[i] = len;
        directions[i] = diffs[i].scale(len.inv());
        forces[i] = params.k[i] * (len - params.free_lengths[i]);
    }
    Ok(SpringState { lengths, directions, forces })
}

/// Magnitudes used to normalise the two residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualScales {
    pub force: f64,
    pub moment: f64,
}

fn cnorm(p: CPoint) -> f64 {
    (p.x.norm_sqr() + p.y.norm_sqr()).sqrt()
}

fn residual_parts(pose: &ContactPose, params: &MechanismParams) -> Result<([CPoint; 3], [CPoint; 3])> {
    let state = spring_state(pose, params)?;
    let o1 = CPoint::lift(params.p_o1);
    let a1 = CPoint::lift(params.a1_fixed());
    let arms = [o1 - pose.p_p, o1 - pose.p_p, a1 - pose.p_p];
    Ok((state.force_vectors(), arms))
}

/// `(f1 S1 + f2 S2 + f3 S3) . (cos alpha, sin alpha)`.
pub fn force_projection_residual(pose: &ContactPose, params: &MechanismParams) -> Result<Complex64> {
    let (fs, _) = residual_parts(pose, params)?;
    let dir = CPoint::lift(params.surface_direction());
    Ok(fs.iter().map(|f| f.dot(dir)).sum())
}

/// Moment of the spring forces about P; springs 1 and 2 act at O1, spring 3 at A1.
pub fn moment_residual(pose: &ContactPose, params: &MechanismParams) -> Result<Complex64> {
    let (fs, arms) = residual_parts(pose, params)?;
    Ok((0..3).map(|i| arms[i].cross(fs[i])).sum())
}

/// Sum of term magnitudes in each residual; never below 1.
pub fn residual_scales(pose: &ContactPose, params: &MechanismParams) -> Result<ResidualScales> {
    let (fs, arms) = residual_parts(pose, params)?;
    let force: f64 = fs.iter().map(|&f| cnorm(f)).sum();
    let moment: f64 = (0..3).map(|i| cnorm(arms[i]) * cnorm(fs[i])).sum();
    Ok(ResidualScales { force: force.max(1.0), moment: moment.max(1.0) })
}

/// Normal reaction of the surface on P, positive when it pushes towards the
/// side of the surface holding O2 and negative when it has to pull. Uses the
/// real part of the pose.
pub fn contact_normal_force(pose: &ContactPose, params: &MechanismParams) -> Result<f64> {
    let state = spring_state(pose, params)?;
    // the reaction balances the spring forces acting on the top platform
    let reaction = state.force_vectors().iter().fold(Point2::ORIGIN, |acc, f| acc + f.re());
    let plane = params.plane();
    Ok(plane.evaluate(pose.p_o2.re()).signum() * reaction.dot(plane.normal))
}

/// Zero-free-length terms in plain complex `f64`.
pub fn zero_free_terms_at(frame: &ContactFrame, l: Complex64, beta: Complex64) -> ZeroFreeTerms<f64> {
    frame.zero_free_terms(l, beta.cos(), beta.sin())
}


#[cfg(test)]
mod tests {
    use super::fixtures::reference_params;
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    fn residuals(params: &MechanismParams, l: Complex64, beta: Complex64) -> (Complex64, Complex64) {
        let pose = pose_from(l, beta, params, params.point_e().unwrap());
        (force_projection_residual(&pose, params).unwrap(), moment_residual(&pose, params).unwrap())
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        let good = reference_params();
        assert!(good.validate().is_ok());
        let mut p = good;
        p.k[1] = 0.0;
        assert!(matches!(p.validate(), Err(Error::InvalidParameter { field: "k", .. })));
        let mut p = good;
        p.free_lengths[2] = -1.0;
        assert!(p.validate().is_err());
        let mut p = good;
        p.p_a2_in2 = Point2::new(4.5, 0.3);
        assert!(matches!(p.validate(), Err(Error::InvalidParameter { field: "p_a2_in2", .. })));
    }

    #[test]
    fn pin_at_e_when_l_is_zero() {
        let params = reference_params();
        let e = params.point_e().unwrap();
        let beta = -params.alpha - PI;
        let pose = pose_from(c(0.0), c(beta), &params, e);
        assert_abs_diff_eq!(pose.p_p.re().distance(e), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pose.phi2.re.cos(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pin_round_trips_through_top_frame() {
        let params = reference_params();
        let e = params.point_e().unwrap();
        for (l, b) in [(6.822, 2.8889), (-3.0, 0.4), (12.0, -2.5)] {
            let pose = pose_from(c(l), c(b), &params, e);
            let top = make_transform(pose.phi2.re, pose.p_o2.re());
            assert!(top.apply(params.p_p_in2).distance(pose.p_p.re()) < 1e-9);
            assert!(top.apply(params.p_a2_in2).distance(pose.p_a2.re()) < 1e-9);
            assert!(params.plane().evaluate(pose.p_p.re()).abs() < 1e-9);
            let d = pose.p_o2.re().distance(pose.p_a2.re());
            assert!((d - params.d_o2a2()).abs() <= 1e-12 * params.d_o2a2());
        }
    }

    #[test]
    fn force_magnitude_is_hookean() {
        let mut params = reference_params();
        params.k = [2.0, 2.0, 2.0];
        params.free_lengths = [1.0, 0.0, 0.0];
        let e = params.point_e().unwrap();
        let pose = pose_from(c(5.0), c(0.3), &params, e);
        let st = spring_state(&pose, &params).unwrap();
        let l1 = st.lengths[0].re;
        assert_abs_diff_eq!(st.forces[0].re, 2.0 * (l1 - 1.0), epsilon = 1e-12);
        for i in 0..3 {
            assert_abs_diff_eq!(cnorm(st.directions[i]), 1.0, epsilon = 1e-12);
        }
        // brute-force distances
        assert_abs_diff_eq!(l1, pose.p_o2.re().distance(params.p_o1), epsilon = 1e-12);
        assert_abs_diff_eq!(st.lengths[1].re, pose.p_a2.re().distance(params.p_o1), epsilon = 1e-12);
        assert_abs_diff_eq!(st.lengths[2].re, pose.p_a2.re().distance(params.a1_fixed()), epsilon = 1e-12);
    }

    #[test]
    fn springs_at_free_length_give_zero_residuals() {
        let mut params = reference_params();
        let e = params.point_e().unwrap();
        let pose = pose_from(c(4.0), c(1.0), &params, e);
        let st = spring_state(&pose, &params).unwrap();
        params.free_lengths = st.lengths.map(|l| l.re);
        assert!(force_projection_residual(&pose, &params).unwrap().norm() < 1e-12);
        assert!(moment_residual(&pose, &params).unwrap().norm() < 1e-12);
    }

    #[test]
    fn reference_rows_are_equilibria() {
        let params = reference_params();
        let rows = [
            (c(2.8889), c(6.8220)),
            (c(-0.1904), c(7.3693)),
            (Complex64::new(-0.4294, 1.8668), Complex64::new(6.1074, 8.2840)),
            (Complex64::new(-0.4294, -1.8668), Complex64::new(6.1074, -8.2840)),
        ];
        for (b, l) in rows {
            let pose = pose_from(l, b, &params, params.point_e().unwrap());
            let sc = residual_scales(&pose, &params).unwrap();
            let (f, m) = residuals(&params, l, b);
            assert!(f.norm() <= 1e-3 * sc.force, "force {f} scale {}", sc.force);
            assert!(m.norm() <= 1e-3 * sc.moment, "moment {m} scale {}", sc.moment);
        }
    }

    #[test]
    fn zero_length_spring_reported() {
        let params = reference_params();
        let e = params.point_e().unwrap();
        let mut pose = pose_from(c(1.0), c(0.0), &params, e);
        pose.p_o2 = CPoint::lift(params.p_o1);
        assert!(matches!(spring_state(&pose, &params), Err(Error::ZeroLengthSpring { spring: 1 })));
    }

    #[test]
    fn force_residual_matches_componentwise_sum() {
        let params = reference_params();
        let e = params.point_e().unwrap();
        let pose = pose_from(c(3.3), c(-1.2), &params, e);
        let (o2, a2) = (pose.p_o2.re(), pose.p_a2.re());
        let (o1, a1) = (params.p_o1, params.a1_fixed());
        let (ca, sa) = (params.alpha.cos(), params.alpha.sin());
        let mut fx = 0.0;
        let mut fy = 0.0;
        for (k, to, from) in [(1.5, o2, o1), (1.85, a2, o1), (1.45, a2, a1)] {
            fx += k * (to.x - from.x);
            fy += k * (to.y - from.y);
        }
        let r = force_projection_residual(&pose, &params).unwrap();
        assert_abs_diff_eq!(r.re, fx * ca + fy * sa, epsilon = 1e-12);
    }

    #[test]
    fn zero_free_terms_match_residuals() {
        let mut params = reference_params();
        params.free_lengths = [1.0, 0.0, 0.0];
        let frame = params.frame().unwrap();
        let (l, b) = (Complex64::new(4.2, 0.7), Complex64::new(0.9, -0.3));
        let t = zero_free_terms_at(&frame, l, b);
        let l1 = t.l1_sq.sqrt();
        let (f, m) = residuals(&params, l, b);
        assert!((t.force - t.b / l1 - f).norm() < 1e-12 * t.force.norm().max(1.0));
        assert!((t.moment - t.d / l1 - m).norm() < 1e-12 * t.moment.norm().max(1.0));
    }

    proptest! {
        #[test]
        fn residuals_invariant_under_rigid_motion(
            theta in -PI..PI, tx in -20.0..20.0f64, ty in -20.0..20.0f64,
            l in -10.0..20.0f64, b in -PI..PI, l01 in 0.0..2.0f64,
        ) {
            let mut params = reference_params();
            params.free_lengths[0] = l01;
            let moved = params.transformed(&make_transform(theta, Point2::new(tx, ty)));
            let (f0, m0) = residuals(&params, c(l), c(b));
            let (f1, m1) = residuals(&moved, c(l), c(b));
            let pose = pose_from(c(l), c(b), &params, params.point_e().unwrap());
            let sc = residual_scales(&pose, &params).unwrap();
            prop_assert!((f0 - f1).norm() <= 1e-9 * sc.force);
            prop_assert!((m0 - m1).norm() <= 1e-9 * sc.moment);
        }

        #[test]
        fn residuals_scale_with_length(s in 0.1..10.0f64, l in -10.0..20.0f64, b in -PI..PI) {
            let params = reference_params();
            let (f0, m0) = residuals(&params, c(l), c(b));
            let (f1, m1) = residuals(&params.scaled(s), c(s * l), c(b));
            prop_assert!((f1 - s * f0).norm() <= 1e-9 * s * (1.0 + f0.norm()));
            prop_assert!((m1 - s * s * m0).norm() <= 1e-9 * s * s * (1.0 + m0.norm()));
        }

        #[test]
        fn top_anchor_distance_is_rigid(l in -10.0..20.0f64, b in -PI..PI) {
            let params = reference_params();
            let pose = pose_from(c(l), c(b), &params, params.point_e().unwrap());
            let d = pose.p_o2.re().distance(pose.p_a2.re());
            prop_assert!((d - params.d_o2a2()).abs() <= 1e-12 * params.d_o2a2());
        }
    }
}
