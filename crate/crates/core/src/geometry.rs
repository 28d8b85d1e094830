//! Planar points, rigid transforms, lines and the surface half-plane test.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cross products of unit directions below this are treated as parallel.
pub const TOL_PARALLEL: f64 = 1e-9;
/// Distance (m) within which a point counts as lying on the surface.
pub const TOL_ON_SURFACE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at `angle` radians.
    pub fn unit(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self { x: c, y: s }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self { x: c * self.x - s * self.y, y: s * self.x + c * self.y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    fn mul(self, rhs: Point2) -> Point2 {
        Point2::new(self * rhs.x, self * rhs.y)
    }
}

/// Planar rigid motion, the 3x3 homogeneous matrix `[R(angle) t; 0 0 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transform2H {
    pub angle: f64,
    pub translation: Point2,
}

impl Transform2H {
    pub const IDENTITY: Transform2H = Transform2H { angle: 0.0, translation: Point2::ORIGIN };

    pub fn apply(&self, p: Point2) -> Point2 {
        p.rotated(self.angle) + self.translation
    }

    /// `self * inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Transform2H) -> Transform2H {
        Transform2H { angle: self.angle + inner.angle, translation: self.apply(inner.translation) }
    }

    pub fn inverse(&self) -> Transform2H {
        Transform2H { angle: -self.angle, translation: (-self.translation).rotated(-self.angle) }
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let (s, c) = self.angle.sin_cos();
        [[c, -s, self.translation.x], [s, c, self.translation.y], [0.0, 0.0, 1.0]]
    }
}

/// Transform whose frame sits at `origin`, rotated by `angle` from its parent.
pub fn make_transform(angle: f64, origin: Point2) -> Transform2H {
    Transform2H { angle, translation: origin }
}

/// Planar line in Plücker form: unit direction plus the scalar moment
/// `p x direction` of any point `p` on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line2 {
    pub direction: Point2,
    pub moment: f64,
}

impl Line2 {
    /// Signed distance-like residual; zero exactly on the line.
    pub fn residual(&self, p: Point2) -> f64 {
        p.cross(self.direction) - self.moment
    }
}

pub fn line_through(point: Point2, angle: f64) -> Line2 {
    let direction = Point2::unit(angle);
    Line2 { direction, moment: point.x * direction.y - point.y * direction.x }
}

/// Intersection of two planar lines by Cramer's rule on
/// `x sin(t_i) - y cos(t_i) = m_i`.
pub fn intersect_lines(l1: &Line2, l2: &Line2) -> Result<Point2> {
    let (d1, d2) = (l1.direction, l2.direction);
    let det = d1.cross(d2);
    if det.abs() <= TOL_PARALLEL {
        return Err(Error::ParallelLines { cross: det });
    }
    Ok(Point2::new((d1.x * l2.moment - d2.x * l1.moment) / det, (d1.y * l2.moment - d2.y * l1.moment) / det))
}

/// Surface half-plane `r . normal + offset = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneSpec {
    pub normal: Point2,
    pub offset: f64,
}

impl PlaneSpec {
    pub fn evaluate(&self, p: Point2) -> f64 {
        p.dot(self.normal) + self.offset
    }
}

/// Plane of a surface through `p_m` running in direction `alpha`.
pub fn make_plane(alpha: f64, p_m: Point2) -> PlaneSpec {
    let normal = Point2::unit(alpha - std::f64::consts::FRAC_PI_2);
    PlaneSpec { normal, offset: -p_m.dot(normal) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactClass {
    OnSurface,
    /// Same side of the surface as the fixed-frame origin, where the plane
    /// function takes the sign of `offset`.
    NoContact,
    /// Opposite side from the origin: the pin would penetrate.
    InContact,
}

pub fn classify_contact(p: Point2, plane: &PlaneSpec) -> Result<ContactClass> {
    if plane.offset.abs() <= TOL_ON_SURFACE {
        return Err(Error::OriginOnPlane { offset: plane.offset });
    }
    let value = plane.evaluate(p);
    if value.abs() <= TOL_ON_SURFACE {
        Ok(ContactClass::OnSurface)
    } else if value.signum() == plane.offset.signum() {
        Ok(ContactClass::NoContact)
    } else {
        Ok(ContactClass::InContact)
    }
}
