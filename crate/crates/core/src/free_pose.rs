//! Pose of the top platform with every spring at its free length, expressed
//! in the base-platform frame, and the resulting pin position used for
//! contact detection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{make_transform, Point2};
use crate::model::MechanismParams;

/// Relative slack on the triangle inequality and on the O2 discriminant.
const TOL_ASSEMBLY: f64 = 1e-12;

/// Which of the two O2 assemblies to use for contact detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum O2Choice {
    /// Candidate with the larger y coordinate in frame 1.
    #[default]
    HigherY,
    /// Candidate by position in [`FreePoseResult::candidates`].
    Index(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct O2Candidate {
    pub o2: Point2,
    pub phi2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreePoseResult {
    pub a2: Point2,
    /// One candidate when the circles are tangent, otherwise two.
    pub candidates: Vec<O2Candidate>,
}

impl FreePoseResult {
    pub fn select(&self, choice: O2Choice) -> Result<O2Candidate> {
        match choice {
            O2Choice::HigherY => Ok(*self
                .candidates
                .iter()
                .max_by(|a, b| a.o2.y.total_cmp(&b.o2.y))
                .expect("solve_o2 returns at least one candidate")),
            O2Choice::Index(i) => self.candidates.get(i).copied().ok_or_else(|| {
                Error::invalid("o2_candidate", format!("index {i} out of range ({} candidates)", self.candidates.len()))
            }),
        }
    }
}

fn not_assemblable(reason: impl Into<String>) -> Error {
    Error::NotAssemblable { reason: reason.into() }
}

/// A2 in frame 1 from the circles about O1 (radius `l02`) and A1 (radius `l03`);
/// the positive-y branch is returned.
pub fn solve_a2(l02: f64, l03: f64, d_o1a1: f64) -> Result<Point2> {
    if !(d_o1a1 > 0.0) {
        return Err(Error::invalid("p_a1_in1", "base anchor distance must be positive"));
    }
    let slack = TOL_ASSEMBLY * (l02 + l03 + d_o1a1);
    if d_o1a1 > l02 + l03 + slack || d_o1a1 < (l02 - l03).abs() - slack {
        return Err(not_assemblable(format!("free lengths L02 = {l02}, L03 = {l03} cannot span d_O1A1 = {d_o1a1}")));
    }
    let ax = (l02 * l02 - l03 * l03 + d_o1a1 * d_o1a1) / (2.0 * d_o1a1);
    let ay = (l02 * l02 - ax * ax).max(0.0).sqrt();
    Ok(Point2::new(ax, ay))
}

/// `-B^2 + 2BC - A^2 C - C^2`, the expanded 4x4 dialytic determinant.
pub fn dialytic_4x4_residual(a: f64, b: f64, c: f64) -> f64 {
    -b * b + 2.0 * b * c - a * a * c - c * c
}

/// The `A, B, C` coefficient triple at a given `o2x`.
pub fn dialytic_4x4_coefficients(a2: Point2, l01: f64, d_o2a2: f64, o2x: f64) -> (f64, f64, f64) {
    let l02_sq = a2.x * a2.x + a2.y * a2.y;
    (-2.0 * a2.y, o2x * o2x - 2.0 * o2x * a2.x + l02_sq - d_o2a2 * d_o2a2, o2x * o2x - l01 * l01)
}

/// O2 in frame 1 as the intersection of the circle about the origin
/// (radius `l01`) with the circle about `a2` (radius `d_o2a2`).
pub fn solve_o2(a2: Point2, l01: f64, d_o2a2: f64) -> Result<Vec<O2Candidate>> {
    let l02_sq = a2.x * a2.x + a2.y * a2.y;
    let sep = l02_sq.sqrt();
    let slack = TOL_ASSEMBLY * (sep + l01 + d_o2a2);
    if sep <= slack {
        return Err(not_assemblable("O2 circles are concentric"));
    }
    if sep > l01 + d_o2a2 + slack || sep < (l01 - d_o2a2).abs() - slack {
        return Err(not_assemblable(format!(
            "circles of radius L01 = {l01} and d_O2A2 = {d_o2a2} at distance {sep} do not meet"
        )));
    }
    let k = l01 * l01 + l02_sq - d_o2a2 * d_o2a2;
    // D x^2 + E x + F = 0 from substituting the coefficient triple into the 4x4 determinant
    let d = -4.0 * l02_sq;
    let e = 4.0 * a2.x * k;
    let f = 4.0 * a2.y * a2.y * l01 * l01 - k * k;
    let disc = e * e - 4.0 * d * f;
    let disc_scale = e * e + (4.0 * d * f).abs();
    let tangent = disc.abs() <= TOL_ASSEMBLY * disc_scale;
    let root = if tangent { 0.0 } else { disc.max(0.0).sqrt() };
    let mut xs = vec![(-e - root) / (2.0 * d)];
    if !tangent {
        xs.push((-e + root) / (2.0 * d));
    }

    let mut pts = Vec::with_capacity(2);
    if a2.y.abs() > TOL_ASSEMBLY * sep {
        for x in xs {
            pts.push(Point2::new(x, (k - 2.0 * a2.x * x) / (2.0 * a2.y)));
        }
    } else {
        // A2 on the X axis: the two intersections are mirror images
        let x = xs[0];
        let y = (l01 * l01 - x * x).max(0.0).sqrt();
        pts.push(Point2::new(x, y));
        if y > TOL_ASSEMBLY * sep.max(l01) {
            pts.push(Point2::new(x, -y));
        }
    }
    Ok(pts.into_iter().map(|o2| O2Candidate { o2, phi2: (a2.y - o2.y).atan2(a2.x - o2.x) }).collect())
}

/// Free-length pose of the top platform in frame 1.
pub fn free_pose(params: &MechanismParams) -> Result<FreePoseResult> {
    let [l01, l02, l03] = params.free_lengths;
    let a2 = solve_a2(l02, l03, params.d_o1a1())?;
    let candidates = solve_o2(a2, l01, params.d_o2a2())?;
    Ok(FreePoseResult { a2, candidates })
}

/// Fixed-frame pin position with all springs at free length.
pub fn free_point_p_fixed(params: &MechanismParams, choice: O2Choice) -> Result<Point2> {
    let pose = free_pose(params)?;
    let cand = pose.select(choice)?;
    let top = make_transform(cand.phi2, cand.o2);
    Ok(params.base_transform().compose(&top).apply(params.p_p_in2))
}
