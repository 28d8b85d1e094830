//! Recovering `L` from two quartics that share a root.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dense::solve;
use super::dialytic::dialytic_matrix;
use super::poly::CPolynomial;
use super::roots::poly_roots;
use crate::error::Result;
use crate::scalar::{lower, Cx, Real};

/// Largest 7x7 condition number the linear route accepts.
pub const MAX_CONDITION: f64 = 1e12;
/// Relative agreement required between the linear and root-matching values.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackSubMethod {
    /// Last component of the 7x7 dialytic solve.
    Linear,
    /// Closest pair of quartic roots; used when the 7x7 system is ill-conditioned.
    RootMatching,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BackSubstitution {
    pub l: Complex64,
    pub method: BackSubMethod,
    pub condition: f64,
    /// Midpoint of the closest pair of roots, one from each quartic.
    pub matched_l: Complex64,
    /// Distance between that closest pair.
    pub match_gap: f64,
    /// Linear and root-matching values agree to the cross-check tolerance.
    pub agrees: bool,
}

fn condition_number(a: &[Vec<Complex64>]) -> f64 {
    let n = a.len();
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let sv = m.singular_values();
    let (max, min) = (sv.max(), sv.min());
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn closest_common_root(p: &[Complex64; 5], q: &[Complex64; 5]) -> Result<(Complex64, f64)> {
    let rp = poly_roots(&CPolynomial::new(p.to_vec()))?;
    let rq = poly_roots(&CPolynomial::new(q.to_vec()))?;
    let mut best = (Complex64::new(f64::NAN, f64::NAN), f64::INFINITY);
    for a in &rp {
        for b in &rq {
            let d = (a - b).norm();
            if d < best.1 {
                best = ((a + b) * 0.5, d);
            }
        }
    }
    Ok(best)
}

/// `L` from the quartic pair `p(L) = q(L) = 0` (coefficients ascending).
///
/// Seven rows of the dialytic matrix (all but the last `q` row) with the
/// constant column moved to the right-hand side form a square system in
/// `[L^7, ..., L]`; `L` is its last component.
pub fn back_substitute<T: Real>(p: &[Cx<T>; 5], q: &[Cx<T>; 5]) -> Result<BackSubstitution> {
    let m = dialytic_matrix(p, q);
    let a: Vec<Vec<Cx<T>>> = m[..7].iter().map(|r| r[..7].to_vec()).collect();
    let b: Vec<Cx<T>> = m[..7].iter().map(|r| -r[7]).collect();
    let a64: Vec<Vec<Complex64>> = a.iter().map(|r| r.iter().map(|&z| lower(z)).collect()).collect();
    let condition = condition_number(&a64);

    let (matched_l, match_gap) = closest_common_root(&p.map(lower), &q.map(lower))?;
    let linear = if condition <= MAX_CONDITION { solve(a, b).map(|x| lower(x[6])) } else { None };
    Ok(match linear {
        Some(l) => BackSubstitution {
            l,
            method: BackSubMethod::Linear,
            condition,
            matched_l,
            match_gap,
            agrees: (l - matched_l).norm() <= CROSS_CHECK_TOLERANCE * l.norm().max(1.0),
        },
        None => BackSubstitution {
            l: matched_l,
            method: BackSubMethod::RootMatching,
            condition,
            matched_l,
            match_gap,
            agrees: false,
        },
    })
}
