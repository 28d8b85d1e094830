//! Sylvester-style dialytic matrices for two polynomials in one unknown.

use num_traits::Zero;

use super::dense::Matrix;
use crate::scalar::{Cx, Real};

/// Interleaved dialytic matrix of `p` and `q`, both of degree at most `n`
/// (coefficients ascending, length `n + 1`).
///
/// Row `2i` holds `L^i p(L)` and row `2i + 1` holds `L^i q(L)` for
/// `i = 0..n`, against the monomial column vector `[L^(2n-1), ..., L, 1]`.
pub fn dialytic_layout<E: Clone + Zero>(p: &[E], q: &[E]) -> Vec<Vec<E>> {
    assert_eq!(p.len(), q.len(), "both polynomials need the same coefficient count");
    let n = p.len() - 1;
    let size = 2 * n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        for src in [p, q] {
            let mut row = vec![E::zero(); size];
            for (k, c) in src.iter().enumerate() {
                // L^(k + shift) sits in column size - 1 - k - shift
                row[size - 1 - k - shift] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// The 8x8 matrix of two quartics in `L`.
pub fn dialytic_matrix<T: Real>(p: &[Cx<T>; 5], q: &[Cx<T>; 5]) -> Matrix<T> {
    dialytic_layout(p, q)
}
