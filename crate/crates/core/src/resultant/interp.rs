//! Polynomial recovery from samples on the unit circle.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::{det, Matrix};
use super::poly::CPolynomial;
use crate::error::{Error, Result};
use crate::scalar::{modulus, real, Cx, Real};

/// Held-out validation nodes.
pub const HELD_OUT_NODES: usize = 16;
/// Held-out mismatch bound relative to `sum |c_k|`.
pub const HELD_OUT_TOLERANCE: f64 = 1e-7;
const HELD_OUT_SEED: u64 = 0x5eed_c1c1e;

/// Node count for degree bound `d`: 25% oversampling, never `2 mod 4` so no
/// node lands on `+-i`.
pub fn node_count(degree_bound: usize) -> usize {
    let mut n = ((degree_bound + 1) as f64 * 1.25).ceil() as usize;
    n = n.max(degree_bound + 1);
    if n % 4 == 2 {
        n += 1;
    }
    n
}

fn pow<T: Real>(mut x: Cx<T>, mut e: usize) -> Cx<T> {
    let mut acc = Cx::<T>::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= x;
        }
        x = x * x;
        e >>= 1;
    }
    acc
}

/// `exp(i pi (2j + 1) / n)`, the roots of `x^n = -1`, polished by Newton
/// steps in the working precision.
pub fn circle_nodes<T: Real>(n: usize) -> Vec<Cx<T>> {
    (0..n)
        .map(|j| {
            let theta = std::f64::consts::PI * (2 * j + 1) as f64 / n as f64;
            let mut x = Cx::new(T::from_f64(theta.cos()), T::from_f64(theta.sin()));
            for _ in 0..2 {
                let xn = pow(x, n);
                let step = (xn + Cx::one()) / (real::<T>(n as f64) * xn);
                x -= x * step;
            }
            x
        })
        .collect()
}

/// Held-out points on the unit circle, kept away from `+-i`.
pub fn held_out_nodes<T: Real>() -> Vec<Cx<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(HELD_OUT_SEED);
    let mut out = Vec::with_capacity(HELD_OUT_NODES);
    while out.len() < HELD_OUT_NODES {
        let theta: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        if theta.cos().abs() < 0.05 {
            continue;
        }
        out.push(Cx::new(T::from_f64(theta.cos()), T::from_f64(theta.sin())));
    }
    out
}

/// Recovers a polynomial of degree at most `degree_bound` from its values,
/// validated at held-out nodes.
pub fn interpolate_on_circle<T, F>(f: F, degree_bound: usize) -> Result<CPolynomial<T>>
where
    T: Real,
    F: Fn(Cx<T>) -> Cx<T>,
{
    let n = node_count(degree_bound);
    let nodes = circle_nodes::<T>(n);
    let values: Vec<Cx<T>> = nodes.iter().map(|&x| f(x)).collect();
    let inv_n = Cx::<T>::one() / real::<T>(n as f64);
    // the sampled monomials are orthogonal over the nodes, so the truncated
    // inverse transform is the least-squares fit
    let mut coeffs = vec![Cx::<T>::zero(); degree_bound + 1];
    for (&x, &v) in nodes.iter().zip(&values) {
        let xc = x.conj();
        let mut w = v;
        for c in coeffs.iter_mut() {
            *c += w;
            w *= xc;
        }
    }
    for c in coeffs.iter_mut() {
        *c *= inv_n;
    }
    let poly = CPolynomial::from_raw(coeffs);
    let scale = poly.abs_sum().max(f64::MIN_POSITIVE);
    let mismatch = held_out_nodes::<T>().into_iter().map(|x| modulus(poly.eval(x) - f(x)) / scale).fold(0.0, f64::max);
    if !(mismatch <= HELD_OUT_TOLERANCE) {
        return Err(Error::InterpolationMismatch { mismatch, degree_bound });
    }
    Ok(poly.normalized(super::poly::COEFF_CUTOFF))
}

/// Determinant of `eval(x)` as a polynomial of degree at most `degree_bound`.
pub fn polymatrix_det<T, F>(eval: F, degree_bound: usize) -> Result<CPolynomial<T>>
where
    T: Real,
    F: Fn(Cx<T>) -> Matrix<T>,
{
    interpolate_on_circle(|x| det(eval(x)), degree_bound)
}

/// Square matrix of polynomial entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix<T = f64> {
    rows: Vec<Vec<CPolynomial<T>>>,
}

impl<T: Real> PolyMatrix<T> {
    pub fn new(rows: Vec<Vec<CPolynomial<T>>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "PolyMatrix must be square");
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &CPolynomial<T> {
        &self.rows[i][j]
    }

    pub fn eval(&self, x: Cx<T>) -> Matrix<T> {
        self.rows.iter().map(|r| r.iter().map(|p| p.eval(x)).collect()).collect()
    }

    /// Sum over rows of the largest entry degree; bounds the determinant degree.
    pub fn degree_bound(&self) -> usize {
        self.rows.iter().map(|r| r.iter().map(|p| p.degree()).max().unwrap_or(0)).sum()
    }

    pub fn det(&self) -> Result<CPolynomial<T>> {
        polymatrix_det(|x| self.eval(x), self.degree_bound())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DoubleDouble;
    use num_complex::Complex64;

    fn p(c: &[f64]) -> CPolynomial<f64> {
        CPolynomial::from_real(c)
    }

    #[test]
    fn node_counts_avoid_pole() {
        for d in 0..100 {
            let n = node_count(d);
            assert!(n > d && n % 4 != 2);
        }
        assert_eq!(node_count(48), 63);
    }

    #[test]
    fn nodes_solve_x_pow_n_eq_minus_one() {
        for x in circle_nodes::<DoubleDouble>(63) {
            let r = pow(x, 63) + Cx::one();
            assert!(modulus(r) < 1e-29);
        }
    }

    #[test]
    fn two_by_two() {
        let m = PolyMatrix::new(vec![vec![p(&[0.0, 1.0]), p(&[1.0])], vec![p(&[1.0]), p(&[0.0, 1.0])]]);
        let d = m.det().unwrap();
        assert_eq!(d.degree(), 2);
        for (k, e) in [-1.0, 0.0, 1.0].into_iter().enumerate() {
            assert!((d.coeff(k) - Complex64::new(e, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn one_by_one() {
        let m = PolyMatrix::new(vec![vec![p(&[2.0, 0.0, 0.0, 1.0])]]);
        let d = m.det().unwrap();
        assert_eq!(d.degree(), 3);
        assert!((d.coeff(0) - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert!((d.coeff(3) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn wrong_degree_bound_is_detected() {
        let err = interpolate_on_circle(|x: Complex64| x.powi(9) + 1.0, 4).unwrap_err();
        assert!(matches!(err, Error::InterpolationMismatch { degree_bound: 4, .. }));
    }
}
