use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{lift, lower, modulus, real, Cx, Real};

/// Trailing coefficients at or below this fraction of the largest one are dropped.
pub const COEFF_CUTOFF: f64 = 1e-13;

/// Univariate polynomial with complex coefficients, `coeffs[k]` multiplying `x^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "Cx<T>: Serialize", deserialize = "Cx<T>: Deserialize<'de>"))]
pub struct CPolynomial<T = f64> {
    coeffs: Vec<Cx<T>>,
}

impl<T: Real> CPolynomial<T> {
    /// Builds the polynomial and applies the trailing-coefficient cutoff.
    pub fn new(coeffs: Vec<Cx<T>>) -> Self {
        Self { coeffs }.normalized(COEFF_CUTOFF)
    }

    /// Keeps every coefficient except exact trailing zeros.
    pub fn from_raw(coeffs: Vec<Cx<T>>) -> Self {
        Self { coeffs }.normalized(0.0)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_raw(coeffs.iter().map(|&c| real(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Cx<T>) -> Self {
        Self::from_raw(vec![c])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Cx<T>]) -> Self {
        let mut c = vec![Cx::<T>::one()];
        for &r in roots {
            let mut next = vec![Cx::<T>::zero(); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Self { coeffs: c }
    }

    /// Drops trailing coefficients with `|c| <= tol * max|c|`.
    pub fn normalized(mut self, tol: f64) -> Self {
        let max = self.max_abs();
        while let Some(&last) = self.coeffs.last() {
            let m = modulus(last);
            if m == 0.0 || m <= tol * max {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        self
    }

    pub fn coeffs(&self) -> &[Cx<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Cx<T>> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Cx<T> {
        self.coeffs.get(k).copied().unwrap_or_else(Cx::zero)
    }

    pub fn leading(&self) -> Cx<T> {
        self.coeffs.last().copied().unwrap_or_else(Cx::zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|&c| modulus(c)).fold(0.0, f64::max)
    }

    pub fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|&c| modulus(c)).sum()
    }

    /// `sum |c_k| r^k`, the scale of `|p(x)|` on the circle `|x| = r`.
    pub fn abs_eval(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + modulus(c))
    }

    pub fn eval(&self, x: Cx<T>) -> Cx<T> {
        self.coeffs.iter().rev().fold(Cx::zero(), |acc, &c| acc * x + c)
    }

    /// `(p(x), p'(x))` by a single Horner pass.
    pub fn eval_with_derivative(&self, x: Cx<T>) -> (Cx<T>, Cx<T>) {
        let mut p = Cx::<T>::zero();
        let mut dp = Cx::<T>::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::from_raw(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * real::<T>(k as f64)).collect())
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        Self::from_raw(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Quotient and remainder `[r0, r1]` of division by `x^2 + 1`.
    pub fn div_unit_pair(&self) -> (Self, [Cx<T>; 2]) {
        let n = self.coeffs.len();
        if n < 3 {
            return (Self::zero(), [self.coeff(0), self.coeff(1)]);
        }
        let mut q = vec![Cx::<T>::zero(); n - 2];
        for k in (2..n).rev() {
            let above = if k + 2 < n { q[k] } else { Cx::zero() };
            q[k - 2] = self.coeffs[k] - above;
        }
        let r1 = self.coeffs[1] - if n > 3 { q[1] } else { Cx::zero() };
        let r0 = self.coeffs[0] - q[0];
        (Self::from_raw(q), [r0, r1])
    }

    pub fn lower(&self) -> CPolynomial<f64> {
        CPolynomial { coeffs: self.coeffs.iter().map(|&c| lower(c)).collect() }
    }
}

impl CPolynomial<f64> {
    pub fn lift<T: Real>(&self) -> CPolynomial<T> {
        CPolynomial { coeffs: self.coeffs.iter().map(|&c| lift(c)).collect() }
    }

    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.max_abs();
        self.coeffs.iter().all(|c| c.im.abs() <= tol * scale)
    }
}

impl From<Vec<Complex64>> for CPolynomial<f64> {
    fn from(c: Vec<Complex64>) -> Self {
        Self::new(c)
    }
}

impl<T: Real> Add for &CPolynomial<T> {
    type Output = CPolynomial<T>;
    fn add(self, o: Self) -> CPolynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        CPolynomial::from_raw((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<T: Real> Sub for &CPolynomial<T> {
    type Output = CPolynomial<T>;
    fn sub(self, o: Self) -> CPolynomial<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        CPolynomial::from_raw((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<T: Real> Neg for &CPolynomial<T> {
    type Output = CPolynomial<T>;
    fn neg(self) -> CPolynomial<T> {
        CPolynomial::from_raw(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl<T: Real> Mul for &CPolynomial<T> {
    type Output = CPolynomial<T>;
    fn mul(self, o: Self) -> CPolynomial<T> {
        if self.is_zero() || o.is_zero() {
            return CPolynomial::zero();
        }
        let mut c = vec![Cx::<T>::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        CPolynomial::from_raw(c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Real> $tr for CPolynomial<T> {
            type Output = CPolynomial<T>;
            fn $m(self, o: Self) -> CPolynomial<T> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
