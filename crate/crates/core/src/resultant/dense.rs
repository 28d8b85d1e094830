//! Dense complex linear algebra by LU with partial pivoting.

use num_traits::{One, Zero};

use crate::scalar::{modulus, Cx, Real};

/// Square matrix stored as rows.
pub type Matrix<T> = Vec<Vec<Cx<T>>>;

/// Determinant by Gaussian elimination; `a` is consumed.
pub fn det<T: Real>(mut a: Matrix<T>) -> Cx<T> {
    let n = a.len();
    let mut d = Cx::<T>::one();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| modulus(a[i][col]).total_cmp(&modulus(a[j][col]))).unwrap();
        if modulus(a[piv][col]) == 0.0 {
            return Cx::zero();
        }
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col];
        d *= p;
        let inv = Cx::<T>::one() / p;
        for r in col + 1..n {
            let f = a[r][col] * inv;
            if modulus(f) == 0.0 {
                continue;
            }
            for c in col + 1..n {
                let t = a[col][c];
                a[r][c] -= f * t;
            }
        }
    }
    d
}

/// Solves `a x = b`; `None` when a pivot vanishes.
pub fn solve<T: Real>(mut a: Matrix<T>, mut b: Vec<Cx<T>>) -> Option<Vec<Cx<T>>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| modulus(a[i][col]).total_cmp(&modulus(a[j][col]))).unwrap();
        if modulus(a[piv][col]) == 0.0 {
            return None;
        }
        a.swap(piv, col);
        b.swap(piv, col);
        let inv = Cx::<T>::one() / a[col][col];
        for r in col + 1..n {
            let f = a[r][col] * inv;
            for c in col + 1..n {
                let t = a[col][c];
                a[r][c] -= f * t;
            }
            let t = b[col];
            b[r] -= f * t;
        }
    }
    let mut x = vec![Cx::<T>::zero(); n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Some(x)
}
