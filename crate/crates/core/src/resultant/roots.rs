//! All roots of a univariate polynomial by Aberth–Ehrlich simultaneous iteration.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::poly::CPolynomial;
use crate::error::{Error, Result};
use crate::scalar::{lift, lower, modulus, Cx, Real};

/// Iteration budget of the simultaneous iteration.
pub const MAX_ITERATIONS: usize = 500;
/// Backward-error bound every returned root must meet, relative to `sum |c_k| |r|^k`.
pub const ROOT_TOLERANCE: f64 = 1e-8;

/// Roots plus the worst backward error seen.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub roots: Vec<Complex64>,
    pub iterations: usize,
    pub worst_backward_error: f64,
}

/// Upper convex hull of `(k, log|c_k|)` gives one radius per hull edge,
/// repeated over the edge's width.
fn newton_polygon_radii(moduli: &[f64]) -> Vec<f64> {
    let n = moduli.len() - 1;
    let pts: Vec<(usize, f64)> =
        moduli.iter().enumerate().filter(|(_, &m)| m > 0.0).map(|(k, &m)| (k, m.ln())).collect();
    let mut hull: Vec<(usize, f64)> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut radii = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (i, j) = (w[0].0, w[1].0);
        let r = ((w[0].1 - w[1].1) / (j - i) as f64).exp();
        radii.extend(std::iter::repeat(r).take(j - i));
    }
    radii
}

fn initial_guesses(p: &CPolynomial<f64>) -> Vec<Complex64> {
    let moduli: Vec<f64> = p.coeffs().iter().map(|c| c.norm()).collect();
    let radii = newton_polygon_radii(&moduli);
    let n = radii.len();
    let mut out = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let r = radii[start];
        let mut end = start;
        while end < n && radii[end] == r {
            end += 1;
        }
        let m = end - start;
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64 + 0.7 + 0.13 * start as f64;
            out.push(Complex64::from_polar(r, theta));
        }
        start = end;
    }
    out
}

/// `|p(z)| / sum |c_k| |z|^k`.
fn backward_error<T: Real>(p: &CPolynomial<T>, z: Cx<T>) -> f64 {
    let v = modulus(p.eval(z));
    let s = p.abs_eval(modulus(z));
    if s == 0.0 {
        0.0
    } else {
        v / s
    }
}

/// Runs Aberth steps in place until every root's backward error is at the
/// working-precision floor or `max_iter` is exhausted.
fn aberth<T: Real>(p: &CPolynomial<T>, z: &mut [Cx<T>], max_iter: usize, floor: f64) -> usize {
    let n = z.len();
    let mut done = vec![false; n];
    for it in 0..max_iter {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, d) = p.eval_with_derivative(z[i]);
            if backward_error(p, z[i]) <= floor {
                done[i] = true;
                continue;
            }
            all_done = false;
            let ratio = v / d;
            let mut sum = Cx::<T>::zero();
            for j in 0..n {
                if j != i {
                    sum += Cx::<T>::one() / (z[i] - z[j]);
                }
            }
            let denom = Cx::<T>::one() - ratio * sum;
            let step = if modulus(denom) == 0.0 || !modulus(ratio).is_finite() { ratio } else { ratio / denom };
            if modulus(step).is_finite() {
                z[i] -= step;
            }
            if modulus(step) <= floor * modulus(z[i]).max(f64::MIN_POSITIVE) {
                done[i] = true;
            }
        }
        if all_done {
            return it;
        }
    }
    max_iter
}

/// Rounding floor of a Horner evaluation of a degree-`n` polynomial.
fn floor(n: usize, eps: f64) -> f64 {
    2.0 * (n + 1) as f64 * eps
}

fn check<T: Real>(p: &CPolynomial<T>, z: &[Cx<T>], iterations: usize) -> Result<f64> {
    let worst = z.iter().map(|&r| backward_error(p, r)).fold(0.0, f64::max);
    if !(worst <= ROOT_TOLERANCE) {
        return Err(Error::NonConvergence { iterations, worst_residual: worst });
    }
    Ok(worst)
}

fn monic_f64(p: &CPolynomial<f64>) -> Result<CPolynomial<f64>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lead = p.leading();
    Ok(p.scale(lead.inv()))
}

/// All `deg p` roots of `p` with multiplicity.
pub fn poly_roots(p: &CPolynomial<f64>) -> Result<Vec<Complex64>> {
    Ok(poly_roots_report(p)?.roots)
}

/// Splits off exact zero roots: `p = x^m q` with `q(0) != 0`.
fn strip_zero_roots<T: Real>(p: &CPolynomial<T>) -> (usize, CPolynomial<T>) {
    let m = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    (m, CPolynomial::from_raw(p.coeffs()[m..].to_vec()))
}

pub fn poly_roots_report(p: &CPolynomial<f64>) -> Result<RootReport> {
    let (zeros, q) = strip_zero_roots(&monic_f64(p)?);
    let mut z = vec![Complex64::zero(); zeros];
    if q.degree() == 0 {
        return Ok(RootReport { roots: z, iterations: 0, worst_backward_error: 0.0 });
    }
    let mut w = initial_guesses(&q);
    let iterations = aberth(&q, &mut w, MAX_ITERATIONS, floor(q.degree(), f64::EPSILON));
    let worst_backward_error = check(&q, &w, iterations)?;
    z.extend(w);
    Ok(RootReport { roots: z, iterations, worst_backward_error })
}

/// Roots found in `f64`, then refined with Aberth steps in the precision of `T`.
pub fn poly_roots_refined<T: Real>(p: &CPolynomial<T>) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lead = p.leading();
    let (zeros, q) = strip_zero_roots(&p.scale(Cx::<T>::one() / lead));
    if q.degree() == 0 {
        return Ok(RootReport { roots: vec![Complex64::zero(); zeros], iterations: 0, worst_backward_error: 0.0 });
    }
    let coarse = match poly_roots_report(&q.lower()) {
        Ok(r) => r.roots,
        // the f64 image may be too ill-conditioned to certify; refinement decides
        Err(_) => {
            let mut z = initial_guesses(&q.lower());
            aberth(&q.lower(), &mut z, MAX_ITERATIONS, floor(q.degree(), f64::EPSILON));
            z
        }
    };
    let mut z: Vec<Cx<T>> = coarse.into_iter().map(lift).collect();
    let iterations = aberth(&q, &mut z, MAX_ITERATIONS, floor(q.degree(), T::EPSILON));
    let worst_backward_error = check(&q, &z, iterations)?;
    let mut roots = vec![Complex64::zero(); zeros];
    roots.extend(z.into_iter().map(lower));
    Ok(RootReport { roots, iterations, worst_backward_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DoubleDouble;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn fourth_roots_of_unity() {
        let p = CPolynomial::<f64>::from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]);
        let r = sorted(poly_roots(&p).unwrap());
        let expect = [c(-1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)];
        for (a, b) in r.iter().zip(expect) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn double_root() {
        let p = CPolynomial::from_roots(&[c(2.0, 0.0), c(2.0, 0.0), c(-3.0, 0.0)]);
        let r = sorted(poly_roots(&p).unwrap());
        assert!((r[0] - c(-3.0, 0.0)).norm() < 1e-6);
        assert!((r[1] - c(2.0, 0.0)).norm() < 1e-6);
        assert!((r[2] - c(2.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn zero_roots_and_constants() {
        let p = CPolynomial::<f64>::from_real(&[0.0, 0.0, 1.0, 1.0]);
        let r = sorted(poly_roots(&p).unwrap());
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!(r[1].norm() < 1e-12 && r[2].norm() < 1e-12);
        assert!(poly_roots(&CPolynomial::from_real(&[5.0])).unwrap().is_empty());
        assert!(matches!(poly_roots(&CPolynomial::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn newton_polygon_separates_scales() {
        // roots 1e-3 and 1e3
        let p = CPolynomial::from_roots(&[c(1e-3, 0.0), c(1e3, 0.0)]);
        let radii = newton_polygon_radii(&p.coeffs().iter().map(|c| c.norm()).collect::<Vec<_>>());
        assert!((radii[0] - 1e-3).abs() < 1e-5 && (radii[1] - 1e3).abs() < 10.0);
    }

    #[test]
    fn recovers_random_degree_48() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let roots: Vec<Complex64> =
            (0..48).map(|_| Complex64::from_polar(rng.gen_range(0.1..10f64.sqrt()), rng.gen_range(0.0..6.3))).collect();
        let p = CPolynomial::from_roots(&roots);
        let found = poly_roots(&p).unwrap();
        let mut used = vec![false; found.len()];
        for r in &roots {
            let (k, d) = found
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, f)| (k, (f - r).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            used[k] = true;
            assert!(d <= 1e-6 * r.norm(), "root {r} off by {d}");
        }
    }

    #[test]
    fn real_coefficients_give_conjugate_roots() {
        let p = CPolynomial::<f64>::from_real(&[3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0]);
        let r = poly_roots(&p).unwrap();
        for z in &r {
            assert!(r.iter().any(|w| (w - z.conj()).norm() < 1e-9));
        }
    }

    #[test]
    fn refinement_in_double_double() {
        let roots = [c(0.5, 0.25), c(-1.5, 0.0), c(2.0, -1.0), c(0.3, 3.0)];
        let p: CPolynomial<DoubleDouble> = CPolynomial::from_roots(&roots).lift();
        let rep = poly_roots_refined(&p).unwrap();
        assert!(rep.worst_backward_error < 1e-28);
        for r in roots {
            assert!(rep.roots.iter().any(|z| (z - r).norm() < 1e-14));
        }
    }
}
