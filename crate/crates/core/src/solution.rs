use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::resultant::BackSubMethod;

/// Imaginary parts at or below this count as zero.
pub const REAL_TOLERANCE: f64 = 1e-8;

/// Which square-root branch of `L1` satisfies the unsquared equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SqrtBranch {
    /// Both equations hold with the principal root: a genuine equilibrium.
    Principal,
    /// Both hold with the negated root.
    Flipped,
    /// Each equation holds on a different branch, or neither holds.
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accepted,
    /// Residual check failed.
    ResidualTooLarge,
    /// `x = +-i`: `beta` is infinite, an artifact of the tan-half-angle substitution.
    TanHalfAngleSingularity,
    /// Back-substitution or evaluation failed for this root.
    EvaluationFailed,
}

/// One candidate `(beta, L)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumSolution {
    /// Position after sorting, from 1.
    pub index: usize,
    pub beta: Complex64,
    pub l: Complex64,
    /// `tan(beta / 2)`.
    pub x_beta: Complex64,
    /// `|force projection residual|` (N); non-finite when `beta` is.
    pub residual_force: f64,
    /// `|moment residual|` (N m).
    pub residual_moment: f64,
    /// Largest residual of the filtered equations, divided by its term scale.
    pub scaled_residual: f64,
    pub is_real: bool,
    pub accepted: bool,
    pub verdict: Verdict,
    /// Normal reaction of the surface on P for real solutions; negative when
    /// the surface has to pull.
    pub contact_force: Option<f64>,
    /// Case with a nonzero free length only.
    pub branch: Option<SqrtBranch>,
    /// Unsquared residual with the principal `L1`, scaled; case with a nonzero free length only.
    pub unsquared_residual: Option<f64>,
    pub back_substitution: Option<BackSubMethod>,
    pub note: Option<String>,
}

impl EquilibriumSolution {
    pub fn classify_real(beta: Complex64, l: Complex64) -> bool {
        beta.im.abs() <= REAL_TOLERANCE && l.im.abs() <= REAL_TOLERANCE
    }
}

/// Stable order: real part of `beta`, then imaginary part; `index` is renumbered.
pub fn sort_solutions(solutions: &mut [EquilibriumSolution]) {
    solutions.sort_by(|a, b| {
        let key = |s: &EquilibriumSolution| {
            let finite = s.beta.re.is_finite() && s.beta.im.is_finite();
            (!finite, s.beta.re, s.beta.im, s.x_beta.im)
        };
        let (ka, kb) = (key(a), key(b));
        ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1)).then(ka.2.total_cmp(&kb.2)).then(ka.3.total_cmp(&kb.3))
    });
    for (i, s) in solutions.iter_mut().enumerate() {
        s.index = i + 1;
    }
}

/// Second-pass pairing distance, relative to `max(|z|, 1)`.
pub const CLUSTER_PAIR_TOLERANCE: f64 = 1e-2;

/// Replaces each near-conjugate pair by an exact conjugate pair.
pub fn pair_conjugates(mut roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || roots[i].im <= 0.0 {
            continue;
        }
        let target = roots[i].conj();
        let partner = (0..n)
            .filter(|&j| j != i && !used[j] && roots[j].im < 0.0)
            .min_by(|&p, &q| (roots[p] - target).norm().total_cmp(&(roots[q] - target).norm()));
        if let Some(j) = partner {
            if (roots[j] - target).norm() <= 1e-6 * target.norm().max(1.0) {
                let z = 0.5 * (roots[i] + roots[j].conj());
                roots[i] = z;
                roots[j] = z.conj();
                used[i] = true;
                used[j] = true;
            }
        }
    }
    // roots of a multiple-root cluster carry errors far above the first
    // tolerance; pair what is left by proximity
    for i in 0..n {
        if used[i] || roots[i].im <= CLUSTER_PAIR_TOLERANCE * roots[i].norm().max(1.0) {
            continue;
        }
        let target = roots[i].conj();
        let partner = (0..n)
            .filter(|&j| j != i && !used[j] && -roots[j].im > CLUSTER_PAIR_TOLERANCE * roots[j].norm().max(1.0))
            .min_by(|&p, &q| (roots[p] - target).norm().total_cmp(&(roots[q] - target).norm()));
        if let Some(j) = partner {
            if (roots[j] - target).norm() <= CLUSTER_PAIR_TOLERANCE * target.norm().max(1.0) {
                let z = 0.5 * (roots[i] + roots[j].conj());
                roots[i] = z;
                roots[j] = z.conj();
                used[i] = true;
                used[j] = true;
            }
        }
    }
    roots
}
