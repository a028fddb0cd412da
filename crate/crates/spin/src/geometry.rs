//! Geometric diagnostics that govern two-manifold recovery: sampled
//! incoherence and restricted-isometry estimates, mutual coherence of basis
//! pairs, and the closed-form convergence constants of the solver's damped
//! error recurrence.
//!
//! The incoherence and isometry estimators are sampled lower bounds on the
//! underlying suprema; both report their sample count and seed so results can
//! be reproduced exactly.

use crate::basis::OrthonormalBasis;
use crate::error::{Error, Result};
use crate::manifolds::ManifoldModel;
use crate::measurement::MeasurementOperator;
use crate::seeds::derive_seed;
use crate::signal::{add, dot, norm, norm_sq, scale, sub};

/// Unit-norm direction between two distinct points of a manifold.
#[derive(Debug, Clone)]
pub struct Secant {
    pub direction: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateKind {
    Incoherence,
    Rip,
    MutualCoherence,
}

impl EstimateKind {
    pub fn label(&self) -> &'static str {
        match self {
            EstimateKind::Incoherence => "incoherence",
            EstimateKind::Rip => "rip",
            EstimateKind::MutualCoherence => "mutual-coherence",
        }
    }
}

/// A sampled geometric quantity together with its provenance.
#[derive(Debug, Clone)]
pub struct GeometryEstimate {
    pub kind: EstimateKind,
    pub value: f64,
    pub sample_count: usize,
    pub seed: u64,
}

/// Closed-form constants of the damped error recurrence
/// `psi_{k+1} <= alpha * psi_k + c_noise * ||e||^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceConstants {
    pub alpha: f64,
    pub c_noise: f64,
    /// Steady-state noise amplification `c_noise / (1 - alpha)`.
    pub beta: f64,
}

/// Normalized difference direction `(a - a') / ||a - a'||`.
pub fn make_secant(a: &[f64], a_prime: &[f64]) -> Result<Secant> {
    crate::signal::check_len(a_prime, a.len())?;
    let diff = sub(a, a_prime);
    let n = norm(&diff);
    if n < 1e-14 {
        return Err(Error::EqualPoints);
    }
    Ok(Secant {
        direction: scale(&diff, 1.0 / n),
    })
}

fn sample_difference(manifold: &ManifoldModel, pair_seed: u64) -> Result<Vec<f64>> {
    // A manifold may hand back the same point twice (e.g. tiny shift
    // families); retry with fresh sub-seeds before declaring it degenerate.
    for attempt in 0..64u64 {
        let p = manifold.sample_point(derive_seed(pair_seed, 2 * attempt));
        let q = manifold.sample_point(derive_seed(pair_seed, 2 * attempt + 1));
        let diff = sub(&p, &q);
        if norm(&diff) >= 1e-14 {
            return Ok(diff);
        }
    }
    Err(Error::DegenerateManifold)
}

/// Sampled lower bound on the incoherence between the difference directions
/// of two manifolds: the largest `|<u, u'>|` over `n_pairs` sampled secant
/// pairs. Deterministic in the seed; nested in `n_pairs` (growing the sample
/// keeps earlier pairs).
pub fn estimate_incoherence(
    manifold_a: &ManifoldModel,
    manifold_b: &ManifoldModel,
    n_pairs: usize,
    seed: u64,
) -> Result<GeometryEstimate> {
    let mut worst: f64 = 0.0;
    for i in 0..n_pairs {
        let pair_seed = derive_seed(seed, i as u64);
        let da = sample_difference(manifold_a, derive_seed(pair_seed, 1_000_003))?;
        let db = sample_difference(manifold_b, derive_seed(pair_seed, 2_000_003))?;
        let val = dot(&da, &db).abs() / (norm(&da) * norm(&db));
        worst = worst.max(val);
    }
    Ok(GeometryEstimate {
        kind: EstimateKind::Incoherence,
        // Cauchy-Schwarz bounds the true value by 1; rounding can overshoot.
        value: worst.min(1.0),
        sample_count: n_pairs,
        seed,
    })
}

/// Draws one difference direction of the sum family `{a + b}`.
pub fn sample_sum_difference(
    manifold_a: &ManifoldModel,
    manifold_b: &ManifoldModel,
    pair_seed: u64,
) -> Result<Vec<f64>> {
    for attempt in 0..64u64 {
        let s = derive_seed(pair_seed, attempt);
        let a1 = manifold_a.sample_point(derive_seed(s, 1));
        let a2 = manifold_a.sample_point(derive_seed(s, 2));
        let b1 = manifold_b.sample_point(derive_seed(s, 3));
        let b2 = manifold_b.sample_point(derive_seed(s, 4));
        let diff = sub(&add(&a1, &b1), &add(&a2, &b2));
        if norm(&diff) >= 1e-14 {
            return Ok(diff);
        }
    }
    Err(Error::DegenerateManifold)
}

/// Sampled lower bound on the restricted-isometry constant of `phi` over the
/// directions produced by `sample_direction`: the largest deviation of
/// `||phi u||^2 / ||u||^2` from 1. The ratio form keeps the identity operator
/// at exactly zero regardless of rounding in the sampler.
pub fn estimate_rip<F>(
    phi: &MeasurementOperator,
    mut sample_direction: F,
    n_samples: usize,
    seed: u64,
) -> Result<GeometryEstimate>
where
    F: FnMut(u64) -> Result<Vec<f64>>,
{
    let mut worst: f64 = 0.0;
    for i in 0..n_samples {
        let u = sample_direction(derive_seed(seed, i as u64))?;
        let out = phi.apply(&u)?;
        let ratio = norm_sq(&out) / norm_sq(&u);
        worst = worst.max((ratio - 1.0).abs());
    }
    Ok(GeometryEstimate {
        kind: EstimateKind::Rip,
        value: worst,
        sample_count: n_samples,
        seed,
    })
}

/// Convenience form of [`estimate_rip`] drawing directions from the sum
/// family of two manifolds.
pub fn estimate_rip_sum(
    phi: &MeasurementOperator,
    manifold_a: &ManifoldModel,
    manifold_b: &ManifoldModel,
    n_samples: usize,
    seed: u64,
) -> Result<GeometryEstimate> {
    estimate_rip(
        phi,
        |s| sample_sum_difference(manifold_a, manifold_b, s),
        n_samples,
        seed,
    )
}

/// Largest absolute inner product between columns of two orthonormal bases.
/// Always lies in `[1/sqrt(N), 1]`.
pub fn mutual_coherence(basis_a: &OrthonormalBasis, basis_b: &OrthonormalBasis) -> Result<f64> {
    basis_a.validate()?;
    basis_b.validate()?;
    crate::signal::check_len(basis_b.column(0), basis_a.n())?;
    let n = basis_a.n();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max(dot(basis_a.column(i), basis_b.column(j)).abs());
        }
    }
    Ok(worst)
}

/// Incoherence bound `mu * (k1 + k2)` for sparse families in a pair of bases,
/// plus the sufficient recoverability test `k1 + k2 < 1/(11 mu)`.
pub fn pairs_bound(mu: f64, k1: usize, k2: usize) -> (f64, bool) {
    let ksum = (k1 + k2) as f64;
    (mu * ksum, ksum < 1.0 / (11.0 * mu))
}

/// Sufficient condition for stable two-manifold recovery:
/// `delta < (1 - 11 eps) / (3 + 7 eps)` with `eps < 1/11`.
pub fn recovery_condition(delta: f64, epsilon: f64) -> bool {
    epsilon < 1.0 / 11.0 && delta < (1.0 - 11.0 * epsilon) / (3.0 + 7.0 * epsilon)
}

/// Evaluates the recurrence constants for given isometry constant `delta` and
/// incoherence `epsilon`:
///
/// ```text
/// f = (1 + delta) / (1 - delta)      p = epsilon / (1 - epsilon)
/// alpha   = (2 delta / (1 - delta) + 6 f p) / (1 - 4 f p)
/// c_noise = (1/2 + 5 f p)             / (1 - 4 f p)
/// beta    = c_noise / (1 - alpha)
/// ```
///
/// Fails with `SingularDenominator` when the shared denominator is not
/// positive and with `Divergent` when `alpha >= 1` (no finite `beta`).
pub fn convergence_constants(delta: f64, epsilon: f64) -> Result<ConvergenceConstants> {
    let f = (1.0 + delta) / (1.0 - delta);
    let p = epsilon / (1.0 - epsilon);
    let den = 1.0 - 4.0 * f * p;
    if !(den > 0.0) {
        return Err(Error::SingularDenominator { value: den });
    }
    let alpha = (2.0 * delta / (1.0 - delta) + 6.0 * f * p) / den;
    let c_noise = (0.5 + 5.0 * f * p) / den;
    if alpha >= 1.0 {
        return Err(Error::Divergent { alpha });
    }
    Ok(ConvergenceConstants {
        alpha,
        c_noise,
        beta: c_noise / (1.0 - alpha),
    })
}

/// Iterations needed to drive the objective from `z_norm_sq / 2` below `nu`
/// under geometric decay at rate `alpha`:
/// `ceil(log(z_norm_sq / (2 nu)) / log(1 / alpha))`, at least 0.
pub fn iteration_bound(z_norm_sq: f64, nu: f64, alpha: f64) -> usize {
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must be in (0, 1)");
    assert!(nu > 0.0, "nu must be positive");
    if z_norm_sq <= 0.0 {
        return 0;
    }
    let t = ((z_norm_sq / (2.0 * nu)).ln() / (1.0 / alpha).ln()).ceil();
    if t > 0.0 { t as usize } else { 0 }
}

/// Measurement-count heuristic `ceil(c (k_a + k_b) ln n)` for two components
/// with `k_a` and `k_b` effective degrees of freedom in dimension `n`.
pub fn suggest_measurements(k_a: usize, k_b: usize, n: usize, c: f64) -> usize {
    assert!(n >= 2, "dimension must be at least 2");
    if k_a + k_b == 0 {
        return 0;
    }
    (c * (k_a + k_b) as f64 * (n as f64).ln()).ceil() as usize
}
