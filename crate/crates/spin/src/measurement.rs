//! Linear measurement operators and seeded noise synthesis.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::signal::{self, norm_sq};

/// A linear map from R^N to R^M.
pub enum MeasurementOperator {
    Identity {
        n: usize,
    },
    /// Dense rows with i.i.d. N(0, 1/M) entries, so E||Phi u||^2 = ||u||^2
    /// for unit u.
    DenseGaussian {
        m: usize,
        n: usize,
        seed: u64,
        /// Row-major `m x n`.
        rows: Vec<f64>,
    },
}

impl MeasurementOperator {
    pub fn identity(n: usize) -> Self {
        MeasurementOperator::Identity { n }
    }

    /// Draws the operator deterministically from the seed. `m = 0` yields an
    /// empty measurement (useful as a sweep origin).
    pub fn gaussian(m: usize, n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = if m > 0 { 1.0 / (m as f64).sqrt() } else { 0.0 };
        let rows = (0..m * n)
            .map(|_| {
                let g: f64 = StandardNormal.sample(&mut rng);
                scale * g
            })
            .collect();
        MeasurementOperator::DenseGaussian { m, n, seed, rows }
    }

    /// Output dimension M.
    pub fn m(&self) -> usize {
        match self {
            MeasurementOperator::Identity { n } => *n,
            MeasurementOperator::DenseGaussian { m, .. } => *m,
        }
    }

    /// Input dimension N.
    pub fn n(&self) -> usize {
        match self {
            MeasurementOperator::Identity { n } => *n,
            MeasurementOperator::DenseGaussian { n, .. } => *n,
        }
    }

    /// `Phi x`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        signal::check_len(x, self.n())?;
        match self {
            MeasurementOperator::Identity { .. } => Ok(x.to_vec()),
            MeasurementOperator::DenseGaussian { m, n, rows, .. } => Ok((0..*m)
                .map(|i| signal::dot(&rows[i * n..(i + 1) * n], x))
                .collect()),
        }
    }

    /// `Phi^T y`.
    pub fn adjoint(&self, y: &[f64]) -> Result<Vec<f64>> {
        signal::check_len(y, self.m())?;
        match self {
            MeasurementOperator::Identity { .. } => Ok(y.to_vec()),
            MeasurementOperator::DenseGaussian { m, n, rows, .. } => {
                let mut out = vec![0.0; *n];
                for i in 0..*m {
                    let yi = y[i];
                    if yi != 0.0 {
                        for (o, &r) in out.iter_mut().zip(&rows[i * n..(i + 1) * n]) {
                            *o += yi * r;
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Additive-noise request: `snr_db = None` means noiseless.
#[derive(Debug, Clone, Copy)]
pub struct NoiseSpec {
    pub snr_db: Option<f64>,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn noiseless() -> Self {
        NoiseSpec { snr_db: None, seed: 0 }
    }
}

/// Draws Gaussian noise scaled so that `||reference||^2 / ||noise||^2` equals
/// the requested SNR exactly (not just in expectation). The reference is the
/// clean measurement vector.
pub fn synthesize_noise(spec: &NoiseSpec, reference: &[f64]) -> Result<Vec<f64>> {
    let Some(snr_db) = spec.snr_db else {
        return Ok(vec![0.0; reference.len()]);
    };
    let ref_energy = norm_sq(reference);
    if ref_energy <= 0.0 {
        return Err(Error::ZeroReference);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut noise: Vec<f64> = (0..reference.len())
        .map(|_| StandardNormal.sample(&mut rng))
        .collect();
    let noise_energy = norm_sq(&noise);
    if noise_energy <= 0.0 {
        return Err(Error::ZeroReference);
    }
    let target = ref_energy * 10f64.powf(-snr_db / 10.0);
    let scale = (target / noise_energy).sqrt();
    for v in noise.iter_mut() {
        *v *= scale;
    }
    Ok(noise)
}
