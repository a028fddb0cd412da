//! Orthonormal bases of R^N, stored as dense column-major matrices.

use crate::error::{Error, Result};

/// An N x N matrix with orthonormal columns. `cols[j * n + i]` holds entry
/// `i` of column `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    n: usize,
    cols: Vec<f64>,
}

/// Maximum allowed deviation of the Gram matrix from the identity.
pub const ORTHONORMALITY_TOL: f64 = 1e-8;

impl OrthonormalBasis {
    /// Builds a basis from explicit columns, validating orthonormality.
    pub fn new(n: usize, cols: Vec<f64>) -> Result<Self> {
        if cols.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: cols.len(),
            });
        }
        let basis = OrthonormalBasis { n, cols };
        basis.validate()?;
        Ok(basis)
    }

    /// The canonical (identity) basis.
    pub fn canonical(n: usize) -> Self {
        let mut cols = vec![0.0; n * n];
        for j in 0..n {
            cols[j * n + j] = 1.0;
        }
        OrthonormalBasis { n, cols }
    }

    /// Natural-order Walsh-Hadamard basis; `n` must be a power of two.
    pub fn walsh_hadamard(n: usize) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::InvalidConfig(format!(
                "Walsh-Hadamard basis needs a power-of-two dimension, got {n}"
            )));
        }
        let scale = 1.0 / (n as f64).sqrt();
        let mut cols = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..n {
                let sign = if (i & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                cols[j * n + i] = sign * scale;
            }
        }
        Ok(OrthonormalBasis { n, cols })
    }

    /// Orthonormal DCT-II basis.
    pub fn dct(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("DCT basis needs n >= 1".into()));
        }
        let mut cols = vec![0.0; n * n];
        for j in 0..n {
            let c = if j == 0 {
                (1.0 / n as f64).sqrt()
            } else {
                (2.0 / n as f64).sqrt()
            };
            for i in 0..n {
                cols[j * n + i] =
                    c * (std::f64::consts::PI * (i as f64 + 0.5) * j as f64 / n as f64).cos();
            }
        }
        Ok(OrthonormalBasis { n, cols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.cols[j * self.n..(j + 1) * self.n]
    }

    /// Analysis transform: coefficients of `x` in this basis.
    pub fn to_coefficients(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|j| crate::signal::dot(self.column(j), x))
            .collect()
    }

    /// Synthesis transform: signal with the given coefficient expansion.
    pub fn from_coefficients(&self, coeffs: &[f64]) -> Vec<f64> {
        assert_eq!(coeffs.len(), self.n);
        let mut out = vec![0.0; self.n];
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0.0 {
                for (o, &v) in out.iter_mut().zip(self.column(j)) {
                    *o += c * v;
                }
            }
        }
        out
    }

    /// Max absolute deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                let g = crate::signal::dot(self.column(i), self.column(j));
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }

    pub fn validate(&self) -> Result<()> {
        let deviation = self.gram_deviation();
        if deviation <= ORTHONORMALITY_TOL {
            Ok(())
        } else {
            Err(Error::NotOrthonormal { deviation })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let b = OrthonormalBasis::canonical(5);
        let x = vec![1.0, -2.0, 0.0, 4.0, 0.5];
        assert_eq!(b.to_coefficients(&x), x);
        assert_eq!(b.from_coefficients(&x), x);
    }

    #[test]
    fn hadamard_is_orthonormal() {
        for n in [1usize, 2, 8, 64] {
            let b = OrthonormalBasis::walsh_hadamard(n).unwrap();
            assert!(b.gram_deviation() < 1e-12, "n = {n}");
        }
        assert!(OrthonormalBasis::walsh_hadamard(12).is_err());
    }

    #[test]
    fn dct_is_orthonormal_and_round_trips() {
        let b = OrthonormalBasis::dct(33).unwrap();
        assert!(b.gram_deviation() < 1e-12);
        let x: Vec<f64> = (0..33).map(|i| ((i * 7 % 13) as f64) - 6.0).collect();
        let back = b.from_coefficients(&b.to_coefficients(&x));
        for (a, c) in x.iter().zip(&back) {
            assert!((a - c).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_orthonormal_columns() {
        let mut cols = OrthonormalBasis::canonical(3).cols;
        cols[0] = 1.5;
        assert!(matches!(
            OrthonormalBasis::new(3, cols),
            Err(Error::NotOrthonormal { .. })
        ));
    }
}
