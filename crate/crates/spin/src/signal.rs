//! Dense real vectors and the handful of arithmetic helpers everything else
//! is built from. Signals are plain `Vec<f64>` / `&[f64]`.

use crate::error::{Error, Result};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn norm(x: &[f64]) -> f64 {
    norm_sq(x).sqrt()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(x: &[f64], s: f64) -> Vec<f64> {
    x.iter().map(|v| v * s).collect()
}

pub fn all_finite(x: &[f64]) -> bool {
    x.iter().all(|v| v.is_finite())
}

/// Squared distance, summed in index order so two call sites that compare the
/// same pair of vectors agree bit for bit.
pub fn distance_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn check_len(x: &[f64], expected: usize) -> Result<()> {
    if x.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            got: x.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arithmetic() {
        let a = [1.0, 2.0, 3.0];
        let b = [4.0, -5.0, 6.0];
        assert_eq!(dot(&a, &b), 12.0);
        assert_eq!(norm_sq(&a), 14.0);
        assert_eq!(add(&a, &b), vec![5.0, -3.0, 9.0]);
        assert_eq!(sub(&a, &b), vec![-3.0, 7.0, -3.0]);
        assert_eq!(distance_sq(&a, &b), 9.0 + 49.0 + 9.0);
    }

    #[test]
    fn length_check() {
        assert!(check_len(&[0.0; 3], 3).is_ok());
        assert!(matches!(
            check_len(&[0.0; 3], 4),
            Err(Error::DimensionMismatch { expected: 4, got: 3 })
        ));
    }
}
