//! FFT-based circular cross-correlation over a 1D or 2D toroidal domain.
//!
//! The correlation convention used throughout the crate is
//! `corr[theta] = sum_s f[s] * x[(s + theta) mod n]`, i.e. the inner product
//! of the signal with the template circularly shifted by `theta`. On a 2D
//! `h x w` grid the shift index is row-major: `theta = r * w + c`.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

/// Planned forward/inverse transforms for one grid shape. Immutable after
/// construction and safe to share across threads.
pub struct CorrelationPlan {
    height: usize,
    width: usize,
    row_fwd: Arc<dyn Fft<f64>>,
    row_inv: Arc<dyn Fft<f64>>,
    col_fwd: Option<Arc<dyn Fft<f64>>>,
    col_inv: Option<Arc<dyn Fft<f64>>>,
}

impl CorrelationPlan {
    pub fn new_1d(len: usize) -> Self {
        Self::new_2d(1, len)
    }

    pub fn new_2d(height: usize, width: usize) -> Self {
        let mut planner = FftPlanner::new();
        let row_fwd = planner.plan_fft_forward(width);
        let row_inv = planner.plan_fft_inverse(width);
        let (col_fwd, col_inv) = if height > 1 {
            (
                Some(planner.plan_fft_forward(height)),
                Some(planner.plan_fft_inverse(height)),
            )
        } else {
            (None, None)
        };
        CorrelationPlan {
            height,
            width,
            row_fwd,
            row_inv,
            col_fwd,
            col_inv,
        }
    }

    pub fn len(&self) -> usize {
        self.height * self.width
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Forward transform of a real grid, row-major.
    pub fn forward(&self, data: &[f64]) -> Vec<Complex<f64>> {
        assert_eq!(data.len(), self.len());
        let mut buf: Vec<Complex<f64>> = data.iter().map(|&v| Complex::new(v, 0.0)).collect();
        self.transform(&mut buf, true);
        buf
    }

    /// Circular cross-correlation of `signal` against a template given by its
    /// precomputed forward spectrum.
    pub fn correlate_spectrum(&self, signal: &[f64], template_spectrum: &[Complex<f64>]) -> Vec<f64> {
        assert_eq!(signal.len(), self.len());
        assert_eq!(template_spectrum.len(), self.len());
        let mut buf = self.forward(signal);
        for (v, t) in buf.iter_mut().zip(template_spectrum) {
            *v *= t.conj();
        }
        self.transform(&mut buf, false);
        let scale = 1.0 / self.len() as f64;
        buf.iter().map(|c| c.re * scale).collect()
    }

    fn transform(&self, buf: &mut [Complex<f64>], forward: bool) {
        let row = if forward { &self.row_fwd } else { &self.row_inv };
        for r in 0..self.height {
            row.process(&mut buf[r * self.width..(r + 1) * self.width]);
        }
        let col = if forward { &self.col_fwd } else { &self.col_inv };
        if let Some(col) = col {
            let mut column = vec![Complex::new(0.0, 0.0); self.height];
            for c in 0..self.width {
                for r in 0..self.height {
                    column[r] = buf[r * self.width + c];
                }
                col.process(&mut column);
                for r in 0..self.height {
                    buf[r * self.width + c] = column[r];
                }
            }
        }
    }
}

/// Circularly shifts a row-major `h x w` grid by `(dr, dc)`:
/// `out[r][c] = data[(r - dr) mod h][(c - dc) mod w]`.
pub fn circular_shift_2d(data: &[f64], h: usize, w: usize, dr: usize, dc: usize) -> Vec<f64> {
    assert_eq!(data.len(), h * w);
    let mut out = vec![0.0; h * w];
    for r in 0..h {
        let src_r = (r + h - dr % h) % h;
        for c in 0..w {
            let src_c = (c + w - dc % w) % w;
            out[r * w + c] = data[src_r * w + src_c];
        }
    }
    out
}
