//! Signal-manifold models with exact and approximate Euclidean projection.
//!
//! Three families are supported: signals with at most K nonzero coefficients
//! in an orthonormal basis, circular translations of a fixed template on a 1D
//! or 2D toroidal grid, and the trivial zero manifold. Each model exposes the
//! nearest-point projection, a budgeted approximate projection whose squared
//! distance may exceed the optimum by at most `gamma`, and a seeded point
//! sampler with ground-truth parameter readout.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;

use crate::basis::OrthonormalBasis;
use crate::error::{Error, Result};
use crate::fft::{circular_shift_2d, CorrelationPlan};
use crate::signal::{self, distance_sq, norm, norm_sq};

/// Variant-specific readout of the projected point's location on the
/// manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectionParameter {
    None,
    /// Retained coefficient indices, ascending.
    Support(Vec<usize>),
    /// Circular shift of a 1D template.
    Shift(usize),
    /// Circular (row, col) shift of a 2D template.
    Shift2d { row: usize, col: usize },
}

#[derive(Debug, Clone)]
pub struct ProjectionOutcome {
    pub point: Vec<f64>,
    pub distance_sq: f64,
    pub parameter: ProjectionParameter,
}

/// Circular translations of a fixed template. Shifts wrap around, so every
/// point on the manifold has the same norm and the correlation argmax equals
/// the Euclidean projection.
pub struct TemplateManifold {
    height: usize,
    width: usize,
    template: Vec<f64>,
    spectrum: Vec<Complex<f64>>,
    plan: CorrelationPlan,
    template_norm: f64,
    /// `gap_bound[r]` bounds `|| f - shift(f) ||` over all shifts whose
    /// per-axis circular offset is at most `r`. Nondecreasing in `r`.
    gap_bound: Vec<f64>,
}

impl TemplateManifold {
    fn new(template: Vec<f64>, height: usize, width: usize) -> Result<Self> {
        if template.len() != height * width || template.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: height * width,
                got: template.len(),
            });
        }
        let template_norm = norm(&template);
        if template_norm <= 0.0 {
            return Err(Error::ZeroTemplate);
        }
        let plan = CorrelationPlan::new_2d(height, width);
        let spectrum = plan.forward(&template);
        // || f - shift_theta(f) ||^2 = 2 (||f||^2 - autocorr[theta]).
        let autocorr = plan.correlate_spectrum(&template, &spectrum);
        let nsq = norm_sq(&template);
        let max_radius = height.max(width) / 2;
        let mut gap_sq = vec![0.0_f64; max_radius + 1];
        for dr in 0..height {
            let rad_r = dr.min(height - dr);
            for dc in 0..width {
                if dr == 0 && dc == 0 {
                    continue;
                }
                let rad = rad_r.max(dc.min(width - dc));
                let d_sq = (2.0 * (nsq - autocorr[dr * width + dc])).max(0.0);
                if d_sq > gap_sq[rad] {
                    gap_sq[rad] = d_sq;
                }
            }
        }
        for r in 1..gap_sq.len() {
            gap_sq[r] = gap_sq[r].max(gap_sq[r - 1]);
        }
        let gap_bound = gap_sq.into_iter().map(f64::sqrt).collect();
        Ok(TemplateManifold {
            height,
            width,
            template,
            spectrum,
            plan,
            template_norm,
            gap_bound,
        })
    }

    pub fn len(&self) -> usize {
        self.height * self.width
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn template(&self) -> &[f64] {
        &self.template
    }

    /// Upper bound on the distance between the template and any copy shifted
    /// by at most `radius` along each axis (circularly).
    pub fn shift_gap_bound(&self, radius: usize) -> f64 {
        let r = radius.min(self.gap_bound.len() - 1);
        self.gap_bound[r]
    }

    pub fn shifted(&self, index: usize) -> Vec<f64> {
        let (dr, dc) = (index / self.width, index % self.width);
        circular_shift_2d(&self.template, self.height, self.width, dr, dc)
    }

    /// Parameter readout for a flat shift index (1D shift or 2D row/col).
    pub fn parameter(&self, index: usize) -> ProjectionParameter {
        if self.height == 1 {
            ProjectionParameter::Shift(index)
        } else {
            ProjectionParameter::Shift2d {
                row: index / self.width,
                col: index % self.width,
            }
        }
    }

    fn outcome(&self, index: usize, x: &[f64]) -> ProjectionOutcome {
        let point = self.shifted(index);
        let d = distance_sq(&point, x);
        ProjectionOutcome {
            point,
            distance_sq: d,
            parameter: self.parameter(index),
        }
    }

    fn project(&self, x: &[f64]) -> ProjectionOutcome {
        let corr = self.plan.correlate_spectrum(x, &self.spectrum);
        let mut best = f64::NEG_INFINITY;
        for &c in &corr {
            if c > best {
                best = c;
            }
        }
        // The FFT correlation carries rounding noise, so near-maximal shifts
        // are re-scored with exact time-domain distances. Ties go to the
        // smallest shift index (row-major for 2D).
        let tol = 1e-9 * self.template_norm * norm(x) + f64::MIN_POSITIVE;
        let mut chosen: Option<(f64, usize)> = None;
        for (idx, &c) in corr.iter().enumerate() {
            if c >= best - tol {
                let d = distance_sq(&self.shifted(idx), x);
                let better = match chosen {
                    None => true,
                    Some((bd, _)) => d < bd,
                };
                if better {
                    chosen = Some((d, idx));
                }
            }
        }
        let (_, idx) = chosen.expect("non-empty correlation");
        self.outcome(idx, x)
    }

    /// Exhaustive search over a decimated shift grid with the given per-axis
    /// stride. Stride 1 visits every shift and equals the exact projection.
    pub fn project_decimated(&self, x: &[f64], stride: usize) -> ProjectionOutcome {
        let stride = stride.max(1);
        let mut chosen: Option<(f64, usize)> = None;
        let rows: Vec<usize> = (0..self.height).step_by(stride).collect();
        let cols: Vec<usize> = (0..self.width).step_by(stride).collect();
        for &dr in &rows {
            for &dc in &cols {
                let mut d = 0.0;
                for r in 0..self.height {
                    let src_r = (r + self.height - dr) % self.height;
                    for c in 0..self.width {
                        let src_c = (c + self.width - dc) % self.width;
                        let diff = self.template[src_r * self.width + src_c] - x[r * self.width + c];
                        d += diff * diff;
                    }
                }
                let idx = dr * self.width + dc;
                let better = match chosen {
                    None => true,
                    Some((bd, _)) => d < bd,
                };
                if better {
                    chosen = Some((d, idx));
                }
            }
        }
        let (_, idx) = chosen.expect("non-empty grid");
        self.outcome(idx, x)
    }

    /// Largest stride whose worst-case squared-distance excess over the exact
    /// projection is at most `gamma` for an input of the given norm.
    pub fn stride_for_gamma(&self, x_norm: f64, gamma: f64) -> usize {
        if gamma <= 0.0 {
            return 1;
        }
        // Excess <= 2 ||x|| * || f_opt - f_grid || with the nearest grid
        // point at per-axis offset <= r for stride 2r.
        let mut r = 0;
        while r + 1 < self.gap_bound.len() && 2.0 * x_norm * self.gap_bound[r + 1] <= gamma {
            r += 1;
        }
        (2 * r).max(1)
    }
}

/// A family of signals with efficient Euclidean projection.
pub enum ManifoldModel {
    SparseInBasis {
        n: usize,
        k: usize,
        /// `None` means the canonical basis.
        basis: Option<OrthonormalBasis>,
        /// Optional restriction of the admissible coefficient indices.
        support: Option<Vec<usize>>,
    },
    TranslatedTemplate(TemplateManifold),
    Zero {
        n: usize,
    },
}

impl ManifoldModel {
    /// K-sparse signals in the canonical basis.
    pub fn sparse(n: usize, k: usize) -> Result<Self> {
        Self::sparse_restricted(n, k, None, None)
    }

    /// K-sparse coefficient expansions in an explicit orthonormal basis.
    pub fn sparse_in_basis(basis: OrthonormalBasis, k: usize) -> Result<Self> {
        let n = basis.n();
        Self::sparse_restricted(n, k, Some(basis), None)
    }

    /// K-sparse signals in the canonical basis with the nonzeros confined to
    /// the given coordinate set.
    pub fn sparse_on_support(n: usize, k: usize, support: Vec<usize>) -> Result<Self> {
        Self::sparse_restricted(n, k, None, Some(support))
    }

    fn sparse_restricted(
        n: usize,
        k: usize,
        basis: Option<OrthonormalBasis>,
        support: Option<Vec<usize>>,
    ) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidConfig(format!("sparsity {k} exceeds dimension {n}")));
        }
        if let Some(s) = &support {
            if s.iter().any(|&i| i >= n) {
                return Err(Error::InvalidConfig("support index out of range".into()));
            }
            if k > s.len() {
                return Err(Error::InvalidConfig(format!(
                    "sparsity {k} exceeds support size {}",
                    s.len()
                )));
            }
        }
        Ok(ManifoldModel::SparseInBasis { n, k, basis, support })
    }

    /// Circular translations of a 1D template.
    pub fn translated_template_1d(template: Vec<f64>) -> Result<Self> {
        let n = template.len();
        Ok(ManifoldModel::TranslatedTemplate(TemplateManifold::new(template, 1, n)?))
    }

    /// Circular translations of a 2D template on an `h x w` toroidal grid,
    /// row-major.
    pub fn translated_template_2d(template: Vec<f64>, h: usize, w: usize) -> Result<Self> {
        Ok(ManifoldModel::TranslatedTemplate(TemplateManifold::new(template, h, w)?))
    }

    pub fn zero(n: usize) -> Self {
        ManifoldModel::Zero { n }
    }

    /// Ambient dimension N.
    pub fn dimension(&self) -> usize {
        match self {
            ManifoldModel::SparseInBasis { n, .. } => *n,
            ManifoldModel::TranslatedTemplate(t) => t.len(),
            ManifoldModel::Zero { n } => *n,
        }
    }

    pub fn as_template(&self) -> Option<&TemplateManifold> {
        match self {
            ManifoldModel::TranslatedTemplate(t) => Some(t),
            _ => None,
        }
    }

    /// Euclidean projection: a nearest point on the manifold. Ties are broken
    /// deterministically (smallest coefficient index / smallest shift).
    pub fn project(&self, x: &[f64]) -> Result<ProjectionOutcome> {
        signal::check_len(x, self.dimension())?;
        match self {
            ManifoldModel::SparseInBasis { n, k, basis, support } => {
                Ok(project_sparse(x, *n, *k, basis.as_ref(), support.as_deref()))
            }
            ManifoldModel::TranslatedTemplate(t) => Ok(t.project(x)),
            ManifoldModel::Zero { n } => Ok(ProjectionOutcome {
                point: vec![0.0; *n],
                distance_sq: norm_sq(x),
                parameter: ProjectionParameter::None,
            }),
        }
    }

    /// Approximate projection: returns a manifold point whose squared
    /// distance exceeds the exact projection's by at most `gamma`. Sparse and
    /// zero manifolds project exactly; template manifolds search a decimated
    /// shift grid whose stride is certified by the template's shift-distance
    /// profile, falling back to the exact search when no decimation can
    /// guarantee the budget.
    pub fn project_gamma(&self, x: &[f64], gamma: f64) -> Result<ProjectionOutcome> {
        signal::check_len(x, self.dimension())?;
        match self {
            ManifoldModel::TranslatedTemplate(t) if gamma > 0.0 => {
                let stride = t.stride_for_gamma(norm(x), gamma);
                if stride <= 1 {
                    Ok(t.project(x))
                } else {
                    Ok(t.project_decimated(x, stride))
                }
            }
            _ => self.project(x),
        }
    }

    /// Draws a point on the manifold, deterministically in the seed.
    pub fn sample_point(&self, seed: u64) -> Vec<f64> {
        self.sample_with_parameter(seed).0
    }

    /// Draws a point together with its ground-truth parameter readout.
    pub fn sample_with_parameter(&self, seed: u64) -> (Vec<f64>, ProjectionParameter) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            ManifoldModel::SparseInBasis { n, k, basis, support } => {
                let mut allowed: Vec<usize> = match support {
                    Some(s) => s.clone(),
                    None => (0..*n).collect(),
                };
                for i in 0..*k {
                    let j = rng.random_range(i..allowed.len());
                    allowed.swap(i, j);
                }
                let mut chosen: Vec<usize> = allowed[..*k].to_vec();
                chosen.sort_unstable();
                let mut coeffs = vec![0.0; *n];
                for &i in &chosen {
                    coeffs[i] = rng.sample::<f64, _>(StandardNormal);
                }
                let point = match basis {
                    Some(b) => b.from_coefficients(&coeffs),
                    None => coeffs,
                };
                (point, ProjectionParameter::Support(chosen))
            }
            ManifoldModel::TranslatedTemplate(t) => {
                let (h, w) = t.shape();
                let row = if h > 1 { rng.random_range(0..h) } else { 0 };
                let col = rng.random_range(0..w);
                let idx = row * w + col;
                (t.shifted(idx), t.parameter(idx))
            }
            ManifoldModel::Zero { n } => (vec![0.0; *n], ProjectionParameter::None),
        }
    }
}

fn project_sparse(
    x: &[f64],
    n: usize,
    k: usize,
    basis: Option<&OrthonormalBasis>,
    support: Option<&[usize]>,
) -> ProjectionOutcome {
    let coeffs = match basis {
        Some(b) => b.to_coefficients(x),
        None => x.to_vec(),
    };
    let mut order: Vec<usize> = match support {
        Some(s) => s.to_vec(),
        None => (0..n).collect(),
    };
    // Largest magnitudes first; equal magnitudes keep the smallest index.
    order.sort_unstable_by(|&a, &b| {
        coeffs[b]
            .abs()
            .partial_cmp(&coeffs[a].abs())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let keep = k.min(order.len());
    let mut kept: Vec<usize> = order[..keep].to_vec();
    kept.sort_unstable();
    let mut thresholded = vec![0.0; n];
    for &i in &kept {
        thresholded[i] = coeffs[i];
    }
    let point = match basis {
        Some(b) => b.from_coefficients(&thresholded),
        None => thresholded,
    };
    let d = distance_sq(&point, x);
    ProjectionOutcome {
        point,
        distance_sq: d,
        parameter: ProjectionParameter::Support(kept),
    }
}

/// Samples of `exp(-t^2 / (2 sigma^2))` centered at index `n / 2`,
/// unnormalized.
pub fn make_gaussian_pulse(n: usize, width_sigma: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::TemplateTooLarge);
    }
    if !(width_sigma > 0.0) {
        return Err(Error::InvalidConfig("pulse width must be positive".into()));
    }
    let center = (n / 2) as f64;
    Ok((0..n)
        .map(|i| {
            let t = i as f64 - center;
            (-t * t / (2.0 * width_sigma * width_sigma)).exp()
        })
        .collect())
}

/// Binary disk of the given radius centered at pixel `(h/2, w/2)`, optionally
/// smoothed with an isotropic Gaussian kernel.
pub fn make_disk_template(h: usize, w: usize, radius: f64, blur_sigma: f64) -> Result<Vec<f64>> {
    if h == 0 || w == 0 || 2.0 * radius >= h.min(w) as f64 {
        return Err(Error::TemplateTooLarge);
    }
    let (cr, cc) = ((h / 2) as f64, (w / 2) as f64);
    let mut img = vec![0.0; h * w];
    for r in 0..h {
        for c in 0..w {
            let dr = r as f64 - cr;
            let dc = c as f64 - cc;
            if dr * dr + dc * dc <= radius * radius {
                img[r * w + c] = 1.0;
            }
        }
    }
    Ok(blur_2d(&img, h, w, blur_sigma))
}

/// Binary square of the given side length centered in the domain, optionally
/// smoothed with an isotropic Gaussian kernel.
pub fn make_square_template(h: usize, w: usize, side: usize, blur_sigma: f64) -> Result<Vec<f64>> {
    if h == 0 || w == 0 || side >= h.min(w) {
        return Err(Error::TemplateTooLarge);
    }
    let (r0, c0) = (h / 2 - side / 2, w / 2 - side / 2);
    let mut img = vec![0.0; h * w];
    for r in r0..r0 + side {
        for c in c0..c0 + side {
            img[r * w + c] = 1.0;
        }
    }
    Ok(blur_2d(&img, h, w, blur_sigma))
}

/// Circular convolution with a normalized Gaussian kernel truncated at four
/// standard deviations. `sigma = 0` returns the input unchanged.
pub fn blur_2d(img: &[f64], h: usize, w: usize, sigma: f64) -> Vec<f64> {
    assert_eq!(img.len(), h * w);
    if sigma <= 0.0 {
        return img.to_vec();
    }
    let kr = (4.0 * sigma).ceil() as i64;
    let mut kernel = Vec::with_capacity(((2 * kr + 1) * (2 * kr + 1)) as usize);
    let mut total = 0.0;
    for dr in -kr..=kr {
        for dc in -kr..=kr {
            let v = (-((dr * dr + dc * dc) as f64) / (2.0 * sigma * sigma)).exp();
            kernel.push((dr, dc, v));
            total += v;
        }
    }
    let mut out = vec![0.0; h * w];
    for r in 0..h {
        for c in 0..w {
            let v = img[r * w + c];
            if v == 0.0 {
                continue;
            }
            for &(dr, dc, kv) in &kernel {
                let rr = (r as i64 + dr).rem_euclid(h as i64) as usize;
                let cc = (c as i64 + dc).rem_euclid(w as i64) as usize;
                out[rr * w + cc] += v * kv / total;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
    }

    /// Brute-force sparse projection: enumerate all K-subsets in
    /// lexicographic order, keep the first minimizer.
    fn brute_force_sparse(x: &[f64], k: usize) -> (f64, Vec<usize>) {
        let n = x.len();
        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let mut point = vec![0.0; n];
            for &i in &subset {
                point[i] = x[i];
            }
            let d = distance_sq(&point, x);
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, subset.clone()));
            }
            // next k-combination
            let mut i = k;
            loop {
                if i == 0 {
                    return best.unwrap();
                }
                i -= 1;
                if subset[i] != i + n - k {
                    break;
                }
            }
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }

    fn brute_force_shift(t: &TemplateManifold, x: &[f64]) -> (f64, usize) {
        let mut best: Option<(f64, usize)> = None;
        for idx in 0..t.len() {
            let d = distance_sq(&t.shifted(idx), x);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, idx));
            }
        }
        best.unwrap()
    }

    #[test]
    fn sparse_projection_keeps_largest_magnitudes() {
        let m = ManifoldModel::sparse(4, 2).unwrap();
        let out = m.project(&[3.0, 1.0, 0.0, -2.0]).unwrap();
        assert_eq!(out.point, vec![3.0, 0.0, 0.0, -2.0]);
        assert_eq!(out.parameter, ProjectionParameter::Support(vec![0, 3]));
        assert_eq!(out.distance_sq, 1.0);
    }

    #[test]
    fn sparse_tie_breaks_to_smallest_index() {
        let m = ManifoldModel::sparse(3, 1).unwrap();
        let out = m.project(&[-2.0, 2.0, 1.0]).unwrap();
        assert_eq!(out.point, vec![-2.0, 0.0, 0.0]);
        assert_eq!(out.parameter, ProjectionParameter::Support(vec![0]));
        let (brute_d, brute_s) = brute_force_sparse(&[-2.0, 2.0, 1.0], 1);
        assert_eq!(out.distance_sq, brute_d);
        assert_eq!(out.parameter, ProjectionParameter::Support(brute_s));
    }

    #[test]
    fn sparse_projection_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..300 {
            let n = 6 + trial % 7; // 6..=12
            let k = 1 + trial % 3;
            let x = random_vec(&mut rng, n);
            let m = ManifoldModel::sparse(n, k).unwrap();
            let out = m.project(&x).unwrap();
            let (bd, bs) = brute_force_sparse(&x, k);
            assert_eq!(out.distance_sq, bd);
            assert_eq!(out.parameter, ProjectionParameter::Support(bs));
        }
    }

    #[test]
    fn sparse_projection_in_explicit_basis() {
        let basis = OrthonormalBasis::walsh_hadamard(8).unwrap();
        let m = ManifoldModel::sparse_in_basis(basis.clone(), 2).unwrap();
        let mut coeffs = vec![0.0; 8];
        coeffs[3] = 2.0;
        coeffs[6] = -1.0;
        let x = basis.from_coefficients(&coeffs);
        let out = m.project(&x).unwrap();
        assert!(out.distance_sq < 1e-20);
        assert_eq!(out.parameter, ProjectionParameter::Support(vec![3, 6]));
    }

    #[test]
    fn template_projection_recovers_exact_shift() {
        let template = make_gaussian_pulse(64, 3.0).unwrap();
        let m = ManifoldModel::translated_template_1d(template.clone()).unwrap();
        let shifted = circular_shift_2d(&template, 1, 64, 0, 5);
        let out = m.project(&shifted).unwrap();
        assert_eq!(out.parameter, ProjectionParameter::Shift(5));
        assert!(out.distance_sq < 1e-20);
    }

    #[test]
    fn template_projection_matches_exhaustive_shift_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for trial in 0..100 {
            let n = 32 + (trial % 5) * 17;
            let template = random_vec(&mut rng, n);
            let m = ManifoldModel::translated_template_1d(template).unwrap();
            let t = m.as_template().unwrap();
            let shift = trial % n;
            let mut x = t.shifted(shift);
            for v in x.iter_mut() {
                *v += 0.3 * rng.sample::<f64, _>(StandardNormal);
            }
            let out = m.project(&x).unwrap();
            let (bd, bi) = brute_force_shift(t, &x);
            assert_eq!(out.distance_sq, bd);
            assert_eq!(out.parameter, ProjectionParameter::Shift(bi));
        }
    }

    #[test]
    fn template_projection_2d_matches_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let template = make_disk_template(12, 10, 2.5, 0.7).unwrap();
        let m = ManifoldModel::translated_template_2d(template, 12, 10).unwrap();
        let t = m.as_template().unwrap();
        for _ in 0..50 {
            let mut x = t.shifted(rng.random_range(0..t.len()));
            for v in x.iter_mut() {
                *v += 0.2 * rng.sample::<f64, _>(StandardNormal);
            }
            let out = m.project(&x).unwrap();
            let (bd, bi) = brute_force_shift(t, &x);
            assert_eq!(out.distance_sq, bd);
            assert_eq!(out.parameter, t.parameter(bi));
        }
    }

    #[test]
    fn projection_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pulse = make_gaussian_pulse(48, 4.0).unwrap();
        let models = [
            ManifoldModel::sparse(20, 4).unwrap(),
            ManifoldModel::sparse_in_basis(OrthonormalBasis::dct(20).unwrap(), 4).unwrap(),
            ManifoldModel::translated_template_1d(pulse).unwrap(),
            ManifoldModel::zero(20),
        ];
        for m in &models {
            let x = random_vec(&mut rng, m.dimension());
            let first = m.project(&x).unwrap();
            let second = m.project(&first.point).unwrap();
            assert!(second.distance_sq <= 1e-10 * (1.0 + norm_sq(&first.point)));
        }
    }

    #[test]
    fn projection_is_no_farther_than_sampled_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = ManifoldModel::sparse(16, 3).unwrap();
        let x = random_vec(&mut rng, 16);
        let p = m.project(&x).unwrap();
        for s in 0..50 {
            let pt = m.sample_point(s);
            assert!(p.distance_sq <= distance_sq(&pt, &x) + 1e-12);
        }
    }

    #[test]
    fn decimated_search_respects_certified_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let template = make_gaussian_pulse(128, 6.0).unwrap();
        let m = ManifoldModel::translated_template_1d(template).unwrap();
        let t = m.as_template().unwrap();
        let stride = 4;
        for _ in 0..200 {
            let mut x = t.shifted(rng.random_range(0..t.len()));
            for v in x.iter_mut() {
                *v += 0.1 * rng.sample::<f64, _>(StandardNormal);
            }
            let exact = t.project(&x);
            let approx = t.project_decimated(&x, stride);
            let bound = 2.0 * norm(&x) * t.shift_gap_bound(stride / 2);
            assert!(approx.distance_sq <= exact.distance_sq + bound + 1e-9);
        }
    }

    #[test]
    fn gamma_zero_matches_exact_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let template = make_gaussian_pulse(96, 5.0).unwrap();
        let m = ManifoldModel::translated_template_1d(template).unwrap();
        let x = random_vec(&mut rng, 96);
        let exact = m.project(&x).unwrap();
        let approx = m.project_gamma(&x, 0.0).unwrap();
        assert_eq!(exact.point, approx.point);
        assert_eq!(exact.distance_sq, approx.distance_sq);
    }

    #[test]
    fn zero_manifold_projects_to_origin() {
        let m = ManifoldModel::zero(4);
        let out = m.project_gamma(&[1.0, -2.0, 0.0, 2.0], 5.0).unwrap();
        assert_eq!(out.point, vec![0.0; 4]);
        assert_eq!(out.distance_sq, 9.0);
    }

    #[test]
    fn sampling_is_deterministic_and_on_manifold() {
        let m = ManifoldModel::sparse(10, 3).unwrap();
        let (a, pa) = m.sample_with_parameter(42);
        let (b, pb) = m.sample_with_parameter(42);
        assert_eq!(a, b);
        assert_eq!(pa, pb);
        assert_eq!(a.iter().filter(|v| **v != 0.0).count(), 3);
        assert!(m.project(&a).unwrap().distance_sq < 1e-20);

        let z = ManifoldModel::zero(6);
        assert_eq!(z.sample_point(1), vec![0.0; 6]);

        let pulse = make_gaussian_pulse(40, 2.0).unwrap();
        let t = ManifoldModel::translated_template_1d(pulse).unwrap();
        let (p, param) = t.sample_with_parameter(7);
        assert!(matches!(param, ProjectionParameter::Shift(_)));
        assert!(t.project(&p).unwrap().distance_sq < 1e-20);
    }

    #[test]
    fn restricted_support_sampling_and_projection() {
        let m = ManifoldModel::sparse_on_support(8, 2, vec![4, 5, 6, 7]).unwrap();
        let (p, param) = m.sample_with_parameter(3);
        if let ProjectionParameter::Support(s) = &param {
            assert!(s.iter().all(|&i| i >= 4));
        } else {
            panic!("expected support parameter");
        }
        assert!(p[..4].iter().all(|&v| v == 0.0));
        let out = m.project(&[9.0, 9.0, 9.0, 9.0, 1.0, 2.0, 0.0, 3.0]).unwrap();
        assert_eq!(out.parameter, ProjectionParameter::Support(vec![5, 7]));
        assert_eq!(out.point[5], 2.0);
        assert_eq!(out.point[0], 0.0);
    }

    #[test]
    fn template_builders() {
        // No blur: exact binary indicators.
        let disk = make_disk_template(16, 16, 0.0, 0.0).unwrap();
        assert_eq!(disk.iter().filter(|v| **v != 0.0).count(), 1);
        assert_eq!(disk[8 * 16 + 8], 1.0);

        let square = make_square_template(16, 16, 4, 0.0).unwrap();
        assert_eq!(square.iter().sum::<f64>(), 16.0);
        assert!(square.iter().all(|&v| v == 0.0 || v == 1.0));

        assert!(matches!(make_disk_template(16, 16, 8.0, 1.0), Err(Error::TemplateTooLarge)));
        assert!(matches!(make_square_template(8, 8, 8, 0.0), Err(Error::TemplateTooLarge)));

        let pulse = make_gaussian_pulse(21, 2.0).unwrap();
        assert_eq!(pulse[10], 1.0);
    }

    #[test]
    fn blur_matches_dense_convolution_oracle() {
        let disk = make_disk_template(64, 64, 8.0, 0.0).unwrap();
        let blurred = blur_2d(&disk, 64, 64, 1.0);
        // Dense oracle: same kernel support, direct gather formulation.
        let sigma: f64 = 1.0;
        let kr = 4i64;
        let mut kernel = vec![];
        let mut total = 0.0;
        for dr in -kr..=kr {
            for dc in -kr..=kr {
                let v = (-((dr * dr + dc * dc) as f64) / (2.0 * sigma * sigma)).exp();
                kernel.push((dr, dc, v));
                total += v;
            }
        }
        let mut oracle = vec![0.0; 64 * 64];
        for r in 0..64i64 {
            for c in 0..64i64 {
                let mut acc = 0.0;
                for &(dr, dc, kv) in &kernel {
                    let rr = (r - dr).rem_euclid(64) as usize;
                    let cc = (c - dc).rem_euclid(64) as usize;
                    acc += disk[rr * 64 + cc] * kv;
                }
                oracle[(r * 64 + c) as usize] = acc / total;
            }
        }
        let sum_blur: f64 = blurred.iter().sum();
        let sum_oracle: f64 = oracle.iter().sum();
        assert!((sum_blur - sum_oracle).abs() < 1e-9 * sum_oracle.abs());
        for (a, b) in blurred.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12);
        }
        // Smoothing preserves total mass.
        let sum_disk: f64 = disk.iter().sum();
        assert!((sum_blur - sum_disk).abs() < 1e-9 * sum_disk);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let m = ManifoldModel::sparse(8, 2).unwrap();
        assert!(matches!(
            m.project(&[0.0; 7]),
            Err(Error::DimensionMismatch { expected: 8, got: 7 })
        ));
    }

    #[test]
    fn zero_template_is_rejected() {
        assert!(matches!(
            ManifoldModel::translated_template_1d(vec![0.0; 10]),
            Err(Error::ZeroTemplate)
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn gamma_contract_holds(seed in 0u64..1000, gamma in 0.0f64..20.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 64 + (seed as usize % 3) * 32;
            let template = make_gaussian_pulse(n, 4.0).unwrap();
            let m = ManifoldModel::translated_template_1d(template).unwrap();
            let x = random_vec(&mut rng, n);
            let exact = m.project(&x).unwrap();
            let approx = m.project_gamma(&x, gamma).unwrap();
            prop_assert!(approx.distance_sq <= exact.distance_sq + gamma + 1e-9);
        }

        #[test]
        fn circular_shift_preserves_norm(seed in 0u64..1000, shift in 0usize..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 50;
            let f = random_vec(&mut rng, n);
            let shifted = circular_shift_2d(&f, 1, n, 0, shift % n);
            prop_assert!((norm(&f) - norm(&shifted)).abs() < 1e-12);
        }
    }
}
