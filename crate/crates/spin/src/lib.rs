//! Separation of two structured signal components from noisy linear
//! measurements of their sum.
//!
//! The crate provides:
//!
//! - [`manifolds`]: signal-family models (sparse-in-basis, translated
//!   template, zero) with exact and budgeted approximate projections;
//! - [`measurement`]: dense Gaussian and identity measurement operators plus
//!   exact-SNR noise synthesis;
//! - [`solver`]: the alternating projected-gradient solver with per-iteration
//!   objective tracing;
//! - [`geometry`]: sampled incoherence/isometry diagnostics, mutual coherence
//!   of basis pairs, and the closed-form convergence constants;
//! - [`experiments`]: a seeded, CSV-producing experiment harness behind the
//!   `spin` binary.
//!
//! The `examples/` directory demonstrates each capability end to end.

pub mod basis;
pub mod error;
pub mod experiments;
pub mod fft;
pub mod geometry;
pub mod io;
pub mod manifolds;
pub mod measurement;
pub mod seeds;
pub mod signal;
pub mod solver;

pub use basis::OrthonormalBasis;
pub use error::{Error, Result};
pub use geometry::{
    convergence_constants, estimate_incoherence, estimate_rip, estimate_rip_sum,
    iteration_bound, make_secant, mutual_coherence, pairs_bound, recovery_condition,
    suggest_measurements, ConvergenceConstants, EstimateKind, GeometryEstimate, Secant,
};
pub use manifolds::{
    make_disk_template, make_gaussian_pulse, make_square_template, ManifoldModel,
    ProjectionOutcome, ProjectionParameter, TemplateManifold,
};
pub use measurement::{synthesize_noise, MeasurementOperator, NoiseSpec};
pub use solver::{psi, recovery_snr, spin, spin_observed, SpinConfig, SpinResult, StopRule};
