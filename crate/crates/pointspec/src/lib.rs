//! Spectral analysis of one-dimensional Schrödinger operators with a general
//! complex zero-range potential at the origin.
//!
//! The operator family is `-d²/dx²` on the line with the interface condition
//! `T·Γ₀f = Γ₁f` at `x = 0`, where the 2×2 complex matrix `T = (a b; c d)`
//! collects the couplings of the δ and δ′ terms. Everything spectral about
//! such an operator is governed by the quadratic
//! `p_T(τ) = 2dτ² + i(det T − 4)τ + 2a`, and this crate computes it all in
//! closed form:
//!
//! - [`coupling`] — the coupling matrix, symmetry detection, `p_T`;
//! - [`boundary`] — boundary traces Γ₀/Γ₁ and the interface residual;
//! - [`expsum`] — exact piecewise-exponential functions on ℝ∖{0}
//!   (eigenfunctions, resolvent outputs) with analytic traces and norms;
//! - [`spectrum`] — root solving and the full spectral classification
//!   (eigenvalues, spectral singularities, exceptional points, σ = ℂ),
//!   plus the PT-symmetric `(D, K)` decision table;
//! - [`krein`] — indefinite-metric machinery: fundamental symmetries,
//!   the angle φ, the hyperbolic parameter χ, and the metric operator `e^Q`;
//! - [`resolvent`] — closed-form resolvents, the boundedness functions
//!   `M±`/`M′±`/`Φ±`, supremum scans and the integral similarity criterion;
//! - [`fd`] — an independent finite-difference eigenvalue oracle on a box;
//! - [`scan`], [`report`], [`cli`] — parameter-plane scans, machine-readable
//!   reports and the command-line front end.
//!
//! ## Runnable examples
//!
//! One example per capability lives in `examples/`:
//!
//! ```bash
//! cargo run -p pointspec --example classify
//! cargo run -p pointspec --example pt_phase_table
//! cargo run -p pointspec --example phase_diagram
//! cargo run -p pointspec --example krein_metric
//! cargo run -p pointspec --example resolvent_check
//! cargo run -p pointspec --example similarity_evidence
//! cargo run -p pointspec --example fd_crosscheck
//! ```
//!
//! The `pointspec` binary exposes the same functionality as subcommands
//! (`classify`, `scan`, `similarity`, `resolvent`, `metric`, `oracle`).

pub mod boundary;
pub mod cli;
pub mod coupling;
pub mod expsum;
pub mod fd;
pub mod krein;
pub mod quad;
pub mod report;
pub mod resolvent;
pub mod scan;
pub mod spectrum;

mod banded;

pub use boundary::BoundaryTraces;
pub use coupling::{CouplingMatrix, SymmetryClass};
pub use expsum::TwoSidedExponentialSum;
pub use krein::{FundamentalSymmetry, KreinSimilarity, MetricSpec};
pub use report::Report;
pub use resolvent::{ResolventDecomposition, SimilarityVerdict};
pub use spectrum::{PtCell, RootSet, SpectralReport};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An operation that requires a PT-symmetric coupling matrix was called
    /// with a matrix outside that class.
    #[error("coupling matrix is not PT-symmetric (requires a, d real and b, c purely imaginary)")]
    NotPTSymmetric,
    /// τ is not a root of the characteristic polynomial.
    #[error("τ = {tau} is not a root of the characteristic polynomial (|p(τ)| = {residual:.3e})")]
    NotARoot { tau: num_complex::Complex64, residual: f64 },
    /// τ lies outside the open upper half-plane, so the candidate
    /// eigenfunction does not decay.
    #[error("Im τ ≤ 0 for τ = {tau}: candidate eigenfunction is not square-integrable")]
    NotDecaying { tau: num_complex::Complex64 },
    /// An input exponent coincides with ±iτ; the free resolvent of that term
    /// is not a pure exponential sum.
    #[error("input exponent {exponent} collides with ±iτ for τ = {tau}; perturb τ")]
    PoleCollision { exponent: num_complex::Complex64, tau: num_complex::Complex64 },
    /// z = τ² lies on (or numerically too close to) the spectrum.
    #[error("τ = {tau} is at the spectrum: |p(τ)| = {p_abs:.3e} below tolerance")]
    AtSpectrum { tau: num_complex::Complex64, p_abs: f64 },
    /// The integral criterion requires a real spectrum.
    #[error("operator has nonreal eigenvalues; the integral criterion does not apply")]
    ComplexSpectrum,
    /// An iterative eigenvalue solve failed to converge.
    #[error("eigenvalue iteration failed to converge after {iterations} iterations (last residual {residual:.3e})")]
    ConvergenceFailure { iterations: usize, residual: f64 },
    /// A numeric literal or flag could not be parsed.
    #[error("parse error for {what}: {message}")]
    Parse { what: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
