//! Roots of the characteristic polynomial and the spectral classification.
//!
//! The operator has continuous spectrum `[0, ∞)`; everything else is read
//! off the roots of `p_T(τ) = 2dτ² + i(det T − 4)τ + 2a`:
//!
//! - a root `τ ∈ ℂ₊` is an eigenvalue `z = τ²`;
//! - a real nonzero root is a spectral singularity embedded in `[0, ∞)`;
//! - a double root at `τ = 0` is a singularity at `z = 0`; no roots at all
//!   (degree 0) is a singularity at `z = ∞`;
//! - `p_T ≡ 0` means every `z ∈ ℂ∖ℝ₊` is an eigenvalue (σ = ℂ);
//! - a defective double root in `ℂ₊` is an exceptional point.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coupling::{CouplingMatrix, SymmetryClass, SYMMETRY_TOL};
use crate::expsum::TwoSidedExponentialSum;
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative tolerance scale for root/axis classification: `1e-10·(1+|τ|)`.
fn root_tol(tau: Complex64) -> f64 {
    1e-10 * (1.0 + tau.norm())
}

/// Roots of `p_T` with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    /// `(τ, multiplicity)` pairs; multiplicities sum to `degree`.
    pub roots: Vec<(Complex64, u32)>,
    /// `p_T ≡ 0` (forces `a = d = 0`, `det T = 4`).
    pub identically_zero: bool,
    /// Polynomial degree in `{0, 1, 2}`.
    pub degree: u32,
}

impl RootSet {
    /// Largest `|p_T(τ)|` over the listed roots, relative to the natural
    /// scale of the polynomial — bounded by 1e-10 by construction.
    pub fn max_relative_residual(&self, t: &CouplingMatrix) -> f64 {
        self.roots
            .iter()
            .map(|&(tau, _)| t.char_poly(tau).norm() / t.char_poly_scale(tau))
            .fold(0.0, f64::max)
    }
}

/// Roots of `a2·τ² + a1·τ + a0` with a numerically stable complex quadratic
/// formula: the larger-magnitude root comes from `q = −(a1 + sgn·√disc)/2`
/// with the sign chosen to avoid cancellation, the other as `a0/q`.
///
/// `a2` is assumed nonzero. Returns the double root when
/// `|disc| ≤ 1e-12·max(1, |a1|², 4|a2·a0|)`.
pub fn solve_quadratic(a2: Complex64, a1: Complex64, a0: Complex64) -> Vec<(Complex64, u32)> {
    let disc = a1 * a1 - 4.0 * a2 * a0;
    let disc_scale = 1.0f64.max(a1.norm_sqr()).max(4.0 * (a2 * a0).norm());
    if disc.norm() <= 1e-12 * disc_scale {
        return vec![(-a1 / (2.0 * a2), 2)];
    }
    let mut sq = disc.sqrt();
    if (a1.conj() * sq).re < 0.0 {
        sq = -sq;
    }
    let q = -(a1 + sq) / 2.0;
    vec![(q / a2, 1), (a0 / q, 1)]
}

/// Solve `p_T(τ) = 0` with full degeneration handling.
pub fn solve_char_poly(t: &CouplingMatrix) -> RootSet {
    let entry_scale = 1.0 + t.a.norm().max(t.b.norm()).max(t.c.norm()).max(t.d.norm());
    let a2 = 2.0 * t.d;
    let a1 = I * (t.det() - 4.0);
    let a0 = 2.0 * t.a;
    if t.d.norm() > SYMMETRY_TOL * entry_scale {
        RootSet { roots: solve_quadratic(a2, a1, a0), identically_zero: false, degree: 2 }
    } else if a1.norm() > SYMMETRY_TOL * (4.0 + t.det().norm()) {
        RootSet { roots: vec![(-a0 / a1, 1)], identically_zero: false, degree: 1 }
    } else if t.a.norm() > SYMMETRY_TOL * entry_scale {
        RootSet { roots: vec![], identically_zero: false, degree: 0 }
    } else {
        RootSet { roots: vec![], identically_zero: true, degree: 0 }
    }
}

/// Spectral singularities: real points where the resolvent cannot stay
/// uniformly bounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Singularity {
    /// Nonzero singularity at `z = τ² > 0` (real root τ ≠ 0).
    Nonzero { z: f64 },
    /// Singularity at `z = 0` (double root τ = 0).
    AtZero,
    /// Singularity at `z = ∞` (no roots at all).
    AtInfinity,
}

/// An eigenvalue `z = τ²` with its upper-half-plane root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub z: Complex64,
    pub tau: Complex64,
    pub multiplicity: u32,
}

/// Complete spectral classification of the operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub symmetry: SymmetryClass,
    /// Fixed: the continuous spectrum is always `[0, ∞)`.
    pub continuous_spectrum: String,
    pub eigenvalues: Vec<Eigenvalue>,
    pub singularities: Vec<Singularity>,
    pub exceptional_points: Vec<Complex64>,
    pub spectrum_is_whole_plane: bool,
    /// Some root lies within tolerance of the real axis (including the
    /// origin), where the classification is discontinuous.
    pub borderline: bool,
}

pub const CONTINUOUS_SPECTRUM_TAG: &str = "[0,∞)";

/// The 2×2 system whose nontrivial null vectors give eigenfunction
/// coefficients `(c₁, c₂)`; its determinant equals `p_T(τ)`.
fn eigen_system(t: &CouplingMatrix, tau: Complex64) -> [[Complex64; 2]; 2] {
    [
        [t.a - 2.0 * I * tau, I * t.b * tau],
        [t.c, I * t.d * tau + 2.0],
    ]
}

/// A double root is defective (a genuine exceptional point) when the
/// eigen-system has rank 1 there; rank 0 means two independent
/// eigenfunctions and a semisimple eigenvalue.
fn is_defective_double_root(t: &CouplingMatrix, tau: Complex64) -> bool {
    let m = eigen_system(t, tau);
    let scale = 1.0 + t.a.norm() + t.b.norm() * tau.norm() + t.c.norm() + t.d.norm() * tau.norm() + tau.norm();
    let max_entry = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    max_entry > 1e-9 * scale
}

/// Classify the full spectrum of the operator.
pub fn classify(t: &CouplingMatrix) -> SpectralReport {
    let symmetry = t.symmetry_class();
    let roots = solve_char_poly(t);
    let mut report = SpectralReport {
        symmetry,
        continuous_spectrum: CONTINUOUS_SPECTRUM_TAG.to_string(),
        eigenvalues: Vec::new(),
        singularities: Vec::new(),
        exceptional_points: Vec::new(),
        spectrum_is_whole_plane: roots.identically_zero,
        borderline: false,
    };
    if roots.identically_zero {
        return report;
    }
    if roots.degree == 0 {
        report.singularities.push(Singularity::AtInfinity);
        return report;
    }
    for &(tau, mult) in &roots.roots {
        let tol = root_tol(tau);
        if tau.im > tol {
            let z = tau * tau;
            report.eigenvalues.push(Eigenvalue { z, tau, multiplicity: mult });
            if mult == 2 && is_defective_double_root(t, tau) {
                report.exceptional_points.push(z);
            }
        } else if tau.im.abs() <= tol {
            report.borderline = true;
            if tau.norm() > tol {
                let z = tau.re * tau.re;
                let dup = report.singularities.iter().any(|s| match s {
                    Singularity::Nonzero { z: z0 } => (z0 - z).abs() <= 1e-10 * (1.0 + z),
                    _ => false,
                });
                if !dup {
                    report.singularities.push(Singularity::Nonzero { z });
                }
            } else if mult == 2 {
                report.singularities.push(Singularity::AtZero);
            }
            // simple root at the origin: neither eigenvalue nor singularity
        }
    }
    report
}

impl SpectralReport {
    /// All eigenvalues real (within `1e-10·(1+|z|)` on the imaginary part).
    pub fn spectrum_is_real(&self) -> bool {
        !self.spectrum_is_whole_plane
            && self
                .eigenvalues
                .iter()
                .all(|e| e.z.im.abs() <= 1e-10 * (1.0 + e.z.norm()))
    }

    pub fn has_singularity(&self) -> bool {
        !self.singularities.is_empty()
    }

    pub fn has_exceptional_point(&self) -> bool {
        !self.exceptional_points.is_empty()
    }
}

/// The real invariants `D = (4 − det T)² + 16ad` and `K = (4 − det T)d` of a
/// PT-symmetric matrix. `D` is also computed through the algebraically
/// equivalent route `(4 + det T)² + 16bc` as a consistency check.
pub fn pt_invariants(t: &CouplingMatrix) -> Result<(f64, f64)> {
    if !t.symmetry_class().is_pt_symmetric() {
        return Err(Error::NotPTSymmetric);
    }
    let (a, d) = (t.a.re, t.d.re);
    let (x, y) = (t.b.im, t.c.im);
    let det = a * d + x * y; // ad − (ix)(iy)
    let d_primary = (4.0 - det) * (4.0 - det) + 16.0 * a * d;
    let d_cross = (4.0 + det) * (4.0 + det) - 16.0 * x * y;
    assert!(
        (d_primary - d_cross).abs() <= 1e-10 * (1.0 + d_primary.abs()),
        "the two routes to D disagree: {d_primary} vs {d_cross}"
    );
    Ok((d_primary, (4.0 - det) * d))
}

/// Cell of the PT decision table, indexed by the signs of `(D, K)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PtCell {
    Similarity,
    ExceptionalPoint,
    SingularityAtZero,
    SingularityAtInfinity,
    WholePlane,
    ComplexEigenvaluePair,
    NonzeroSingularity,
}

impl PtCell {
    pub fn label(self) -> &'static str {
        match self {
            PtCell::Similarity => "similar",
            PtCell::ExceptionalPoint => "exceptional",
            PtCell::SingularityAtZero => "singularity-0",
            PtCell::SingularityAtInfinity => "singularity-inf",
            PtCell::WholePlane => "whole-plane",
            PtCell::ComplexEigenvaluePair => "complex-eigenvalues",
            PtCell::NonzeroSingularity => "nonzero-singularity",
        }
    }
}

/// Map the signs of `(D, K)` to the decision-table cell. The `D = 0, K = 0`
/// cell splits on `(a, d)`: `d ≠ 0, a = 0` is the singularity at 0,
/// `d = 0, a ≠ 0` the singularity at ∞, and `a = d = 0` is σ = ℂ.
pub fn pt_cell(t: &CouplingMatrix) -> Result<PtCell> {
    let (dd, k) = pt_invariants(t)?;
    let tol_d = 1e-12 * (1.0 + dd.abs());
    let tol_k = 1e-12 * (1.0 + k.abs());
    Ok(if dd > tol_d {
        PtCell::Similarity
    } else if dd >= -tol_d {
        // D = 0
        if k > tol_k {
            PtCell::ExceptionalPoint
        } else if k < -tol_k {
            PtCell::Similarity
        } else if t.d.norm() > SYMMETRY_TOL * (1.0 + t.d.norm()) {
            PtCell::SingularityAtZero
        } else if t.a.norm() > SYMMETRY_TOL * (1.0 + t.a.norm()) {
            PtCell::SingularityAtInfinity
        } else {
            PtCell::WholePlane
        }
    } else {
        // D < 0
        if k > tol_k {
            PtCell::ComplexEigenvaluePair
        } else if k < -tol_k {
            PtCell::Similarity
        } else {
            PtCell::NonzeroSingularity
        }
    })
}

/// Eigenfunction `f = c₁h_{1τ} + c₂h_{2τ}` for a root `τ ∈ ℂ₊`, with
/// `(c₁, c₂)` spanning the null space of the interface system and normalized
/// so that `max(|c₁|, |c₂|) = 1`.
pub fn eigenfunction(t: &CouplingMatrix, tau: Complex64) -> Result<TwoSidedExponentialSum> {
    if tau.im <= 0.0 {
        return Err(Error::NotDecaying { tau });
    }
    let p = t.char_poly(tau);
    if p.norm() > 1e-10 * t.char_poly_scale(tau) {
        return Err(Error::NotARoot { tau, residual: p.norm() });
    }
    let m = eigen_system(t, tau);
    let row_norm = |r: &[Complex64; 2]| r[0].norm() + r[1].norm();
    let row = if row_norm(&m[0]) >= row_norm(&m[1]) { m[0] } else { m[1] };
    let (c1, c2) = if row_norm(&row) == 0.0 {
        // rank 0: the whole span solves the interface condition
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    } else if row[1].norm() >= row[0].norm() {
        // null vector of (u, v) is (v, −u); divide by the larger component
        (Complex64::new(1.0, 0.0), -row[0] / row[1])
    } else {
        (row[1] / -row[0], Complex64::new(1.0, 0.0))
    };
    Ok(TwoSidedExponentialSum::h1(tau)
        .scale(c1)
        .add(&TwoSidedExponentialSum::h2(tau).scale(c2)))
}
