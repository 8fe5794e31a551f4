//! Fundamental symmetries, indefinite metrics and the similarity transform
//! for PT-symmetric operators.
//!
//! The building blocks are the parity `P f(x) = f(−x)`, the sign operator
//! `R f(x) = sign(x) f(x)`, their product `iPR`, the sphere family
//! `J_ᾱ = α₁P + α₂R + α₃ iPR`, and the PT-compatible metrics
//! `P_φ = P e^{iφR}`. For a PT matrix the metric angle solves
//! `2(b − c)cos φ = i(4 + det T) sin φ`, and when
//! `D = (4 − det T)² + 16ad > 0` a real χ with
//! `e^Q = cosh χ · I + sinh χ · iRP_φ` turns the operator into a self-adjoint
//! one in an equivalent inner product.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coupling::CouplingMatrix;
use crate::expsum::TwoSidedExponentialSum;
use crate::spectrum::classify;
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The fundamental symmetries available on `L²(ℝ)` in this family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FundamentalSymmetry {
    /// Parity: `f(x) ↦ f(−x)`.
    P,
    /// Sign multiplication: `f(x) ↦ sign(x) f(x)`.
    R,
    /// `iPR`.
    IPR,
    /// `α₁P + α₂R + α₃ iPR` with `α₁² + α₂² + α₃² = 1`.
    JAlpha(f64, f64, f64),
    /// `P_φ = P e^{iφR}`.
    PPhi(f64),
}

impl FundamentalSymmetry {
    /// Build `J_ᾱ`, checking the unit-sphere constraint to 1e-12.
    pub fn j_alpha(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let n = a1 * a1 + a2 * a2 + a3 * a3;
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::Parse {
                what: "J_alpha coefficients".into(),
                message: format!("α₁² + α₂² + α₃² = {n}, expected 1"),
            });
        }
        Ok(FundamentalSymmetry::JAlpha(a1, a2, a3))
    }

    /// Apply the symmetry to a piecewise-exponential function, exactly on
    /// term lists.
    pub fn apply(&self, f: &TwoSidedExponentialSum) -> TwoSidedExponentialSum {
        match *self {
            FundamentalSymmetry::P => f.reflect(),
            FundamentalSymmetry::R => f.signum_mul(),
            FundamentalSymmetry::IPR => f.signum_mul().reflect().scale(I),
            FundamentalSymmetry::JAlpha(a1, a2, a3) => f
                .reflect()
                .scale(a1.into())
                .add(&f.signum_mul().scale(a2.into()))
                .add(&FundamentalSymmetry::IPR.apply(f).scale(a3.into())),
            FundamentalSymmetry::PPhi(phi) => f.phase_by_sign(phi).reflect(),
        }
    }
}

/// The metric operator `e^Q = cosh χ · I + sinh χ · iRP_φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricOperator {
    pub phi: f64,
    pub chi: f64,
}

impl MetricOperator {
    pub fn apply(&self, f: &TwoSidedExponentialSum) -> TwoSidedExponentialSum {
        let p_phi = FundamentalSymmetry::PPhi(self.phi).apply(f);
        let irp = p_phi.signum_mul().scale(I);
        f.scale(self.chi.cosh().into()).add(&irp.scale(self.chi.sinh().into()))
    }
}

/// Krein/Hilbert metric data for a PT matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSpec {
    /// Metric angle in `[0, π)` (φ and φ + π give linearly dependent P_φ).
    pub phi: f64,
    /// Hyperbolic parameter of `e^Q`; `None` when no real solution exists
    /// (exactly the case `D ≤ 0`).
    pub chi: Option<f64>,
    /// The defining relation for φ degenerated (both coefficients vanish):
    /// every φ works and 0 is reported as representative.
    pub phi_family: bool,
}

fn pt_xy(t: &CouplingMatrix) -> Result<(f64, f64, f64, f64)> {
    if !t.symmetry_class().is_pt_symmetric() {
        return Err(Error::NotPTSymmetric);
    }
    Ok((t.a.re, t.b.im, t.c.im, t.d.re))
}

/// Solve `2(b − c)cos φ = i(4 + det T)sin φ` for the metric angle.
///
/// With `b = ix`, `c = iy` this is `2(x − y)cos φ = (4 + det T)sin φ`, so
/// `φ = atan2(2(x − y), 4 + det T)` folded to `[0, π)`. Returns
/// `(φ, phi_family)`.
pub fn solve_phi(t: &CouplingMatrix) -> Result<(f64, bool)> {
    let (a, x, y, d) = pt_xy(t)?;
    let det = a * d + x * y;
    let num = 2.0 * (x - y);
    let s = 4.0 + det;
    if num.abs() <= 1e-12 * (1.0 + x.abs() + y.abs()) && s.abs() <= 1e-12 * (4.0 + det.abs()) {
        return Ok((0.0, true));
    }
    Ok((f64::atan2(num, s).rem_euclid(std::f64::consts::PI), false))
}

/// Residual of the φ-equation; vanishes at a valid angle.
pub fn phi_residual(t: &CouplingMatrix, phi: f64) -> f64 {
    (2.0 * (t.b - t.c) * phi.cos() - I * (4.0 + t.det()) * phi.sin()).norm()
}

/// Solve the scalar similarity equation for χ:
/// `tanh χ = −(x + y)/W` with `W = ½(det T + 4)cos φ + (x − y)sin φ`,
/// solvable iff `W² > (x + y)²` — equivalently `D > 0`.
pub fn solve_chi(t: &CouplingMatrix, phi: f64) -> Result<Option<f64>> {
    let (a, x, y, d) = pt_xy(t)?;
    let det = a * d + x * y;
    let w = 0.5 * (det + 4.0) * phi.cos() + (x - y) * phi.sin();
    if (x + y).abs() < w.abs() {
        Ok(Some((-(x + y) / w).atanh()))
    } else {
        Ok(None)
    }
}

/// Convenience: φ and χ together.
pub fn solve_metric(t: &CouplingMatrix) -> Result<MetricSpec> {
    let (phi, phi_family) = solve_phi(t)?;
    let chi = solve_chi(t, phi)?;
    Ok(MetricSpec { phi, chi, phi_family })
}

type Mat2 = [[Complex64; 2]; 2];

fn mat2(t: &CouplingMatrix) -> Mat2 {
    [[t.a, t.b], [t.c, t.d]]
}

fn conj_t(m: &Mat2) -> Mat2 {
    [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]]
}

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

fn lin2(alpha: Complex64, a: &Mat2, beta: Complex64, b: &Mat2) -> Mat2 {
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = alpha * a[i][j] + beta * b[i][j];
        }
    }
    r
}

const SIGMA1: Mat2 = [
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
];
const SIGMA3: Mat2 = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
];

/// Max-entry modulus of
/// `cosh χ (T − T̄ᵗ) + sinh χ [ (i/2)cos φ (T̄ᵗσ₁T + 4σ₁) + sin φ (σ₃T − T̄ᵗσ₃) ]`.
///
/// Vanishes exactly when `(φ, χ)` realizes the mapping of the operator
/// domain onto the adjoint domain, i.e. when `e^Q` conjugates the operator
/// to its adjoint.
pub fn metric_identity_residual(t: &CouplingMatrix, phi: f64, chi: f64) -> f64 {
    let tm = mat2(t);
    let tc = conj_t(&tm);
    let diff = lin2(1.0.into(), &tm, (-1.0).into(), &tc);
    let term1 = lin2(1.0.into(), &mul2(&mul2(&tc, &SIGMA1), &tm), 4.0.into(), &SIGMA1);
    let term2 = lin2(1.0.into(), &mul2(&SIGMA3, &tm), (-1.0).into(), &mul2(&tc, &SIGMA3));
    let inner = lin2(0.5 * I * phi.cos(), &term1, phi.sin().into(), &term2);
    let resid = lin2(chi.cosh().into(), &diff, chi.sinh().into(), &inner);
    resid.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Why a PT operator fails to be similar to a self-adjoint one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotSimilarReason {
    SpectralSingularity,
    ExceptionalPoint,
    ComplexEigenvalues,
    WholePlane,
}

/// Outcome of the Krein-space similarity analysis for PT matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KreinSimilarity {
    /// Similar to a self-adjoint operator. `chi` is present exactly in the
    /// constructive branch `D > 0`; in the remaining similar cells
    /// (`D ≤ 0`, `K < 0`) the similarity holds through resolvent bounds and
    /// no metric parameter is emitted.
    Similar { phi: f64, chi: Option<f64>, phi_family: bool },
    NotSimilar { reason: NotSimilarReason },
}

/// Decide similarity for a PT matrix. The PT decision table is total, so
/// `Undecided` never occurs here; non-PT input is an error.
pub fn similarity_via_krein(t: &CouplingMatrix) -> Result<KreinSimilarity> {
    if !t.symmetry_class().is_pt_symmetric() {
        return Err(Error::NotPTSymmetric);
    }
    let rep = classify(t);
    if rep.spectrum_is_whole_plane {
        return Ok(KreinSimilarity::NotSimilar { reason: NotSimilarReason::WholePlane });
    }
    if rep.has_singularity() {
        return Ok(KreinSimilarity::NotSimilar { reason: NotSimilarReason::SpectralSingularity });
    }
    if rep.has_exceptional_point() {
        return Ok(KreinSimilarity::NotSimilar { reason: NotSimilarReason::ExceptionalPoint });
    }
    if !rep.spectrum_is_real() {
        return Ok(KreinSimilarity::NotSimilar { reason: NotSimilarReason::ComplexEigenvalues });
    }
    let spec = solve_metric(t)?;
    Ok(KreinSimilarity::Similar { phi: spec.phi, chi: spec.chi, phi_family: spec.phi_family })
}

/// Whether the operator admits an interpretation as a self-adjoint operator
/// in some Krein space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KreinRepresentability {
    /// Already self-adjoint in `L²(ℝ)` (J = I works).
    SelfAdjointHilbert,
    /// PT-symmetric: self-adjoint in `(L², [·,·]_{P_φ})`.
    PtMetric { phi: f64, phi_family: bool },
    /// The eigenvalue set is not symmetric under conjugation, which rules
    /// out any Krein-space self-adjointness.
    NotRepresentable,
    /// Outside the decidable cases (e.g. purely imaginary δ/δ′ couplings,
    /// where the question is open).
    Unknown,
}

pub fn krein_representability(t: &CouplingMatrix) -> KreinRepresentability {
    let sym = t.symmetry_class();
    if sym.is_self_adjoint() {
        return KreinRepresentability::SelfAdjointHilbert;
    }
    if sym.is_pt_symmetric() {
        let (phi, phi_family) = solve_phi(t).expect("PT checked");
        return KreinRepresentability::PtMetric { phi, phi_family };
    }
    let rep = classify(t);
    let conj_symmetric = rep.eigenvalues.iter().all(|e| {
        rep.eigenvalues
            .iter()
            .any(|e2| (e2.z - e.z.conj()).norm() <= 1e-10 * (1.0 + e.z.norm()))
    });
    if !conj_symmetric {
        KreinRepresentability::NotRepresentable
    } else {
        KreinRepresentability::Unknown
    }
}
