//! Machine-readable single-operator report.
//!
//! One JSON document per operator with everything the CLI knows: symmetry
//! class, roots of the characteristic polynomial, the spectral
//! classification, the PT decision-table cell, the Krein metric data and
//! the similarity verdict. Serialization round-trips exactly.

use serde::{Deserialize, Serialize};

use crate::coupling::{CouplingMatrix, SymmetryClass};
use crate::krein::{krein_representability, solve_metric, metric_identity_residual, KreinRepresentability};
use crate::resolvent::{similarity_verdict, SimilarityVerdict};
use crate::spectrum::{classify, pt_cell, solve_char_poly, Eigenvalue, PtCell, RootSet, Singularity};

/// Krein/Hilbert metric section of the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MetricReport {
    /// Self-adjoint in `L²(ℝ)` as is.
    Hilbert,
    /// PT metric `P_φ`, with `e^Q` data when the constructive branch exists.
    PtMetric {
        phi: f64,
        chi: Option<f64>,
        phi_family: bool,
        /// Residual of the defining matrix identity at `(φ, χ)`.
        identity_residual: Option<f64>,
    },
    /// No Krein-space interpretation exists (eigenvalues not symmetric
    /// under conjugation).
    NotRepresentable,
    /// Open problem: no decidable answer for this operator.
    Unknown,
}

/// Complete single-operator report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub symmetry: SymmetryClass,
    pub roots: RootSet,
    pub eigenvalues: Vec<Eigenvalue>,
    pub singularities: Vec<Singularity>,
    pub exceptional_points: Vec<num_complex::Complex64>,
    pub whole_plane: bool,
    pub borderline: bool,
    pub pt_cell: Option<PtCell>,
    pub metric: MetricReport,
    pub verdict: SimilarityVerdict,
}

/// Build the full report for one coupling matrix.
pub fn build(t: &CouplingMatrix) -> Report {
    let spectral = classify(t);
    let metric = match krein_representability(t) {
        KreinRepresentability::SelfAdjointHilbert => MetricReport::Hilbert,
        KreinRepresentability::PtMetric { .. } => {
            let spec = solve_metric(t).expect("PT checked");
            let identity_residual = spec.chi.map(|chi| metric_identity_residual(t, spec.phi, chi));
            MetricReport::PtMetric {
                phi: spec.phi,
                chi: spec.chi,
                phi_family: spec.phi_family,
                identity_residual,
            }
        }
        KreinRepresentability::NotRepresentable => MetricReport::NotRepresentable,
        KreinRepresentability::Unknown => MetricReport::Unknown,
    };
    Report {
        symmetry: spectral.symmetry,
        roots: solve_char_poly(t),
        eigenvalues: spectral.eigenvalues.clone(),
        singularities: spectral.singularities.clone(),
        exceptional_points: spectral.exceptional_points.clone(),
        whole_plane: spectral.spectrum_is_whole_plane,
        borderline: spectral.borderline,
        pt_cell: pt_cell(t).ok(),
        metric,
        verdict: similarity_verdict(t),
    }
}
