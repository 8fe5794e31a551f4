//! Parameter-plane scans: classify a grid of coupling matrices and emit a
//! deterministic CSV phase diagram.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coupling::CouplingMatrix;
use crate::spectrum::{classify, pt_cell, pt_invariants, solve_char_poly, PtCell, Singularity};
use crate::{Error, Result};

/// Which 2-parameter family the grid walks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Plane {
    /// δ-potential, `a = x + iy`.
    ComplexA,
    /// δ′-potential, `d = x + iy`.
    ComplexD,
    /// PT family `b = ix`, `c = iy` at fixed real `a`, `d`.
    Xy { a: f64, d: f64 },
    /// Real sweep of two chosen entries on top of a base matrix.
    Custom { entry_x: Entry, entry_y: Entry, base: CouplingMatrix },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entry {
    A,
    B,
    C,
    D,
}

/// Grid specification: ranges and resolutions per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub plane: Plane,
    pub range_x: (f64, f64),
    pub range_y: (f64, f64),
    pub res_x: usize,
    pub res_y: usize,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = self.range_x.0.is_finite()
            && self.range_x.1.is_finite()
            && self.range_y.0.is_finite()
            && self.range_y.1.is_finite();
        if !finite {
            return Err(Error::Parse { what: "scan ranges".into(), message: "ranges must be finite".into() });
        }
        if self.res_x < 2 || self.res_y < 2 {
            return Err(Error::Parse { what: "scan resolution".into(), message: "need at least 2 points per axis".into() });
        }
        Ok(())
    }

    pub fn matrix_at(&self, x: f64, y: f64) -> CouplingMatrix {
        match self.plane {
            Plane::ComplexA => CouplingMatrix::delta(num_complex::Complex64::new(x, y)),
            Plane::ComplexD => CouplingMatrix::delta_prime(num_complex::Complex64::new(x, y)),
            Plane::Xy { a, d } => CouplingMatrix::pt(a, x, y, d),
            Plane::Custom { entry_x, entry_y, base } => {
                let mut t = base;
                for (e, v) in [(entry_x, x), (entry_y, y)] {
                    match e {
                        Entry::A => t.a = v.into(),
                        Entry::B => t.b = v.into(),
                        Entry::C => t.c = v.into(),
                        Entry::D => t.d = v.into(),
                    }
                }
                t
            }
        }
    }
}

/// Classification label of one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanLabel {
    SelfAdjoint,
    Similar,
    ComplexEigenvalues,
    NonzeroSingularity,
    SingularityZero,
    SingularityInf,
    Exceptional,
    WholePlane,
    Borderline,
}

impl ScanLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanLabel::SelfAdjoint => "self-adjoint",
            ScanLabel::Similar => "similar",
            ScanLabel::ComplexEigenvalues => "complex-eigenvalues",
            ScanLabel::NonzeroSingularity => "nonzero-singularity",
            ScanLabel::SingularityZero => "singularity-0",
            ScanLabel::SingularityInf => "singularity-inf",
            ScanLabel::Exceptional => "exceptional",
            ScanLabel::WholePlane => "whole-plane",
            ScanLabel::Borderline => "borderline",
        }
    }
}

fn cell_label(cell: PtCell) -> ScanLabel {
    match cell {
        PtCell::Similarity => ScanLabel::Similar,
        PtCell::ExceptionalPoint => ScanLabel::Exceptional,
        PtCell::SingularityAtZero => ScanLabel::SingularityZero,
        PtCell::SingularityAtInfinity => ScanLabel::SingularityInf,
        PtCell::WholePlane => ScanLabel::WholePlane,
        PtCell::ComplexEigenvaluePair => ScanLabel::ComplexEigenvalues,
        PtCell::NonzeroSingularity => ScanLabel::NonzeroSingularity,
    }
}

/// Borderline band: a value is "exactly on" a decision locus below the dust
/// floor and "ambiguous" between the floor and the classification tolerance.
fn ambiguous(v: f64, tol: f64, floor: f64) -> bool {
    v.abs() > floor && v.abs() <= tol
}

/// Classify one grid matrix into a scan label.
///
/// PT points go through the (D, K)-sign decision table (self-adjoint points
/// keep their own label; sign values inside the ambiguity band are reported
/// as borderline instead of tie-broken). Non-PT points are labeled from the
/// spectral classification; the residual class — no eigenvalues off the real
/// axis, no singularities — is `similar`, which is exact for the δ/δ′
/// families.
pub fn scan_label(t: &CouplingMatrix) -> ScanLabel {
    let sym = t.symmetry_class();
    if sym.is_pt_symmetric() {
        if sym.is_self_adjoint() {
            return ScanLabel::SelfAdjoint;
        }
        let (dd, k) = pt_invariants(t).expect("PT checked");
        let scale_d = 1.0 + dd.abs();
        let scale_k = 1.0 + k.abs();
        if ambiguous(dd, 1e-12 * scale_d, 1e-14 * scale_d) || ambiguous(k, 1e-12 * scale_k, 1e-14 * scale_k) {
            return ScanLabel::Borderline;
        }
        return cell_label(pt_cell(t).expect("PT checked"));
    }
    let roots = solve_char_poly(t);
    for &(tau, _) in &roots.roots {
        let tol = 1e-10 * (1.0 + tau.norm());
        let floor = 1e-14 * (1.0 + tau.norm());
        if ambiguous(tau.im, tol, floor) || ambiguous(tau.norm(), tol, floor) {
            return ScanLabel::Borderline;
        }
    }
    let rep = classify(t);
    if rep.spectrum_is_whole_plane {
        return ScanLabel::WholePlane;
    }
    if let Some(s) = rep.singularities.first() {
        return match s {
            Singularity::Nonzero { .. } => ScanLabel::NonzeroSingularity,
            Singularity::AtZero => ScanLabel::SingularityZero,
            Singularity::AtInfinity => ScanLabel::SingularityInf,
        };
    }
    if rep.has_exceptional_point() {
        return ScanLabel::Exceptional;
    }
    if !rep.spectrum_is_real() {
        return ScanLabel::ComplexEigenvalues;
    }
    if sym.is_self_adjoint() {
        return ScanLabel::SelfAdjoint;
    }
    ScanLabel::Similar
}

/// One output record of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub x: f64,
    pub y: f64,
    /// `D` and `K`, present only at PT grid points.
    pub d: Option<f64>,
    pub k: Option<f64>,
    pub label: ScanLabel,
}

/// Evaluate the grid (row-major: y outer, x inner, both ascending); grid
/// points are processed in parallel and assembled in deterministic order.
pub fn run_scan(spec: &ScanSpec) -> Result<Vec<ScanRecord>> {
    spec.validate()?;
    let xs: Vec<f64> = grid_axis(spec.range_x, spec.res_x);
    let ys: Vec<f64> = grid_axis(spec.range_y, spec.res_y);
    let points: Vec<(f64, f64)> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| (x, y))).collect();
    Ok(points
        .par_iter()
        .map(|&(x, y)| {
            let t = spec.matrix_at(x, y);
            let (d, k) = match pt_invariants(&t) {
                Ok((d, k)) => (Some(d), Some(k)),
                Err(_) => (None, None),
            };
            ScanRecord { x, y, d, k, label: scan_label(&t) }
        })
        .collect())
}

fn grid_axis((lo, hi): (f64, f64), res: usize) -> Vec<f64> {
    (0..res)
        .map(|i| lo + (hi - lo) * i as f64 / (res - 1) as f64)
        .collect()
}

/// CSV with header `x,y,D,K,label`; floats use the shortest round-trip
/// representation so identical specs produce byte-identical files.
pub fn write_csv<W: Write + ?Sized>(records: &[ScanRecord], out: &mut W) -> std::io::Result<()> {
    writeln!(out, "x,y,D,K,label")?;
    for r in records {
        let d = r.d.map(|v| v.to_string()).unwrap_or_default();
        let k = r.k.map(|v| v.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{},{},{}", r.x, r.y, d, k, r.label.as_str())?;
    }
    Ok(())
}
