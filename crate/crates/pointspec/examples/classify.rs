//! Classify a handful of zero-range operators and print their spectra.
//!
//! Run:
//!   cargo run -p pointspec --example classify

use num_complex::Complex64 as C;
use pointspec::coupling::CouplingMatrix;
use pointspec::report;
use pointspec::spectrum::classify;

fn main() {
    let cases: Vec<(&str, CouplingMatrix)> = vec![
        ("free operator", CouplingMatrix::real(0.0, 0.0, 0.0, 0.0)),
        ("δ well, a = -2", CouplingMatrix::real(-2.0, 0.0, 0.0, 0.0)),
        ("δ with imaginary coupling, a = 2i", CouplingMatrix::delta(C::new(0.0, 2.0))),
        ("δ with complex coupling, a = -2+i", CouplingMatrix::delta(C::new(-2.0, 1.0))),
        ("δ′ well, d = 2", CouplingMatrix::real(0.0, 0.0, 0.0, 2.0)),
        ("PT complex pair, (5, 4i, 3i, -1)", CouplingMatrix::pt(5.0, 4.0, 3.0, -1.0)),
        ("PT, σ = ℂ, (0, 2i, 2i, 0)", CouplingMatrix::pt(0.0, 2.0, 2.0, 0.0)),
    ];
    for (name, t) in &cases {
        let rep = classify(t);
        println!("── {name}  T = {t}");
        println!("   symmetry: {:?}, continuous spectrum {}", rep.symmetry, rep.continuous_spectrum);
        if rep.spectrum_is_whole_plane {
            println!("   the spectrum fills the whole complex plane");
        }
        for e in &rep.eigenvalues {
            println!("   eigenvalue z = {} (τ = {}, multiplicity {})", e.z, e.tau, e.multiplicity);
        }
        for s in &rep.singularities {
            println!("   spectral singularity: {s:?}");
        }
        for z in &rep.exceptional_points {
            println!("   exceptional point at z = {z}");
        }
        if rep.borderline {
            println!("   (borderline: a root sits on the classification boundary)");
        }
        println!();
    }

    // the full machine-readable report for one operator
    let t = CouplingMatrix::pt(0.0, 1.0, 1.0, 0.0);
    println!("full JSON report for T = {t}:");
    println!("{}", serde_json::to_string_pretty(&report::build(&t)).unwrap());
}
