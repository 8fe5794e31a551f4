//! The PT decision table: nine (sign D, sign K) cells, one fixture each.
//!
//! Run:
//!   cargo run -p pointspec --example pt_phase_table

use pointspec::coupling::CouplingMatrix;
use pointspec::spectrum::{classify, pt_cell, pt_invariants};

fn main() {
    let x_ep = (6.0f64 - 32.0f64.sqrt()).sqrt();
    let fixtures: Vec<(&str, CouplingMatrix)> = vec![
        ("D>0, K>0", CouplingMatrix::pt(-0.5, 1.0, 1.0, 1.0)),
        ("D>0, K=0", CouplingMatrix::pt(0.0, 1.0, 1.0, 0.0)),
        ("D>0, K<0", CouplingMatrix::pt(0.5, 1.0, 1.0, -1.0)),
        ("D=0, K>0", CouplingMatrix::pt(-2.0, x_ep, x_ep, 1.0)),
        ("D=0, K=0 (d≠0)", CouplingMatrix::pt(0.0, 2.0, 2.0, 1.0)),
        ("D=0, K=0 (d=0, a≠0)", CouplingMatrix::pt(1.0, 2.0, 2.0, 0.0)),
        ("D=0, K=0 (a=d=0)", CouplingMatrix::pt(0.0, 2.0, 2.0, 0.0)),
        ("D=0, K<0", CouplingMatrix::real(2.0, 0.0, 0.0, -2.0)),
        ("D<0, K>0", CouplingMatrix::pt(5.0, 4.0, 3.0, -1.0)),
        ("D<0, K=0", CouplingMatrix::pt(-5.0, 3.0, 3.0, 1.0)),
        ("D<0, K<0", CouplingMatrix::pt(6.0, 3.0, 3.0, -1.0)),
    ];
    println!("{:<22} {:>9} {:>7}  {:<20} spectrum", "cell", "D", "K", "table label");
    for (name, t) in &fixtures {
        let (d, k) = pt_invariants(t).unwrap();
        let cell = pt_cell(t).unwrap();
        let rep = classify(t);
        let spectrum = if rep.spectrum_is_whole_plane {
            "σ = ℂ".to_string()
        } else if let Some(s) = rep.singularities.first() {
            format!("{s:?}")
        } else if !rep.exceptional_points.is_empty() {
            format!("exceptional at {}", rep.exceptional_points[0])
        } else if rep.eigenvalues.is_empty() {
            "purely continuous".to_string()
        } else {
            rep.eigenvalues
                .iter()
                .map(|e| format!("z = {:.4}", e.z))
                .collect::<Vec<_>>()
                .join(", ")
        };
        println!("{name:<22} {d:>9.3} {k:>7.3}  {:<20} {spectrum}", cell.label());
    }
}
