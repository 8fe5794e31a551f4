//! Phase diagram of the δ-potential with complex coupling: an 81×81 scan of
//! the a-plane written to `delta_phase_diagram.csv`.
//!
//! Run:
//!   cargo run -p pointspec --example phase_diagram

use std::collections::BTreeMap;
use std::fs::File;

use pointspec::scan::{run_scan, write_csv, Plane, ScanSpec};

fn main() {
    let spec = ScanSpec {
        plane: Plane::ComplexA,
        range_x: (-2.0, 2.0),
        range_y: (-2.0, 2.0),
        res_x: 81,
        res_y: 81,
    };
    let records = run_scan(&spec).expect("scan");

    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    for r in &records {
        *counts.entry(r.label.as_str()).or_default() += 1;
    }
    println!("δ-potential phase diagram over Re a, Im a ∈ [-2, 2], {} points:", records.len());
    for (label, n) in &counts {
        println!("  {label:<20} {n:>6}");
    }
    println!();
    println!("expected geometry: non-real eigenvalues fill the open left half-plane,");
    println!("similarity the open right half-plane, the real axis is self-adjoint and");
    println!("the imaginary axis (minus the origin) carries spectral singularities.");

    let path = "delta_phase_diagram.csv";
    let mut file = File::create(path).expect("create CSV");
    write_csv(&records, &mut file).expect("write CSV");
    println!("\nwrote {path}");
}
