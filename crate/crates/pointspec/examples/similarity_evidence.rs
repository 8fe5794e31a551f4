//! Similarity to a self-adjoint operator: closed-form verdicts where they
//! exist, and the numerical evidence (ε-ladder line integrals, supremum
//! scans) either way.
//!
//! Run:
//!   cargo run -p pointspec --example similarity_evidence

use num_complex::Complex64 as C;
use pointspec::coupling::CouplingMatrix;
use pointspec::resolvent::{
    default_test_inputs, integral_criterion, similarity_verdict, sup_estimate,
    BoundednessFunction, DEFAULT_EPS_LADDER,
};

fn main() {
    // verdicts across the menagerie
    let cases: Vec<(&str, CouplingMatrix)> = vec![
        ("δ, Re a > 0 (similar)", CouplingMatrix::real(1.0, 0.0, 0.0, 0.0)),
        ("δ, a complex, Re a > 0", CouplingMatrix::delta(C::new(1.0, 0.5))),
        ("δ′, Re d < 0 (similar)", CouplingMatrix::real(0.0, 0.0, 0.0, -1.0)),
        ("δ, a = 2i (singular)", CouplingMatrix::delta(C::new(0.0, 2.0))),
        ("δ′, d = 2i (singular)", CouplingMatrix::delta_prime(C::new(0.0, 2.0))),
        ("PT, D > 0 (Krein metric)", CouplingMatrix::pt(0.0, 1.0, 1.0, 0.0)),
        ("PT complex pair", CouplingMatrix::pt(5.0, 4.0, 3.0, -1.0)),
        ("non-PT, real eigenvalue (evidence)", CouplingMatrix::new(C::new(-2.0, 0.0), C::new(0.5, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0))),
    ];
    for (name, t) in &cases {
        println!("{name:<36} {:?}", similarity_verdict(t));
    }

    // the ε-ladder: bounded for a similar operator, ~1/ε blow-up at a
    // spectral singularity
    println!("\nε-ladder of ε·∫‖[(A_T−z)⁻¹ − (A₀−z)⁻¹]g‖² dξ along z = ξ + iε:");
    for (name, t) in [
        ("similar: a = 1", CouplingMatrix::real(1.0, 0.0, 0.0, 0.0)),
        ("singular: a = 2i", CouplingMatrix::delta(C::new(0.0, 2.0))),
    ] {
        let tbl = integral_criterion(&t, &DEFAULT_EPS_LADDER, &default_test_inputs()).unwrap();
        print!("{name:<18}");
        for row in tbl.rows.iter().filter(|r| r.input_index == 0) {
            print!("  ε={}: {:.4e}", row.eps, row.value);
        }
        println!();
    }

    // supremum scans of the prefactored functions over ℂ₊₊
    println!("\nΦ₊ supremum scans (divergence marks resolvent unboundedness):");
    for (name, t) in [
        ("a = 1", CouplingMatrix::real(1.0, 0.0, 0.0, 0.0)),
        ("a = -2 (bound state)", CouplingMatrix::real(-2.0, 0.0, 0.0, 0.0)),
        ("a = 2i (singular)", CouplingMatrix::delta(C::new(0.0, 2.0))),
    ] {
        let s = sup_estimate(&t, BoundednessFunction::PhiPlus);
        println!(
            "  {name:<22} sup ≈ {:.4e} at τ ≈ {:.4}, diverging = {}",
            s.sup_value, s.arg_tau, s.diverging
        );
    }
}
