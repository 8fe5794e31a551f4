//! Cross-check closed-form eigenvalues against the finite-difference box
//! discretization, with Richardson-extrapolated error bars.
//!
//! Run:
//!   cargo run -p pointspec --example fd_crosscheck

use num_complex::Complex64 as C;
use pointspec::coupling::CouplingMatrix;
use pointspec::fd::{compare, DiscretizationConfig};

fn main() {
    let fixtures: Vec<(&str, CouplingMatrix)> = vec![
        ("δ well a = -2", CouplingMatrix::real(-2.0, 0.0, 0.0, 0.0)),
        ("δ well a = -4", CouplingMatrix::real(-4.0, 0.0, 0.0, 0.0)),
        ("δ′ well d = 2", CouplingMatrix::real(0.0, 0.0, 0.0, 2.0)),
        ("PT pair (-2, i√2, i√2, 1)", CouplingMatrix::pt(-2.0, 2f64.sqrt(), 2f64.sqrt(), 1.0)),
        ("self-adjoint (0, 2+i, 2-i, 3)", CouplingMatrix::new(C::new(0.0, 0.0), C::new(2.0, 1.0), C::new(2.0, -1.0), C::new(3.0, 0.0))),
    ];
    let cfg = DiscretizationConfig::default(); // L = 30, N = 3000
    println!(
        "box [-{l}, {l}], N = {n} points per half-line (refined solve at 2N):\n",
        l = cfg.l,
        n = cfg.n
    );
    println!(
        "{:<28} {:>24} {:>11} {:>11} {:>7}",
        "operator", "closed-form z", "err(N)", "err(2N)", "rate"
    );
    for (name, t) in &fixtures {
        let rep = compare(t, &cfg).expect("comparison runs");
        for e in &rep.entries {
            println!(
                "{:<28} {:>24} {:>11.3e} {:>11.3e} {:>7.2} {}",
                name,
                format!("{:.6}", e.z_closed),
                e.abs_err,
                e.abs_err_refined,
                e.abs_err / e.abs_err_refined,
                if e.disagree { "DISAGREE" } else { "" }
            );
        }
        for tau in &rep.skipped {
            println!("{name:<28} skipped τ = {tau:.4} (too shallow for the box)");
        }
    }
    println!("\nsecond-order interface stencils: the error rate sits at ≈ 4 per mesh halving.");
}
