//! Construct the Krein metric for PT operators: the angle φ, the hyperbolic
//! parameter χ of `e^Q = cosh χ · I + sinh χ · iRP_φ`, and the matrix
//! identity that certifies the pair.
//!
//! Run:
//!   cargo run -p pointspec --example krein_metric

use num_complex::Complex64 as C;
use pointspec::coupling::CouplingMatrix;
use pointspec::expsum::TwoSidedExponentialSum;
use pointspec::krein::{
    metric_identity_residual, similarity_via_krein, solve_metric, FundamentalSymmetry,
    MetricOperator,
};

fn main() {
    let cases: Vec<(&str, CouplingMatrix)> = vec![
        ("D > 0, constructive", CouplingMatrix::pt(0.0, 1.0, 1.0, 0.0)),
        ("D > 0, K > 0", CouplingMatrix::pt(-0.5, 1.0, 1.0, 1.0)),
        ("self-adjoint member (b = -c)", CouplingMatrix::pt(1.0, 0.5, -0.5, 2.0)),
        ("D < 0, K = 0 (singular)", CouplingMatrix::pt(-5.0, 3.0, 3.0, 1.0)),
        ("degenerate φ-equation", CouplingMatrix::pt(0.0, 2.0, -2.0, 0.0)),
    ];
    for (name, t) in &cases {
        let spec = solve_metric(t).unwrap();
        print!("{name:<28} T = {t}: φ = {:.6}", spec.phi);
        if spec.phi_family {
            print!(" (every φ works; 0 is the representative)");
        }
        match spec.chi {
            Some(chi) => {
                let resid = metric_identity_residual(t, spec.phi, chi);
                println!(", χ = {chi:.6} (tanh χ = {:.6}), identity residual {resid:.2e}", chi.tanh());
                let perturbed = metric_identity_residual(t, spec.phi, chi + 0.1);
                println!("{:<28} perturbing χ by 0.1 lifts the residual to {perturbed:.3e}", "");
            }
            None => println!(", no real χ (D ≤ 0: not similar through this construction)"),
        }
        println!("{:<28} similarity_via_krein: {:?}", "", similarity_via_krein(t).unwrap());
        println!();
    }

    // the metric operator acting on a concrete function
    let t = CouplingMatrix::pt(0.0, 1.0, 1.0, 0.0);
    let spec = solve_metric(&t).unwrap();
    let eq = MetricOperator { phi: spec.phi, chi: spec.chi.unwrap() };
    let f = TwoSidedExponentialSum::h1(C::new(0.0, 1.0));
    let g = eq.apply(&f);
    println!("e^Q applied to h₁(τ=i), sampled:");
    for &x in &[-1.0, -0.25, 0.25, 1.0] {
        println!("  f({x:+.2}) = {:.6}   (e^Q f)({x:+.2}) = {:.6}", f.evaluate(x), g.evaluate(x));
    }
    // P, R anticommute; both square to the identity
    let pr = FundamentalSymmetry::P.apply(&FundamentalSymmetry::R.apply(&f));
    let rp = FundamentalSymmetry::R.apply(&FundamentalSymmetry::P.apply(&f));
    println!("\nmax |PR f + RP f| coefficient: {:.2e} (anticommutation)", pr.add(&rp).max_coeff_after_merge());
}
