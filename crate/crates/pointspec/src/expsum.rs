//! Exact piecewise-exponential functions on ℝ∖{0}.
//!
//! Every function this crate ever has to represent — eigenfunction
//! candidates, `h_{1τ}`/`h_{2τ}`, resolvent outputs, canonical test inputs —
//! is a finite sum `Σ pₖ e^{μₖ x}` on each half-line. Working with the term
//! lists keeps differentiation, boundary traces and L² norms exact; there is
//! no spatial discretization anywhere in the core.

use num_complex::Complex64;

use crate::boundary::BoundaryTraces;

/// A single `coeff · e^{exponent · x}` contribution on one half-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub coeff: Complex64,
    pub exponent: Complex64,
}

impl ExpTerm {
    pub fn new(coeff: Complex64, exponent: Complex64) -> Self {
        ExpTerm { coeff, exponent }
    }
}

/// `Σ pₖ e^{μₖ x}` for `x > 0` plus `Σ qₖ e^{νₖ x}` for `x < 0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TwoSidedExponentialSum {
    pub right_terms: Vec<ExpTerm>,
    pub left_terms: Vec<ExpTerm>,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

impl TwoSidedExponentialSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(right_terms: Vec<ExpTerm>, left_terms: Vec<ExpTerm>) -> Self {
        TwoSidedExponentialSum { right_terms, left_terms }
    }

    /// `h_{1τ}`: `e^{iτx}` for `x > 0`, `e^{−iτx}` for `x < 0` (even).
    pub fn h1(tau: Complex64) -> Self {
        TwoSidedExponentialSum {
            right_terms: vec![ExpTerm::new(1.0.into(), I * tau)],
            left_terms: vec![ExpTerm::new(1.0.into(), -I * tau)],
        }
    }

    /// `h_{2τ}`: `−e^{iτx}` for `x > 0`, `e^{−iτx}` for `x < 0` (odd-like).
    pub fn h2(tau: Complex64) -> Self {
        TwoSidedExponentialSum {
            right_terms: vec![ExpTerm::new((-1.0).into(), I * tau)],
            left_terms: vec![ExpTerm::new(1.0.into(), -I * tau)],
        }
    }

    /// One-sided exponential on `x > 0`.
    pub fn one_sided_right(coeff: Complex64, exponent: Complex64) -> Self {
        TwoSidedExponentialSum {
            right_terms: vec![ExpTerm::new(coeff, exponent)],
            left_terms: vec![],
        }
    }

    /// One-sided exponential on `x < 0`.
    pub fn one_sided_left(coeff: Complex64, exponent: Complex64) -> Self {
        TwoSidedExponentialSum {
            right_terms: vec![],
            left_terms: vec![ExpTerm::new(coeff, exponent)],
        }
    }

    /// Canonical test input `g₊ = e^{−iτ̄x}` on `x > 0` (zero on `x < 0`).
    pub fn g_plus(tau: Complex64) -> Self {
        Self::one_sided_right(1.0.into(), -I * tau.conj())
    }

    /// Canonical test input `g₋ = e^{iτ̄x}` on `x < 0` (zero on `x > 0`).
    pub fn g_minus(tau: Complex64) -> Self {
        Self::one_sided_left(1.0.into(), I * tau.conj())
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        let terms = if x >= 0.0 { &self.right_terms } else { &self.left_terms };
        terms.iter().map(|t| t.coeff * (t.exponent * x).exp()).sum()
    }

    /// One-sided limits of the function and its derivative at 0, computed
    /// analytically from the term lists.
    pub fn traces(&self) -> BoundaryTraces {
        let sum = |ts: &[ExpTerm]| ts.iter().map(|t| t.coeff).sum::<Complex64>();
        let dsum = |ts: &[ExpTerm]| ts.iter().map(|t| t.coeff * t.exponent).sum::<Complex64>();
        BoundaryTraces {
            f_plus: sum(&self.right_terms),
            f_minus: sum(&self.left_terms),
            df_plus: dsum(&self.right_terms),
            df_minus: dsum(&self.left_terms),
        }
    }

    /// `true` iff `Re μₖ < 0` for all right terms and `Re νₖ > 0` for all
    /// left terms (then the function is in L²(ℝ)).
    pub fn is_square_integrable(&self) -> bool {
        self.right_terms.iter().all(|t| t.exponent.re < 0.0)
            && self.left_terms.iter().all(|t| t.exponent.re > 0.0)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let f = |ts: &[ExpTerm]| ts.iter().map(|t| ExpTerm::new(s * t.coeff, t.exponent)).collect();
        TwoSidedExponentialSum { right_terms: f(&self.right_terms), left_terms: f(&self.left_terms) }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut right = self.right_terms.clone();
        right.extend_from_slice(&other.right_terms);
        let mut left = self.left_terms.clone();
        left.extend_from_slice(&other.left_terms);
        TwoSidedExponentialSum { right_terms: right, left_terms: left }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale((-1.0).into()))
    }

    /// Second derivative: each term picks up a factor `μₖ²` (the term lists
    /// are closed under `−d²/dx²`).
    pub fn second_derivative(&self) -> Self {
        let f = |ts: &[ExpTerm]| {
            ts.iter()
                .map(|t| ExpTerm::new(t.coeff * t.exponent * t.exponent, t.exponent))
                .collect()
        };
        TwoSidedExponentialSum { right_terms: f(&self.right_terms), left_terms: f(&self.left_terms) }
    }

    /// `(−d²/dx² − τ²) f`, term by term.
    pub fn apply_helmholtz(&self, tau: Complex64) -> Self {
        let z = tau * tau;
        let f = |ts: &[ExpTerm]| {
            ts.iter()
                .map(|t| ExpTerm::new(t.coeff * (-t.exponent * t.exponent - z), t.exponent))
                .collect()
        };
        TwoSidedExponentialSum { right_terms: f(&self.right_terms), left_terms: f(&self.left_terms) }
    }

    /// Parity `P f(x) = f(−x)`: sides swap and exponents flip sign.
    pub fn reflect(&self) -> Self {
        let flip = |ts: &[ExpTerm]| ts.iter().map(|t| ExpTerm::new(t.coeff, -t.exponent)).collect();
        TwoSidedExponentialSum {
            right_terms: flip(&self.left_terms),
            left_terms: flip(&self.right_terms),
        }
    }

    /// `R f(x) = sign(x) f(x)`: right terms keep their sign, left terms flip.
    pub fn signum_mul(&self) -> Self {
        TwoSidedExponentialSum {
            right_terms: self.right_terms.clone(),
            left_terms: self.left_terms.iter().map(|t| ExpTerm::new(-t.coeff, t.exponent)).collect(),
        }
    }

    /// Complex conjugation `(T f)(x) = conj(f(x))`: conjugate coefficients
    /// and exponents (x is real).
    pub fn conj(&self) -> Self {
        let f = |ts: &[ExpTerm]| {
            ts.iter()
                .map(|t| ExpTerm::new(t.coeff.conj(), t.exponent.conj()))
                .collect()
        };
        TwoSidedExponentialSum { right_terms: f(&self.right_terms), left_terms: f(&self.left_terms) }
    }

    /// `e^{iφR} f`: multiply by `e^{iφ}` on `x > 0` and `e^{−iφ}` on `x < 0`.
    pub fn phase_by_sign(&self, phi: f64) -> Self {
        let e = Complex64::from_polar(1.0, phi);
        TwoSidedExponentialSum {
            right_terms: self.right_terms.iter().map(|t| ExpTerm::new(e * t.coeff, t.exponent)).collect(),
            left_terms: self
                .left_terms
                .iter()
                .map(|t| ExpTerm::new(t.coeff / e, t.exponent))
                .collect(),
        }
    }

    /// Merge terms with (numerically) equal exponents and drop negligible
    /// coefficients. `coeff_floor` is an absolute threshold.
    pub fn simplified(&self, coeff_floor: f64) -> Self {
        TwoSidedExponentialSum {
            right_terms: merge_terms(&self.right_terms, coeff_floor),
            left_terms: merge_terms(&self.left_terms, coeff_floor),
        }
    }

    /// Largest coefficient magnitude after merging equal exponents; the
    /// natural residual measure for "this term list is the zero function".
    pub fn max_coeff_after_merge(&self) -> f64 {
        let m = self.simplified(0.0);
        m.right_terms
            .iter()
            .chain(m.left_terms.iter())
            .map(|t| t.coeff.norm())
            .fold(0.0, f64::max)
    }

    /// ‖f‖²_{L²(ℝ)} in closed form. Requires square integrability.
    ///
    /// On the right: `∫₀^∞ e^{(μⱼ + μ̄ₖ)x} dx = −1/(μⱼ + μ̄ₖ)`; mirrored on
    /// the left.
    pub fn norm_sq(&self) -> f64 {
        self.inner(self).re
    }

    /// L² inner product `(f, g) = ∫ f(x) conj(g(x)) dx` in closed form.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for tj in &self.right_terms {
            for tk in &other.right_terms {
                let s = tj.exponent + tk.exponent.conj();
                acc += -tj.coeff * tk.coeff.conj() / s;
            }
        }
        for tj in &self.left_terms {
            for tk in &other.left_terms {
                let s = tj.exponent + tk.exponent.conj();
                acc += tj.coeff * tk.coeff.conj() / s;
            }
        }
        acc
    }
}

fn merge_terms(terms: &[ExpTerm], coeff_floor: f64) -> Vec<ExpTerm> {
    let mut merged: Vec<ExpTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        let tol = 1e-12 * (1.0 + t.exponent.norm());
        match merged.iter_mut().find(|m| (m.exponent - t.exponent).norm() <= tol) {
            Some(m) => m.coeff += t.coeff,
            None => merged.push(*t),
        }
    }
    merged.retain(|t| t.coeff.norm() > coeff_floor);
    merged
}
