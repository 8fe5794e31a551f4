//! The coupling matrix of the zero-range potential and its symmetry classes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Absolute tolerance for "entry is real"/"entry is imaginary" tests.
/// Inputs are user-provided exact couplings, not noisy data.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// The 2×2 complex matrix `T = (a b; c d)` of δ/δ′ couplings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingMatrix {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

/// Symmetry class of the potential: self-adjoint requires `a, d ∈ ℝ`,
/// `c = b̄`; PT-symmetric requires `a, d ∈ ℝ`, `b, c ∈ iℝ`. Both hold
/// exactly when `b = −c ∈ iℝ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryClass {
    SelfAdjoint,
    PTSymmetric,
    Both,
    Neither,
}

impl SymmetryClass {
    pub fn is_self_adjoint(self) -> bool {
        matches!(self, SymmetryClass::SelfAdjoint | SymmetryClass::Both)
    }

    pub fn is_pt_symmetric(self) -> bool {
        matches!(self, SymmetryClass::PTSymmetric | SymmetryClass::Both)
    }
}

impl CouplingMatrix {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        let t = CouplingMatrix { a, b, c, d };
        debug_assert!(t.is_finite(), "coupling matrix entries must be finite");
        t
    }

    /// Matrix with real entries.
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// The PT family at fixed real `a`, `d`: `b = ix`, `c = iy`.
    pub fn pt(a: f64, x: f64, y: f64, d: f64) -> Self {
        Self::new(a.into(), Complex64::new(0.0, x), Complex64::new(0.0, y), d.into())
    }

    /// δ-potential `T = (a 0; 0 0)`.
    pub fn delta(a: Complex64) -> Self {
        Self::new(a, 0.0.into(), 0.0.into(), 0.0.into())
    }

    /// δ′-potential `T = (0 0; 0 d)`.
    pub fn delta_prime(d: Complex64) -> Self {
        Self::new(0.0.into(), 0.0.into(), 0.0.into(), d)
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `det T = ad − bc`.
    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// The conjugate transpose; the adjoint operator is governed by this matrix.
    pub fn conj_transpose(&self) -> CouplingMatrix {
        CouplingMatrix {
            a: self.a.conj(),
            b: self.c.conj(),
            c: self.b.conj(),
            d: self.d.conj(),
        }
    }

    /// Characteristic polynomial `p_T(τ) = 2dτ² + i(det T − 4)τ + 2a`.
    ///
    /// Roots in ℂ₊ are eigenvalues `z = τ²`; real roots are spectral
    /// singularities.
    pub fn char_poly(&self, tau: Complex64) -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        2.0 * self.d * tau * tau + i * (self.det() - 4.0) * tau + 2.0 * self.a
    }

    /// Natural magnitude scale of `p_T` at `τ`, used for relative tolerances.
    pub fn char_poly_scale(&self, tau: Complex64) -> f64 {
        let t = tau.norm();
        1.0 + 2.0 * self.d.norm() * t * t + (self.det() - 4.0).norm() * t + 2.0 * self.a.norm()
    }

    pub fn symmetry_class(&self) -> SymmetryClass {
        let real = |z: Complex64| z.im.abs() <= SYMMETRY_TOL;
        let imag = |z: Complex64| z.re.abs() <= SYMMETRY_TOL;
        let diag_real = real(self.a) && real(self.d);
        let self_adjoint = diag_real && (self.c - self.b.conj()).norm() <= SYMMETRY_TOL;
        let pt = diag_real && imag(self.b) && imag(self.c);
        match (self_adjoint, pt) {
            (true, true) => SymmetryClass::Both,
            (true, false) => SymmetryClass::SelfAdjoint,
            (false, true) => SymmetryClass::PTSymmetric,
            (false, false) => SymmetryClass::Neither,
        }
    }
}

impl std::fmt::Display for CouplingMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(a={}, b={}, c={}, d={})", self.a, self.b, self.c, self.d)
    }
}
