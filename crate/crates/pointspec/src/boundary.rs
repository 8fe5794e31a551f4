//! Boundary traces at the origin and the interface residual.
//!
//! The interface condition defining the operator is `T·Γ₀f = Γ₁f` with
//!
//! ```text
//! Γ₀f = ½( f(+0) + f(−0),  −f′(+0) − f′(−0) )
//! Γ₁f = ( f′(+0) − f′(−0),  f(+0) − f(−0) )
//! ```

use num_complex::Complex64;

use crate::coupling::CouplingMatrix;

/// One-sided limits of a function and its derivative at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryTraces {
    pub f_plus: Complex64,
    pub f_minus: Complex64,
    pub df_plus: Complex64,
    pub df_minus: Complex64,
}

impl BoundaryTraces {
    pub const ZERO: BoundaryTraces = BoundaryTraces {
        f_plus: Complex64::new(0.0, 0.0),
        f_minus: Complex64::new(0.0, 0.0),
        df_plus: Complex64::new(0.0, 0.0),
        df_minus: Complex64::new(0.0, 0.0),
    };

    /// Γ₀f = ½(f(+0) + f(−0), −f′(+0) − f′(−0)).
    pub fn gamma0(&self) -> [Complex64; 2] {
        [
            0.5 * (self.f_plus + self.f_minus),
            0.5 * (-self.df_plus - self.df_minus),
        ]
    }

    /// Γ₁f = (f′(+0) − f′(−0), f(+0) − f(−0)).
    pub fn gamma1(&self) -> [Complex64; 2] {
        [self.df_plus - self.df_minus, self.f_plus - self.f_minus]
    }
}

/// Euclidean norm of `T·Γ₀f − Γ₁f`; zero exactly when the traces satisfy the
/// interface condition of the operator.
pub fn boundary_residual(t: &CouplingMatrix, traces: &BoundaryTraces) -> f64 {
    let g0 = traces.gamma0();
    let g1 = traces.gamma1();
    let r0 = t.a * g0[0] + t.b * g0[1] - g1[0];
    let r1 = t.c * g0[0] + t.d * g0[1] - g1[1];
    (r0.norm_sqr() + r1.norm_sqr()).sqrt()
}
