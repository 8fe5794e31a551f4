//! Independent finite-difference spectral oracle.
//!
//! `−d²/dx²` is discretized on `[−L, L]` with Dirichlet walls and the
//! interface condition `TΓ₀f = Γ₁f` imposed at 0 through one-sided
//! second-order stencils. The two ghost values `f(±0)` are eliminated
//! against the interface equations, leaving a banded (kl = ku = 2)
//! eigenproblem on the interior points. Isolated discrete eigenvalues are
//! pulled out with shift-invert iteration (dense solves for small grids)
//! and compared against the closed-form predictions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::banded::{BandedLu, BandedMatrix};
use crate::coupling::CouplingMatrix;
use crate::spectrum::classify;
use crate::{Error, Result};

/// Box edge condition (the far walls at `x = ±L`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EdgeCondition {
    #[default]
    Dirichlet,
}

/// Box half-length, points per half-line, edge condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscretizationConfig {
    pub l: f64,
    pub n: usize,
    pub edge: EdgeCondition,
}

impl Default for DiscretizationConfig {
    fn default() -> Self {
        DiscretizationConfig { l: 30.0, n: 3000, edge: EdgeCondition::Dirichlet }
    }
}

impl DiscretizationConfig {
    pub fn new(l: f64, n: usize) -> Result<Self> {
        if l <= 0.0 || l.is_nan() {
            return Err(Error::Parse { what: "fd-L".into(), message: "box half-length must be positive".into() });
        }
        if n < 16 {
            return Err(Error::Parse { what: "fd-N".into(), message: "need at least 16 points per half-line".into() });
        }
        Ok(DiscretizationConfig { l, n, edge: EdgeCondition::Dirichlet })
    }

    pub fn mesh(&self) -> f64 {
        self.l / self.n as f64
    }

    fn refined(&self) -> Self {
        DiscretizationConfig { l: self.l, n: 2 * self.n, edge: self.edge }
    }
}

/// The discrete operator: banded interior Laplacian plus interface coupling.
#[derive(Debug, Clone)]
pub struct FdMatrix {
    pub band: BandedMatrix,
    pub h: f64,
    pub cfg: DiscretizationConfig,
}

/// Assemble the discrete operator for a coupling matrix.
///
/// Unknown ordering is spatial: left interior `−L+h … −h`, then right
/// interior `h … L−h`; `2(N−1)` unknowns in total. The ghost limits
/// `f(±0)` satisfy
///
/// ```text
/// G (f(+0), f(−0))ᵗ = H (v₁, v₂, w₁, w₂)ᵗ
/// ```
///
/// where `v₁, v₂` are the first right-interior values, `w₁, w₂` the last
/// left-interior values, and `G`, `H` come from substituting the one-sided
/// stencils `f′(+0) ≈ (−3f(+0) + 4v₁ − v₂)/2h`,
/// `f′(−0) ≈ (3f(−0) − 4w₁ + w₂)/2h` into the two interface equations.
pub fn build_matrix(t: &CouplingMatrix, cfg: &DiscretizationConfig) -> FdMatrix {
    let n_half = cfg.n - 1; // interior points per side
    let n = 2 * n_half;
    let h = cfg.mesh();
    let inv_h2 = Complex64::from(1.0 / (h * h));
    let mut band = BandedMatrix::zeros(n, 2, 2);

    // plain 3-point rows; neighbors outside the interior are Dirichlet zeros
    // or the interface ghosts handled below
    for i in 0..n {
        band.set(i, i, 2.0 * inv_h2);
        if i > 0 {
            band.set(i, i - 1, -inv_h2);
        }
        if i + 1 < n {
            band.set(i, i + 1, -inv_h2);
        }
    }
    let w1 = n_half - 1; // x = −h
    let v1 = n_half; // x = +h
    // the w₁ and v₁ rows wrongly picked up each other as neighbors above
    band.set(w1, v1, 0.0.into());
    band.set(v1, w1, 0.0.into());

    // ghost elimination: columns of H are (v₁, v₂, w₁, w₂)
    let (a, b, c, d) = (t.a, t.b, t.c, t.d);
    let hh = Complex64::from(h);
    let g = [
        [a / 2.0 + 3.0 * (b + 2.0) / (4.0 * hh), a / 2.0 - 3.0 * (b - 2.0) / (4.0 * hh)],
        [c / 2.0 + 3.0 * d / (4.0 * hh) - 1.0, c / 2.0 - 3.0 * d / (4.0 * hh) + 1.0],
    ];
    let h_rhs = [
        [(b + 2.0) / hh, -(b + 2.0) / (4.0 * hh), -(b - 2.0) / hh, (b - 2.0) / (4.0 * hh)],
        [d / hh, -d / (4.0 * hh), -d / hh, d / (4.0 * hh)],
    ];
    let det_g = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    // (u_R, u_L) = G⁻¹ H (v₁, v₂, w₁, w₂)
    let mut u_r = [Complex64::new(0.0, 0.0); 4];
    let mut u_l = [Complex64::new(0.0, 0.0); 4];
    for k in 0..4 {
        u_r[k] = (g[1][1] * h_rhs[0][k] - g[0][1] * h_rhs[1][k]) / det_g;
        u_l[k] = (g[0][0] * h_rhs[1][k] - g[1][0] * h_rhs[0][k]) / det_g;
    }

    // v₁ row: −(u_R − 2v₁ + v₂)/h²; w₁ row: −(w₂ − 2w₁ + u_L)/h²
    let cols = [v1, v1 + 1, w1, w1 - 1]; // v₁, v₂, w₁, w₂
    for k in 0..4 {
        band.add_to(v1, cols[k], -inv_h2 * u_r[k]);
        band.add_to(w1, cols[k], -inv_h2 * u_l[k]);
    }

    FdMatrix { band, h, cfg: *cfg }
}

/// Rectangular eigenvalue search window in the z-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl Window {
    pub fn new(re: (f64, f64), im: (f64, f64)) -> Self {
        Window { re, im }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re.0 && z.re <= self.re.1 && z.im >= self.im.0 && z.im <= self.im.1
    }

    fn shift_grid(&self, per_axis: usize) -> Vec<Complex64> {
        let mut out = Vec::new();
        for i in 0..per_axis {
            for j in 0..per_axis {
                let fr = (i as f64 + 0.5) / per_axis as f64;
                let fi = (j as f64 + 0.5) / per_axis as f64;
                out.push(Complex64::new(
                    self.re.0 + fr * (self.re.1 - self.re.0),
                    self.im.0 + fi * (self.im.1 - self.im.0),
                ));
            }
        }
        out
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn rayleigh(m: &BandedMatrix, x: &[Complex64], work: &mut Vec<Complex64>) -> (Complex64, f64) {
    work.resize(x.len(), Complex64::new(0.0, 0.0));
    m.matvec(x, work);
    let xx: Complex64 = x.iter().map(|z| z.conj() * z).sum();
    let xax: Complex64 = x.iter().zip(work.iter()).map(|(xi, yi)| xi.conj() * yi).sum();
    let rho = xax / xx;
    let res: f64 = x
        .iter()
        .zip(work.iter())
        .map(|(xi, yi)| (yi - rho * xi).norm_sqr())
        .sum::<f64>()
        .sqrt()
        / norm(x);
    (rho, res)
}

/// Inverse iteration with a fixed shift, then Rayleigh-quotient polish.
/// Converges to the eigenvalue nearest `sigma`.
pub fn shift_invert_eigenvalue(m: &FdMatrix, sigma: Complex64) -> Result<Complex64> {
    let n = m.band.n;
    let mut x: Vec<Complex64> = (0..n)
        .map(|i| {
            // deterministic full-support start vector
            let t = i as f64 + 1.0;
            Complex64::new((0.7 * t).sin() + 0.3, (1.3 * t).cos() * 0.5)
        })
        .collect();
    let scale = 1.0 / norm(&x);
    x.iter_mut().for_each(|z| *z *= scale);

    let mut work = Vec::new();
    let mut shift = sigma;
    let mut lu: BandedLu = m.band.factor_shifted(shift)?;
    let mut last_res = f64::INFINITY;
    let tol_scale = 1.0 + sigma.norm() + 1.0 / (m.h * m.h);
    for it in 0..120 {
        lu.solve(&mut x);
        let s = 1.0 / norm(&x);
        x.iter_mut().for_each(|z| *z *= s);
        let (rho, res) = rayleigh(&m.band, &x, &mut work);
        last_res = res;
        if res <= 1e-10 * tol_scale {
            return Ok(rho);
        }
        // after the subspace settles, move the shift onto the estimate
        if it >= 6 && it % 3 == 0 && (rho - shift).norm() > 1e-13 * tol_scale {
            shift = rho;
            match m.band.factor_shifted(shift) {
                Ok(f) => lu = f,
                Err(_) => {
                    // shift landed exactly on an eigenvalue: nudge it
                    shift += Complex64::new(1e-11 * tol_scale, 0.0);
                    lu = m.band.factor_shifted(shift)?;
                }
            }
        }
    }
    Err(Error::ConvergenceFailure { iterations: 120, residual: last_res })
}

/// Eigenvalues of the discrete operator inside `window`, sorted by `|z|`,
/// at most `count` of them. Uses a dense solve for small grids and a grid
/// of shift-invert iterations otherwise.
pub fn discrete_eigenvalues(m: &FdMatrix, count: usize, window: Window) -> Result<Vec<Complex64>> {
    let mut found: Vec<Complex64> = Vec::new();
    if m.band.n <= 600 {
        for z in dense_eigenvalues(&m.band) {
            if window.contains(z) {
                found.push(z);
            }
        }
    } else {
        for sigma in window.shift_grid(4) {
            let Ok(z) = shift_invert_eigenvalue(m, sigma) else { continue };
            if !window.contains(z) {
                continue;
            }
            if !found.iter().any(|f| (f - z).norm() <= 1e-6 * (1.0 + z.norm())) {
                found.push(z);
            }
        }
    }
    found.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    found.truncate(count);
    Ok(found)
}

/// Dense spectrum of the banded operator (small grids only).
pub fn dense_eigenvalues(band: &BandedMatrix) -> Vec<Complex64> {
    use faer::complex_native::c64;
    let n = band.n;
    let m = faer::Mat::<c64>::from_fn(n, n, |i, j| {
        let z = band.get(i, j);
        c64::new(z.re, z.im)
    });
    m.eigenvalues::<c64>().into_iter().map(|z| Complex64::new(z.re, z.im)).collect()
}

/// One closed-form eigenvalue matched against the discrete operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareEntry {
    pub z_closed: Complex64,
    pub z_fd: Complex64,
    pub z_fd_refined: Complex64,
    pub abs_err: f64,
    pub abs_err_refined: f64,
    /// Richardson estimate of the discretization error at the coarse mesh.
    pub discretization_err: f64,
    /// Closed form and FD disagree beyond 10× the extrapolated error.
    pub disagree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub entries: Vec<CompareEntry>,
    /// Eigenvalues too shallow for the box (edge decay above 1e-8) are
    /// skipped; their τ values are recorded here.
    pub skipped: Vec<Complex64>,
}

/// Pair every sufficiently-confined closed-form eigenvalue with the nearest
/// discrete eigenvalue at `cfg` and at the doubled resolution.
pub fn compare(t: &CouplingMatrix, cfg: &DiscretizationConfig) -> Result<CompareReport> {
    let decay_floor = -(1e-8f64.ln()); // Im τ · L must exceed ln(1e8)
    let rep = classify(t);
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    let coarse = build_matrix(t, cfg);
    let fine = build_matrix(t, &cfg.refined());
    for e in &rep.eigenvalues {
        if e.tau.im * cfg.l < decay_floor {
            skipped.push(e.tau);
            continue;
        }
        let z_fd = shift_invert_eigenvalue(&coarse, e.z)?;
        let z_fd_refined = shift_invert_eigenvalue(&fine, e.z)?;
        let richardson = (4.0 * z_fd_refined - z_fd) / 3.0;
        let discretization_err = (z_fd - richardson).norm();
        let abs_err = (z_fd - e.z).norm();
        entries.push(CompareEntry {
            z_closed: e.z,
            z_fd,
            z_fd_refined,
            abs_err,
            abs_err_refined: (z_fd_refined - e.z).norm(),
            discretization_err,
            disagree: abs_err > 10.0 * discretization_err.max(1e-12),
        });
    }
    Ok(CompareReport { entries, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    #[test]
    fn free_operator_box_ground_state() {
        // T = 0 is the plain Dirichlet Laplacian: lowest eigenvalue ≈ (π/2L)²
        let cfg = DiscretizationConfig::new(10.0, 200).unwrap();
        let m = build_matrix(&CouplingMatrix::real(0.0, 0.0, 0.0, 0.0), &cfg);
        let want = (std::f64::consts::PI / (2.0 * cfg.l)).powi(2);
        let got = shift_invert_eigenvalue(&m, C::new(want, 0.0)).unwrap();
        assert!((got - want).norm() < 5e-4 * want.max(1e-3), "got {got}, want {want}");
    }

    #[test]
    fn free_operator_has_no_bound_state() {
        let cfg = DiscretizationConfig::new(10.0, 120).unwrap();
        let m = build_matrix(&CouplingMatrix::real(0.0, 0.0, 0.0, 0.0), &cfg);
        let found = discrete_eigenvalues(&m, 8, Window::new((-5.0, -1e-2), (-0.5, 0.5))).unwrap();
        assert!(found.is_empty(), "spurious bound states {found:?}");
    }

    #[test]
    fn delta_well_eigenvalue_and_richardson_rate() {
        // a = −2: z = −1; halving h must shrink the error ≈ 4×
        let t = CouplingMatrix::real(-2.0, 0.0, 0.0, 0.0);
        let cfg = DiscretizationConfig::new(20.0, 400).unwrap();
        let rep = compare(&t, &cfg).unwrap();
        assert_eq!(rep.entries.len(), 1);
        let e = &rep.entries[0];
        assert!((e.z_closed - C::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(e.abs_err < 2e-3, "coarse error {}", e.abs_err);
        let ratio = e.abs_err / e.abs_err_refined;
        assert!((3.0..5.0).contains(&ratio), "convergence ratio {ratio}");
        assert!(!e.disagree);
    }

    #[test]
    fn complex_pair_matches_roots() {
        // PT complex-eigenvalue fixture: non-Hermitian discrete matrix, both
        // conjugate eigenvalues land near τ² and converge at 2nd order
        let t = CouplingMatrix::pt(5.0, 4.0, 3.0, -1.0);
        // Im τ = 0.75 needs L = 30 to clear the edge-decay filter
        let cfg = DiscretizationConfig::new(30.0, 600).unwrap();
        let rep = compare(&t, &cfg).unwrap();
        assert_eq!(rep.entries.len(), 2);
        for e in &rep.entries {
            // |τ|⁴ ≈ 22 amplifies the h² error at this coarse mesh
            assert!(e.abs_err < 2e-1, "coarse error {}", e.abs_err);
            let ratio = e.abs_err / e.abs_err_refined;
            assert!((3.0..5.0).contains(&ratio), "convergence ratio {ratio}");
            assert!(!e.disagree);
        }
        let zs: Vec<C> = rep.entries.iter().map(|e| e.z_closed).collect();
        assert!((zs[0] - zs[1].conj()).norm() < 1e-9);
    }

    #[test]
    fn dense_path_self_adjoint_spectrum_is_real() {
        // self-adjoint coupling with complex b: discrete spectrum stays real
        // well below the eigensolver tolerance
        let t = CouplingMatrix::new(C::new(-3.0, 0.0), C::new(1.0, 1.0), C::new(1.0, -1.0), C::new(1.0, 0.0));
        assert!(t.symmetry_class().is_self_adjoint());
        let cfg = DiscretizationConfig::new(8.0, 120).unwrap();
        let m = build_matrix(&t, &cfg);
        let eigs = dense_eigenvalues(&m.band);
        let max_im = eigs.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        assert!(max_im <= 1e-8, "max |Im z| = {max_im}");
    }

    #[test]
    fn dense_and_shift_invert_agree() {
        let t = CouplingMatrix::real(-2.0, 0.0, 0.0, 0.0);
        let cfg = DiscretizationConfig::new(8.0, 100).unwrap();
        let m = build_matrix(&t, &cfg);
        let dense = discrete_eigenvalues(&m, 1, Window::new((-2.0, -0.1), (-0.1, 0.1))).unwrap();
        let si = shift_invert_eigenvalue(&m, C::new(-1.0, 0.0)).unwrap();
        assert_eq!(dense.len(), 1);
        assert!((dense[0] - si).norm() < 1e-8, "dense {} vs shift-invert {si}", dense[0]);
    }

    #[test]
    fn config_validation() {
        assert!(DiscretizationConfig::new(0.0, 100).is_err());
        assert!(DiscretizationConfig::new(10.0, 8).is_err());
        assert!(DiscretizationConfig::new(10.0, 16).is_ok());
    }
}
