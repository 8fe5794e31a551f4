//! Complex banded LU with partial pivoting, LAPACK-style band storage.
//!
//! Row pivoting widens the upper band from `ku` to `ku + kl`, so the working
//! array keeps `2kl + ku + 1` diagonals per column; element `(i, j)` lives at
//! `ab[j * ldab + (i - j + kl + ku)]`.

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct BandedMatrix {
    pub n: usize,
    pub kl: usize,
    pub ku: usize,
    /// column-major band storage with `kl + ku + 1` rows (no fill space)
    data: Vec<Complex64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        BandedMatrix { n, kl, ku, data: vec![Complex64::new(0.0, 0.0); n * (kl + ku + 1)] }
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= j.saturating_sub(self.ku) && i <= (j + self.kl).min(self.n - 1) {
            Some(j * (self.kl + self.ku + 1) + (i + self.ku - j))
        } else {
            None
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.slot(i, j).map_or(Complex64::new(0.0, 0.0), |s| self.data[s])
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        let s = self.slot(i, j).expect("entry outside the band");
        self.data[s] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: Complex64) {
        let s = self.slot(i, j).expect("entry outside the band");
        self.data[s] += v;
    }

    /// y = A·x
    #[allow(clippy::needless_range_loop)]
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        for y_i in y.iter_mut() {
            *y_i = Complex64::new(0.0, 0.0);
        }
        for j in 0..self.n {
            let lo = j.saturating_sub(self.ku);
            let hi = (j + self.kl).min(self.n - 1);
            for i in lo..=hi {
                y[i] += self.get(i, j) * x[j];
            }
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Shifted copy `A − σI`, then LU with partial pivoting.
    pub fn factor_shifted(&self, sigma: Complex64) -> Result<BandedLu> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let kv = kl + ku; // working superdiagonals
        let ldab = 2 * kl + ku + 1;
        let mut ab = vec![Complex64::new(0.0, 0.0); n * ldab];
        // entry (i, j) of the working array sits at ab[j*ldab + (i - j + kv)]
        for j in 0..n {
            let lo = j.saturating_sub(ku);
            let hi = (j + kl).min(n - 1);
            for i in lo..=hi {
                let mut v = self.get(i, j);
                if i == j {
                    v -= sigma;
                }
                ab[j * ldab + (i + kv - j)] = v;
            }
        }
        let mut piv = vec![0usize; n];
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            // pivot search in column j among rows j..=j+km
            let mut jp = 0;
            let mut best = ab[j * ldab + kv].norm();
            for r in 1..=km {
                let cand = ab[j * ldab + kv + r].norm();
                if cand > best {
                    best = cand;
                    jp = r;
                }
            }
            piv[j] = j + jp;
            if best == 0.0 {
                return Err(Error::ConvergenceFailure { iterations: j, residual: 0.0 });
            }
            if jp != 0 {
                let hi_col = (j + kv).min(n - 1);
                for col in j..=hi_col {
                    let s1 = col * ldab + (j + kv - col);
                    let s2 = col * ldab + (j + jp + kv - col);
                    ab.swap(s1, s2);
                }
            }
            let pivot = ab[j * ldab + kv];
            for r in 1..=km {
                let m = ab[j * ldab + kv + r] / pivot;
                ab[j * ldab + kv + r] = m;
                let hi_col = (j + kv).min(n - 1);
                for col in (j + 1)..=hi_col {
                    let u = ab[col * ldab + (j + kv - col)];
                    if u != Complex64::new(0.0, 0.0) {
                        ab[col * ldab + (j + r + kv - col)] -= m * u;
                    }
                }
            }
        }
        Ok(BandedLu { n, kl, kv, ldab, ab, piv })
    }
}

#[derive(Debug, Clone)]
pub struct BandedLu {
    n: usize,
    kl: usize,
    kv: usize,
    ldab: usize,
    ab: Vec<Complex64>,
    piv: Vec<usize>,
}

impl BandedLu {
    /// Solve `(A − σI) x = b` in place.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &mut [Complex64]) {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        // forward: apply P and L
        for j in 0..n {
            if self.piv[j] != j {
                b.swap(j, self.piv[j]);
            }
            let km = self.kl.min(n - 1 - j);
            let bj = b[j];
            for r in 1..=km {
                let m = self.ab[j * self.ldab + self.kv + r];
                b[j + r] -= m * bj;
            }
        }
        // back substitution with U (bandwidth kv)
        for j in (0..n).rev() {
            let diag = self.ab[j * self.ldab + self.kv];
            b[j] /= diag;
            let bj = b[j];
            let lo = j.saturating_sub(self.kv);
            for i in lo..j {
                let u = self.ab[j * self.ldab + (i + self.kv - j)];
                if u != Complex64::new(0.0, 0.0) {
                    b[i] -= u * bj;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[allow(clippy::needless_range_loop)]
    fn dense_solve(mut a: Vec<Vec<C>>, mut b: Vec<C>) -> Vec<C> {
        let n = b.len();
        for k in 0..n {
            let (p, _) = (k..n)
                .map(|i| (i, a[i][k].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            a.swap(k, p);
            b.swap(k, p);
            for i in (k + 1)..n {
                let m = a[i][k] / a[k][k];
                for j in k..n {
                    let v = a[k][j];
                    a[i][j] -= m * v;
                }
                let bk = b[k];
                b[i] -= m * bk;
            }
        }
        let mut x = vec![C::new(0.0, 0.0); n];
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in (i + 1)..n {
                s -= a[i][j] * x[j];
            }
            x[i] = s / a[i][i];
        }
        x
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn banded_lu_matches_dense_elimination() {
        let mut rng = StdRng::seed_from_u64(7);
        for trial in 0..20 {
            let n = rng.gen_range(5..40);
            let (kl, ku) = (2usize, 2usize);
            let mut m = BandedMatrix::zeros(n, kl, ku);
            for j in 0..n {
                for i in j.saturating_sub(ku)..=(j + kl).min(n - 1) {
                    m.set(i, j, C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                }
            }
            // keep it comfortably nonsingular
            for i in 0..n {
                m.add_to(i, i, C::new(4.0, 1.0));
            }
            let sigma = C::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            let b: Vec<C> = (0..n).map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();

            let lu = m.factor_shifted(sigma).unwrap();
            let mut x = b.clone();
            lu.solve(&mut x);

            let mut dense = m.to_dense();
            for i in 0..n {
                dense[i][i] -= sigma;
            }
            let x_ref = dense_solve(dense, b);
            for (xi, ri) in x.iter().zip(&x_ref) {
                assert!((xi - ri).norm() < 1e-10, "trial {trial}: {xi} vs {ri}");
            }
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn matvec_consistent_with_dense() {
        let mut rng = StdRng::seed_from_u64(11);
        let n = 17;
        let mut m = BandedMatrix::zeros(n, 2, 2);
        for j in 0..n {
            for i in j.saturating_sub(2)..=(j + 2).min(n - 1) {
                m.set(i, j, C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        let x: Vec<C> = (0..n).map(|_| C::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let mut y = vec![C::new(0.0, 0.0); n];
        m.matvec(&x, &mut y);
        let dense = m.to_dense();
        for i in 0..n {
            let want: C = (0..n).map(|j| dense[i][j] * x[j]).sum();
            assert!((y[i] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = BandedMatrix::zeros(4, 2, 2);
        assert!(matches!(m.factor_shifted(C::new(0.0, 0.0)), Err(Error::ConvergenceFailure { .. })));
    }
}
