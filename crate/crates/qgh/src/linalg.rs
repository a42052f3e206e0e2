//! Small dense kernels: complex matrices, power-iteration spectral norms,
//! symmetric extreme eigenvalues and rank. Windows stay at desk scale
//! (a few thousand rows at most), so dense storage is fine.

use num_complex::Complex64;

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

const POWER_TOL: f64 = 1e-10;
const POWER_MAX_ITER: usize = 100_000;

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn conj_transpose(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scale(&mut self, s: Complex64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, x) in row.iter().zip(v) {
                acc += a * x;
            }
            *o = acc;
        }
        out
    }

    pub fn adj_matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![Complex64::new(0.0, 0.0); self.cols];
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let x = v[r];
            for (a, o) in row.iter().zip(out.iter_mut()) {
                *o += a.conj() * x;
            }
        }
        out
    }

    /// Largest singular value via power iteration on AᴴA, deterministic start
    /// vector, relative tolerance 1e-10 on the Rayleigh quotient.
    pub fn spectral_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 || self.frobenius() == 0.0 {
            return 0.0;
        }
        let mut v: Vec<Complex64> = (0..self.cols)
            .map(|i| Complex64::new(1.0 + 0.37 * ((i + 1) as f64).sin(), 0.0))
            .collect();
        normalize(&mut v);
        let mut sigma2 = 0.0_f64;
        for _ in 0..POWER_MAX_ITER {
            let w = self.matvec(&v);
            // For a unit vector v, ‖Av‖² is the Rayleigh quotient of AᴴA.
            let rayleigh: f64 = w.iter().map(|c| c.norm_sqr()).sum();
            let mut z = self.adj_matvec(&w);
            let done = (rayleigh - sigma2).abs() <= POWER_TOL * rayleigh.max(f64::MIN_POSITIVE);
            sigma2 = rayleigh;
            if done {
                break;
            }
            let zn = norm(&z);
            if zn == 0.0 {
                break;
            }
            for c in &mut z {
                *c /= zn;
            }
            v = z;
        }
        sigma2.sqrt()
    }

    /// Numerical rank by Gaussian elimination with partial pivoting; a pivot
    /// below `rel_tol` times the largest initial entry counts as zero.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0;
        }
        let mut a = self.data.clone();
        let (r, c) = (self.rows, self.cols);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..c {
            if row >= r {
                break;
            }
            let (mut pr, mut pv) = (row, a[row * c + col].norm());
            for i in row + 1..r {
                let m = a[i * c + col].norm();
                if m > pv {
                    pr = i;
                    pv = m;
                }
            }
            if pv <= rel_tol * scale {
                continue;
            }
            if pr != row {
                for j in 0..c {
                    a.swap(row * c + j, pr * c + j);
                }
            }
            let pivot = a[row * c + col];
            for i in row + 1..r {
                let f = a[i * c + col] / pivot;
                if f.norm() == 0.0 {
                    continue;
                }
                for j in col..c {
                    let v = a[row * c + j];
                    a[i * c + j] -= f * v;
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }

    pub fn nullspace_dim(&self, rel_tol: f64) -> usize {
        self.cols - self.rank(rel_tol)
    }
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = norm(v);
    if n > 0.0 {
        for c in v.iter_mut() {
            *c /= n;
        }
    }
}

/// Smallest eigenvalue of a real symmetric matrix (row-major, n×n) via a
/// Gershgorin shift and power iteration on the shifted PSD matrix.
pub fn sym_min_eig(n: usize, a: &[f64]) -> f64 {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return 0.0;
    }
    let shift = (0..n)
        .map(|i| (0..n).map(|j| a[i * n + j].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    if shift == 0.0 {
        return 0.0;
    }
    // B = shift·I − A is PSD with λ_max(B) = shift − λ_min(A).
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.37 * ((i + 1) as f64).sin()).collect();
    let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= vn);
    let mut lambda = 0.0_f64;
    for _ in 0..POWER_MAX_ITER {
        let mut w = vec![0.0_f64; n];
        for i in 0..n {
            let mut acc = shift * v[i];
            for j in 0..n {
                acc -= a[i * n + j] * v[j];
            }
            w[i] = acc;
        }
        let rayleigh: f64 = v.iter().zip(&w).map(|(x, y)| x * y).sum();
        let done = (rayleigh - lambda).abs() <= 1e-12 * rayleigh.abs().max(f64::MIN_POSITIVE);
        lambda = rayleigh;
        if done {
            break;
        }
        let wn = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if wn == 0.0 {
            break;
        }
        w.iter_mut().for_each(|x| *x /= wn);
        v = w;
    }
    shift - lambda
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_norm_is_one() {
        let mut m = CMat::zeros(4, 4);
        for i in 0..4 {
            m.set(i, i, c(1.0, 0.0));
        }
        assert!((m.spectral_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_one_known_singular_value() {
        // u vᴴ with ‖u‖·‖v‖ = 3
        let u = [c(1.0, 0.0), c(2.0, 0.0)];
        let v = [c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)];
        let un: f64 = 5.0_f64.sqrt();
        let mut m = CMat::zeros(2, 3);
        for i in 0..2 {
            for j in 0..3 {
                m.set(i, j, u[i] * v[j].conj() * (3.0 / un));
            }
        }
        assert!((m.spectral_norm() - 3.0).abs() < 1e-9);
        assert_eq!(m.rank(1e-10), 1);
        assert_eq!(m.nullspace_dim(1e-10), 2);
    }

    #[test]
    fn min_eig_of_diag() {
        let a = [3.0, 0.0, 0.0, 0.0, -2.0, 0.0, 0.0, 0.0, 7.0];
        assert!((sym_min_eig(3, &a) + 2.0).abs() < 1e-9);
    }

    #[test]
    fn zero_matrix_norm() {
        assert_eq!(CMat::zeros(3, 2).spectral_norm(), 0.0);
    }
}
