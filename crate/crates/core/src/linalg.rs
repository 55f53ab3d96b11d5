//! Small dense linear-algebra kernels: cyclic Jacobi eigensolver for real
//! symmetric matrices and Gauss-Jordan inversion for complex matrices.
//!
//! Everything here works at desk scale (matrices up to ~25x25), so the
//! implementations favour simplicity and numerical transparency over speed.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is singular to working precision (pivot {pivot:.3e} at column {col})")]
    Singular { col: usize, pivot: f64 },
    #[error("matrix is not symmetric: |A - A^T| = {residual:.3e}")]
    NotSymmetric { residual: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },
}

/// Row-major dense real matrix, square.
#[derive(Debug, Clone)]
pub struct RealMatrix {
    pub dim: usize,
    pub data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn symmetry_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..i {
                r = r.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        r
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order together with the matching
/// orthonormal eigenvectors as columns of the returned matrix. Convergence is
/// declared when the off-diagonal Frobenius norm drops below `1e-12 * |A|`,
/// with a hard cap of 100 sweeps.
pub fn jacobi_eigh(a: &RealMatrix, sym_tol: f64) -> Result<(Vec<f64>, RealMatrix), LinalgError> {
    let n = a.dim;
    let sym = a.symmetry_residual();
    if sym > sym_tol {
        return Err(LinalgError::NotSymmetric { residual: sym });
    }
    let mut m = a.clone();
    // symmetrize exactly so rotations stay consistent
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (m.get(i, j) + m.get(j, i));
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    let mut v = RealMatrix::identity(n);
    let scale = m.frobenius().max(f64::MIN_POSITIVE);
    let target = 1e-12 * scale;
    let max_sweeps = 100;

    let off_norm = |m: &RealMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let x = m.get(i, j);
                    s += x * x;
                }
            }
        }
        s.sqrt()
    };

    let mut off = off_norm(&m);
    let mut sweeps = 0;
    while off > target {
        if sweeps >= max_sweeps {
            return Err(LinalgError::NoConvergence { sweeps, off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq.abs() <= target / (n as f64) {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A <- J^T A J on rows/cols p, q
                for k in 0..n {
                    let akp = m.get(k, p);
                    let akq = m.get(k, q);
                    m.set(k, p, c * akp - s * akq);
                    m.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = m.get(p, k);
                    let aqk = m.get(q, k);
                    m.set(p, k, c * apk - s * aqk);
                    m.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
        sweeps += 1;
        off = off_norm(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).partial_cmp(&m.get(j, j)).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let mut vecs = RealMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vecs.set(row, new_col, v.get(row, old_col));
        }
    }
    Ok((vals, vecs))
}

/// Row-major dense complex matrix, square.
#[derive(Debug, Clone)]
pub struct ComplexMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn hermitian_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Gauss-Jordan inversion with partial pivoting.
    pub fn inverse(&self) -> Result<ComplexMatrix, LinalgError> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = ComplexMatrix::identity(n);
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = a.get(col, col).norm();
            for r in (col + 1)..n {
                let mag = a.get(r, col).norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = r;
                }
            }
            if pivot_mag < 1e-300 {
                return Err(LinalgError::Singular { col, pivot: pivot_mag });
            }
            if pivot_row != col {
                for j in 0..n {
                    let t = a.get(col, j);
                    a.set(col, j, a.get(pivot_row, j));
                    a.set(pivot_row, j, t);
                    let t = inv.get(col, j);
                    inv.set(col, j, inv.get(pivot_row, j));
                    inv.set(pivot_row, j, t);
                }
            }
            let pivot = a.get(col, col);
            for j in 0..n {
                a.set(col, j, a.get(col, j) / pivot);
                inv.set(col, j, inv.get(col, j) / pivot);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j) - factor * a.get(col, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - factor * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Eigenvalues of a hermitian matrix, ascending, via the real symmetric
    /// embedding [[Re, -Im], [Im, Re]] (each eigenvalue appears twice there).
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>, LinalgError> {
        let n = self.dim;
        let herm = self.hermitian_residual();
        if herm > tol {
            return Err(LinalgError::NotSymmetric { residual: herm });
        }
        let mut big = RealMatrix::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                let z = 0.5 * (self.get(i, j) + self.get(j, i).conj());
                big.set(i, j, z.re);
                big.set(i, j + n, -z.im);
                big.set(i + n, j, z.im);
                big.set(i + n, j + n, z.re);
            }
        }
        let (vals, _) = jacobi_eigh(&big, 1e-9)?;
        // doubled spectrum: take every second entry
        Ok(vals.into_iter().step_by(2).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn jacobi_diagonal_is_identity_decomposition() {
        let mut a = RealMatrix::zeros(4);
        for (i, v) in [4.0, 2.0, 1.0, 3.0].iter().enumerate() {
            a.set(i, i, *v);
        }
        let (vals, _) = jacobi_eigh(&a, 1e-12).unwrap();
        assert_eq!(vals, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn jacobi_zero_matrix() {
        let a = RealMatrix::zeros(3);
        let (vals, vecs) = jacobi_eigh(&a, 1e-12).unwrap();
        assert!(vals.iter().all(|v| *v == 0.0));
        // columns orthonormal
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| vecs.get(k, i) * vecs.get(k, j)).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(dot, expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_random_symmetric_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 9;
        let mut a = RealMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = rng.gen_range(-1.0..1.0);
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        let (vals, vecs) = jacobi_eigh(&a, 1e-12).unwrap();
        for (idx, lambda) in vals.iter().enumerate() {
            for row in 0..n {
                let mut av = 0.0;
                for k in 0..n {
                    av += a.get(row, k) * vecs.get(k, idx);
                }
                assert_abs_diff_eq!(av, lambda * vecs.get(row, idx), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn jacobi_rejects_nonsymmetric() {
        let mut a = RealMatrix::zeros(2);
        a.set(0, 1, 1.0);
        assert!(matches!(jacobi_eigh(&a, 1e-12), Err(LinalgError::NotSymmetric { .. })));
    }

    #[test]
    fn complex_inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 4;
        let mut a = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
            let d = a.get(i, i) + Complex64::new(4.0, 0.0);
            a.set(i, i, d);
        }
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv);
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                assert!((prod.get(i, j) - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn hermitian_eigenvalues_of_pauli_like_matrix() {
        let mut a = ComplexMatrix::zeros(2);
        a.set(0, 1, Complex64::new(0.0, -1.0));
        a.set(1, 0, Complex64::new(0.0, 1.0));
        let vals = a.hermitian_eigenvalues(1e-12).unwrap();
        assert_abs_diff_eq!(vals[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-12);
    }
}
