//! The Levi form: a positive definite hermitian matrix together with its
//! inverse, used for all index raising and lowering and for hermitian inner
//! products.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::ComplexMatrix;
use crate::tensor::{MultiTensor, ANTI_LOWER, ANTI_UPPER, HOLO_LOWER, HOLO_UPPER};

#[derive(Debug, Error)]
pub enum LeviError {
    #[error("matrix is not hermitian: residual {residual:.3e}")]
    NotHermitian { residual: f64 },
    #[error("matrix is not positive definite: min eigenvalue {min_eig:.3e}")]
    NotPositiveDefinite { min_eig: f64 },
    #[error("inversion failed: {0}")]
    Inversion(#[from] crate::linalg::LinalgError),
    #[error("matrix data length {actual} does not match n^2 = {expected}")]
    DataLength { expected: usize, actual: usize },
}

/// Positive definite hermitian metric `h` and its inverse.
///
/// The entry at `(a, b)` pairs a holomorphic index `a` with an
/// antiholomorphic index `b`. Raising a lower holomorphic slot therefore
/// produces an upper antiholomorphic slot and vice versa.
#[derive(Debug, Clone)]
pub struct LeviForm {
    n: usize,
    h: ComplexMatrix,
    h_inv: ComplexMatrix,
    min_eig: f64,
}

impl LeviForm {
    /// The identity metric.
    ///
    /// Panics if `n == 0`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "Levi form dimension must be positive");
        Self {
            n,
            h: ComplexMatrix::identity(n),
            h_inv: ComplexMatrix::identity(n),
            min_eig: 1.0,
        }
    }

    /// Random positive definite hermitian metric built as `G* G + 0.1 I`.
    ///
    /// Panics if `n == 0`.
    pub fn random(n: usize, seed: u64) -> Self {
        assert!(n >= 1, "Levi form dimension must be positive");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        let mut h = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += g.get(k, i).conj() * g.get(k, j);
                }
                if i == j {
                    acc += Complex64::new(0.1, 0.0);
                }
                h.set(i, j, acc);
            }
        }
        Self::from_complex_matrix(h, 1e-10).expect("G*G + 0.1 I is positive definite by construction")
    }

    /// Validates hermitian positive definiteness and inverts.
    pub fn from_matrix(n: usize, entries: &[Complex64], tol: f64) -> Result<Self, LeviError> {
        if entries.len() != n * n {
            return Err(LeviError::DataLength { expected: n * n, actual: entries.len() });
        }
        let mut h = ComplexMatrix::zeros(n);
        h.data.copy_from_slice(entries);
        Self::from_complex_matrix(h, tol)
    }

    fn from_complex_matrix(h: ComplexMatrix, tol: f64) -> Result<Self, LeviError> {
        let herm = h.hermitian_residual();
        if herm > tol {
            return Err(LeviError::NotHermitian { residual: herm });
        }
        let eigs = h.hermitian_eigenvalues(tol.max(1e-9))?;
        let min_eig = eigs.first().copied().unwrap_or(0.0);
        if min_eig <= 0.0 {
            return Err(LeviError::NotPositiveDefinite { min_eig });
        }
        let h_inv = h.inverse()?;
        Ok(Self { n: h.dim, h, h_inv, min_eig })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eig
    }

    /// `h_{a b-bar}`.
    #[inline]
    pub fn entry(&self, a: usize, b: usize) -> Complex64 {
        self.h.get(a, b)
    }

    /// `h^{a b-bar}`, the inverse pairing: conjugate of the plain matrix
    /// inverse, oriented so raise-then-lower is the identity.
    #[inline]
    pub fn inverse_entry(&self, a: usize, b: usize) -> Complex64 {
        self.h_inv.get(a, b).conj()
    }

    /// Max-norm residual of `h * h_inv - identity`.
    pub fn inverse_residual(&self) -> f64 {
        let prod = self.h.mul(&self.h_inv);
        let mut r: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let expect = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                r = r.max((prod.get(i, j) - expect).norm());
            }
        }
        r
    }

    /// The metric as a tensor with slots (holomorphic lower, antiholomorphic
    /// lower).
    pub fn metric_tensor(&self) -> MultiTensor {
        let mut t = MultiTensor::zeros(self.n, vec![HOLO_LOWER, ANTI_LOWER]);
        let mut idx = [0usize; 2];
        for a in 0..self.n {
            for b in 0..self.n {
                idx[0] = a;
                idx[1] = b;
                t.set(&idx, self.entry(a, b));
            }
        }
        t
    }

    /// The inverse pairing as a tensor with slots (holomorphic upper,
    /// antiholomorphic upper).
    pub fn inverse_tensor(&self) -> MultiTensor {
        let mut t = MultiTensor::zeros(self.n, vec![HOLO_UPPER, ANTI_UPPER]);
        let mut idx = [0usize; 2];
        for a in 0..self.n {
            for b in 0..self.n {
                idx[0] = a;
                idx[1] = b;
                t.set(&idx, self.inverse_entry(a, b));
            }
        }
        t
    }

    /// Entrywise conjugate of the inverse pairing, same slot structure.
    pub fn inverse_conj_tensor(&self) -> MultiTensor {
        let mut t = MultiTensor::zeros(self.n, vec![HOLO_UPPER, ANTI_UPPER]);
        let mut idx = [0usize; 2];
        for a in 0..self.n {
            for b in 0..self.n {
                idx[0] = a;
                idx[1] = b;
                t.set(&idx, self.inverse_entry(a, b).conj());
            }
        }
        t
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.h
    }
}
