//! Curvature tensors, the associated hermitian operator on the space of
//! (1,1)-coefficient matrices, its spectrum, and generators for valid
//! non-negative instances.
//!
//! A curvature tensor `R` has four lower slots (holo, anti, holo, anti) and
//! satisfies two exchange symmetries plus a hermitian reality condition. The
//! operator form is assembled in an orthonormal basis of hermitian matrices,
//! where it is real symmetric; its eigenvalues are the curvature operator
//! spectrum and the tensor reconstructs as `R = -sum_i lambda_i E_i (x) E_i`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::levi::LeviForm;
use crate::linalg::{jacobi_eigh, LinalgError, RealMatrix};
use crate::tensor::{
    hermitian_pairing, norm_sq, IndexSlot, MultiTensor, TensorError, ANTI_LOWER, HOLO_LOWER,
};

pub const CURVATURE_SLOTS: [IndexSlot; 4] = [HOLO_LOWER, ANTI_LOWER, HOLO_LOWER, ANTI_LOWER];

#[derive(Debug, Error)]
pub enum CurvatureError {
    #[error("curvature tensor must have slots (holo low, anti low, holo low, anti low)")]
    WrongSlots,
    #[error("violated symmetry `{which}`: residual {residual:.3e} exceeds {tol:.3e}")]
    Symmetry { which: &'static str, residual: f64, tol: f64 },
    #[error("spectral assembly violates the curvature symmetries (residual {residual:.3e}); use gen_random_psd_symmetric to produce valid instances")]
    SpectralAssembly { residual: f64 },
    #[error("operator matrix is not symmetric: residual {residual:.3e}")]
    OperatorNotSymmetric { residual: f64 },
    #[error("significantly negative eigenvalue {value:.3e} (threshold {threshold:.3e}); operator is not non-negative")]
    NegativeEigenvalue { value: f64, threshold: f64 },
    #[error("alternating projection did not converge in {iterations} iterations (symmetry {sym_residual:.3e}, psd {psd_residual:.3e}); residual trace tail: {trace_tail:?}")]
    NoConvergence {
        iterations: usize,
        sym_residual: f64,
        psd_residual: f64,
        trace_tail: Vec<(f64, f64)>,
    },
    #[error("spectrum has {lambdas} eigenvalues but {eigvecs} eigenvectors")]
    SpectrumShape { lambdas: usize, eigvecs: usize },
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Max-norm residuals of the curvature symmetries.
#[derive(Debug, Clone, Copy)]
pub struct SymmetryReport {
    /// `R_{a b~ m n~} - R_{a n~ m b~}`
    pub exchange: f64,
    /// `R_{a b~ m n~} - R_{m n~ a b~}`
    pub pair: f64,
    /// `R_{a b~ m n~} - conj(R_{b a~ n m~})`
    pub reality: f64,
}

impl SymmetryReport {
    pub fn max(&self) -> f64 {
        self.exchange.max(self.pair).max(self.reality)
    }
}

/// Validated pseudohermitian curvature tensor.
#[derive(Debug, Clone)]
pub struct CurvatureTensor {
    n: usize,
    tensor: MultiTensor,
}

fn exchange_image(t: &MultiTensor) -> MultiTensor {
    t.permute_slots(&[0, 3, 2, 1])
}

fn pair_image(t: &MultiTensor) -> MultiTensor {
    t.permute_slots(&[2, 3, 0, 1])
}

fn reality_image(t: &MultiTensor) -> MultiTensor {
    t.conjugate().permute_slots(&[1, 0, 3, 2])
}

/// Symmetry residuals of a raw 4-slot tensor.
pub fn symmetry_residuals(t: &MultiTensor) -> SymmetryReport {
    SymmetryReport {
        exchange: t.max_abs_diff(&exchange_image(t)),
        pair: t.max_abs_diff(&pair_image(t)),
        reality: t.max_abs_diff(&reality_image(t)),
    }
}

impl CurvatureTensor {
    /// Validates slot structure and all symmetries at the given tolerance.
    pub fn new(tensor: MultiTensor, tol: f64) -> Result<Self, CurvatureError> {
        if tensor.slots() != CURVATURE_SLOTS {
            return Err(CurvatureError::WrongSlots);
        }
        let report = symmetry_residuals(&tensor);
        let scale = tensor.max_abs().max(1.0);
        if report.exchange > tol * scale {
            return Err(CurvatureError::Symmetry {
                which: "index exchange R_abmn = R_anmb",
                residual: report.exchange,
                tol: tol * scale,
            });
        }
        if report.pair > tol * scale {
            return Err(CurvatureError::Symmetry {
                which: "pair exchange R_abmn = R_mnab",
                residual: report.pair,
                tol: tol * scale,
            });
        }
        if report.reality > tol * scale {
            return Err(CurvatureError::Symmetry {
                which: "hermitian reality R_abmn = conj(R_banm)",
                residual: report.reality,
                tol: tol * scale,
            });
        }
        Ok(Self { n: tensor.n(), tensor })
    }

    /// Wraps a tensor without validating symmetries. Intended for tests and
    /// for report-only paths that measure the violation.
    pub fn from_tensor_unchecked(tensor: MultiTensor) -> Self {
        Self { n: tensor.n(), tensor }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tensor(&self) -> &MultiTensor {
        &self.tensor
    }

    pub fn check_symmetries(&self) -> SymmetryReport {
        symmetry_residuals(&self.tensor)
    }
}

/// Zero curvature.
pub fn gen_flat(n: usize) -> CurvatureTensor {
    CurvatureTensor {
        n,
        tensor: MultiTensor::zeros(n, CURVATURE_SLOTS.to_vec()),
    }
}

/// Constant-curvature family `R = -c (h (x) h + exchange)`; satisfies the
/// symmetries exactly, and its operator is positive semidefinite for c > 0.
pub fn gen_constant(n: usize, c: f64, h: &LeviForm) -> CurvatureTensor {
    let hh = h.metric_tensor();
    let prod = hh.tensor_product(&hh);
    let swapped = prod.permute_slots(&[0, 3, 2, 1]);
    let tensor = prod.add(&swapped).expect("matching signatures").scale_re(-c);
    CurvatureTensor { n, tensor }
}

/// Sum of rank-one non-negative pieces `R = -sum_j lambda_j (v v*) (x) (v v*)`.
/// Each piece satisfies the symmetries exactly, so the sum is always a valid
/// instance; the kernel of its operator is the orthogonal complement of the
/// span of the `v v*`.
pub fn gen_rank_one_sum(n: usize, terms: &[(Vec<Complex64>, f64)]) -> CurvatureTensor {
    let mut total = MultiTensor::zeros(n, CURVATURE_SLOTS.to_vec());
    for (v, lambda) in terms {
        assert_eq!(v.len(), n);
        let mut e = MultiTensor::zeros(n, vec![HOLO_LOWER, ANTI_LOWER]);
        for a in 0..n {
            for b in 0..n {
                e.set(&[a, b], v[a] * v[b].conj());
            }
        }
        let piece = e.tensor_product(&e).scale_re(-lambda);
        total = total.add(&piece).expect("matching signatures");
    }
    CurvatureTensor { n, tensor: total }
}

/// Ricci tensor: contraction of the last two indices against the inverse
/// pairing. Slots (holo lower, anti lower).
pub fn ricci(r: &CurvatureTensor, h: &LeviForm) -> MultiTensor {
    let prod = r.tensor().tensor_product(&h.inverse_tensor());
    // slots: (hl, al, hl, al, hu, au): contract holo pair (2,4), then anti pair
    let step = prod.contract(2, 4).expect("holo pairing");
    // remaining: (hl, al, al, au)
    step.contract(2, 3).expect("anti pairing")
}

/// Scalar curvature: the trace of the Ricci tensor against the inverse
/// pairing. The imaginary part is a rounding artifact and is discarded.
pub fn scalar(r: &CurvatureTensor, h: &LeviForm) -> f64 {
    let ric = ricci(r, h);
    let prod = ric.tensor_product(&h.inverse_tensor());
    let s = prod
        .contract(0, 2)
        .expect("holo pairing")
        .contract(0, 1)
        .expect("anti pairing")
        .scalar_value();
    debug_assert!(s.im.abs() < 1e-9 * s.norm().max(1.0));
    s.re
}

/// Residual of `sigma * (-R_{abmn} h^{ab} conj(h)^{mn}) - scalar(R, h)`,
/// report-only; exactly one sign should make this vanish and the suite
/// records which.
pub fn check_sign_convention(r: &CurvatureTensor, h: &LeviForm, sigma: f64) -> f64 {
    let first = r
        .tensor()
        .tensor_product(&h.inverse_tensor())
        .contract(0, 4)
        .expect("holo pairing")
        .contract(0, 3)
        .expect("anti pairing");
    // remaining: (hl, al) on slots (m, n)
    let full = first
        .tensor_product(&h.inverse_conj_tensor())
        .contract(0, 2)
        .expect("holo pairing")
        .contract(0, 1)
        .expect("anti pairing")
        .scalar_value();
    (sigma * (-full.re) - scalar(r, h)).abs()
}

/// Orthonormal basis of hermitian (1,1)-coefficient matrices with respect to
/// the hermitian pairing induced by `h`.
pub fn hermitian_basis(n: usize, h: &LeviForm) -> Vec<MultiTensor> {
    let slots = vec![HOLO_LOWER, ANTI_LOWER];
    let mut raw: Vec<MultiTensor> = Vec::with_capacity(n * n);
    let inv_sqrt2 = 1.0 / 2f64.sqrt();
    for a in 0..n {
        let mut t = MultiTensor::zeros(n, slots.clone());
        t.set(&[a, a], Complex64::new(1.0, 0.0));
        raw.push(t);
    }
    for a in 0..n {
        for b in (a + 1)..n {
            let mut s = MultiTensor::zeros(n, slots.clone());
            s.set(&[a, b], Complex64::new(inv_sqrt2, 0.0));
            s.set(&[b, a], Complex64::new(inv_sqrt2, 0.0));
            raw.push(s);
            let mut t = MultiTensor::zeros(n, slots.clone());
            t.set(&[a, b], Complex64::new(0.0, inv_sqrt2));
            t.set(&[b, a], Complex64::new(0.0, -inv_sqrt2));
            raw.push(t);
        }
    }
    // Gram-Schmidt under the h-pairing; coefficients are real on the
    // hermitian subspace.
    let mut basis: Vec<MultiTensor> = Vec::with_capacity(raw.len());
    for mut v in raw {
        for _pass in 0..2 {
            for f in &basis {
                let coeff = hermitian_pairing(&v, f, h).expect("same signatures");
                debug_assert!(coeff.im.abs() < 1e-10);
                v = v.sub(&f.scale_re(coeff.re)).expect("same signatures");
            }
        }
        let nrm = norm_sq(&v, h).expect("same signatures").sqrt();
        assert!(nrm > 1e-12, "hermitian basis degenerated");
        basis.push(v.scale_re(1.0 / nrm));
    }
    basis
}

/// The curvature operator in a fixed orthonormal hermitian basis: a real
/// symmetric `n^2 x n^2` matrix whose spectrum matches the reconstruction
/// `R = -sum_i lambda_i E_i (x) E_i`.
#[derive(Debug, Clone)]
pub struct CurvatureOperator {
    n: usize,
    matrix: RealMatrix,
    basis: Vec<MultiTensor>,
}

impl CurvatureOperator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn basis(&self) -> &[MultiTensor] {
        &self.basis
    }

    /// Wraps a raw symmetric matrix over the identity-metric hermitian basis.
    pub fn from_matrix(n: usize, matrix: RealMatrix, tol: f64) -> Result<Self, CurvatureError> {
        let residual = matrix.symmetry_residual();
        if residual > tol {
            return Err(CurvatureError::OperatorNotSymmetric { residual });
        }
        assert_eq!(matrix.dim, n * n);
        Ok(Self { n, matrix, basis: hermitian_basis(n, &LeviForm::identity(n)) })
    }
}

/// Precomputed raised basis pairings, reused across many operator builds.
struct PairedBasis {
    n: usize,
    elements: Vec<MultiTensor>,
    /// `flip_all(F_j)` flattened as `[x * n + y]`
    omega_side: Vec<Vec<Complex64>>,
    /// `flip_all(conj(F_j))` flattened as `[m * n + v]`
    eta_side: Vec<Vec<Complex64>>,
}

impl PairedBasis {
    fn build(n: usize, h: &LeviForm) -> Self {
        let elements = hermitian_basis(n, h);
        let omega_side = elements
            .iter()
            .map(|f| f.flip_all_variances(h).expect("valid slots").data().to_vec())
            .collect();
        let eta_side = elements
            .iter()
            .map(|f| f.conjugate().flip_all_variances(h).expect("valid slots").data().to_vec())
            .collect();
        Self { n, elements, omega_side, eta_side }
    }

    /// Operator form entries of a raw 4-slot tensor (no symmetry checks).
    fn form_matrix(&self, t: &MultiTensor) -> RealMatrix {
        let n = self.n;
        let dim = n * n;
        let data = t.data();
        let mut m = RealMatrix::zeros(dim);
        let mut d = vec![Complex64::new(0.0, 0.0); dim];
        for j in 0..dim {
            let a_j = &self.omega_side[j];
            for slot in d.iter_mut() {
                *slot = Complex64::new(0.0, 0.0);
            }
            for alpha in 0..n {
                for beta in 0..n {
                    let w = a_j[beta * n + alpha];
                    if w.norm_sqr() == 0.0 {
                        continue;
                    }
                    let base = (alpha * n + beta) * dim;
                    for mv in 0..dim {
                        d[mv] += w * data[base + mv];
                    }
                }
            }
            for k in 0..dim {
                let c_k = &self.eta_side[k];
                let mut acc = Complex64::new(0.0, 0.0);
                for mv in 0..dim {
                    acc += d[mv] * c_k[mv];
                }
                m.set(j, k, -acc.re);
            }
        }
        // numerical symmetrization
        for j in 0..dim {
            for k in 0..j {
                let v = 0.5 * (m.get(j, k) + m.get(k, j));
                m.set(j, k, v);
                m.set(k, j, v);
            }
        }
        m
    }
}

/// Assembles the operator matrix of a validated curvature tensor.
pub fn operator_matrix(r: &CurvatureTensor, h: &LeviForm) -> CurvatureOperator {
    let paired = PairedBasis::build(r.n(), h);
    let matrix = paired.form_matrix(r.tensor());
    CurvatureOperator { n: r.n(), matrix, basis: paired.elements }
}

/// Validates symmetries first, then assembles; the error names the violated
/// symmetry.
pub fn operator_matrix_checked(
    tensor: &MultiTensor,
    h: &LeviForm,
    tol: f64,
) -> Result<CurvatureOperator, CurvatureError> {
    let r = CurvatureTensor::new(tensor.clone(), tol)?;
    Ok(operator_matrix(&r, h))
}

/// Eigenvalues and hermitian eigenvector tensors of the curvature operator.
#[derive(Debug, Clone)]
pub struct CurvatureSpectrum {
    pub lambdas: Vec<f64>,
    pub eigvecs: Vec<MultiTensor>,
}

impl CurvatureSpectrum {
    pub fn new(lambdas: Vec<f64>, eigvecs: Vec<MultiTensor>) -> Result<Self, CurvatureError> {
        if lambdas.len() != eigvecs.len() {
            return Err(CurvatureError::SpectrumShape {
                lambdas: lambdas.len(),
                eigvecs: eigvecs.len(),
            });
        }
        Ok(Self { lambdas, eigvecs })
    }

    pub fn max_lambda(&self) -> f64 {
        self.lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_lambda(&self) -> f64 {
        self.lambdas.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Max deviation of each eigenvector from hermitian symmetry
    /// `E_{a b~} = conj(E_{b a~})`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.eigvecs
            .iter()
            .map(|e| e.max_abs_diff(&e.conjugate().permute_slots(&[1, 0])))
            .fold(0.0, f64::max)
    }

    /// Max deviation from orthonormality under the h-pairing.
    pub fn orthonormality_residual(&self, h: &LeviForm) -> f64 {
        let mut r: f64 = 0.0;
        for (i, a) in self.eigvecs.iter().enumerate() {
            for (j, b) in self.eigvecs.iter().enumerate() {
                let p = hermitian_pairing(a, b, h).expect("same signatures");
                let expect = if i == j { 1.0 } else { 0.0 };
                r = r.max((p - Complex64::new(expect, 0.0)).norm());
            }
        }
        r
    }

    /// Assembles `-sum_i lambda_i E_i (x) E_i` as a raw tensor.
    pub fn assemble(&self) -> MultiTensor {
        let n = self.eigvecs.first().map(|e| e.n()).unwrap_or(1);
        let dim = n * n;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (lambda, e) in self.lambdas.iter().zip(&self.eigvecs) {
            if *lambda == 0.0 {
                continue;
            }
            let ed = e.data();
            for a in 0..dim {
                let w = ed[a] * *lambda;
                for b in 0..dim {
                    data[a * dim + b] -= w * ed[b];
                }
            }
        }
        MultiTensor::new(n, CURVATURE_SLOTS.to_vec(), data).expect("well-formed assembly")
    }
}

/// Diagonalizes the operator matrix; eigenvalues ascending, eigenvectors
/// mapped back to hermitian tensors through the operator's basis.
pub fn eigendecompose(op: &CurvatureOperator, tol: f64) -> Result<CurvatureSpectrum, CurvatureError> {
    let residual = op.matrix.symmetry_residual();
    if residual > tol {
        return Err(CurvatureError::OperatorNotSymmetric { residual });
    }
    let (vals, vecs) = jacobi_eigh(&op.matrix, tol)?;
    let dim = op.matrix.dim;
    let mut eigvecs = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut e = MultiTensor::zeros(op.n, vec![HOLO_LOWER, ANTI_LOWER]);
        for (k, f) in op.basis.iter().enumerate() {
            let c = vecs.get(k, i);
            if c != 0.0 {
                e = e.add(&f.scale_re(c)).expect("same signatures");
            }
        }
        eigvecs.push(e);
    }
    CurvatureSpectrum::new(vals, eigvecs)
}

/// Rebuilds a curvature tensor from spectral data, validating that the result
/// lands in the symmetry subspace.
pub fn curvature_from_spectrum(
    spectrum: &CurvatureSpectrum,
    tol: f64,
) -> Result<CurvatureTensor, CurvatureError> {
    let tensor = spectrum.assemble();
    CurvatureTensor::new(tensor, tol).map_err(|e| match e {
        CurvatureError::Symmetry { residual, .. } => CurvatureError::SpectralAssembly { residual },
        other => other,
    })
}

/// Residuals of the two spectral exchange identities
/// `sum lambda E_ab E_mn = sum lambda E_an E_mb = sum lambda E_mb E_an`.
#[derive(Debug, Clone, Copy)]
pub struct DiagSymmetryReport {
    pub exchange: f64,
    pub pair: f64,
}

pub fn check_diag_symmetries(spectrum: &CurvatureSpectrum) -> DiagSymmetryReport {
    let s = spectrum.assemble();
    DiagSymmetryReport {
        exchange: s.max_abs_diff(&exchange_image(&s)),
        pair: s.max_abs_diff(&pair_image(&s)),
    }
}

/// Number of (near-)zero eigenvalues of a non-negative spectrum, with the
/// relative threshold `tol * max(1, lambda_max)`.
pub fn kernel_dimension(spectrum: &CurvatureSpectrum, tol: f64) -> Result<usize, CurvatureError> {
    let threshold = tol * spectrum.max_lambda().max(1.0);
    let min = spectrum.min_lambda();
    if min < -threshold {
        return Err(CurvatureError::NegativeEigenvalue { value: min, threshold });
    }
    Ok(spectrum.lambdas.iter().filter(|&&l| l <= threshold).count())
}

/// Step-by-step outcome of the alternating projection.
#[derive(Debug, Clone)]
pub struct DykstraOutcome {
    pub tensor: MultiTensor,
    pub iterations: usize,
    pub sym_residual: f64,
    pub psd_residual: f64,
}

pub const DYKSTRA_DEFAULT_CAP: usize = 10_000;

fn symmetry_projection(t: &MultiTensor) -> MultiTensor {
    let mut acc = t.clone();
    for image in [exchange_image(t), pair_image(t), reality_image(t)] {
        acc = acc.add(&image).expect("same signatures");
    }
    // the remaining four orbit elements are compositions
    let er = reality_image(&exchange_image(t));
    let pr = reality_image(&pair_image(t));
    let ep = exchange_image(&pair_image(t));
    let epr = reality_image(&ep);
    for image in [er, pr, ep, epr] {
        acc = acc.add(&image).expect("same signatures");
    }
    acc.scale_re(1.0 / 8.0)
}

/// Dykstra alternating projection between the cone of tensors with positive
/// semidefinite operator and the linear symmetry subspace. Returns once the
/// symmetric iterate has operator eigenvalues above `-tol` and sits within
/// `tol` of the cone projection path.
pub fn dykstra_project(
    start: &MultiTensor,
    h: &LeviForm,
    tol: f64,
    cap: usize,
) -> Result<DykstraOutcome, CurvatureError> {
    let n = start.n();
    let paired = PairedBasis::build(n, h);
    let dim = n * n;

    let psd_project = |t: &MultiTensor| -> Result<(MultiTensor, f64), CurvatureError> {
        let m = paired.form_matrix(t);
        let (vals, vecs) = jacobi_eigh(&m, 1e-6)?;
        let min_eig = vals.first().copied().unwrap_or(0.0);
        let mut eigvecs = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut e = MultiTensor::zeros(n, vec![HOLO_LOWER, ANTI_LOWER]);
            for (k, f) in paired.elements.iter().enumerate() {
                let c = vecs.get(k, i);
                if c != 0.0 {
                    e = e.add(&f.scale_re(c)).expect("same signatures");
                }
            }
            eigvecs.push(e);
        }
        let clipped =
            CurvatureSpectrum::new(vals.iter().map(|&v| v.max(0.0)).collect(), eigvecs)?;
        Ok((clipped.assemble(), (-min_eig).max(0.0)))
    };

    let mut x = symmetry_projection(start);
    // reality holds on x; the cone correction lives in the same subspace
    let mut correction = MultiTensor::zeros(n, CURVATURE_SLOTS.to_vec());
    let mut last: Option<(f64, f64)> = None;
    let mut trace: Vec<(f64, f64)> = Vec::new();

    for iteration in 1..=cap {
        let shifted = x.add(&correction)?;
        let (y, _) = psd_project(&shifted)?;
        correction = shifted.sub(&y)?;
        x = symmetry_projection(&y);

        let sym_residual = symmetry_residuals(&x).max();
        let m = paired.form_matrix(&x);
        let (vals, _) = jacobi_eigh(&m, 1e-6)?;
        let psd_residual = (-vals.first().copied().unwrap_or(0.0)).max(0.0);
        last = Some((sym_residual, psd_residual));
        trace.push((sym_residual, psd_residual));
        if sym_residual <= tol && psd_residual <= tol {
            return Ok(DykstraOutcome {
                tensor: x,
                iterations: iteration,
                sym_residual,
                psd_residual,
            });
        }
    }
    let (sym_residual, psd_residual) = last.unwrap_or((f64::INFINITY, f64::INFINITY));
    let tail = trace.iter().rev().take(8).rev().cloned().collect();
    Err(CurvatureError::NoConvergence {
        iterations: cap,
        sym_residual,
        psd_residual,
        trace_tail: tail,
    })
}

/// Random valid non-negative curvature instance at the identity Levi form:
/// a seeded hermitian-reality start projected onto the intersection of the
/// symmetry subspace and the PSD cone.
pub fn gen_random_psd_symmetric(n: usize, seed: u64, tol: f64) -> Result<CurvatureTensor, CurvatureError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = MultiTensor::random(n, CURVATURE_SLOTS.to_vec(), &mut rng);
    let start = raw.add(&reality_image(&raw))?.scale_re(0.5);
    let h = LeviForm::identity(n);
    let outcome = dykstra_project(&start, &h, tol, DYKSTRA_DEFAULT_CAP)?;
    CurvatureTensor::new(outcome.tensor, (tol * 10.0).max(1e-10))
}
