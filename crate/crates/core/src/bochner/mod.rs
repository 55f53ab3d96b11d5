//! Verification machinery for the Bochner-type curvature inequality on
//! trace-free (p,q)-forms: coefficient splittings in exact rational
//! arithmetic, the direct inequality display, its per-eigenvalue
//! decomposition, the antisymmetrized caps and sum-of-squares combination,
//! equality-case checks, kernel-dimension bounds, and seeded verification
//! suites that aggregate residuals over many random trials.

pub mod oracle;

use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::curvature::{
    eigendecompose, gen_flat, gen_rank_one_sum, gen_random_psd_symmetric, kernel_dimension,
    operator_matrix, ricci, scalar, CurvatureError, CurvatureTensor,
};
use crate::exec::{map_trials, trial_seed};
use crate::forms::{
    conj_form, curvature_contract, project_tracefree, random_pq_form, FormError, PQForm,
};
use crate::levi::LeviForm;
use crate::tensor::{
    antisym_expansion_residual, norm_sq, square_pairing_residual, MultiTensor, TensorError,
    ANTI_LOWER, HOLO_LOWER,
};

/// Trace-freeness is load-bearing for the inequality; violations above this
/// relative threshold are rejected before any Bochner evaluation.
pub const TRACE_TOL: f64 = 1e-11;

#[derive(Debug, Error)]
pub enum BochnerError {
    #[error("split coefficients must be non-negative with N = M1 + M2; got N={n}, M1={m1}, M2={m2}")]
    InvalidSplit { n: Rational64, m1: Rational64, m2: Rational64 },
    #[error("shape constraint violated for (n,p,q)=({n},{p},{q}): {reason}")]
    ShapeConstraint { n: usize, p: usize, q: usize, reason: &'static str },
    #[error("q must satisfy 0 < q < n; got q={q}, n={n}")]
    QRange { q: usize, n: usize },
    #[error("form is not trace-free: residual {residual:.3e} exceeds {tol:.3e}")]
    TraceResidual { residual: f64, tol: f64 },
    #[error("value expected real, imaginary part {imag:.3e}")]
    NonRealValue { imag: f64 },
    #[error("equality-case hypotheses require M1 > 0 and M2 > 0")]
    DegenerateSplit,
    #[error("unknown suite `{0}`; expected lemma-antisym, symmetries, bochner, or equality")]
    UnknownSuite(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Non-negative curvature coefficients with the exact splitting `N = M1 + M2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitCoefficients {
    pub n: Rational64,
    pub m1: Rational64,
    pub m2: Rational64,
}

impl SplitCoefficients {
    pub fn new(n: Rational64, m1: Rational64, m2: Rational64) -> Result<Self, BochnerError> {
        if n != m1 + m2 {
            return Err(BochnerError::InvalidSplit { n, m1, m2 });
        }
        Ok(Self { n, m1, m2 })
    }

    pub fn splitting_defect(&self) -> Rational64 {
        self.m1 + self.m2 - self.n
    }

    pub fn is_nonnegative(&self) -> bool {
        let zero = Rational64::from_integer(0);
        self.n >= zero && self.m1 >= zero && self.m2 >= zero
    }

    pub fn n_f64(&self) -> f64 {
        ratio_to_f64(self.n)
    }

    pub fn m1_f64(&self) -> f64 {
        ratio_to_f64(self.m1)
    }

    pub fn m2_f64(&self) -> f64 {
        ratio_to_f64(self.m2)
    }
}

pub fn ratio_to_f64(r: Rational64) -> f64 {
    (*r.numer() as f64) / (*r.denom() as f64)
}

/// Curvature and gradient coefficients of one of the two Laplacian
/// refactorings, in exact rational arithmetic.
#[derive(Debug, Clone)]
pub struct WeitzenboeckTable {
    pub dim: usize,
    pub p: usize,
    pub q: usize,
    pub formula: u8,
    pub split: SplitCoefficients,
    /// coefficients of the two gradient terms and the mixed divergence term
    pub gradient: [Rational64; 3],
}

/// Curvature coefficient tables of the two refactorings. Formula 1 carries
/// `(1, q/n, (n-q)/n)`; formula 2 scales everything by `(n-p-q)/(n-p-q+2)`
/// with the the first Ricci weight shifted to `(q-1)/n`.
pub fn weitzenboeck_coefficients(
    n: usize,
    p: usize,
    q: usize,
    formula: u8,
) -> Result<WeitzenboeckTable, BochnerError> {
    if p + q >= n {
        return Err(BochnerError::ShapeConstraint {
            n,
            p,
            q,
            reason: "requires p + q <= n - 1",
        });
    }
    let ni = n as i64;
    let pi = p as i64;
    let qi = q as i64;
    let r = Rational64::new;
    match formula {
        1 => {
            let split = SplitCoefficients::new(
                Rational64::from_integer(1),
                r(qi, ni),
                r(ni - qi, ni),
            )?;
            Ok(WeitzenboeckTable {
                dim: n,
                p,
                q,
                formula,
                split,
                gradient: [r(qi, ni), r(ni - qi, ni), r(1, ni - pi - qi + 1)],
            })
        }
        2 => {
            let d = ni - pi - qi;
            let split = SplitCoefficients::new(
                r(d, d + 2),
                r((qi - 1) * d, ni * (d + 2)),
                r((ni - qi + 1) * d, ni * (d + 2)),
            )?;
            Ok(WeitzenboeckTable {
                dim: n,
                p,
                q,
                formula,
                split,
                gradient: [
                    r((qi - 1) * d, ni * (d + 2)),
                    r((ni - qi + 1) * d, ni * (d + 2)),
                    r(1, ni * (d + 2)),
                ],
            })
        }
        _ => Err(BochnerError::ShapeConstraint { n, p, q, reason: "formula must be 1 or 2" }),
    }
}

/// The integral-argument split `(n, q-1, n-q+1)`; `M1` vanishes exactly when
/// `q = 1`.
pub fn theorem_coefficients(n: usize, q: usize) -> Result<SplitCoefficients, BochnerError> {
    if q == 0 || q >= n {
        return Err(BochnerError::QRange { q, n });
    }
    SplitCoefficients::new(
        Rational64::from_integer(n as i64),
        Rational64::from_integer(q as i64 - 1),
        Rational64::from_integer(n as i64 - q as i64 + 1),
    )
}

/// Degree pairs covered by the vanishing statement:
/// `0 <= p <= n+1`, `0 < q < n`, `p + q` avoiding `{n, n+1}`.
pub fn valid_pq(n: usize) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for q in 1..n {
        for p in 0..=(n + 1) {
            if p + q != n && p + q != n + 1 {
                out.push((p, q));
            }
        }
    }
    out.sort();
    out
}

fn check_split(c: &SplitCoefficients) -> Result<(), BochnerError> {
    if !c.is_nonnegative() || c.splitting_defect() != Rational64::from_integer(0) {
        return Err(BochnerError::InvalidSplit { n: c.n, m1: c.m1, m2: c.m2 });
    }
    Ok(())
}

fn check_tracefree(w: &PQForm, h: &LeviForm) -> Result<(), BochnerError> {
    let residual = w.trace_residual(h);
    let tol = TRACE_TOL * w.coeffs().max_abs().max(1.0);
    if residual > tol {
        return Err(BochnerError::TraceResidual { residual, tol });
    }
    Ok(())
}

/// Scale factor used to normalize residuals: `|R| * |w|^2` in Frobenius norm.
pub fn bochner_scale(r: &CurvatureTensor, w: &PQForm) -> f64 {
    let wn = w.coeffs().frobenius();
    r.tensor().frobenius() * wn * wn
}

/// Raised conjugate dual used inside the inequality displays: blocks swapped,
/// entries conjugated and negated, every slot raised; slot order is
/// (antiholomorphic upper block, holomorphic upper block).
///
/// The sign here is parity-independent. The form-level conjugation carries
/// `(-1)^{pq}`, but pinning the displays against the positive-definite inner
/// product fixes the dual's sign at a constant `-1`: with the parity-dependent
/// sign the inequality flips orientation on even `pq` shapes.
fn display_dual(w: &PQForm, h: &LeviForm) -> Result<MultiTensor, BochnerError> {
    let (p, q) = (w.p(), w.q());
    let sign = if (p * q) % 2 == 0 { -1.0 } else { 1.0 };
    let mut t = conj_form(w).into_coeffs().scale_re(sign);
    for slot in 0..t.rank() {
        t = t.raise_index(slot, h)?;
    }
    Ok(t)
}

/// Pairs a tensor with free slots `(a, b~, A', B~')` against the raised
/// conjugate form (slot order `(b~, B~', a, A')`).
fn pair_quad(x: &MultiTensor, wbar_up: &MultiTensor, p: usize, q: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut dual = vec![0usize; p + q];
    x.for_each_index(|idx| {
        // idx = [a, b, A'(p-1), B'(q-1)]
        dual[0] = idx[1];
        dual[1..q].copy_from_slice(&idx[2 + (p - 1)..]);
        dual[q] = idx[0];
        dual[q + 1..].copy_from_slice(&idx[2..2 + (p - 1)]);
        acc += x.get(idx) * wbar_up.get(&dual);
    });
    acc
}

/// Pairs a tensor with free slots `(a, A', B~)` against the raised conjugate
/// form (slot order `(B~, a, A')`).
fn pair_ric_holo(y: &MultiTensor, wbar_up: &MultiTensor, p: usize, q: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut dual = vec![0usize; p + q];
    y.for_each_index(|idx| {
        // idx = [a, A'(p-1), B(q)]
        dual[..q].copy_from_slice(&idx[p..]);
        dual[q] = idx[0];
        dual[q + 1..].copy_from_slice(&idx[1..p]);
        acc += y.get(idx) * wbar_up.get(&dual);
    });
    acc
}

/// Pairs a tensor with free slots `(b~, A, B~')` against the raised conjugate
/// form (slot order `(b~, B~', A)`).
fn pair_ric_anti(z: &MultiTensor, wbar_up: &MultiTensor, p: usize, q: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut dual = vec![0usize; p + q];
    z.for_each_index(|idx| {
        // idx = [b, A(p), B'(q-1)]
        dual[0] = idx[0];
        dual[1..q].copy_from_slice(&idx[1 + p..]);
        dual[q..].copy_from_slice(&idx[1..1 + p]);
        acc += z.get(idx) * wbar_up.get(&dual);
    });
    acc
}

fn real_checked(v: Complex64, scale: f64) -> Result<f64, BochnerError> {
    if v.im.abs() > 1e-10 * scale.max(1.0) {
        return Err(BochnerError::NonRealValue { imag: v.im });
    }
    Ok(v.re)
}

/// Direct evaluation of the curvature term of the inequality:
/// `-N p q R_{a b~}{}^{n~ m} w_{m A' n~ B~'} wbar^{b~ B~' a A'}
///  + M1 p R_a{}^m w_{m A' B~} wbar^{B~ a A'}
///  + M2 q R^{n~}{}_{b~} w_{A n~ B~'} wbar^{b~ B~' A}`
///
/// where `wbar` is the raised conjugate dual. Requires a trace-free form and
/// a non-negative split; the value is real up to rounding.
pub fn lhs_direct(
    c: &SplitCoefficients,
    r: &CurvatureTensor,
    w: &PQForm,
    h: &LeviForm,
) -> Result<f64, BochnerError> {
    check_split(c)?;
    check_tracefree(w, h)?;
    let (p, q) = (w.p(), w.q());
    let n = w.n();
    if p + q > n.saturating_sub(1) {
        return Err(BochnerError::ShapeConstraint {
            n,
            p,
            q,
            reason: "requires p + q <= n - 1",
        });
    }
    let wbar_up = display_dual(w, h)?;
    let mut total = Complex64::new(0.0, 0.0);

    if p >= 1 && q >= 1 {
        let x = curvature_contract(r, w, h)?.scale_re(-1.0);
        total += pair_quad(&x, &wbar_up, p, q) * (-(c.n_f64() * (p * q) as f64));
    }
    if p >= 1 {
        let raised = ricci(r, h).raise_index(1, h)?;
        let y = raised.tensor_product(w.coeffs()).contract(1, 2)?;
        total += pair_ric_holo(&y, &wbar_up, p, q) * (c.m1_f64() * p as f64);
    }
    if q >= 1 {
        let raised = ricci(r, h).raise_index(0, h)?;
        let z = raised.tensor_product(w.coeffs()).contract(0, 2 + p)?;
        total += pair_ric_anti(&z, &wbar_up, p, q) * (c.m2_f64() * q as f64);
    }
    real_checked(total, bochner_scale(r, w))
}

/// One eigenvalue's summand of the spectral decomposition of the curvature
/// term, with its eigenvalue factored out:
/// `N p q E_{a b~} E^{n~ m} w wbar - M1 p E_{a d~} E^{d~ m} w wbar
///  - M2 q E^{n~ d} E_{d b~} w wbar`.
/// The eigenvalue-weighted sum over a full spectrum reproduces `lhs_direct`.
pub fn per_eigen_summand(
    eigvec: &MultiTensor,
    w: &PQForm,
    c: &SplitCoefficients,
    h: &LeviForm,
) -> Result<f64, BochnerError> {
    check_split(c)?;
    check_tracefree(w, h)?;
    let (p, q) = (w.p(), w.q());
    let wbar_up = display_dual(w, h)?;
    let e_up = eigvec.raise_index(0, h)?.raise_index(1, h)?;
    let mut total = Complex64::new(0.0, 0.0);

    if p >= 1 && q >= 1 {
        // inner contraction E^{n~ m} w_{m A' n~ B~'}
        let prod = e_up.tensor_product(w.coeffs());
        let v = prod.contract(1, 2)?.contract(0, p)?;
        // assemble E_{a b~} V_{A' B~'} with free order (a, b~, A', B~')
        let x = eigvec.tensor_product(&v);
        total += pair_quad(&x, &wbar_up, p, q) * (c.n_f64() * (p * q) as f64);
    }
    if p >= 1 {
        // E_{a d~} E^{d~ m}
        let g = eigvec.tensor_product(&e_up).contract(1, 2)?;
        let y = g.tensor_product(w.coeffs()).contract(1, 2)?;
        total -= pair_ric_holo(&y, &wbar_up, p, q) * (c.m1_f64() * p as f64);
    }
    if q >= 1 {
        // E^{n~ d} E_{d b~}
        let g = e_up.tensor_product(eigvec).contract(1, 2)?;
        let z = g.tensor_product(w.coeffs()).contract(0, 2 + p)?;
        total -= pair_ric_anti(&z, &wbar_up, p, q) * (c.m2_f64() * q as f64);
    }
    let wn = w.coeffs().frobenius();
    real_checked(total, eigvec.frobenius() * wn * wn)
}

/// Whether the contracted dummy slot participates in the antisymmetrization
/// bracket of the caps. Both readings are implemented; the suite determines
/// which (if either) satisfies the sum-of-squares identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketExtent {
    /// antisymmetrize over the free slots and the dummy's slot, then contract
    IncludeDummy,
    /// contract first, antisymmetrize over the free slots only
    FreeOnly,
}

/// The two antisymmetrized caps built from one hermitian eigenvector and a
/// trace-free form:
/// `OmegaTilde = E^{[n~}{}_{d~} wbar^{d~ B~'] a A'}` (slots all upper, anti
/// block then holo block) and `Omega = E_{[a}{}^{d} w_{d A'] n~ B~'}` (slots
/// all lower, holo block then anti block).
pub fn omega_caps(
    eigvec: &MultiTensor,
    w: &PQForm,
    h: &LeviForm,
    extent: BracketExtent,
) -> Result<(MultiTensor, MultiTensor), BochnerError> {
    let (p, q) = (w.p(), w.q());
    if p == 0 || q == 0 {
        return Err(BochnerError::ShapeConstraint {
            n: w.n(),
            p,
            q,
            reason: "caps require p >= 1 and q >= 1",
        });
    }
    let wbar_up = display_dual(w, h)?;

    // OmegaTilde: E with its holomorphic slot raised, paired into wbar
    let e_mixed = eigvec.raise_index(0, h)?;
    // slots: [0: n~ upper (E), 1: d~ lower (E)] (x) [2..2+q anti-up, 2+q.. holo-up]
    let t = e_mixed.tensor_product(&wbar_up);
    let omega_tilde = match extent {
        BracketExtent::IncludeDummy => {
            let mut bracket = vec![0usize];
            bracket.extend(2..2 + q);
            t.antisymmetrize(&bracket)?.contract(1, 2)?
        }
        BracketExtent::FreeOnly => {
            let contracted = t.contract(1, 2)?;
            let bracket: Vec<usize> = (0..q).collect();
            contracted.antisymmetrize(&bracket)?
        }
    };

    // Omega: E with its antiholomorphic slot raised, paired into w
    let e_mixed = eigvec.raise_index(1, h)?;
    // slots: [0: a lower (E), 1: d upper (E)] (x) [2..2+p holo-low, 2+p.. anti-low]
    let t = e_mixed.tensor_product(w.coeffs());
    let omega = match extent {
        BracketExtent::IncludeDummy => {
            let mut bracket = vec![0usize];
            bracket.extend(2..2 + p);
            t.antisymmetrize(&bracket)?.contract(1, 2)?
        }
        BracketExtent::FreeOnly => {
            let contracted = t.contract(1, 2)?;
            let bracket: Vec<usize> = (0..p).collect();
            contracted.antisymmetrize(&bracket)?
        }
    };
    Ok((omega_tilde, omega))
}

/// The manifestly non-negative combination
/// `M1 (q+1)^2 p |OmegaTilde|^2 + M2 (p+1)^2 q |Omega|^2`.
pub fn rhs_positivity(
    c: &SplitCoefficients,
    p: usize,
    q: usize,
    omega_tilde: &MultiTensor,
    omega: &MultiTensor,
    h: &LeviForm,
) -> Result<f64, BochnerError> {
    let nt = norm_sq(omega_tilde, h)?;
    let no = norm_sq(omega, h)?;
    Ok(c.m1_f64() * ((q + 1) * (q + 1) * p) as f64 * nt
        + c.m2_f64() * ((p + 1) * (p + 1) * q) as f64 * no)
}

/// Outcome of the equality-case check on one instance.
#[derive(Debug, Clone, Copy)]
pub struct EqualityReport {
    pub lhs: f64,
    pub contract_norm: f64,
    pub scale: f64,
    /// vacuously true when `lhs` is not small
    pub forward_holds: bool,
}

/// Checks the forward equality implication: when the curvature term vanishes
/// (relative to scale), the curvature contraction of the form must vanish
/// too. Requires strictly positive `M1` and `M2`.
pub fn equality_case_check(
    r: &CurvatureTensor,
    w: &PQForm,
    h: &LeviForm,
    c: &SplitCoefficients,
    tol: f64,
) -> Result<EqualityReport, BochnerError> {
    let zero = Rational64::from_integer(0);
    if c.m1 <= zero || c.m2 <= zero {
        return Err(BochnerError::DegenerateSplit);
    }
    let lhs = lhs_direct(c, r, w, h)?;
    let contract = curvature_contract(r, w, h)?;
    let contract_norm = norm_sq(&contract, h)?.sqrt();
    let scale = bochner_scale(r, w).max(1e-300);
    let forward_holds = if lhs.abs() <= tol * scale {
        contract_norm <= (10.0 * tol) * scale
    } else {
        true
    };
    Ok(EqualityReport { lhs, contract_norm, scale, forward_holds })
}

/// Per-degree kernel-dimension bounds at one point.
#[derive(Debug, Clone, Serialize)]
pub struct BettiReport {
    pub n: usize,
    pub kernel_dim: usize,
    /// pointwise bound, one entry per valid (p,q), all equal to `kernel_dim`
    pub bounds: Vec<BettiBound>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BettiBound {
    pub p: usize,
    pub q: usize,
    pub bound: usize,
}

/// Kernel-dimension bound for every valid degree pair, computed from the
/// operator spectrum at a single point.
pub fn betti_bound_report(
    r: &CurvatureTensor,
    h: &LeviForm,
    tol: f64,
) -> Result<BettiReport, BochnerError> {
    let spectrum = eigendecompose(&operator_matrix(r, h), 1e-8)?;
    let kernel_dim = kernel_dimension(&spectrum, tol)?;
    let bounds = valid_pq(r.n())
        .into_iter()
        .map(|(p, q)| BettiBound { p, q, bound: kernel_dim })
        .collect();
    Ok(BettiReport { n: r.n(), kernel_dim, bounds })
}

/// A valid instance with a prescribed number of strictly positive operator
/// directions supported on the leading `support` coordinates, together with a
/// trace-free form supported on the complementary block. The form lies in the
/// kernel of every positive direction, so both the curvature term and the
/// curvature contraction vanish on it.
pub fn kernel_aligned_instance(
    n: usize,
    p: usize,
    q: usize,
    positive_dirs: usize,
    support: usize,
    seed: u64,
) -> Result<(CurvatureTensor, PQForm), BochnerError> {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    assert!(support < n, "the form needs a non-trivial complement block");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::with_capacity(positive_dirs);
    for _ in 0..positive_dirs {
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| {
                if i < support {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= norm.max(1e-12);
        }
        terms.push((v, rng.gen_range(0.5..2.0)));
    }
    let r = gen_rank_one_sum(n, &terms);

    let m = n - support;
    let h_small = LeviForm::identity(m);
    let small = project_tracefree(&random_pq_form(m, p, q, seed ^ 0x9e3779b97f4a7c15)?, &h_small, 1e-12)?;
    // embed the complement-block form into dimension n at offset `support`
    let mut slots = vec![HOLO_LOWER; p];
    slots.extend(vec![ANTI_LOWER; q]);
    let mut coeffs = MultiTensor::zeros(n, slots);
    let small_coeffs = small.coeffs();
    small_coeffs.for_each_index(|idx| {
        let shifted: Vec<usize> = idx.iter().map(|&i| i + support).collect();
        coeffs.set(&shifted, small_coeffs.get(idx));
    });
    let w = PQForm::new(coeffs, p, q, 1e-10)?;
    Ok((r, w))
}

/// Suite configuration: every quantity a suite needs, with the defaults the
/// command line uses.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    /// antisymmetrization arity for the expansion suite
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { n: 3, p: 1, q: 1, k: 3, trials: 100, seed: 42, tol: 1e-10 }
    }
}

/// One violated bound in a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub quantity: String,
    pub value: f64,
    pub bound: f64,
}

/// Aggregated outcome of a verification suite; `failures` is empty exactly
/// when the suite passed.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub max_residual: f64,
    pub min_lhs: f64,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct TrialOutcome {
    max_residual: f64,
    min_lhs: f64,
    failures: Vec<Failure>,
}

impl TrialOutcome {
    fn clean() -> Self {
        Self { max_residual: 0.0, min_lhs: f64::INFINITY, failures: Vec::new() }
    }

    fn residual(&mut self, trial: u64, quantity: &str, value: f64, bound: f64) {
        self.max_residual = self.max_residual.max(value);
        if value > bound {
            self.failures.push(Failure {
                trial,
                quantity: quantity.to_string(),
                value,
                bound,
            });
        }
    }

    fn lower_bound(&mut self, trial: u64, quantity: &str, value: f64, bound: f64) {
        self.min_lhs = self.min_lhs.min(value);
        if value < bound {
            self.failures.push(Failure {
                trial,
                quantity: quantity.to_string(),
                value,
                bound,
            });
        }
    }

    fn error(&mut self, trial: u64, quantity: &str, message: String) {
        self.failures.push(Failure {
            trial,
            quantity: format!("{quantity}: {message}"),
            value: f64::INFINITY,
            bound: 0.0,
        });
    }
}

fn aggregate(suite: &str, config: &SuiteConfig, outcomes: Vec<TrialOutcome>) -> VerificationReport {
    let mut max_residual: f64 = 0.0;
    let mut min_lhs = f64::INFINITY;
    let mut failures = Vec::new();
    for outcome in outcomes {
        max_residual = max_residual.max(outcome.max_residual);
        min_lhs = min_lhs.min(outcome.min_lhs);
        failures.extend(outcome.failures);
    }
    if !min_lhs.is_finite() {
        min_lhs = 0.0;
    }
    VerificationReport {
        suite: suite.to_string(),
        trials: config.trials,
        seed: config.seed,
        max_residual,
        min_lhs,
        failures,
    }
}

/// Runs a named verification suite. Trials are independent and fan out over
/// a worker pool when the `parallel` feature is enabled; per-trial seeds are
/// derived as `seed + trial`.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<VerificationReport, BochnerError> {
    match name {
        "lemma-antisym" => Ok(run_lemma_antisym(config)),
        "symmetries" => Ok(run_symmetries(config)),
        "bochner" => Ok(run_bochner(config)),
        "equality" => Ok(run_equality(config)),
        other => Err(BochnerError::UnknownSuite(other.to_string())),
    }
}

fn run_lemma_antisym(config: &SuiteConfig) -> VerificationReport {
    let (n, k, tol) = (config.n, config.k, config.tol);
    let base = config.seed;
    let outcomes = map_trials(config.trials, |trial| {
        use rand::SeedableRng;
        let mut out = TrialOutcome::clean();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(trial_seed(base, trial));
        let h = LeviForm::identity(n);
        let slots = vec![HOLO_LOWER; k];
        let raw = MultiTensor::random(n, slots, &mut rng);
        let tail: Vec<usize> = (1..k).collect();
        let t = match raw.antisymmetrize(&tail) {
            Ok(t) => t,
            Err(e) => {
                out.error(trial, "antisymmetrize", e.to_string());
                return out;
            }
        };
        match antisym_expansion_residual(&t, 1e-9) {
            Ok(residual) => out.residual(trial, "expansion", residual, tol),
            Err(e) => out.error(trial, "expansion", e.to_string()),
        }
        match square_pairing_residual(&t, &h, 1e-9) {
            Ok(residual) => out.residual(trial, "pairing", residual, tol),
            Err(e) => out.error(trial, "pairing", e.to_string()),
        }
        out
    });
    aggregate("lemma-antisym", config, outcomes)
}

fn run_symmetries(config: &SuiteConfig) -> VerificationReport {
    let (n, tol) = (config.n, config.tol);
    let base = config.seed;
    let outcomes = map_trials(config.trials, |trial| {
        let mut out = TrialOutcome::clean();
        let h = LeviForm::identity(n);
        let r = match gen_random_psd_symmetric(n, trial_seed(base, trial), tol) {
            Ok(r) => r,
            Err(e) => {
                out.error(trial, "generator", e.to_string());
                return out;
            }
        };
        let report = r.check_symmetries();
        out.residual(trial, "exchange-symmetry", report.exchange, tol);
        out.residual(trial, "pair-symmetry", report.pair, tol);
        out.residual(trial, "hermitian-reality", report.reality, tol);

        let op = operator_matrix(&r, &h);
        out.residual(trial, "operator-symmetric", op.matrix().symmetry_residual(), tol);
        let spectrum = match eigendecompose(&op, 1e-8) {
            Ok(s) => s,
            Err(e) => {
                out.error(trial, "eigendecompose", e.to_string());
                return out;
            }
        };
        out.lower_bound(trial, "min-eigenvalue", spectrum.min_lambda(), -tol);
        out.residual(trial, "eigvec-hermitian", spectrum.hermiticity_residual(), 1e-9);
        out.residual(trial, "eigvec-orthonormal", spectrum.orthonormality_residual(&h), tol);
        let diag = crate::curvature::check_diag_symmetries(&spectrum);
        out.residual(trial, "diag-exchange", diag.exchange, tol);
        out.residual(trial, "diag-pair", diag.pair, tol);
        out.residual(
            trial,
            "reconstruction",
            spectrum.assemble().max_abs_diff(r.tensor()),
            tol,
        );
        let ric = ricci(&r, &h);
        out.residual(
            trial,
            "ricci-hermitian",
            ric.max_abs_diff(&ric.conjugate().permute_slots(&[1, 0])),
            tol,
        );
        out.residual(
            trial,
            "sign-convention",
            crate::curvature::check_sign_convention(&r, &h, -1.0),
            1e-8 * r.tensor().max_abs().max(1.0),
        );
        let _ = scalar(&r, &h);
        out
    });
    aggregate("symmetries", config, outcomes)
}

fn bochner_splits(n: usize, p: usize, q: usize) -> Result<Vec<(&'static str, SplitCoefficients)>, BochnerError> {
    Ok(vec![
        ("theorem", theorem_coefficients(n, q)?),
        ("refactor-1", weitzenboeck_coefficients(n, p, q, 1)?.split),
        ("refactor-2", weitzenboeck_coefficients(n, p, q, 2)?.split),
    ])
}

fn run_bochner(config: &SuiteConfig) -> VerificationReport {
    let (n, p, q, tol) = (config.n, config.p, config.q, config.tol);
    let base = config.seed;
    let splits = match bochner_splits(n, p, q) {
        Ok(s) => s,
        Err(e) => {
            let mut report = aggregate("bochner", config, Vec::new());
            report.failures.push(Failure {
                trial: 0,
                quantity: format!("configuration: {e}"),
                value: f64::INFINITY,
                bound: 0.0,
            });
            return report;
        }
    };
    let outcomes = map_trials(config.trials, |trial| {
        let mut out = TrialOutcome::clean();
        let h = LeviForm::identity(n);
        let seed = trial_seed(base, trial);
        let r = match gen_random_psd_symmetric(n, seed, tol.min(1e-10)) {
            Ok(r) => r,
            Err(e) => {
                out.error(trial, "generator", e.to_string());
                return out;
            }
        };
        let w = match random_pq_form(n, p, q, seed ^ 0x5bf0_3635)
            .map_err(BochnerError::from)
            .and_then(|w0| project_tracefree(&w0, &h, 1e-12).map_err(BochnerError::from))
        {
            Ok(w) => w,
            Err(e) => {
                out.error(trial, "form", e.to_string());
                return out;
            }
        };
        let scale = bochner_scale(&r, &w).max(1e-300);

        for (label, split) in &splits {
            match lhs_direct(split, &r, &w, &h) {
                Ok(lhs) => {
                    out.lower_bound(trial, &format!("lhs[{label}]"), lhs / scale, -tol);
                }
                Err(e) => out.error(trial, &format!("lhs[{label}]"), e.to_string()),
            }
        }

        // spectral decomposition consistency for the first split
        let split = &splits[0].1;
        match (lhs_direct(split, &r, &w, &h), eigendecompose(&operator_matrix(&r, &h), 1e-8)) {
            (Ok(lhs), Ok(spectrum)) => {
                let mut sum = 0.0;
                let mut failed = false;
                for (lambda, e) in spectrum.lambdas.iter().zip(&spectrum.eigvecs) {
                    match per_eigen_summand(e, &w, split, &h) {
                        Ok(f) => sum += lambda * f,
                        Err(err) => {
                            out.error(trial, "per-eigen", err.to_string());
                            failed = true;
                            break;
                        }
                    }
                }
                if !failed {
                    let denom = lhs.abs().max(scale);
                    out.residual(trial, "decomposition", (sum - lhs).abs() / denom, 1e-9);
                }
            }
            (Err(e), _) => out.error(trial, "decomposition", e.to_string()),
            (_, Err(e)) => out.error(trial, "decomposition", e.to_string()),
        }

        // linearity in the curvature: scaling R scales the term exactly
        let doubled = CurvatureTensor::from_tensor_unchecked(r.tensor().scale_re(2.0));
        match (lhs_direct(split, &r, &w, &h), lhs_direct(split, &doubled, &w, &h)) {
            (Ok(a), Ok(b)) => {
                out.residual(trial, "linearity", (b - 2.0 * a).abs() / scale, 1e-12)
            }
            (Err(e), _) | (_, Err(e)) => out.error(trial, "linearity", e.to_string()),
        }
        out
    });
    aggregate("bochner", config, outcomes)
}

fn run_equality(config: &SuiteConfig) -> VerificationReport {
    let (n, p, q, tol) = (config.n, config.p, config.q, config.tol);
    let base = config.seed;
    let split = match weitzenboeck_coefficients(n, p, q, 1) {
        Ok(t) => t.split,
        Err(e) => {
            let mut report = aggregate("equality", config, Vec::new());
            report.failures.push(Failure {
                trial: 0,
                quantity: format!("configuration: {e}"),
                value: f64::INFINITY,
                bound: 0.0,
            });
            return report;
        }
    };
    let outcomes = map_trials(config.trials, |trial| {
        let mut out = TrialOutcome::clean();
        let h = LeviForm::identity(n);
        let seed = trial_seed(base, trial);

        // flat curvature: both sides vanish identically
        let flat = gen_flat(n);
        match random_pq_form(n, p, q, seed)
            .map_err(BochnerError::from)
            .and_then(|w0| project_tracefree(&w0, &h, 1e-12).map_err(BochnerError::from))
            .and_then(|w| equality_case_check(&flat, &w, &h, &split, tol))
        {
            Ok(report) => {
                out.residual(trial, "flat-lhs", report.lhs.abs(), 1e-14);
                out.residual(trial, "flat-contract", report.contract_norm, 1e-14);
            }
            Err(e) => out.error(trial, "flat", e.to_string()),
        }

        // constructed kernel-aligned instance: equality is achieved
        if n >= 3 {
            let support = 1;
            match kernel_aligned_instance(n, p, q, 1, support, seed) {
                Ok((r, w)) => match equality_case_check(&r, &w, &h, &split, tol) {
                    Ok(report) => {
                        let scale = report.scale;
                        out.residual(trial, "kernel-lhs", report.lhs.abs() / scale, tol);
                        out.residual(
                            trial,
                            "kernel-contract",
                            report.contract_norm / scale,
                            10.0 * tol,
                        );
                    }
                    Err(e) => out.error(trial, "kernel-aligned", e.to_string()),
                },
                Err(e) => out.error(trial, "kernel-aligned", e.to_string()),
            }
        }

        // generic instance: forward implication, vacuous off the equality locus
        match gen_random_psd_symmetric(n, seed, tol.min(1e-10))
            .map_err(BochnerError::from)
            .and_then(|r| {
                let w = project_tracefree(&random_pq_form(n, p, q, seed ^ 0x1f2e)?, &h, 1e-12)?;
                equality_case_check(&r, &w, &h, &split, tol)
            }) {
            Ok(report) => {
                out.lower_bound(trial, "generic-lhs", report.lhs / report.scale, -tol);
                if !report.forward_holds {
                    out.error(
                        trial,
                        "forward-implication",
                        format!(
                            "lhs {:.3e} small but contraction norm {:.3e}",
                            report.lhs, report.contract_norm
                        ),
                    );
                }
            }
            Err(e) => out.error(trial, "generic", e.to_string()),
        }
        out
    });
    aggregate("equality", config, outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::gen_constant;
    use approx::assert_abs_diff_eq;

    #[test]
    fn weitzenboeck_formula_one_values() {
        let t = weitzenboeck_coefficients(3, 1, 1, 1).unwrap();
        assert_eq!(t.split.n, Rational64::from_integer(1));
        assert_eq!(t.split.m1, Rational64::new(1, 3));
        assert_eq!(t.split.m2, Rational64::new(2, 3));

        // the curvature split reads off q and n only
        let t = weitzenboeck_coefficients(3, 2, 1, 1);
        assert!(t.is_err(), "p+q=3 exceeds n-1=2");
        let t = weitzenboeck_coefficients(4, 2, 1, 1).unwrap();
        assert_eq!(t.split.m1, Rational64::new(1, 4));
        assert_eq!(t.split.m2, Rational64::new(3, 4));
    }

    #[test]
    fn weitzenboeck_formula_two_values() {
        let t = weitzenboeck_coefficients(4, 1, 2, 2).unwrap();
        assert_eq!(t.split.n, Rational64::new(1, 3));
        assert_eq!(t.split.m1, Rational64::new(1, 12));
        assert_eq!(t.split.m2, Rational64::new(1, 4));
        assert_eq!(t.split.splitting_defect(), Rational64::from_integer(0));
    }

    #[test]
    fn splitting_exact_for_all_small_shapes() {
        for n in 2..=6usize {
            for p in 0..n {
                for q in 1..n {
                    if p + q >= n {
                        continue;
                    }
                    for formula in [1u8, 2] {
                        let t = weitzenboeck_coefficients(n, p, q, formula).unwrap();
                        assert_eq!(
                            t.split.splitting_defect(),
                            Rational64::from_integer(0),
                            "n={n} p={p} q={q} formula={formula}"
                        );
                    }
                }
            }
            for q in 1..n {
                let c = theorem_coefficients(n, q).unwrap();
                assert_eq!(c.splitting_defect(), Rational64::from_integer(0));
            }
        }
    }

    #[test]
    fn theorem_coefficients_values() {
        let c = theorem_coefficients(3, 1).unwrap();
        assert_eq!(
            (c.n, c.m1, c.m2),
            (
                Rational64::from_integer(3),
                Rational64::from_integer(0),
                Rational64::from_integer(3)
            )
        );
        let c = theorem_coefficients(3, 2).unwrap();
        assert_eq!(
            (c.n, c.m1, c.m2),
            (
                Rational64::from_integer(3),
                Rational64::from_integer(1),
                Rational64::from_integer(2)
            )
        );
        assert!(theorem_coefficients(3, 0).is_err());
        assert!(theorem_coefficients(3, 3).is_err());
    }

    #[test]
    fn valid_pq_matches_constraints() {
        let n3 = valid_pq(3);
        assert_eq!(n3, vec![(0, 1), (0, 2), (1, 1), (3, 2), (4, 1), (4, 2)]);
        let n2 = valid_pq(2);
        assert_eq!(n2, vec![(0, 1), (3, 1)]);
        assert!(valid_pq(1).is_empty());
        for n in 2..=5 {
            for (p, q) in valid_pq(n) {
                assert!(p + q != n && p + q != n + 1);
                assert!(q >= 1 && q < n && p <= n + 1);
            }
        }
    }

    #[test]
    fn lhs_flat_is_zero() {
        let n = 3;
        let h = LeviForm::identity(n);
        let r = gen_flat(n);
        let w = project_tracefree(&random_pq_form(n, 1, 1, 7).unwrap(), &h, 1e-12).unwrap();
        let c = theorem_coefficients(n, 1).unwrap();
        assert_eq!(lhs_direct(&c, &r, &w, &h).unwrap(), 0.0);
    }

    #[test]
    fn lhs_rejects_non_tracefree() {
        let n = 3;
        let h = LeviForm::identity(n);
        let r = gen_constant(n, 1.0, &h);
        let w = random_pq_form(n, 1, 1, 8).unwrap();
        let c = theorem_coefficients(n, 1).unwrap();
        assert!(matches!(
            lhs_direct(&c, &r, &w, &h),
            Err(BochnerError::TraceResidual { .. })
        ));
    }

    #[test]
    fn lhs_nonnegative_on_rank_one_instances() {
        let n = 3;
        let h = LeviForm::identity(n);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let r = gen_rank_one_sum(n, &[(vec![one, zero, zero], 1.0)]);
        let c = weitzenboeck_coefficients(n, 1, 1, 1).unwrap().split;
        for seed in 0..10u64 {
            let w = project_tracefree(&random_pq_form(n, 1, 1, seed).unwrap(), &h, 1e-12).unwrap();
            let v = lhs_direct(&c, &r, &w, &h).unwrap();
            assert!(v >= -1e-12, "seed {seed}: lhs {v}");
        }
    }

    #[test]
    fn lhs_nonnegative_on_constant_curvature() {
        let n = 3;
        let h = LeviForm::identity(n);
        let r = gen_constant(n, 1.0, &h);
        for (p, q) in [(1usize, 1usize)] {
            for split in [
                theorem_coefficients(n, q).unwrap(),
                weitzenboeck_coefficients(n, p, q, 1).unwrap().split,
                weitzenboeck_coefficients(n, p, q, 2).unwrap().split,
            ] {
                for seed in 0..10u64 {
                    let w = project_tracefree(&random_pq_form(n, p, q, seed).unwrap(), &h, 1e-12)
                        .unwrap();
                    let v = lhs_direct(&split, &r, &w, &h).unwrap();
                    let scale = bochner_scale(&r, &w);
                    assert!(v >= -1e-10 * scale, "seed {seed}: lhs {v}");
                }
            }
        }
    }

    #[test]
    fn decomposition_matches_direct_evaluation() {
        let n = 3;
        let h = LeviForm::identity(n);
        let r = gen_constant(n, 1.0, &h);
        let spectrum = eigendecompose(&operator_matrix(&r, &h), 1e-10).unwrap();
        let c = SplitCoefficients::new(
            Rational64::from_integer(2),
            Rational64::from_integer(1),
            Rational64::from_integer(1),
        )
        .unwrap();
        let w = project_tracefree(&random_pq_form(n, 1, 1, 12).unwrap(), &h, 1e-12).unwrap();
        let lhs = lhs_direct(&c, &r, &w, &h).unwrap();
        let mut sum = 0.0;
        for (lambda, e) in spectrum.lambdas.iter().zip(&spectrum.eigvecs) {
            sum += lambda * per_eigen_summand(e, &w, &c, &h).unwrap();
        }
        assert_abs_diff_eq!(sum, lhs, epsilon = 1e-9 * lhs.abs().max(1.0));
    }

    #[test]
    fn caps_vanish_for_zero_eigvec() {
        let n = 3;
        let h = LeviForm::identity(n);
        let e = MultiTensor::zeros(n, vec![HOLO_LOWER, ANTI_LOWER]);
        let w = project_tracefree(&random_pq_form(n, 1, 1, 13).unwrap(), &h, 1e-12).unwrap();
        for extent in [BracketExtent::IncludeDummy, BracketExtent::FreeOnly] {
            let (t, o) = omega_caps(&e, &w, &h, extent).unwrap();
            assert_eq!(t.max_abs(), 0.0);
            assert_eq!(o.max_abs(), 0.0);
        }
    }

    #[test]
    fn caps_norms_are_nonnegative_and_finite() {
        let n = 3;
        let h = LeviForm::identity(n);
        let r = gen_constant(n, 1.0, &h);
        let spectrum = eigendecompose(&operator_matrix(&r, &h), 1e-10).unwrap();
        let w = project_tracefree(&random_pq_form(n, 1, 1, 14).unwrap(), &h, 1e-12).unwrap();
        let c = weitzenboeck_coefficients(n, 1, 1, 1).unwrap().split;
        for e in &spectrum.eigvecs {
            for extent in [BracketExtent::IncludeDummy, BracketExtent::FreeOnly] {
                let (t, o) = omega_caps(e, &w, &h, extent).unwrap();
                let v = rhs_positivity(&c, 1, 1, &t, &o, &h).unwrap();
                assert!(v.is_finite() && v >= 0.0);
            }
        }
    }

    #[test]
    fn summand_vanishes_when_contractions_vanish() {
        let n = 3;
        let h = LeviForm::identity(n);
        let (r, w) = kernel_aligned_instance(n, 1, 1, 1, 1, 21).unwrap();
        let spectrum = eigendecompose(&operator_matrix(&r, &h), 1e-8).unwrap();
        let split = weitzenboeck_coefficients(n, 1, 1, 1).unwrap().split;
        let e = spectrum.eigvecs.last().unwrap();
        let f = per_eigen_summand(e, &w, &split, &h).unwrap();
        assert!(f.abs() < 1e-12, "summand {f}");
    }

    #[test]
    fn caps_vanish_on_kernel_aligned_form() {
        let n = 3;
        let h = LeviForm::identity(n);
        let (r, w) = kernel_aligned_instance(n, 1, 1, 1, 1, 5).unwrap();
        let spectrum = eigendecompose(&operator_matrix(&r, &h), 1e-8).unwrap();
        // the positive direction is the last eigenvalue
        let e = spectrum.eigvecs.last().unwrap();
        // with the free-slot bracket the vanishing contraction kills both caps;
        // the dummy-inclusive bracket retains a trace(E) term and does not
        let (t, o) = omega_caps(e, &w, &h, BracketExtent::FreeOnly).unwrap();
        assert!(norm_sq(&t, &h).unwrap() < 1e-12);
        assert!(norm_sq(&o, &h).unwrap() < 1e-12);
        let (t, _) = omega_caps(e, &w, &h, BracketExtent::IncludeDummy).unwrap();
        assert!(norm_sq(&t, &h).unwrap() > 1e-6);
    }

    #[test]
    fn equality_on_flat_and_kernel_instances() {
        let n = 3;
        let h = LeviForm::identity(n);
        let split = weitzenboeck_coefficients(n, 1, 1, 1).unwrap().split;
        let w = project_tracefree(&random_pq_form(n, 1, 1, 16).unwrap(), &h, 1e-12).unwrap();
        let flat = gen_flat(n);
        let report = equality_case_check(&flat, &w, &h, &split, 1e-10).unwrap();
        assert_eq!(report.lhs, 0.0);
        assert_eq!(report.contract_norm, 0.0);
        assert!(report.forward_holds);

        let (r, w) = kernel_aligned_instance(n, 1, 1, 1, 1, 17).unwrap();
        let report = equality_case_check(&r, &w, &h, &split, 1e-10).unwrap();
        assert!(report.lhs.abs() <= 1e-10 * report.scale);
        assert!(report.contract_norm <= 1e-9 * report.scale);
        assert!(report.forward_holds);
    }

    #[test]
    fn equality_rejects_degenerate_split() {
        let n = 3;
        let h = LeviForm::identity(n);
        let r = gen_flat(n);
        let w = project_tracefree(&random_pq_form(n, 1, 1, 18).unwrap(), &h, 1e-12).unwrap();
        let c = theorem_coefficients(n, 1).unwrap(); // M1 = 0
        assert!(matches!(
            equality_case_check(&r, &w, &h, &c, 1e-10),
            Err(BochnerError::DegenerateSplit)
        ));
    }

    #[test]
    fn betti_report_constant_and_flat() {
        let n = 3;
        let h = LeviForm::identity(n);
        let report = betti_bound_report(&gen_constant(n, 1.0, &h), &h, 1e-8).unwrap();
        assert_eq!(report.kernel_dim, 0);
        assert!(report.bounds.iter().all(|b| b.bound == 0));
        assert_eq!(report.bounds.len(), 6);

        let n = 2;
        let h = LeviForm::identity(n);
        let report = betti_bound_report(&gen_flat(n), &h, 1e-8).unwrap();
        assert_eq!(report.kernel_dim, 4);
        assert!(report.bounds.iter().all(|b| b.bound == 4));
    }

    #[test]
    fn suite_dispatch() {
        let config = SuiteConfig { n: 2, k: 2, trials: 3, seed: 1, ..Default::default() };
        let report = run_suite("lemma-antisym", &config).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(run_suite("nope", &config).is_err());
    }

    #[test]
    fn suite_vacuous_trials() {
        let config = SuiteConfig { n: 2, k: 2, trials: 0, seed: 1, ..Default::default() };
        let report = run_suite("lemma-antisym", &config).unwrap();
        assert!(report.passed());
        assert_eq!(report.trials, 0);
        assert_eq!(report.min_lhs, 0.0);
    }

    #[test]
    fn bochner_suite_small_run() {
        let config = SuiteConfig { n: 3, p: 1, q: 1, trials: 4, seed: 42, tol: 1e-10, k: 3 };
        let report = run_suite("bochner", &config).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.min_lhs >= -1e-10);
    }

    #[test]
    fn equality_suite_small_run() {
        let config = SuiteConfig { n: 3, p: 1, q: 1, trials: 3, seed: 9, tol: 1e-10, k: 3 };
        let report = run_suite("equality", &config).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
    }

    #[test]
    fn symmetries_suite_small_run() {
        let config = SuiteConfig { n: 2, trials: 3, seed: 5, tol: 1e-9, ..Default::default() };
        let report = run_suite("symmetries", &config).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
    }
}
