//! Pointwise (p,q)-form algebra: coefficient tensors antisymmetric in a
//! holomorphic block of p lower slots followed by an antiholomorphic block of
//! q lower slots, together with trace and trace-free projection, the
//! conjugate form, the hermitian inner product, and the zeroth-order
//! curvature actions.
//!
//! Convention notes, pinned by the test suite rather than assumed:
//! the inner product is the positive-definite hermitian pairing (it equals
//! the conjugate-form contraction up to the block-reversal sign `(-1)^{pq}`),
//! and wedge outputs are stored as fully antisymmetrized coefficient tensors.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::curvature::{ricci, CurvatureTensor};
use crate::levi::LeviForm;
use crate::tensor::{hermitian_pairing, MultiTensor, TensorError, ANTI_LOWER, HOLO_LOWER};

#[derive(Debug, Error)]
pub enum FormError {
    #[error("a ({p},{q})-form in dimension {n} is identically zero; rejected to avoid vacuous data")]
    DegenerateForm { p: usize, q: usize, n: usize },
    #[error("coefficient tensor slots do not match a ({p},{q})-form layout")]
    WrongSlots { p: usize, q: usize },
    #[error("{block} block antisymmetry residual {residual:.3e} exceeds {tol:.3e}")]
    NotAntisymmetric { block: &'static str, residual: f64, tol: f64 },
    #[error("trace requires p >= 1 and q >= 1, got ({p},{q})")]
    TraceUndefined { p: usize, q: usize },
    #[error("forms have different shapes: ({0},{1}) vs ({2},{3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("trace-free projection did not converge in {iterations} iterations (trace residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("curvature and form dimensions differ: {curvature} vs {form}")]
    DimensionMismatch { curvature: usize, form: usize },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

fn form_slots(p: usize, q: usize) -> Vec<crate::tensor::IndexSlot> {
    let mut slots = vec![HOLO_LOWER; p];
    slots.extend(vec![ANTI_LOWER; q]);
    slots
}

/// Coefficients of a (p,q)-form: antisymmetric in the first p slots and in
/// the last q slots.
#[derive(Debug, Clone)]
pub struct PQForm {
    n: usize,
    p: usize,
    q: usize,
    coeffs: MultiTensor,
}

impl PQForm {
    /// Validates slot layout and both block antisymmetries.
    pub fn new(coeffs: MultiTensor, p: usize, q: usize, tol: f64) -> Result<Self, FormError> {
        let n = coeffs.n();
        if coeffs.slots() != form_slots(p, q).as_slice() {
            return Err(FormError::WrongSlots { p, q });
        }
        let scale = coeffs.max_abs().max(1.0);
        let holo: Vec<usize> = (0..p).collect();
        let anti: Vec<usize> = (p..p + q).collect();
        let holo_res = coeffs.max_abs_diff(&coeffs.antisymmetrize(&holo)?);
        if holo_res > tol * scale {
            return Err(FormError::NotAntisymmetric {
                block: "holomorphic",
                residual: holo_res,
                tol: tol * scale,
            });
        }
        let anti_res = coeffs.max_abs_diff(&coeffs.antisymmetrize(&anti)?);
        if anti_res > tol * scale {
            return Err(FormError::NotAntisymmetric {
                block: "antiholomorphic",
                residual: anti_res,
                tol: tol * scale,
            });
        }
        Ok(Self { n, p, q, coeffs })
    }

    pub fn zero(n: usize, p: usize, q: usize) -> Self {
        Self { n, p, q, coeffs: MultiTensor::zeros(n, form_slots(p, q)) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn coeffs(&self) -> &MultiTensor {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> MultiTensor {
        self.coeffs
    }

    /// Antisymmetrizes an arbitrary coefficient tensor into form shape.
    pub fn project(coeffs: MultiTensor, p: usize, q: usize) -> Result<Self, FormError> {
        let n = coeffs.n();
        if coeffs.slots() != form_slots(p, q).as_slice() {
            return Err(FormError::WrongSlots { p, q });
        }
        let holo: Vec<usize> = (0..p).collect();
        let anti: Vec<usize> = (p..p + q).collect();
        let projected = coeffs.antisymmetrize(&holo)?.antisymmetrize(&anti)?;
        Ok(Self { n, p, q, coeffs: projected })
    }

    pub fn scale_re(&self, c: f64) -> Self {
        Self { n: self.n, p: self.p, q: self.q, coeffs: self.coeffs.scale_re(c) }
    }

    pub fn add(&self, other: &PQForm) -> Result<Self, FormError> {
        if self.n != other.n || self.p != other.p || self.q != other.q {
            return Err(FormError::ShapeMismatch(self.p, self.q, other.p, other.q));
        }
        Ok(Self { n: self.n, p: self.p, q: self.q, coeffs: self.coeffs.add(&other.coeffs)? })
    }

    /// Max-norm of the h-contraction of the first holomorphic and first
    /// antiholomorphic slot; zero for p = 0 or q = 0 forms.
    pub fn trace_residual(&self, h: &LeviForm) -> f64 {
        if self.p == 0 || self.q == 0 {
            return 0.0;
        }
        trace(self, h).map(|t| t.coeffs.max_abs()).unwrap_or(f64::INFINITY)
    }
}

/// Seeded random (p,q)-form with gaussian coefficients, antisymmetrized in
/// both blocks. Rejects shapes that are identically zero.
pub fn random_pq_form(n: usize, p: usize, q: usize, seed: u64) -> Result<PQForm, FormError> {
    if p > n || q > n {
        return Err(FormError::DegenerateForm { p, q, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = MultiTensor::random(n, form_slots(p, q), &mut rng);
    PQForm::project(raw, p, q)
}

/// h-contraction of the first holomorphic with the first antiholomorphic
/// slot, re-antisymmetrized into a (p-1, q-1)-form.
pub fn trace(w: &PQForm, h: &LeviForm) -> Result<PQForm, FormError> {
    if w.p == 0 || w.q == 0 {
        return Err(FormError::TraceUndefined { p: w.p, q: w.q });
    }
    let (p, q) = (w.p, w.q);
    let prod = w.coeffs.tensor_product(&h.inverse_tensor());
    // slots: [p holo, q anti, holo-up at p+q, anti-up at p+q+1]
    let step = prod.contract(0, p + q)?;
    // remaining: [p-1 holo, q anti, anti-up at p-1+q]
    let contracted = step.contract(p - 1, p - 1 + q)?;
    PQForm::project(contracted, p - 1, q - 1)
}

/// Embeds a (p-1, q-1)-coefficient tensor as `h_{a b~} S_{A' B~'}` arranged
/// into (p,q)-form slot order.
fn embed_trace(s: &MultiTensor, p: usize, q: usize, h: &LeviForm) -> MultiTensor {
    let prod = h.metric_tensor().tensor_product(s);
    // slots: [h-holo, h-anti, p-1 holo, q-1 anti]
    let mut perm = Vec::with_capacity(p + q);
    perm.push(0);
    for k in 1..p {
        perm.push(k + 1);
    }
    perm.push(1);
    for k in (p + 1)..(p + q) {
        perm.push(k);
    }
    prod.permute_slots(&perm)
}

pub const TRACEFREE_DEFAULT_CAP: usize = 500;

/// Alternating projection between the block-antisymmetry subspace and the
/// kernel of the trace. Fixed points (already trace-free forms) return
/// unchanged up to rounding.
pub fn project_tracefree(w: &PQForm, h: &LeviForm, tol: f64) -> Result<PQForm, FormError> {
    if w.p == 0 || w.q == 0 {
        return Ok(w.clone());
    }
    let (n, p, q) = (w.n, w.p, w.q);
    let inv_n = 1.0 / (n as f64);
    let mut current = w.clone();
    for _iteration in 1..=TRACEFREE_DEFAULT_CAP {
        let tr = trace(&current, h)?;
        // killing the trace is exact in one step: trace(embed(S)) = n S
        let embedded = embed_trace(tr.coeffs(), p, q, h).scale_re(inv_n);
        let killed = current.coeffs.sub(&embedded)?;
        current = PQForm::project(killed, p, q)?;
        let residual = current.trace_residual(h);
        if residual <= tol {
            return Ok(current);
        }
    }
    let residual = current.trace_residual(h);
    Err(FormError::NoConvergence { iterations: TRACEFREE_DEFAULT_CAP, residual })
}

/// The conjugate (q,p)-form: blocks swapped, entries conjugated, with the
/// sign `(-1)^{pq}`.
pub fn conj_form(w: &PQForm) -> PQForm {
    let (p, q) = (w.p, w.q);
    let conj = w.coeffs.conjugate();
    // conj slots: [p anti, q holo]; move the holomorphic block first
    let mut perm = Vec::with_capacity(p + q);
    for k in 0..q {
        perm.push(p + k);
    }
    for k in 0..p {
        perm.push(k);
    }
    let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
    let coeffs = conj.permute_slots(&perm).scale_re(sign);
    PQForm { n: w.n, p: q, q: p, coeffs }
}

/// Positive-definite hermitian inner product
/// `<w, t> = (1/p!q!) sum w conj(t)` with all of `conj(t)`'s slots raised by
/// the Levi form.
pub fn inner_product(w: &PQForm, t: &PQForm, h: &LeviForm) -> Result<Complex64, FormError> {
    if w.n != t.n || w.p != t.p || w.q != t.q {
        return Err(FormError::ShapeMismatch(w.p, w.q, t.p, t.q));
    }
    let pairing = hermitian_pairing(&w.coeffs, &t.coeffs, h)?;
    Ok(pairing / (factorial(w.p) * factorial(w.q)))
}

pub fn form_norm_sq(w: &PQForm, h: &LeviForm) -> Result<f64, FormError> {
    Ok(inner_product(w, w, h)?.re)
}

fn check_dims(r: &CurvatureTensor, w: &PQForm) -> Result<(), FormError> {
    if r.n() != w.n {
        return Err(FormError::DimensionMismatch { curvature: r.n(), form: w.n });
    }
    Ok(())
}

/// Raised curvature contracted once into each block of the form, before any
/// antisymmetrization: `-R_{a b~}{}^{n~ m} w_{m A' n~ B~'}` with free slots
/// ordered (a, b~, A', B~').
pub fn curvature_contract(
    r: &CurvatureTensor,
    w: &PQForm,
    h: &LeviForm,
) -> Result<MultiTensor, FormError> {
    check_dims(r, w)?;
    if w.p == 0 || w.q == 0 {
        return Err(FormError::TraceUndefined { p: w.p, q: w.q });
    }
    let p = w.p;
    let raised = r.tensor().raise_index(2, h)?.raise_index(3, h)?;
    // raised slots: [a hl, b~ al, n~ au, m hu]
    let prod = raised.tensor_product(&w.coeffs);
    // [0:a, 1:b~, 2:n~, 3:m, 4..4+p holo, 4+p.. anti]
    let step = prod.contract(3, 4)?;
    // [0:a, 1:b~, 2:n~, 3..3+p-1 holo A', p+2.. anti]
    let contracted = step.contract(2, p + 2)?;
    // free slots: (a, b~, A', B~')
    Ok(contracted.scale_re(-1.0))
}

fn wedge_rearrange(p: usize, q: usize) -> Vec<usize> {
    // (a, b~, A', B~') -> (a, A', b~, B~')
    let mut perm = Vec::with_capacity(p + q);
    perm.push(0);
    for k in 1..p {
        perm.push(k + 1);
    }
    perm.push(1);
    for k in (p + 1)..(p + q) {
        perm.push(k);
    }
    perm
}

/// Curvature action `(pq/p!q!) R_{a b~}{}^{n~ m} w_{m A' n~ B~'}` as a wedge:
/// the stated contraction, scaled, antisymmetrized in both blocks. Returns
/// the zero form when p or q vanishes (the prefactor vanishes).
pub fn op_r_hash_barhash(
    r: &CurvatureTensor,
    w: &PQForm,
    h: &LeviForm,
) -> Result<PQForm, FormError> {
    check_dims(r, w)?;
    let (p, q) = (w.p, w.q);
    if p == 0 || q == 0 {
        return Ok(PQForm::zero(w.n, p, q));
    }
    let contracted = curvature_contract(r, w, h)?.scale_re(-1.0);
    let arranged = contracted
        .permute_slots(&wedge_rearrange(p, q))
        .scale_re((p * q) as f64);
    PQForm::project(arranged, p, q)
}

/// Ricci action `-(p/p!q!) R_a{}^m w_{m A' B~}`.
pub fn op_ric_hash(r: &CurvatureTensor, w: &PQForm, h: &LeviForm) -> Result<PQForm, FormError> {
    check_dims(r, w)?;
    let (p, q) = (w.p, w.q);
    if p == 0 {
        return Ok(PQForm::zero(w.n, p, q));
    }
    let raised = ricci(r, h).raise_index(1, h)?;
    // slots: [a hl, m hu]
    let prod = raised.tensor_product(&w.coeffs);
    let contracted = prod.contract(1, 2)?;
    // free slots already ordered (a, A', B~)
    let arranged = contracted.scale_re(-(p as f64));
    PQForm::project(arranged, p, q)
}

/// Conjugate Ricci action `-(q/p!q!) R^{n~}{}_{b~} w_{A n~ B~'}`.
pub fn op_ric_barhash(r: &CurvatureTensor, w: &PQForm, h: &LeviForm) -> Result<PQForm, FormError> {
    check_dims(r, w)?;
    let (p, q) = (w.p, w.q);
    if q == 0 {
        return Ok(PQForm::zero(w.n, p, q));
    }
    let raised = ricci(r, h).raise_index(0, h)?;
    // slots: [n~ au, b~ al]
    let prod = raised.tensor_product(&w.coeffs);
    // [0:n~, 1:b~, 2..2+p holo, 2+p anti-first, ...]
    let contracted = prod.contract(0, 2 + p)?;
    // remaining: [0:b~, 1..1+p holo A, anti B~']
    let mut perm = Vec::with_capacity(p + q);
    for k in 0..p {
        perm.push(k + 1);
    }
    perm.push(0);
    for k in (p + 1)..(p + q) {
        perm.push(k);
    }
    let arranged = contracted.permute_slots(&perm).scale_re(-(q as f64));
    PQForm::project(arranged, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bochner::oracle::{oracle_contract, Factor};
    use crate::curvature::{gen_constant, gen_flat};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single_entry_form(n: usize) -> PQForm {
        let mut t = MultiTensor::zeros(n, vec![HOLO_LOWER, ANTI_LOWER]);
        t.set(&[0, 0], c(1.0, 0.0));
        PQForm::new(t, 1, 1, 1e-12).unwrap()
    }

    #[test]
    fn random_form_shapes() {
        let w = random_pq_form(3, 1, 1, 2).unwrap();
        assert!(w.coeffs().max_abs() > 0.0);

        let w = random_pq_form(2, 2, 1, 3).unwrap();
        let anti = w.coeffs().antisymmetrize(&[0, 1]).unwrap();
        assert!(w.coeffs().max_abs_diff(&anti) < 1e-15);

        assert!(matches!(
            random_pq_form(2, 3, 0, 4),
            Err(FormError::DegenerateForm { .. })
        ));
    }

    #[test]
    fn trace_single_entry() {
        let h = LeviForm::identity(2);
        let w = single_entry_form(2);
        let t = trace(&w, &h).unwrap();
        assert_eq!(t.p(), 0);
        assert_eq!(t.q(), 0);
        assert_abs_diff_eq!(t.coeffs().scalar_value().re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn trace_rejects_pure_holomorphic() {
        let h = LeviForm::identity(3);
        let w = random_pq_form(3, 2, 0, 5).unwrap();
        assert!(matches!(trace(&w, &h), Err(FormError::TraceUndefined { .. })));
    }

    #[test]
    fn trace_matches_oracle() {
        let n = 3;
        let h = LeviForm::random(n, 8);
        let w = random_pq_form(n, 2, 1, 6).unwrap();
        let t = trace(&w, &h).unwrap();
        let slow = oracle_contract(
            &[
                Factor::new(w.coeffs(), &["m", "a2", "v"]),
                Factor::new(&h.inverse_tensor(), &["m", "v"]),
            ],
            &["a2"],
        )
        .unwrap();
        assert!(t.coeffs().max_abs_diff(&slow) < 1e-13);
    }

    #[test]
    fn tracefree_projection_fixed_point() {
        let n = 3;
        let h = LeviForm::identity(n);
        let w = random_pq_form(n, 1, 1, 9).unwrap();
        let tf = project_tracefree(&w, &h, 1e-12).unwrap();
        assert!(tf.trace_residual(&h) <= 1e-12);
        let again = project_tracefree(&tf, &h, 1e-12).unwrap();
        assert!(tf.coeffs().max_abs_diff(again.coeffs()) < 1e-13);
    }

    #[test]
    fn tracefree_annihilates_pure_trace() {
        let n = 2;
        let h = LeviForm::identity(n);
        let pure = PQForm::new(h.metric_tensor(), 1, 1, 1e-12).unwrap();
        let tf = project_tracefree(&pure, &h, 1e-12).unwrap();
        assert!(tf.coeffs().max_abs() < 1e-13);
    }

    #[test]
    fn tracefree_with_random_metric() {
        let n = 3;
        let h = LeviForm::random(n, 11);
        let w = random_pq_form(n, 2, 1, 12).unwrap();
        let tf = project_tracefree(&w, &h, 1e-12).unwrap();
        assert!(tf.trace_residual(&h) <= 1e-12);
    }

    #[test]
    fn conj_form_sign_and_involution() {
        let w = single_entry_form(2);
        let wb = conj_form(&w);
        assert_abs_diff_eq!(wb.coeffs().get(&[0, 0]).re, -1.0, epsilon = 1e-15);

        let v = random_pq_form(2, 2, 1, 13).unwrap();
        let back = conj_form(&conj_form(&v));
        assert!(back.coeffs().max_abs_diff(v.coeffs()) < 1e-15);
    }

    #[test]
    fn conj_form_matches_entrywise_rule() {
        let w = random_pq_form(2, 2, 1, 14).unwrap();
        let wb = conj_form(&w);
        // wb[(c),(d1,d2)] = (-1)^{pq} conj(w[(d1,d2),(c)]); pq = 2 here
        for c1 in 0..2 {
            for d1 in 0..2 {
                for d2 in 0..2 {
                    let lhs = wb.coeffs().get(&[c1, d1, d2]);
                    let rhs = w.coeffs().get(&[d1, d2, c1]).conj();
                    assert!((lhs - rhs).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn inner_product_basics() {
        let h = LeviForm::identity(2);
        let w = single_entry_form(2);
        let zero = PQForm::zero(2, 1, 1);
        assert_eq!(inner_product(&zero, &w, &h).unwrap(), c(0.0, 0.0));
        assert_abs_diff_eq!(inner_product(&w, &w, &h).unwrap().re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn inner_product_hermitian_and_positive() {
        let h = LeviForm::random(3, 15);
        for seed in 0..20u64 {
            let a = random_pq_form(3, 1, 2, 100 + seed).unwrap();
            let b = random_pq_form(3, 1, 2, 200 + seed).unwrap();
            let ab = inner_product(&a, &b, &h).unwrap();
            let ba = inner_product(&b, &a, &h).unwrap();
            assert!((ab - ba.conj()).norm() < 1e-12);
            assert!(inner_product(&a, &a, &h).unwrap().re >= 0.0);
        }
    }

    #[test]
    fn inner_product_equals_conjugate_route_up_to_block_sign() {
        // <w, t> = (-1)^{pq} / (p! q!) * (w contracted against the raised
        // conjugate form of t)
        let h = LeviForm::random(2, 16);
        for (p, q, seed) in [(1usize, 1usize, 21u64), (2, 1, 22), (1, 2, 23)] {
            let w = random_pq_form(2, p, q, seed).unwrap();
            let t = random_pq_form(2, p, q, seed + 50).unwrap();
            let direct = inner_product(&w, &t, &h).unwrap();

            let tb = conj_form(&t);
            let mut raised = tb.coeffs().clone();
            for slot in 0..raised.rank() {
                raised = raised.raise_index(slot, &h).unwrap();
            }
            // raised slots: [q anti-up, p holo-up]; pair w's holo block with
            // the trailing p slots and w's anti block with the leading q slots
            let mut acc = c(0.0, 0.0);
            let wc = w.coeffs();
            wc.for_each_index(|idx| {
                let mut dual_idx = Vec::with_capacity(p + q);
                dual_idx.extend_from_slice(&idx[p..p + q]);
                dual_idx.extend_from_slice(&idx[0..p]);
                acc += wc.get(idx) * raised.get(&dual_idx);
            });
            let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
            let via_conj = acc * sign / (factorial(p) * factorial(q));
            assert!(
                (direct - via_conj).norm() < 1e-11,
                "(p,q)=({p},{q}): {direct} vs {via_conj}"
            );
        }
    }

    #[test]
    fn actions_vanish_on_flat_curvature() {
        let h = LeviForm::identity(3);
        let r = gen_flat(3);
        let w = random_pq_form(3, 1, 1, 31).unwrap();
        assert_eq!(op_r_hash_barhash(&r, &w, &h).unwrap().coeffs().max_abs(), 0.0);
        assert_eq!(op_ric_hash(&r, &w, &h).unwrap().coeffs().max_abs(), 0.0);
        assert_eq!(op_ric_barhash(&r, &w, &h).unwrap().coeffs().max_abs(), 0.0);
    }

    #[test]
    fn ric_hash_on_zero_p_returns_zero_form() {
        let h = LeviForm::identity(3);
        let r = gen_constant(3, 1.0, &h);
        let w = random_pq_form(3, 0, 1, 32).unwrap();
        let out = op_ric_hash(&r, &w, &h).unwrap();
        assert_eq!(out.coeffs().max_abs(), 0.0);
        assert_eq!(out.p(), 0);
    }

    #[test]
    fn actions_match_oracle_on_constant_curvature() {
        let n = 2;
        let h = LeviForm::identity(n);
        let r = gen_constant(n, 1.0, &h);
        let w0 = random_pq_form(n, 1, 1, 33).unwrap();
        let w = project_tracefree(&w0, &h, 1e-12).unwrap();
        let hup = h.inverse_tensor();

        // R#~# action, p = q = 1: pq R_{a b~}{}^{n~ m} w_{m n~}
        let fast = op_r_hash_barhash(&r, &w, &h).unwrap();
        let slow = oracle_contract(
            &[
                Factor::new(r.tensor(), &["a", "b", "mp", "vp"]),
                Factor::new(&hup, &["mp", "nfree"]),
                Factor::new(&hup, &["mfree", "vp"]),
                Factor::new(w.coeffs(), &["mfree", "nfree"]),
            ],
            &["a", "b"],
        )
        .unwrap();
        assert!(fast.coeffs().max_abs_diff(&slow) < 1e-12);

        // Ric# action: -(p) R_a{}^m w_{m b~}
        let ric = ricci(&r, &h);
        let fast = op_ric_hash(&r, &w, &h).unwrap();
        let slow = oracle_contract(
            &[
                Factor::new(&ric, &["a", "vp"]),
                Factor::new(&hup, &["mfree", "vp"]),
                Factor::new(w.coeffs(), &["mfree", "b"]),
            ],
            &["a", "b"],
        )
        .unwrap()
        .scale_re(-1.0);
        assert!(fast.coeffs().max_abs_diff(&slow) < 1e-12);

        // Ric~# action: -(q) R^{n~}{}_{b~} w_{a n~}
        let fast = op_ric_barhash(&r, &w, &h).unwrap();
        let slow = oracle_contract(
            &[
                Factor::new(&ric, &["mp", "b"]),
                Factor::new(&hup, &["mp", "nfree"]),
                Factor::new(w.coeffs(), &["a", "nfree"]),
            ],
            &["a", "b"],
        )
        .unwrap()
        .scale_re(-1.0);
        assert!(fast.coeffs().max_abs_diff(&slow) < 1e-12);
    }

    #[test]
    fn action_pairings_are_real_for_valid_curvature() {
        let n = 3;
        let h = LeviForm::identity(n);
        let r = gen_constant(n, 1.0, &h);
        for seed in [41u64, 42, 43] {
            let w = project_tracefree(&random_pq_form(n, 1, 1, seed).unwrap(), &h, 1e-12).unwrap();
            for action in [
                op_r_hash_barhash(&r, &w, &h).unwrap(),
                op_ric_hash(&r, &w, &h).unwrap(),
                op_ric_barhash(&r, &w, &h).unwrap(),
            ] {
                let ip = inner_product(&action, &w, &h).unwrap();
                assert!(ip.im.abs() < 1e-10, "seed {seed}: imag {}", ip.im);
            }
        }
    }

    #[test]
    fn antisymmetrization_droppable_inside_pairings() {
        let n = 3;
        let h = LeviForm::identity(n);
        let r = gen_constant(n, 1.0, &h);
        let w = project_tracefree(&random_pq_form(n, 2, 1, 44).unwrap(), &h, 1e-12).unwrap();
        let (p, q) = (w.p(), w.q());

        let action = op_r_hash_barhash(&r, &w, &h).unwrap();
        let with_antisym = inner_product(&action, &w, &h).unwrap();

        // same contraction, skipping the final block antisymmetrization
        let contracted = curvature_contract(&r, &w, &h).unwrap().scale_re(-1.0);
        let raw = contracted
            .permute_slots(&wedge_rearrange(p, q))
            .scale_re((p * q) as f64);
        let raw_pairing =
            hermitian_pairing(&raw, w.coeffs(), &h).unwrap() / (factorial(p) * factorial(q));
        assert!((with_antisym - raw_pairing).norm() < 1e-12);
    }

    #[test]
    fn curvature_contract_flat_and_generic() {
        let n = 2;
        let h = LeviForm::identity(n);
        let w = project_tracefree(&random_pq_form(n, 1, 1, 45).unwrap(), &h, 1e-12).unwrap();
        let flat = gen_flat(n);
        assert_eq!(curvature_contract(&flat, &w, &h).unwrap().max_abs(), 0.0);

        let r = gen_constant(n, 1.0, &h);
        let out = curvature_contract(&r, &w, &h).unwrap();
        assert!(out.max_abs() > 1e-8);

        let w0 = random_pq_form(n, 1, 0, 46).unwrap();
        assert!(matches!(
            curvature_contract(&r, &w0, &h),
            Err(FormError::TraceUndefined { .. })
        ));
    }
}
