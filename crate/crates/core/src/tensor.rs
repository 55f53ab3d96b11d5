//! Dense complex multi-index tensors with per-slot kind and variance.
//!
//! A [`MultiTensor`] stores its entries row-major over the slot order, with
//! every slot running over the same dimension `n`. Slots carry a kind
//! (holomorphic or antiholomorphic) and a variance (upper or lower); the
//! contraction rules enforce the pairing convention that an upper slot only
//! contracts a lower slot of the same kind, and the metric pairs a
//! holomorphic with an antiholomorphic index, so raising or lowering a slot
//! flips both its variance and its kind.
//!
//! All values are immutable after construction; operations return new
//! tensors.

use num_complex::Complex64;
use thiserror::Error;

use crate::levi::LeviForm;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("data length {actual} does not match n^rank = {expected}")]
    DataLength { expected: usize, actual: usize },
    #[error("non-finite entry at offset {offset}")]
    NonFinite { offset: usize },
    #[error("slot position {pos} out of range for rank {rank}")]
    SlotOutOfRange { pos: usize, rank: usize },
    #[error("cannot contract slot {i} with slot {j}: need opposite variance and equal kind")]
    ContractionMismatch { i: usize, j: usize },
    #[error("tensors have different slot signatures or dimensions")]
    SignatureMismatch,
    #[error("antisymmetrization slots must share kind and variance")]
    MixedAntisymSlots,
    #[error("slot {pos} has variance {found:?}, expected {expected:?}")]
    WrongVariance { pos: usize, expected: Variance, found: Variance },
    #[error("tensor dimension {actual} does not match metric dimension {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("duplicate slot positions in antisymmetrization set")]
    DuplicateSlots,
    #[error("antisymmetrization over {k} slots exceeds supported size")]
    TooManySlots { k: usize },
    #[error("{context}: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    PreconditionViolated { context: &'static str, residual: f64, tol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotKind {
    Holomorphic,
    Antiholomorphic,
}

impl SlotKind {
    pub fn conjugate(self) -> Self {
        match self {
            SlotKind::Holomorphic => SlotKind::Antiholomorphic,
            SlotKind::Antiholomorphic => SlotKind::Holomorphic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    Upper,
    Lower,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        }
    }
}

/// One tensor slot: kind plus variance. Immutable once attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSlot {
    pub kind: SlotKind,
    pub variance: Variance,
}

impl IndexSlot {
    pub const fn new(kind: SlotKind, variance: Variance) -> Self {
        Self { kind, variance }
    }
}

pub const HOLO_LOWER: IndexSlot = IndexSlot::new(SlotKind::Holomorphic, Variance::Lower);
pub const ANTI_LOWER: IndexSlot = IndexSlot::new(SlotKind::Antiholomorphic, Variance::Lower);
pub const HOLO_UPPER: IndexSlot = IndexSlot::new(SlotKind::Holomorphic, Variance::Upper);
pub const ANTI_UPPER: IndexSlot = IndexSlot::new(SlotKind::Antiholomorphic, Variance::Upper);

/// Dense complex tensor over a fixed dimension, one slot per index.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiTensor {
    n: usize,
    slots: Vec<IndexSlot>,
    data: Vec<Complex64>,
}

fn permutations_with_sign(k: usize) -> Vec<(Vec<usize>, f64)> {
    // Heap's algorithm; each swap flips parity.
    let mut result = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    let mut sign = 1.0;
    result.push((perm.clone(), sign));
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            result.push((perm.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    result
}

impl MultiTensor {
    /// Builds a tensor, validating the entry count and finiteness.
    pub fn new(n: usize, slots: Vec<IndexSlot>, data: Vec<Complex64>) -> Result<Self, TensorError> {
        let expected = n.checked_pow(slots.len() as u32).unwrap_or(0);
        if data.len() != expected {
            return Err(TensorError::DataLength { expected, actual: data.len() });
        }
        for (offset, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(TensorError::NonFinite { offset });
            }
        }
        Ok(Self { n, slots, data })
    }

    pub fn zeros(n: usize, slots: Vec<IndexSlot>) -> Self {
        let len = n.pow(slots.len() as u32);
        Self { n, slots, data: vec![Complex64::new(0.0, 0.0); len] }
    }

    pub fn scalar(value: Complex64) -> Self {
        Self { n: 1, slots: Vec::new(), data: vec![value] }
    }

    /// Kronecker-delta-like identity with one upper and one lower slot of the
    /// given kind.
    pub fn kronecker(n: usize, kind: SlotKind) -> Self {
        let mut t = Self::zeros(n, vec![IndexSlot::new(kind, Variance::Upper), IndexSlot::new(kind, Variance::Lower)]);
        for i in 0..n {
            t.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        t
    }

    /// Gaussian random tensor: independent standard-normal real and imaginary
    /// parts on every entry.
    pub fn random<R: rand::Rng>(n: usize, slots: Vec<IndexSlot>, rng: &mut R) -> Self {
        use rand_distr::{Distribution, StandardNormal};
        let len = n.pow(slots.len() as u32);
        let data = (0..len)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex64::new(re, im)
            })
            .collect();
        Self { n, slots, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[IndexSlot] {
        &self.slots
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// The single entry of a rank-0 tensor.
    pub fn scalar_value(&self) -> Complex64 {
        debug_assert_eq!(self.rank(), 0);
        self.data[0]
    }

    #[inline]
    pub fn offset_of(&self, idx: &[usize]) -> usize {
        let mut off = 0;
        for &i in idx {
            off = off * self.n + i;
        }
        off
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> Complex64 {
        self.data[self.offset_of(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Complex64) {
        let off = self.offset_of(idx);
        self.data[off] = v;
    }

    /// Calls `f` with every multi-index of this tensor's shape, in row-major
    /// order.
    pub fn for_each_index(&self, mut f: impl FnMut(&[usize])) {
        let rank = self.rank();
        let mut idx = vec![0usize; rank];
        loop {
            f(&idx);
            let mut pos = rank;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < self.n {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &MultiTensor) -> f64 {
        debug_assert_eq!(self.data.len(), other.data.len());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise complex conjugate; flips every slot's kind, keeps variance
    /// and slot order.
    pub fn conjugate(&self) -> MultiTensor {
        MultiTensor {
            n: self.n,
            slots: self
                .slots
                .iter()
                .map(|s| IndexSlot::new(s.kind.conjugate(), s.variance))
                .collect(),
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> MultiTensor {
        MultiTensor {
            n: self.n,
            slots: self.slots.clone(),
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> MultiTensor {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn add(&self, other: &MultiTensor) -> Result<MultiTensor, TensorError> {
        if self.n != other.n || self.slots != other.slots {
            return Err(TensorError::SignatureMismatch);
        }
        Ok(MultiTensor {
            n: self.n,
            slots: self.slots.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &MultiTensor) -> Result<MultiTensor, TensorError> {
        self.add(&other.scale_re(-1.0))
    }

    pub fn tensor_product(&self, other: &MultiTensor) -> MultiTensor {
        debug_assert_eq!(self.n, other.n);
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        MultiTensor { n: self.n, slots, data }
    }

    /// Sums over a contracted pair of slots. The slots must have opposite
    /// variance and equal kind; the result keeps the remaining slots in their
    /// original order.
    pub fn contract(&self, i: usize, j: usize) -> Result<MultiTensor, TensorError> {
        let rank = self.rank();
        if i == j {
            return Err(TensorError::ContractionMismatch { i, j });
        }
        if i >= rank || j >= rank {
            return Err(TensorError::SlotOutOfRange { pos: i.max(j), rank });
        }
        let si = self.slots[i];
        let sj = self.slots[j];
        if si.kind != sj.kind || si.variance == sj.variance {
            return Err(TensorError::ContractionMismatch { i, j });
        }
        let n = self.n;
        let keep: Vec<usize> = (0..rank).filter(|&p| p != i && p != j).collect();
        let out_slots: Vec<IndexSlot> = keep.iter().map(|&p| self.slots[p]).collect();
        let mut out = MultiTensor::zeros(n, out_slots);

        let stride = |p: usize| n.pow((rank - 1 - p) as u32);
        let si_stride = stride(i);
        let sj_stride = stride(j);
        let keep_strides: Vec<usize> = keep.iter().map(|&p| stride(p)).collect();

        let out_len = out.data.len();
        let mut out_idx = vec![0usize; keep.len()];
        for out_off in 0..out_len {
            let mut base = 0usize;
            for (d, &ks) in out_idx.iter().zip(&keep_strides) {
                base += d * ks;
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += self.data[base + k * (si_stride + sj_stride)];
            }
            out.data[out_off] = acc;
            // advance out_idx
            for pos in (0..out_idx.len()).rev() {
                out_idx[pos] += 1;
                if out_idx[pos] < n {
                    break;
                }
                out_idx[pos] = 0;
            }
        }
        Ok(out)
    }

    /// Reorders slots: new slot `k` is old slot `perm[k]`.
    pub fn permute_slots(&self, perm: &[usize]) -> MultiTensor {
        let rank = self.rank();
        debug_assert_eq!(perm.len(), rank);
        let n = self.n;
        let slots: Vec<IndexSlot> = perm.iter().map(|&p| self.slots[p]).collect();
        let mut data = vec![Complex64::new(0.0, 0.0); self.data.len()];
        let mut new_idx = vec![0usize; rank];
        self.for_each_index(|idx| {
            for k in 0..rank {
                new_idx[k] = idx[perm[k]];
            }
            let mut off = 0;
            for &i in &new_idx {
                off = off * n + i;
            }
            data[off] = self.get(idx);
        });
        MultiTensor { n, slots, data }
    }

    /// Projects onto the antisymmetric part over the listed slot positions:
    /// `(1/k!) sum_sigma sgn(sigma) T_sigma`. All listed slots must share kind
    /// and variance.
    pub fn antisymmetrize(&self, positions: &[usize]) -> Result<MultiTensor, TensorError> {
        let rank = self.rank();
        let k = positions.len();
        if k <= 1 {
            return Ok(self.clone());
        }
        if k > 8 {
            return Err(TensorError::TooManySlots { k });
        }
        let mut seen = vec![false; rank];
        for &p in positions {
            if p >= rank {
                return Err(TensorError::SlotOutOfRange { pos: p, rank });
            }
            if seen[p] {
                return Err(TensorError::DuplicateSlots);
            }
            seen[p] = true;
        }
        let first = self.slots[positions[0]];
        if positions.iter().any(|&p| self.slots[p] != first) {
            return Err(TensorError::MixedAntisymSlots);
        }

        let perms = permutations_with_sign(k);
        let norm = 1.0 / (perms.len() as f64);
        let mut data = vec![Complex64::new(0.0, 0.0); self.data.len()];
        let mut src = vec![0usize; rank];
        self.for_each_index(|idx| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (perm, sign) in &perms {
                src.copy_from_slice(idx);
                for (m, &pm) in perm.iter().enumerate() {
                    src[positions[m]] = idx[positions[pm]];
                }
                acc += self.get(&src) * *sign;
            }
            data[self.offset_of(idx)] = acc * norm;
        });
        Ok(MultiTensor { n: self.n, slots: self.slots.clone(), data })
    }

    /// Raises slot `i` with the inverse Levi form. The slot must be lower;
    /// the result slot is upper with flipped kind, in place.
    pub fn raise_index(&self, i: usize, h: &LeviForm) -> Result<MultiTensor, TensorError> {
        self.move_index(i, h, Variance::Lower)
    }

    /// Lowers slot `i` with the Levi form. The slot must be upper; the result
    /// slot is lower with flipped kind, in place.
    pub fn lower_index(&self, i: usize, h: &LeviForm) -> Result<MultiTensor, TensorError> {
        self.move_index(i, h, Variance::Upper)
    }

    fn move_index(&self, i: usize, h: &LeviForm, expect: Variance) -> Result<MultiTensor, TensorError> {
        let rank = self.rank();
        if i >= rank {
            return Err(TensorError::SlotOutOfRange { pos: i, rank });
        }
        if self.n != h.n() {
            return Err(TensorError::DimensionMismatch { expected: h.n(), actual: self.n });
        }
        let slot = self.slots[i];
        if slot.variance != expect {
            return Err(TensorError::WrongVariance { pos: i, expected: expect, found: slot.variance });
        }
        let n = self.n;
        // metric coefficients: entry [a][b] pairs a holomorphic index a with an
        // antiholomorphic index b
        let coeff = |a: usize, b: usize| -> Complex64 {
            match expect {
                Variance::Lower => h.inverse_entry(a, b),
                Variance::Upper => h.entry(a, b),
            }
        };
        let mut slots = self.slots.clone();
        slots[i] = IndexSlot::new(slot.kind.conjugate(), slot.variance.flip());
        let mut data = vec![Complex64::new(0.0, 0.0); self.data.len()];

        let stride_i = n.pow((rank - 1 - i) as u32);
        self.for_each_index(|idx| {
            if idx[i] != 0 {
                return;
            }
            let base = self.offset_of(idx);
            for c in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..n {
                    let w = match slot.kind {
                        // holomorphic summed index sits in the first metric slot
                        SlotKind::Holomorphic => coeff(a, c),
                        SlotKind::Antiholomorphic => coeff(c, a),
                    };
                    acc += w * self.data[base + a * stride_i];
                }
                data[base + c * stride_i] = acc;
            }
        });
        Ok(MultiTensor { n, slots, data })
    }

    /// Raises every lower slot and lowers every upper slot.
    pub fn flip_all_variances(&self, h: &LeviForm) -> Result<MultiTensor, TensorError> {
        let mut t = self.clone();
        for i in 0..self.rank() {
            t = match t.slots[i].variance {
                Variance::Lower => t.raise_index(i, h)?,
                Variance::Upper => t.lower_index(i, h)?,
            };
        }
        Ok(t)
    }
}

/// Hermitian pairing of two tensors with identical slot signatures: contracts
/// `a` slotwise against the metric dual of `conj(b)`. For the identity Levi
/// form this is the plain entrywise hermitian dot product.
pub fn hermitian_pairing(a: &MultiTensor, b: &MultiTensor, h: &LeviForm) -> Result<Complex64, TensorError> {
    if a.n != b.n || a.slots != b.slots {
        return Err(TensorError::SignatureMismatch);
    }
    let dual = b.conjugate().flip_all_variances(h)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, y) in a.data.iter().zip(&dual.data) {
        acc += x * y;
    }
    Ok(acc)
}

/// Squared hermitian norm; the imaginary part is a rounding artifact and is
/// discarded.
pub fn norm_sq(a: &MultiTensor, h: &LeviForm) -> Result<f64, TensorError> {
    Ok(hermitian_pairing(a, a, h)?.re)
}

/// Residual of the expansion of a full antisymmetrization of a rank-k tensor
/// already antisymmetric in its last k-1 slots:
/// `k T_[i1..ik] - (T_{i1..ik} - T_{i2 i1 i3..} - ... - T_{ik i2.. i1})`.
///
/// The precondition (antisymmetry in the last k-1 slots) is checked first and
/// reported as a distinct error when violated.
pub fn antisym_expansion_residual(t: &MultiTensor, tol: f64) -> Result<f64, TensorError> {
    let k = t.rank();
    if k < 1 {
        return Err(TensorError::SlotOutOfRange { pos: 0, rank: 0 });
    }
    let tail: Vec<usize> = (1..k).collect();
    let tail_proj = t.antisymmetrize(&tail)?;
    let pre = t.max_abs_diff(&tail_proj);
    if pre > tol * t.max_abs().max(1.0) {
        return Err(TensorError::PreconditionViolated {
            context: "input not antisymmetric in its last k-1 slots",
            residual: pre,
            tol,
        });
    }
    let all: Vec<usize> = (0..k).collect();
    let lhs = t.antisymmetrize(&all)?.scale_re(k as f64);
    let mut rhs = t.clone();
    for j in 1..k {
        let mut perm: Vec<usize> = (0..k).collect();
        perm.swap(0, j);
        rhs = rhs.sub(&t.permute_slots(&perm))?;
    }
    Ok(lhs.max_abs_diff(&rhs))
}

/// Residual of the pairing identity `T^{i1..ik} T_[i1..ik] = |T_[i1..ik]|^2`
/// for a rank-k tensor antisymmetric in its last k-1 slots, with raising done
/// by the supplied Levi form.
pub fn square_pairing_residual(t: &MultiTensor, h: &LeviForm, tol: f64) -> Result<f64, TensorError> {
    let k = t.rank();
    let tail: Vec<usize> = (1..k).collect();
    let tail_proj = t.antisymmetrize(&tail)?;
    let pre = t.max_abs_diff(&tail_proj);
    if pre > tol * t.max_abs().max(1.0) {
        return Err(TensorError::PreconditionViolated {
            context: "input not antisymmetric in its last k-1 slots",
            residual: pre,
            tol,
        });
    }
    let all: Vec<usize> = (0..k).collect();
    let anti = t.antisymmetrize(&all)?;
    let lhs = hermitian_pairing(&anti, t, h)?;
    let rhs = norm_sq(&anti, h)?;
    Ok((lhs - Complex64::new(rhs, 0.0)).norm())
}
