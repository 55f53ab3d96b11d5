//! Independent nested-loop contraction evaluator.
//!
//! This is the reference implementation every fast path is checked against.
//! It enumerates all index assignments directly and never calls the stride
//! based contraction, antisymmetrization, or raising machinery of the tensor
//! module, so a bookkeeping bug there cannot hide here.

use std::collections::HashMap;

use itertools::Itertools;
use num_complex::Complex64;
use thiserror::Error;

use crate::tensor::{IndexSlot, MultiTensor};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("factor {factor} names {named} indices but the tensor has rank {rank}")]
    ArityMismatch { factor: usize, named: usize, rank: usize },
    #[error("index `{label}` appears {count} times; indices must appear once or twice")]
    BadMultiplicity { label: String, count: usize },
    #[error("index `{label}` is contracted with equal variance or different kind")]
    BadPairing { label: String },
    #[error("output index `{label}` is not a free index of the expression")]
    UnknownOutput { label: String },
    #[error("free index `{label}` is missing from the output list")]
    MissingOutput { label: String },
    #[error("factors have mixed dimensions")]
    MixedDimensions,
}

/// One tensor in a product, with a label per slot.
pub struct Factor<'a> {
    pub tensor: &'a MultiTensor,
    pub labels: Vec<String>,
}

impl<'a> Factor<'a> {
    pub fn new(tensor: &'a MultiTensor, labels: &[&str]) -> Self {
        Self { tensor, labels: labels.iter().map(|s| s.to_string()).collect() }
    }
}

/// Evaluates a product of factors, summing every label that appears twice,
/// by brute-force enumeration of all index assignments. Free labels become
/// the output slots, in the order given by `output`.
pub fn oracle_contract(factors: &[Factor<'_>], output: &[&str]) -> Result<MultiTensor, OracleError> {
    let n = factors.first().map(|f| f.tensor.n()).unwrap_or(1);
    if factors.iter().any(|f| f.tensor.n() != n) {
        return Err(OracleError::MixedDimensions);
    }
    // collect label occurrences
    let mut occ: HashMap<&str, Vec<(usize, usize)>> = HashMap::new();
    for (fi, f) in factors.iter().enumerate() {
        if f.labels.len() != f.tensor.rank() {
            return Err(OracleError::ArityMismatch {
                factor: fi,
                named: f.labels.len(),
                rank: f.tensor.rank(),
            });
        }
        for (si, label) in f.labels.iter().enumerate() {
            occ.entry(label.as_str()).or_default().push((fi, si));
        }
    }
    let mut free: Vec<&str> = Vec::new();
    for (label, sites) in &occ {
        match sites.len() {
            1 => free.push(label),
            2 => {
                let a = factors[sites[0].0].tensor.slots()[sites[0].1];
                let b = factors[sites[1].0].tensor.slots()[sites[1].1];
                if a.kind != b.kind || a.variance == b.variance {
                    return Err(OracleError::BadPairing { label: label.to_string() });
                }
            }
            count => {
                return Err(OracleError::BadMultiplicity { label: label.to_string(), count })
            }
        }
    }
    for label in output {
        if !free.contains(label) {
            return Err(OracleError::UnknownOutput { label: label.to_string() });
        }
    }
    for label in &free {
        if !output.contains(label) {
            return Err(OracleError::MissingOutput { label: label.to_string() });
        }
    }

    let dummies: Vec<&str> = occ
        .keys()
        .copied()
        .filter(|l| occ[l].len() == 2)
        .sorted()
        .collect();

    let out_slots: Vec<IndexSlot> = output
        .iter()
        .map(|l| {
            let (fi, si) = occ[*l][0];
            factors[fi].tensor.slots()[si]
        })
        .collect();
    let mut out = MultiTensor::zeros(n, out_slots);

    // value lookup table per factor: label -> slot position
    let site_table: Vec<Vec<&str>> = factors.iter().map(|f| f.labels.iter().map(|s| s.as_str()).collect()).collect();

    let mut assignment: HashMap<&str, usize> = HashMap::new();
    let mut out_idx = vec![0usize; output.len()];
    loop {
        for (pos, label) in output.iter().enumerate() {
            assignment.insert(label, out_idx[pos]);
        }
        let mut total = Complex64::new(0.0, 0.0);
        let mut dummy_idx = vec![0usize; dummies.len()];
        loop {
            for (pos, label) in dummies.iter().enumerate() {
                assignment.insert(label, dummy_idx[pos]);
            }
            let mut prod = Complex64::new(1.0, 0.0);
            for (fi, f) in factors.iter().enumerate() {
                let mut offset = 0usize;
                for label in &site_table[fi] {
                    offset = offset * n + assignment[label];
                }
                prod *= f.tensor.data()[offset];
            }
            total += prod;
            if !advance(&mut dummy_idx, n) {
                break;
            }
        }
        let off = out.offset_of(&out_idx);
        let mut data = out.data().to_vec();
        data[off] = total;
        out = MultiTensor::new(n, out.slots().to_vec(), data).expect("oracle output is well-formed");
        if !advance(&mut out_idx, n) {
            break;
        }
    }
    Ok(out)
}

fn advance(idx: &mut [usize], n: usize) -> bool {
    for pos in (0..idx.len()).rev() {
        idx[pos] += 1;
        if idx[pos] < n {
            return true;
        }
        idx[pos] = 0;
    }
    false
}

/// Brute-force antisymmetrization over the listed slots, via explicit
/// permutation enumeration with parity computed from inversion counts.
pub fn oracle_antisymmetrize(t: &MultiTensor, positions: &[usize]) -> MultiTensor {
    let k = positions.len();
    let n = t.n();
    let rank = t.rank();
    let mut data = vec![Complex64::new(0.0, 0.0); t.data().len()];
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let norm = 1.0 / (perms.len() as f64);
    let mut idx = vec![0usize; rank];
    let mut src = vec![0usize; rank];
    loop {
        let mut acc = Complex64::new(0.0, 0.0);
        for perm in &perms {
            let mut inversions = 0;
            for a in 0..k {
                for b in (a + 1)..k {
                    if perm[a] > perm[b] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            src.copy_from_slice(&idx);
            for (m, &pm) in perm.iter().enumerate() {
                src[positions[m]] = idx[positions[pm]];
            }
            acc += t.get(&src) * sign;
        }
        let mut offset = 0usize;
        for &i in &idx {
            offset = offset * n + i;
        }
        data[offset] = acc * norm;
        if !advance(&mut idx, n) {
            break;
        }
    }
    MultiTensor::new(n, t.slots().to_vec(), data).expect("oracle output is well-formed")
}
