//! Property-based invariants: projection behaviour of antisymmetrization,
//! algebraic compatibilities of contraction, metric round trips, inner
//! product positivity, expression round trips, and JSON bit-exactness.

use std::collections::HashMap;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pseudoherm::forms::{form_norm_sq, random_pq_form};
use pseudoherm::indexexpr::{self, Factor, IndexExpr, IndexToken, TensorRef, Term};
use pseudoherm::json::{dto_to_tensor, tensor_to_dto, TensorDto};
use pseudoherm::levi::LeviForm;
use pseudoherm::tensor::{
    antisym_expansion_residual, hermitian_pairing, square_pairing_residual, IndexSlot,
    MultiTensor, SlotKind, Variance, ANTI_LOWER, HOLO_LOWER, HOLO_UPPER,
};

fn random_tensor(n: usize, slots: Vec<IndexSlot>, seed: u64) -> MultiTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    MultiTensor::random(n, slots, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetrize_is_idempotent(seed in 0u64..1000, n in 2usize..4, k in 2usize..4) {
        let t = random_tensor(n, vec![HOLO_LOWER; k], seed);
        let slots: Vec<usize> = (0..k).collect();
        let once = t.antisymmetrize(&slots).unwrap();
        let twice = once.antisymmetrize(&slots).unwrap();
        prop_assert!(once.max_abs_diff(&twice) < 1e-14);
    }

    #[test]
    fn antisymmetrize_is_self_adjoint(seed in 0u64..1000, n in 2usize..4) {
        let h = LeviForm::identity(n);
        let t = random_tensor(n, vec![ANTI_LOWER; 3], seed);
        let u = random_tensor(n, vec![ANTI_LOWER; 3], seed ^ 0xdead);
        let slots = [0usize, 1, 2];
        let pt = t.antisymmetrize(&slots).unwrap();
        let pu = u.antisymmetrize(&slots).unwrap();
        let lhs = hermitian_pairing(&pt, &u, &h).unwrap();
        let rhs = hermitian_pairing(&t, &pu, &h).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12 * t.frobenius() * u.frobenius());
    }

    #[test]
    fn expansion_and_pairing_identities(seed in 0u64..500, n in 2usize..5, k in 2usize..5) {
        let h = LeviForm::identity(n);
        let raw = random_tensor(n, vec![HOLO_LOWER; k], seed);
        let tail: Vec<usize> = (1..k).collect();
        let t = raw.antisymmetrize(&tail).unwrap();
        prop_assert!(antisym_expansion_residual(&t, 1e-9).unwrap() < 1e-12);
        prop_assert!(square_pairing_residual(&t, &h, 1e-9).unwrap() < 1e-12);
    }

    #[test]
    fn disjoint_contractions_commute(seed in 0u64..1000, n in 2usize..4) {
        let t = random_tensor(
            n,
            vec![HOLO_LOWER, HOLO_UPPER, ANTI_LOWER, pseudoherm::tensor::ANTI_UPPER],
            seed,
        );
        let a = t.contract(0, 1).unwrap().contract(0, 1).unwrap();
        let b = t.contract(2, 3).unwrap().contract(0, 1).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-12 * t.frobenius().max(1.0));
    }

    #[test]
    fn raise_lower_roundtrip(seed in 0u64..500, hseed in 0u64..50, n in 2usize..4) {
        let h = LeviForm::random(n, hseed);
        let t = random_tensor(n, vec![HOLO_LOWER, ANTI_LOWER], seed);
        for slot in 0..2 {
            let round = t.raise_index(slot, &h).unwrap().lower_index(slot, &h).unwrap();
            prop_assert!(round.max_abs_diff(&t) < 1e-12 * t.max_abs().max(1.0));
        }
    }

    #[test]
    fn inner_product_is_nonnegative(seed in 0u64..200, n in 2usize..5, p in 0usize..3, q in 0usize..3) {
        prop_assume!(p <= n && q <= n && p + q > 0);
        let h = LeviForm::random(n, seed % 7);
        let w = random_pq_form(n, p, q, seed).unwrap();
        prop_assert!(form_norm_sq(&w, &h).unwrap() >= 0.0);
    }

    #[test]
    fn contraction_matches_oracle(seed in 0u64..300, n in 2usize..4) {
        let t = random_tensor(n, vec![HOLO_LOWER, ANTI_LOWER, HOLO_UPPER], seed);
        let fast = t.contract(0, 2).unwrap();
        let slow = pseudoherm::bochner::oracle::oracle_contract(
            &[pseudoherm::bochner::oracle::Factor::new(&t, &["a", "b", "a"])],
            &["b"],
        ).unwrap();
        prop_assert!(fast.max_abs_diff(&slow) < 1e-13);
    }

    #[test]
    fn json_roundtrip_bit_exact(seed in 0u64..1000, n in 1usize..4, rank in 0usize..4) {
        let slots = [HOLO_LOWER, ANTI_LOWER, HOLO_UPPER, pseudoherm::tensor::ANTI_UPPER];
        let t = random_tensor(n, slots[..rank].to_vec(), seed);
        let text = serde_json::to_string(&tensor_to_dto(&t)).unwrap();
        let parsed: TensorDto = serde_json::from_str(&text).unwrap();
        let back = dto_to_tensor(&parsed).unwrap();
        for (a, b) in t.data().iter().zip(back.data()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}

// --- expression round trips over structurally valid random ASTs ---

fn token_strategy(name: &'static str) -> impl Strategy<Value = IndexToken> {
    (any::<bool>(), any::<bool>()).prop_map(move |(anti, upper)| IndexToken {
        name: name.to_string(),
        kind: if anti { SlotKind::Antiholomorphic } else { SlotKind::Holomorphic },
        variance: if upper { Variance::Upper } else { Variance::Lower },
        offset: 0,
    })
}

fn expr_strategy() -> impl Strategy<Value = IndexExpr> {
    let tokens = prop::collection::vec(token_strategy("x"), 1..4).prop_map(|mut toks| {
        for (i, t) in toks.iter_mut().enumerate() {
            t.name = format!("i{i}");
        }
        toks
    });
    (tokens, 1usize..3, any::<bool>(), any::<bool>(), prop::option::of(1u32..5)).prop_map(
        |(toks, nterms, negate_first, conjugated, scalar)| {
            let mut terms = Vec::new();
            for ti in 0..nterms {
                let mut factors = Vec::new();
                if let Some(s) = scalar {
                    factors.push(Factor::Scalar { value: s as f64, offset: 0 });
                }
                // group the leading slots when they share kind and variance
                let mut groups = Vec::new();
                if toks.len() >= 2
                    && toks[0].kind == toks[1].kind
                    && toks[0].variance == toks[1].variance
                {
                    groups.push(vec![0, 1]);
                }
                factors.push(Factor::Ref(TensorRef {
                    name: format!("T{ti}"),
                    conjugated: conjugated && ti == 0,
                    indices: toks.clone(),
                    groups,
                    offset: 0,
                }));
                terms.push(Term { negated: negate_first && ti == 0, factors });
            }
            IndexExpr { terms }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parse_format_roundtrip(expr in expr_strategy()) {
        let text = indexexpr::format(&expr);
        let parsed = indexexpr::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &expr, "canonical text: {}", text);
        // formatting is idempotent after one pass
        prop_assert_eq!(indexexpr::format(&parsed), text);
    }
}

#[test]
fn inner_positivity_sweep_two_hundred_trials() {
    // dedicated dense sweep pinning the sign bookkeeping of the pairing
    let mut checked = 0;
    'outer: for n in 2..=4usize {
        let h = LeviForm::random(n, 3 * n as u64);
        for p in 0..=3.min(n) {
            for q in 0..=3.min(n) {
                if p + q == 0 {
                    continue;
                }
                for seed in 0..8u64 {
                    let w = random_pq_form(n, p, q, 97 * seed + 1).unwrap();
                    let norm = form_norm_sq(&w, &h).unwrap();
                    assert!(norm >= 0.0, "n={n} p={p} q={q} seed={seed}: {norm}");
                    checked += 1;
                    if checked >= 200 {
                        break 'outer;
                    }
                }
            }
        }
    }
    assert!(checked >= 200);
}

#[test]
fn zero_spectrum_assembles_to_zero() {
    let h = LeviForm::identity(2);
    let basis = pseudoherm::curvature::hermitian_basis(2, &h);
    let spectrum =
        pseudoherm::curvature::CurvatureSpectrum::new(vec![0.0; 4], basis).unwrap();
    assert_eq!(spectrum.assemble().max_abs(), 0.0);
}

#[test]
fn cap_combination_ignores_first_cap_when_m1_vanishes() {
    use pseudoherm::bochner::{omega_caps, rhs_positivity, theorem_coefficients, BracketExtent};
    let n = 3;
    let h = LeviForm::identity(n);
    let c = theorem_coefficients(n, 1).unwrap(); // M1 = 0
    let r = pseudoherm::curvature::gen_constant(n, 1.0, &h);
    let spec = pseudoherm::curvature::eigendecompose(
        &pseudoherm::curvature::operator_matrix(&r, &h),
        1e-8,
    )
    .unwrap();
    let w = pseudoherm::forms::project_tracefree(
        &random_pq_form(n, 1, 1, 8).unwrap(),
        &h,
        1e-12,
    )
    .unwrap();
    let e = &spec.eigvecs[0];
    let (tilde, omega) = omega_caps(e, &w, &h, BracketExtent::IncludeDummy).unwrap();
    let v1 = rhs_positivity(&c, 1, 1, &tilde, &omega, &h).unwrap();
    let v2 = rhs_positivity(&c, 1, 1, &tilde.scale_re(7.0), &omega, &h).unwrap();
    assert_eq!(v1, v2);
}

#[test]
fn expression_evaluation_is_linear_in_bindings() {
    let h = LeviForm::identity(2);
    let t = random_tensor(2, vec![HOLO_LOWER, ANTI_LOWER], 5);
    let mut env = HashMap::new();
    env.insert("t".to_string(), t.clone());
    let e = indexexpr::parse("3 * t[_a,_~b]").unwrap();
    let out = indexexpr::evaluate(&e, &env, &h).unwrap();
    assert!(out.max_abs_diff(&t.scale(Complex64::new(3.0, 0.0))) < 1e-14);
}
