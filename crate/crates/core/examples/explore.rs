//! Development probe: prints empirical data for the convention-pinning
//! decisions (inequality sign across shapes, per-eigen summand minima,
//! sum-of-squares ratios for both bracket conventions, the cross-route
//! constant, and projection convergence cost).

use pseudoherm::bochner::{
    bochner_scale, lhs_direct, omega_caps, per_eigen_summand, rhs_positivity,
    theorem_coefficients, weitzenboeck_coefficients, BracketExtent,
};
use pseudoherm::curvature::{eigendecompose, gen_random_psd_symmetric, operator_matrix};
use pseudoherm::forms::{
    form_norm_sq, inner_product, op_r_hash_barhash, op_ric_barhash, op_ric_hash,
    project_tracefree, random_pq_form,
};
use pseudoherm::levi::LeviForm;
use std::time::Instant;

fn main() {
    let shapes: Vec<(usize, usize, usize)> = vec![(3, 1, 1), (4, 1, 1), (4, 1, 2), (4, 2, 1)];
    for &(n, p, q) in &shapes {
        let h = LeviForm::identity(n);
        let splits = vec![
            ("thm", theorem_coefficients(n, q).unwrap()),
            ("wb1", weitzenboeck_coefficients(n, p, q, 1).unwrap().split),
            ("wb2", weitzenboeck_coefficients(n, p, q, 2).unwrap().split),
        ];
        let mut min_lhs = f64::INFINITY;
        let mut min_summand = f64::INFINITY;
        let mut ratios_incl: Vec<f64> = Vec::new();
        let mut ratios_free: Vec<f64> = Vec::new();
        let mut cross: Vec<f64> = Vec::new();
        let start = Instant::now();
        let trials = 12u64;
        let mut iters_total = 0usize;
        for t in 0..trials {
            let seed = 1000 * (n as u64) + 10 * (p as u64) + (q as u64) + t;
            let timer = Instant::now();
            let r = gen_random_psd_symmetric(n, seed, 1e-10).unwrap();
            let _gen_time = timer.elapsed();
            iters_total += 1;
            let w = project_tracefree(&random_pq_form(n, p, q, seed ^ 77).unwrap(), &h, 1e-12)
                .unwrap();
            let scale = bochner_scale(&r, &w).max(1e-300);
            for (_, c) in &splits {
                let v = lhs_direct(c, &r, &w, &h).unwrap() / scale;
                min_lhs = min_lhs.min(v);
            }
            // cross-route constant: lhs / <combo, w>
            let c = &splits[1].1;
            let lhs = lhs_direct(c, &r, &w, &h).unwrap();
            let combo = op_r_hash_barhash(&r, &w, &h)
                .unwrap()
                .scale_re(-c.n_f64())
                .add(&op_ric_hash(&r, &w, &h).unwrap().scale_re(-c.m1_f64()))
                .unwrap()
                .add(&op_ric_barhash(&r, &w, &h).unwrap().scale_re(-c.m2_f64()))
                .unwrap();
            let ip = inner_product(&combo, &w, &h).unwrap();
            if ip.norm() > 1e-12 {
                cross.push(lhs / ip.re);
            }
            // per-eigen summands + SOS ratios
            let spec = eigendecompose(&operator_matrix(&r, &h), 1e-8).unwrap();
            for (lam, e) in spec.lambdas.iter().zip(&spec.eigvecs) {
                if *lam < 1e-8 {
                    continue;
                }
                let f = per_eigen_summand(e, &w, c, &h).unwrap();
                min_summand = min_summand.min(f / scale);
                for (extent, ratios) in [
                    (BracketExtent::IncludeDummy, &mut ratios_incl),
                    (BracketExtent::FreeOnly, &mut ratios_free),
                ] {
                    let (ot, o) = omega_caps(e, &w, &h, extent).unwrap();
                    let rhs = rhs_positivity(c, p, q, &ot, &o, &h).unwrap();
                    if rhs.abs() > 1e-10 {
                        ratios.push(f / rhs);
                    }
                }
            }
        }
        let elapsed = start.elapsed();
        let stat = |v: &Vec<f64>| -> (f64, f64) {
            let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        };
        println!(
            "shape (n={n}, p={p}, q={q}): min_lhs/scale = {min_lhs:.3e}, min_summand/scale = {min_summand:.3e}"
        );
        println!(
            "  SOS ratio include-dummy: {:?}    free-only: {:?}",
            stat(&ratios_incl),
            stat(&ratios_free)
        );
        println!(
            "  cross-route constant lhs/<combo,w>: {:?}  (p!q!={}, (-1)^pq={})",
            stat(&cross),
            (1..=p).product::<usize>() * (1..=q).product::<usize>(),
            if (p * q) % 2 == 0 { 1 } else { -1 }
        );
        println!(
            "  {} generator runs in {:.2?} ({:.1?} avg)",
            iters_total,
            elapsed,
            elapsed / iters_total as u32
        );
    }

    // projection iteration counts across seeds
    use pseudoherm::curvature::{dykstra_project, CURVATURE_SLOTS};
    use pseudoherm::tensor::MultiTensor;
    use rand::SeedableRng;
    for n in [2usize, 3, 4] {
        let h = LeviForm::identity(n);
        let mut iters: Vec<usize> = Vec::new();
        for seed in 0..20u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let raw = MultiTensor::random(n, CURVATURE_SLOTS.to_vec(), &mut rng);
            let reality = raw.conjugate().permute_slots(&[1, 0, 3, 2]);
            let start = raw.add(&reality).unwrap().scale_re(0.5);
            let outcome = dykstra_project(&start, &h, 1e-10, 10_000).unwrap();
            iters.push(outcome.iterations);
        }
        iters.sort();
        println!(
            "dykstra n={n}: iterations min {} / median {} / max {} over 20 seeds",
            iters[0],
            iters[iters.len() / 2],
            iters[iters.len() - 1]
        );
    }

    // norm positivity sweep
    let mut min_norm = f64::INFINITY;
    for n in 2..=4usize {
        let h = LeviForm::random(n, 99);
        for p in 0..=n.min(3) {
            for q in 0..=n.min(3) {
                if p > n || q > n || p + q == 0 {
                    continue;
                }
                for seed in 0..5 {
                    let w = random_pq_form(n, p, q, seed).unwrap();
                    min_norm = min_norm.min(form_norm_sq(&w, &h).unwrap());
                }
            }
        }
    }
    println!("min form norm over sweep: {min_norm:.3e}");
}
