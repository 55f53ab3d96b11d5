//! Benchmarks the trial fan-out of the verification suites: the default
//! rayon data-parallel path against the same work forced onto a single
//! worker thread, plus the raw trial mapper both ways.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pseudoherm::bochner::{run_suite, SuiteConfig};
use pseudoherm::curvature::gen_random_psd_symmetric;
use pseudoherm::exec::{map_trials, map_trials_seq, trial_seed};

fn single_thread_pool() -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("pool builds")
}

fn bench_suites(c: &mut Criterion) {
    let pool = single_thread_pool();

    let mut group = c.benchmark_group("verify-lemma-antisym");
    group.sample_size(20);
    let config = SuiteConfig { n: 3, k: 3, trials: 64, seed: 7, tol: 1e-12, p: 1, q: 1 };
    group.bench_with_input(BenchmarkId::new("parallel", 64), &config, |b, cfg| {
        b.iter(|| run_suite("lemma-antisym", cfg).unwrap());
    });
    group.bench_with_input(BenchmarkId::new("single-thread", 64), &config, |b, cfg| {
        b.iter(|| pool.install(|| run_suite("lemma-antisym", cfg).unwrap()));
    });
    group.finish();

    let mut group = c.benchmark_group("verify-bochner");
    group.sample_size(10);
    let config = SuiteConfig { n: 3, p: 1, q: 1, k: 3, trials: 8, seed: 42, tol: 1e-10 };
    group.bench_with_input(BenchmarkId::new("parallel", 8), &config, |b, cfg| {
        b.iter(|| run_suite("bochner", cfg).unwrap());
    });
    group.bench_with_input(BenchmarkId::new("single-thread", 8), &config, |b, cfg| {
        b.iter(|| pool.install(|| run_suite("bochner", cfg).unwrap()));
    });
    group.finish();

    let mut group = c.benchmark_group("instance-generation");
    group.sample_size(10);
    group.bench_function("map_trials/parallel", |b| {
        b.iter(|| {
            map_trials(16, |t| {
                gen_random_psd_symmetric(2, trial_seed(100, t), 1e-10).unwrap().n()
            })
        });
    });
    group.bench_function("map_trials_seq/sequential", |b| {
        b.iter(|| {
            map_trials_seq(16, |t| {
                gen_random_psd_symmetric(2, trial_seed(100, t), 1e-10).unwrap().n()
            })
        });
    });
    group.finish();
}

criterion_group!(benches, bench_suites);
criterion_main!(benches);
