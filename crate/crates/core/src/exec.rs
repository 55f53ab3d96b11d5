//! Trial fan-out: data-parallel over independent trials with rayon when the
//! `parallel` feature is enabled, plain iteration otherwise. The sequential
//! path is always compiled so benchmarks can compare both.

/// Maps `f` over `0..trials`, in parallel when built with the `parallel`
/// feature.
pub fn map_trials<T, F>(trials: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_trials_seq(trials, f)
    }
}

/// Sequential fallback, always available.
pub fn map_trials_seq<T, F>(trials: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    (0..trials).map(f).collect()
}

/// Per-trial seed derivation: base seed plus trial index.
pub fn trial_seed(base: u64, trial: u64) -> u64 {
    base.wrapping_add(trial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let a = map_trials(32, |t| t * t);
        let b = map_trials_seq(32, |t| t * t);
        assert_eq!(a, b);
    }

    #[test]
    fn seeds_are_distinct_per_trial() {
        let seeds: Vec<u64> = (0..10).map(|t| trial_seed(42, t)).collect();
        let mut sorted = seeds.clone();
        sorted.dedup();
        assert_eq!(seeds.len(), sorted.len());
    }
}
