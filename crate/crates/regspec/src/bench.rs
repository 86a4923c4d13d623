//! Parallel execution of the simulation benchmark. Results are collected in
//! realization order, so they do not depend on the number of threads.

use rayon::prelude::*;
use regspec_core::likelihood::{FitReport, LambdaSearch};
use regspec_core::penalty::NamedWindow;
use regspec_core::simulate::{self, ExperimentReport, SimConfig};
use regspec_core::Result;

pub const THREADS_ENV: &str = "REGSPEC_THREADS";

/// Positive integer from `REGSPEC_THREADS`, if set.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n: &usize| n > 0)
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

pub fn run_experiment(config: &SimConfig, threads: Option<usize>) -> Result<ExperimentReport> {
    config.validate()?;
    let results = with_pool(threads, || {
        (0..config.realizations)
            .into_par_iter()
            .map(|i| simulate::run_realization(config, i))
            .collect::<Result<Vec<_>>>()
    })?;
    simulate::aggregate(config, results)
}

/// Window selected for each realization, in realization order.
pub fn select_windows(
    config: &SimConfig,
    bank: &[NamedWindow],
    search: &LambdaSearch,
    threads: Option<usize>,
) -> Result<Vec<(NamedWindow, FitReport)>> {
    config.validate()?;
    with_pool(threads, || {
        (0..config.realizations)
            .into_par_iter()
            .map(|i| simulate::select_window_for(config, i, bank, search))
            .collect()
    })
}

/// Selection counts per bank entry.
pub fn histogram(bank: &[NamedWindow], picks: &[(NamedWindow, FitReport)]) -> Vec<usize> {
    bank.iter().map(|w| picks.iter().filter(|(p, _)| p == w).count()).collect()
}
