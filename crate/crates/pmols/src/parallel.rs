//! Data-parallel trial execution with a sequential fallback.
//!
//! Monte Carlo sweeps are embarrassingly parallel over trial indices. With
//! the `parallel` feature (default) the map fans out through rayon; without
//! it the same closure runs sequentially. Results always come back indexed
//! by trial, so aggregation order — and therefore every emitted byte — is
//! independent of scheduling.

/// Applies `f` to every index in `0..count`, returning results in index
/// order regardless of execution order.
#[cfg(feature = "parallel")]
pub fn map_trials<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

/// Applies `f` to every index in `0..count`, returning results in index
/// order regardless of execution order.
#[cfg(not(feature = "parallel"))]
pub fn map_trials<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_trials_sequential(count, f)
}

/// Sequential reference path; the criterion bench compares this against
/// [`map_trials`].
pub fn map_trials_sequential<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}

/// Caps the worker pool at `workers` threads. Only the first call in a
/// process takes effect; later calls are ignored. A no-op without the
/// `parallel` feature.
#[cfg(feature = "parallel")]
pub fn configure_workers(workers: usize) {
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global();
}

#[cfg(not(feature = "parallel"))]
pub fn configure_workers(_workers: usize) {}
