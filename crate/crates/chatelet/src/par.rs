//! Data-parallel map/reduce facade.
//!
//! Counting kernels and sieve scans are embarrassingly parallel over index
//! ranges. All of them go through [`sum_over`] so that the parallel and
//! sequential paths share one partitioning scheme: results are integer (or
//! otherwise exactly associative) sums, so the two paths are bit-identical.
//! With the `parallel` feature disabled the crate compiles without rayon and
//! `ExecMode::Parallel` silently degrades to the sequential loop.

/// Runtime choice between the rayon path and the plain loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    #[default]
    Parallel,
    Sequential,
}

#[cfg(feature = "parallel")]
pub fn sum_over<T, F>(mode: ExecMode, range: std::ops::Range<usize>, f: F) -> T
where
    T: Send + std::iter::Sum<T>,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match mode {
        ExecMode::Parallel => range.into_par_iter().map(f).sum(),
        ExecMode::Sequential => range.map(f).sum(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn sum_over<T, F>(_mode: ExecMode, range: std::ops::Range<usize>, f: F) -> T
where
    T: Send + std::iter::Sum<T>,
    F: Fn(usize) -> T + Sync + Send,
{
    range.map(f).sum()
}

/// Try-variant: first error wins deterministically (lowest index).
pub fn try_sum_over<T, E, F>(
    mode: ExecMode,
    range: std::ops::Range<usize>,
    f: F,
) -> std::result::Result<T, E>
where
    T: Send + std::iter::Sum<T>,
    E: Send + Ord,
    F: Fn(usize) -> std::result::Result<T, E> + Sync + Send,
{
    let results: Vec<std::result::Result<T, E>> = collect_over(mode, range, f);
    let mut acc: Vec<T> = Vec::with_capacity(results.len());
    let mut first_err: Option<E> = None;
    for r in results {
        match r {
            Ok(v) => acc.push(v),
            Err(e) => {
                if first_err.as_ref().map_or(true, |p| e < *p) {
                    first_err = Some(e);
                }
            }
        }
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(acc.into_iter().sum()),
    }
}

#[cfg(feature = "parallel")]
pub fn collect_over<T, F>(mode: ExecMode, range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match mode {
        ExecMode::Parallel => range.into_par_iter().map(f).collect(),
        ExecMode::Sequential => range.map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn collect_over<T, F>(_mode: ExecMode, range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    range.map(f).collect()
}

/// Configure the global worker pool. A no-op without the `parallel` feature
/// or if a pool is already installed (rayon only allows one global build).
pub fn configure_workers(n: usize) {
    #[cfg(feature = "parallel")]
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
    }
}
