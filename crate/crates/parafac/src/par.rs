//! Data-parallel mapping with a sequential fallback.
//!
//! Trials, oracle columns, and sweep cells are independent, so they map
//! cleanly onto a work-stealing pool. Outputs are collected in index order,
//! which keeps results byte-identical between the parallel and sequential
//! builds.

/// Maps `f` over `0..n`, in parallel when the `parallel` feature is enabled.
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential mapping regardless of features; the benchmark baseline.
pub(crate) fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
