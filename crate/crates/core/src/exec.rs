//! Sequential or data-parallel evaluation of independent sub-boxes.
//!
//! Every search in this crate partitions its integer box by the value of the
//! leading coordinate and merges the per-slice results in slice order, so the
//! output never depends on the strategy chosen here.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential evaluation when built without the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// `f(lo), …, f(hi)` in order.
pub(crate) fn map_range<T, F>(exec: Exec, lo: i64, hi: i64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> T + Sync + Send,
{
    if lo > hi {
        return Vec::new();
    }
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (lo..=hi).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (lo..=hi).map(f).collect()
}

/// `f` over every item, results in input order.
pub(crate) fn map_items<S, T, F>(exec: Exec, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
