//! Execution strategy for the data-parallel loops.
//!
//! With the `parallel` feature (on by default) the d-loops of the counting
//! formulas and the per-x scan loops run on the rayon pool. Without it every
//! routine takes the sequential path; [`Execution::Parallel`] then silently
//! degrades to sequential so callers never need their own `cfg`s.
//!
//! All reductions here are over exact integers, or produce per-item results
//! collected in input order, so both strategies give bit-identical output.

use std::ops::{Add, RangeInclusive};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a data-parallel loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether this strategy actually fans out in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

// below this many items the rayon split overhead dominates
#[cfg(feature = "parallel")]
const MIN_PARALLEL_LEN: u64 = 2048;

/// Sum `f` over an inclusive range of `u64`.
pub(crate) fn sum_range<T, F>(exec: Execution, range: RangeInclusive<u64>, zero: T, f: F) -> T
where
    T: Add<Output = T> + Clone + Send + Sync,
    F: Fn(u64) -> T + Sync + Send,
{
    let (start, end) = (*range.start(), *range.end());
    if start > end {
        return zero;
    }
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && end - start >= MIN_PARALLEL_LEN {
        return range
            .into_par_iter()
            .map(f)
            .reduce(|| zero.clone(), |a, b| a + b);
    }
    let _ = exec;
    range.map(f).fold(zero, |a, b| a + b)
}

/// Map `f` over `items`, preserving order in the output.
pub(crate) fn map_ordered<I, T, F>(exec: Execution, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && items.len() > 1 {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
