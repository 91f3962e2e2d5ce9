//! Execution policy for the data-parallel sweeps.
//!
//! Every helper here returns the same value under [`Exec::Sequential`] and
//! [`Exec::Parallel`]: searches report the first hit in index order and
//! reductions are order-independent. Without the `parallel` feature the
//! parallel policy runs sequentially.

use std::ops::Range;

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exec {
    Sequential,
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

fn chunk_ranges(total: u64, chunk: u64) -> impl Iterator<Item = Range<u64>> + Clone {
    let chunk = chunk.max(1);
    let n = total.div_ceil(chunk);
    (0..n).map(move |i| i * chunk..((i + 1) * chunk).min(total))
}

/// Splits `0..total` into chunks and returns the result of the first chunk
/// (in index order) for which `f` yields `Some`.
pub fn find_first_chunk<T, F>(exec: Exec, total: u64, chunk: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(Range<u64>) -> Option<T> + Sync + Send,
{
    let ranges: Vec<Range<u64>> = chunk_ranges(total, chunk).collect();
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return ranges.into_par_iter().find_map_first(f);
    }
    let _ = exec;
    ranges.into_iter().find_map(f)
}

/// `items.map(f)` preserving order.
pub fn map_collect<I, T, F>(exec: Exec, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Sum of `f` over `0..n`.
pub fn sum_indices<F>(exec: Exec, n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).sum();
    }
    let _ = exec;
    (0..n).map(f).sum()
}
