//! Sequential / parallel execution switch.
//!
//! Work is split into a fixed number of shards whose results come back in shard
//! order, whichever mode runs them. Callers reduce those results left to right,
//! so the answer never depends on the thread count.

use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// Shards run on the rayon pool. Without the `parallel` feature this
    /// behaves like [`Parallelism::Sequential`].
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

impl Parallelism {
    /// The mode that will actually run given the compiled features.
    pub fn effective(self) -> Parallelism {
        if cfg!(feature = "parallel") {
            self
        } else {
            Parallelism::Sequential
        }
    }

    /// Runs `f(0..shards)` and returns the results in shard order.
    pub fn map_shards<R, F>(self, shards: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self.effective() {
            Parallelism::Sequential => (0..shards).map(f).collect(),
            #[cfg(feature = "parallel")]
            Parallelism::Parallel => {
                use rayon::prelude::*;
                (0..shards).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            Parallelism::Parallel => unreachable!(),
        }
    }

    /// Unstable sort; callers must supply a total order so the result is the
    /// same in both modes.
    pub fn sort_by<T, F>(self, items: &mut [T], cmp: F)
    where
        T: Send,
        F: Fn(&T, &T) -> Ordering + Sync,
    {
        match self.effective() {
            Parallelism::Sequential => items.sort_unstable_by(cmp),
            #[cfg(feature = "parallel")]
            Parallelism::Parallel => {
                use rayon::prelude::*;
                items.par_sort_unstable_by(cmp)
            }
            #[cfg(not(feature = "parallel"))]
            Parallelism::Parallel => unreachable!(),
        }
    }
}

/// Number of shards used for an enumeration over `free_bits` bits.
pub(crate) fn shard_bits(free_bits: u32, parallelism: Parallelism) -> u32 {
    match parallelism.effective() {
        Parallelism::Sequential => 0,
        Parallelism::Parallel => free_bits.min(8),
    }
}

/// Pairwise summation with a fixed tree shape.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}
