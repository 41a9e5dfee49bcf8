//! Execution strategy for the data-parallel inner loops (quadrature sums,
//! grid scans, Monte-Carlo batches).
//!
//! Both strategies produce bit-identical results: sums are accumulated in
//! fixed-size chunks, each chunk left to right, and chunk partials are then
//! folded in index order. Without the `parallel` feature,
//! [`Execution::Parallel`] runs sequentially.

use std::ops::Add;

use num_traits::Zero;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of terms accumulated per chunk before the chunk partials are folded.
pub const CHUNK: usize = 256;

/// Below this amount of work the parallel strategy runs inline.
#[cfg(feature = "parallel")]
const PARALLEL_MIN_LEN: usize = 2 * CHUNK;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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
    /// True when this strategy actually fans out to a thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `Σ_{i<n} term(i)` with a fixed, strategy-independent summation order.
    pub fn sum<T, F>(self, n: usize, term: F) -> T
    where
        T: Zero + Add<Output = T> + Copy + Send,
        F: Fn(usize) -> T + Sync,
    {
        let chunk_sum = |c: usize| {
            let end = ((c + 1) * CHUNK).min(n);
            (c * CHUNK..end).fold(T::zero(), |acc, i| acc + term(i))
        };
        let chunks = n.div_ceil(CHUNK);
        let partials: Vec<T> = self.map_range(chunks, n, chunk_sum);
        partials.into_iter().fold(T::zero(), |acc, x| acc + x)
    }

    /// `(0..n).map(f)` collected in index order.
    pub fn map<U, F>(self, n: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync,
    {
        self.map_range(n, n, f)
    }

    fn map_range<U, F>(self, n: usize, work: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && work >= PARALLEL_MIN_LEN {
            return (0..n).into_par_iter().map(&f).collect();
        }
        let _ = work;
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_bitwise() {
        let term = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        for n in [0, 1, 7, CHUNK, CHUNK + 1, 10_000] {
            let a: f64 = Execution::Sequential.sum(n, term);
            let b: f64 = Execution::Parallel.sum(n, term);
            assert_eq!(a.to_bits(), b.to_bits(), "n = {n}");
        }
    }

    #[test]
    fn map_preserves_order() {
        let v = Execution::Parallel.map(5000, |i| i * 3);
        assert!(v.iter().enumerate().all(|(i, &x)| x == 3 * i));
    }
}
