// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic fan-out over sample indices.
//!
//! Work item `i` depends only on `i` and the caller's closure, and results
//! come back in index order, so any reduction done afterwards is the same for
//! every worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Worker count used when none is given.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Evaluates `f(0), .., f(count - 1)` on a pool of `workers` threads and
/// returns the results in index order. The first failing index, by index
/// order, determines the error.
pub fn map_indexed<T, F>(workers: usize, count: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    if workers == 0 {
        return Err(Error::invalid("worker count must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Resource {
            what: format!("thread pool: {e}"),
            limit: workers as u64,
        })?;
    let results: Vec<Result<T>> = pool.install(|| (0..count).into_par_iter().map(&f).collect());
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_index_order() {
        for workers in [1, 3, 8] {
            let v = map_indexed(workers, 100, |i| Ok(i * i)).unwrap();
            assert_eq!(v, (0..100).map(|i| i * i).collect::<Vec<_>>());
        }
    }

    #[test]
    fn first_error_by_index() {
        let r: Result<Vec<u64>> = map_indexed(4, 50, |i| {
            if i % 7 == 3 {
                Err(Error::invalid(format!("bad {i}")))
            } else {
                Ok(i)
            }
        });
        assert_eq!(r, Err(Error::invalid("bad 3")));
        assert!(map_indexed(0, 1, Ok).is_err());
    }
}
