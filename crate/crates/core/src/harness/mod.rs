// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Shrinking-target experiments along doubling-map orbits.
//!
//! A step `n` is a hit when the certified distance from `frac(2^n x)` to
//! the target `x_n` is at most `ψ(n)`. Steps the fast 64-bit test cannot
//! settle are decided in exact integer arithmetic, first at the point's own
//! depth and then, for sampled points, at twice that depth; anything still
//! open is counted as a hit and reported as unresolved.

mod approx;
mod count;
mod ensemble;
mod runs;
mod sample;
mod targets;

pub use approx::{convergence_sum, ApproxFunction, ConvergenceSum};
pub use count::{count_hits, dyadic_hits, CountCurve, CountRow, CountSummary, CurveMeta};
pub use ensemble::{ensemble, location_test, EnsembleConfig, EnsembleReport};
pub use runs::{zero_runs, ZeroRuns};
pub use sample::{SamplePoint, Sampler};
pub use targets::TargetSequence;
