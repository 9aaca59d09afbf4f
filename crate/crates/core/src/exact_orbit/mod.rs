// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact points of the middle-third Cantor set and certified orbits of the
//! doubling map `x -> 2x mod 1`.
//!
//! A point is stored as a finite ternary digit stream `d_1 .. d_M` over
//! `{0, 2}`. The represented value `p / 3^M` is a lower bound for every
//! infinite extension of the stream, and the true point lies in
//! `[p / 3^M, p / 3^M + 3^{-M}]`. Orbit values carry that interval forward:
//! after `n` doublings it has width `2^n * 3^{-M}`, so a depth `M` certifies
//! roughly `M * log2(3)` steps.
//!
//! Two engines compute the orbit:
//!
//! * [`OrbitCursor`] keeps the residue `2^n p mod 3^M` and doubles it in
//!   place, exactly as the dynamics act on `p / 3^M`.
//! * [`BinaryOrbit`] converts `p / 3^M` to binary once. After that `2^n x mod 1`
//!   is a shift of the expansion and each step costs O(1).
//!
//! Both are exact up to the stated certificate and must agree; the harness
//! uses [`BinaryOrbit`] for long runs.

mod cursor;
mod expansion;
mod point;

pub use cursor::OrbitCursor;
pub use expansion::{binary_digits, BinaryDigits, BinaryOrbit};
pub use point::{sample_cantor, sample_lebesgue, BinaryPoint, CantorPoint, Provenance, TernaryScale};

/// `log2(3)`.
pub const LOG2_3: f64 = 1.584_962_500_721_156_2;

/// Guard bits kept between the last certified step and the point's depth.
pub const DEFAULT_GUARD_BITS: u32 = 64;

/// Slack added to every certificate for the conversion of 64-bit windows to
/// `f64` and the subtraction in [`circle_distance`].
pub(crate) const FLOAT_SLACK: f64 = 4.0 * f64::EPSILON;

/// Largest step `n` whose orbit value a depth-`depth` point certifies with
/// `guard_bits` bits to spare.
pub fn max_safe_step(depth: usize, guard_bits: u32) -> u64 {
    let bits = (depth as f64 * LOG2_3).floor() as u64;
    bits.saturating_sub(guard_bits as u64)
}

/// Smallest ternary depth whose window covers `steps` doublings with
/// `guard_bits` to spare: `ceil((steps + guard_bits) / log2 3)`.
pub fn depth_for_steps(steps: u64, guard_bits: u32) -> usize {
    let mut depth = ((steps + guard_bits as u64) as f64 / LOG2_3).ceil() as usize;
    depth = depth.max(1);
    while max_safe_step(depth, guard_bits) < steps {
        depth += 1;
    }
    depth
}

/// A point of the circle `R/Z` with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleValue {
    value: f64,
    error: f64,
}

impl CircleValue {
    /// Reduces `value` into `[0, 1)`.
    pub fn new(value: f64, error: f64) -> Self {
        assert!(error >= 0.0 && value.is_finite(), "invalid circle value");
        let mut v = value.rem_euclid(1.0);
        if v >= 1.0 {
            v = 0.0;
        }
        CircleValue { value: v, error }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn error(&self) -> f64 {
        self.error
    }
}

/// Distance on `R/Z`, `min_k |u - v - k|`, in `[0, 1/2]`. The error bounds of
/// the inputs add because the distance is 1-Lipschitz in each argument.
pub fn circle_distance(u: CircleValue, v: CircleValue) -> CircleValue {
    let diff = (u.value - v.value).abs();
    let d = diff.min(1.0 - diff).clamp(0.0, 0.5);
    CircleValue {
        value: d,
        error: u.error + v.error,
    }
}
