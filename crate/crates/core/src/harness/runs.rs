// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigUint;
use serde::Serialize;

use super::SamplePoint;
use crate::error::{Error, Result};

/// Positions `n ≤ N` whose next `⌊c log₂ n⌋` dyadic digits are all 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroRuns {
    pub n_limit: u64,
    pub c_run: f64,
    /// Qualifying `n` with a block of length at least 1.
    pub positions: Vec<u64>,
    /// `n` whose block is empty, which qualify vacuously.
    pub trivial: u64,
    /// Positions included because the block could not be decided at any
    /// available precision.
    pub unresolved: u64,
}

impl ZeroRuns {
    pub fn count(&self) -> usize {
        self.positions.len()
    }
}

/// Block length `⌊c log₂ n⌋`.
pub(crate) fn block_length(c_run: f64, n: u64) -> u32 {
    (c_run * (n as f64).log2()).floor().max(0.0) as u32
}

/// Digits `a_{n+1} .. a_{n+L}` vanish iff `frac(2^n x) < 2^{-L}`; decided for
/// every point of `[r/D, (r+w)/D]`.
fn exact_block(point: &SamplePoint, n: u64, len: u32) -> Option<bool> {
    let (q, den) = point.exact_fraction();
    let r = (q << n as usize) % &den;
    let hi = &r + (BigUint::from(1u32) << n as usize);
    if hi >= den {
        // the interval wraps through 0, where the digits are 0 or 1 alike
        return None;
    }
    if (&hi << len) < den {
        Some(true)
    } else if (&r << len) >= den {
        Some(false)
    } else {
        None
    }
}

pub fn zero_runs(point: &SamplePoint, n_limit: u64, c_run: f64, guard_bits: u32) -> Result<ZeroRuns> {
    if !(c_run >= 0.0 && c_run.is_finite()) {
        return Err(Error::invalid(format!("c_run must be non-negative, got {c_run}")));
    }
    let orbit = point.orbit(guard_bits, n_limit)?;
    let mut refined = None;
    let mut out = ZeroRuns {
        n_limit,
        c_run,
        positions: Vec::new(),
        trivial: 0,
        unresolved: 0,
    };
    for n in 1..=n_limit {
        let len = block_length(c_run, n);
        if len == 0 {
            out.trivial += 1;
            continue;
        }
        let (lo, width) = orbit.interval_units(n)?;
        let hi = lo as u128 + width as u128;
        let fast = if len > 64 {
            None
        } else {
            let bound = 1u128 << (64 - len);
            if hi < bound {
                Some(true)
            } else if lo as u128 >= bound && hi < 1u128 << 64 {
                Some(false)
            } else {
                None
            }
        };
        let zero = match fast.or_else(|| exact_block(point, n, len)) {
            Some(z) => z,
            None => {
                let deeper = refined.get_or_insert_with(|| point.refined());
                match deeper.as_ref().and_then(|p| exact_block(p, n, len)) {
                    Some(z) => z,
                    None => {
                        out.unresolved += 1;
                        true
                    }
                }
            }
        };
        if zero {
            out.positions.push(n);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_orbit::{binary_digits, depth_for_steps, sample_cantor, CantorPoint};

    #[test]
    fn quarter_qualifies_from_three() {
        let digits: Vec<u8> = (0..depth_for_steps(300, 64))
            .map(|j| if j % 2 == 0 { 0 } else { 2 })
            .collect();
        let p = SamplePoint::Cantor(CantorPoint::from_ternary(&digits).unwrap());
        for c in [0.5, 1.0, 3.0] {
            let z = zero_runs(&p, 300, c, 64).unwrap();
            let nontrivial: Vec<u64> = (1..=300).filter(|&n| block_length(c, n) > 0).collect();
            assert!(
                nontrivial.iter().filter(|&&n| n >= 3).all(|n| z.positions.contains(n)),
                "c = {c}"
            );
        }
    }

    #[test]
    fn empty_blocks_are_vacuous() {
        let p = SamplePoint::Cantor(sample_cantor(1, 1, depth_for_steps(100, 64)));
        let z = zero_runs(&p, 100, 0.0, 64).unwrap();
        assert_eq!((z.trivial, z.count()), (100, 0));
    }

    #[test]
    fn matches_digit_expansion() {
        let m = depth_for_steps(3000, 64);
        for i in 0..3 {
            let cp = sample_cantor(8, i, m);
            let bd = binary_digits(&cp, 3000 + 64, 0).unwrap();
            let z = zero_runs(&SamplePoint::Cantor(cp), 3000, 1.0, 64).unwrap();
            assert_eq!(z.unresolved, 0);
            let expected: Vec<u64> = (1..=3000u64)
                .filter(|&n| {
                    let len = block_length(1.0, n) as usize;
                    len > 0 && bd.digits[n as usize..n as usize + len].iter().all(|&d| d == 0)
                })
                .collect();
            assert_eq!(z.positions, expected);
        }
    }
}
