// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigUint;

use super::{max_safe_step, BinaryPoint, CantorPoint, CircleValue, TernaryScale, FLOAT_SLACK, LOG2_3};
use crate::error::{Error, Result};

/// Extra binary digits computed beyond the last certified step.
const EXPANSION_MARGIN: usize = 128;

/// `floor(num * 2^bits / den)` as `bits / 64` words, most significant first.
/// Requires `num < den` and `bits % 64 == 0`.
fn fraction_words(num: &BigUint, den: &BigUint, bits: usize) -> Vec<u64> {
    debug_assert_eq!(bits % 64, 0);
    let q = (num << bits) / den;
    let mut le = q.to_u64_digits();
    le.resize(bits / 64, 0);
    le.reverse();
    le
}

/// Bits `offset + 1 ..= offset + 64` of a most-significant-first word array.
#[inline]
fn window(words: &[u64], offset: usize) -> u64 {
    let i = offset / 64;
    let s = offset % 64;
    let hi = words.get(i).copied().unwrap_or(0);
    if s == 0 {
        hi
    } else {
        let lo = words.get(i + 1).copied().unwrap_or(0);
        (hi << s) | (lo >> (64 - s))
    }
}

/// `frac(2^n x)` for every certified `n`, read off a precomputed binary
/// expansion of the point's lower endpoint.
#[derive(Debug, Clone)]
pub struct BinaryOrbit {
    words: Vec<u64>,
    bits: usize,
    /// `log2` of the width of the interval known to contain the true point.
    source_log2: f64,
    max_step: u64,
}

impl BinaryOrbit {
    /// Expands `p / 3^M` far enough to certify `steps` doublings.
    pub fn from_cantor(point: &CantorPoint, guard_bits: u32, steps: u64) -> Result<Self> {
        Self::from_cantor_scaled(point, &TernaryScale::new(point.depth()), guard_bits, steps)
    }

    /// As [`Self::from_cantor`] with a shared `3^M`.
    pub fn from_cantor_scaled(point: &CantorPoint, scale: &TernaryScale, guard_bits: u32, steps: u64) -> Result<Self> {
        assert_eq!(scale.depth(), point.depth(), "scale depth must match point depth");
        let max_safe = max_safe_step(point.depth(), guard_bits);
        if steps > max_safe {
            return Err(Error::PrecisionExhausted {
                requested: steps,
                max_safe,
                depth: point.depth(),
            });
        }
        let bits = (steps as usize + EXPANSION_MARGIN).next_multiple_of(64);
        let mut words = fraction_words(&point.numerator(), scale.modulus(), bits);
        words.push(0);
        Ok(BinaryOrbit {
            words,
            bits,
            source_log2: -(point.depth() as f64) * LOG2_3,
            max_step: steps,
        })
    }

    /// A binary point needs no conversion; its interval has width `2^-bits`.
    pub fn from_binary(point: &BinaryPoint, guard_bits: u32, steps: u64) -> Result<Self> {
        let max_safe = (point.bits() as u64).saturating_sub(guard_bits as u64);
        if steps > max_safe {
            return Err(Error::PrecisionExhausted {
                requested: steps,
                max_safe,
                depth: point.bits(),
            });
        }
        let mut words = point.words().to_vec();
        words.push(0);
        Ok(BinaryOrbit {
            words,
            bits: point.bits(),
            source_log2: -(point.bits() as f64),
            max_step: steps,
        })
    }

    pub fn max_step(&self) -> u64 {
        self.max_step
    }

    fn check(&self, n: u64) -> Result<()> {
        if n > self.max_step {
            return Err(Error::PrecisionExhausted {
                requested: n,
                max_safe: self.max_step,
                depth: self.bits,
            });
        }
        Ok(())
    }

    /// Width of the certified interval for `frac(2^n x)`.
    fn width(&self, n: u64) -> f64 {
        let n = n as f64;
        2f64.powi(-64) + (n - self.bits as f64).exp2() + (n + self.source_log2).exp2()
    }

    /// The certified interval of `frac(2^n x)` as `(lo, width)` in units of
    /// `2^-64`; `lo + width` may wrap past zero.
    pub fn interval_units(&self, n: u64) -> Result<(u64, u64)> {
        self.check(n)?;
        let units = (self.width(n) * 2f64.powi(64)).ceil() as u64;
        Ok((window(&self.words, n as usize), units.max(1)))
    }

    /// `frac(2^n x)` with its certificate.
    pub fn at(&self, n: u64) -> Result<CircleValue> {
        self.check(n)?;
        Ok(self.at_unchecked(n))
    }

    #[inline]
    pub(crate) fn at_unchecked(&self, n: u64) -> CircleValue {
        let lo = window(&self.words, n as usize) as f64 * 2f64.powi(-64);
        let width = self.width(n);
        CircleValue::new(lo + width / 2.0, width / 2.0 + FLOAT_SLACK)
    }
}

/// Dyadic digits `a_1 a_2 ..` of a point with per-digit ambiguity flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryDigits {
    pub digits: Vec<u8>,
    /// `ambiguous[i]` is set when points of the certified interval disagree
    /// on digit `a_{i+1}`.
    pub ambiguous: Vec<bool>,
}

impl BinaryDigits {
    pub fn ambiguous_count(&self) -> usize {
        self.ambiguous.iter().filter(|&&a| a).count()
    }
}

/// The first `count` dyadic digits of a Cantor point.
///
/// Digit `a_n` is definite when `floor(2^n x)` is the same at both ends of
/// `[p/3^M, (p+1)/3^M]`. The emitted digit is that of the interval midpoint.
pub fn binary_digits(point: &CantorPoint, count: usize, guard_bits: u32) -> Result<BinaryDigits> {
    let max_safe = max_safe_step(point.depth(), guard_bits);
    if count as u64 > max_safe {
        return Err(Error::PrecisionExhausted {
            requested: count as u64,
            max_safe,
            depth: point.depth(),
        });
    }
    let bits = (count + 64).next_multiple_of(64);
    let modulus = BigUint::from(3u32).pow(point.depth() as u32);
    let p = point.numerator();
    let hi_num: BigUint = &p + 1u32;

    let lo = fraction_words(&p, &modulus, bits);
    let mid = fraction_words(&((&p << 1u32) + 1u32), &(&modulus << 1u32), bits);

    // The first digit position where the floors of 2^n lo and 2^n hi differ.
    let first_split = if hi_num == modulus {
        // hi = 1: the integer part already differs.
        1
    } else {
        let hi = fraction_words(&hi_num, &modulus, bits);
        lo.iter()
            .zip(&hi)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map_or(usize::MAX, |(i, (a, b))| i * 64 + (a ^ b).leading_zeros() as usize + 1)
    };

    let digits = (1..=count)
        .map(|n| ((mid[(n - 1) / 64] >> (63 - (n - 1) % 64)) & 1) as u8)
        .collect();
    let ambiguous = (1..=count).map(|n| n >= first_split).collect();
    Ok(BinaryDigits { digits, ambiguous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_orbit::{
        circle_distance, depth_for_steps, sample_cantor, sample_lebesgue, OrbitCursor, DEFAULT_GUARD_BITS,
    };

    fn quarter(m: usize) -> CantorPoint {
        let digits: Vec<u8> = (0..m).map(|j| if j % 2 == 0 { 0 } else { 2 }).collect();
        CantorPoint::from_ternary(&digits).unwrap()
    }

    #[test]
    fn window_reads_across_words() {
        let words = [0x0123_4567_89ab_cdefu64, 0xfedc_ba98_7654_3210, 0];
        assert_eq!(window(&words, 0), words[0]);
        assert_eq!(window(&words, 4), 0x1234_5678_9abc_deff);
        assert_eq!(window(&words, 64), words[1]);
        assert_eq!(window(&words, 68), 0xedcb_a987_6543_2100);
    }

    #[test]
    fn agrees_with_cursor_at_every_step() {
        let steps = 700;
        let m = depth_for_steps(steps, DEFAULT_GUARD_BITS);
        let p = sample_cantor(17, 4, m);
        let orbit = BinaryOrbit::from_cantor(&p, DEFAULT_GUARD_BITS, steps).unwrap();
        let mut cursor = OrbitCursor::new(&p, DEFAULT_GUARD_BITS);
        for n in 0..=steps {
            if n > 0 {
                cursor.advance_in_place().unwrap();
            }
            let a = orbit.at(n).unwrap();
            let b = cursor.value();
            let d = circle_distance(a, b);
            assert!(d.value() <= 2f64.powi(-60), "n = {n}: {a:?} vs {b:?}");
        }
    }

    #[test]
    fn window_is_floor_of_residue_ratio() {
        // top 64 bits of residue / 3^M, computed directly
        let steps = 300;
        let m = depth_for_steps(steps, DEFAULT_GUARD_BITS);
        let p = sample_cantor(2, 9, m);
        let orbit = BinaryOrbit::from_cantor(&p, DEFAULT_GUARD_BITS, steps).unwrap();
        let modulus = BigUint::from(3u32).pow(m as u32);
        for n in [0u64, 1, 63, 64, 65, 128, 299, 300] {
            let r = (p.numerator() << n as usize) % &modulus;
            let top: u64 = ((r << 64u32) / &modulus).try_into().unwrap();
            let (lo, _) = orbit.interval_units(n).unwrap();
            assert_eq!(lo, top, "n = {n}");
        }
    }

    #[test]
    fn precision_window_enforced() {
        let p = sample_cantor(1, 1, 200);
        let max = max_safe_step(200, DEFAULT_GUARD_BITS);
        assert!(BinaryOrbit::from_cantor(&p, DEFAULT_GUARD_BITS, max).is_ok());
        assert!(matches!(
            BinaryOrbit::from_cantor(&p, DEFAULT_GUARD_BITS, max + 1),
            Err(Error::PrecisionExhausted { max_safe, .. }) if max_safe == max
        ));
        let orbit = BinaryOrbit::from_cantor(&p, DEFAULT_GUARD_BITS, 10).unwrap();
        assert!(orbit.at(11).is_err());
    }

    #[test]
    fn lebesgue_orbit_is_a_shift() {
        let b = sample_lebesgue(4, 4, 512);
        let orbit = BinaryOrbit::from_binary(&b, DEFAULT_GUARD_BITS, 400).unwrap();
        assert_eq!(orbit.interval_units(64).unwrap().0, b.words()[1]);
        let v = orbit.at(0).unwrap();
        assert!((v.value() - b.to_f64()).abs() < 1e-15);
        assert!(BinaryOrbit::from_binary(&b, DEFAULT_GUARD_BITS, 449).is_err());
    }

    #[test]
    fn quarter_digits() {
        let q = quarter(400);
        let bd = binary_digits(&q, 100, DEFAULT_GUARD_BITS).unwrap();
        assert_eq!(&bd.digits[..5], &[0, 1, 0, 0, 0]);
        assert!(bd.digits[2..].iter().all(|&d| d == 0));
        // 1/4 is a dyadic rational; everything after a_1 straddles a boundary
        assert!(!bd.ambiguous[0]);
        assert!(bd.ambiguous[1..].iter().all(|&a| a));
    }

    #[test]
    fn zero_digits() {
        let z = CantorPoint::from_ternary(&[0; 300]).unwrap();
        let bd = binary_digits(&z, 200, DEFAULT_GUARD_BITS).unwrap();
        assert!(bd.digits.iter().all(|&d| d == 0));
        assert_eq!(bd.ambiguous_count(), 0);
    }

    #[test]
    fn all_twos_is_ambiguous_everywhere() {
        let p = CantorPoint::from_ternary(&[2; 200]).unwrap();
        let bd = binary_digits(&p, 100, DEFAULT_GUARD_BITS).unwrap();
        assert_eq!(bd.ambiguous_count(), 100);
    }

    #[test]
    fn random_digits_are_definite() {
        let p = sample_cantor(8, 8, 10_000);
        let bd = binary_digits(&p, 5000, DEFAULT_GUARD_BITS).unwrap();
        assert_eq!(bd.ambiguous_count(), 0);
        let ones = bd.digits.iter().filter(|&&d| d == 1).count();
        assert!((2200..2800).contains(&ones));
    }
}
