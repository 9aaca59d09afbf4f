// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Separates the Lebesgue sampler's streams from the Cantor sampler's.
const LEBESGUE_DOMAIN: u64 = 0x4c45_4245_5347_5545;

/// Where a point came from. Sampled points can be regenerated at a greater
/// depth with the same prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Sampled { seed: u64, index: u64 },
    Explicit,
}

/// A truncated ternary expansion `0.d_1 d_2 .. d_M` with every `d_j` in `{0, 2}`.
#[derive(Clone, PartialEq, Eq)]
pub struct CantorPoint {
    digits: Vec<u8>,
    provenance: Provenance,
}

impl CantorPoint {
    /// Builds an explicit point from ternary digits.
    pub fn from_ternary(digits: &[u8]) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::invalid("a Cantor point needs at least one digit"));
        }
        if let Some((position, &d)) = digits.iter().enumerate().find(|(_, &d)| d != 0 && d != 2) {
            return Err(Error::InvalidDigit {
                position,
                digit: char::from_digit(d as u32, 36).unwrap_or('?'),
            });
        }
        Ok(CantorPoint {
            digits: digits.to_vec(),
            provenance: Provenance::Explicit,
        })
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `p = sum_j d_j 3^{M-j}`, so the point is `p / 3^M`.
    pub fn numerator(&self) -> BigUint {
        BigUint::from_radix_be(&self.digits, 3).expect("digits are valid base-3")
    }

    /// Nearest double to `p / 3^M`.
    pub fn to_f64(&self) -> f64 {
        // Beyond 40 digits the contribution is below 3^-40 ~ 8e-20.
        let mut x = 0.0;
        for &d in self.digits.iter().take(40).rev() {
            x = (x + d as f64) / 3.0;
        }
        x
    }

    /// The same point at a greater depth. Only sampled points know their
    /// continuation.
    pub fn refined(&self, depth: usize) -> Option<CantorPoint> {
        match self.provenance {
            Provenance::Sampled { seed, index } => Some(sample_cantor(seed, index, depth.max(self.depth()))),
            Provenance::Explicit => None,
        }
    }
}

impl fmt::Debug for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: String = self.digits.iter().take(24).map(|d| char::from(b'0' + d)).collect();
        f.debug_struct("CantorPoint")
            .field("depth", &self.depth())
            .field(
                "digits",
                &format_args!("{}{}", shown, if self.depth() > 24 { ".." } else { "" }),
            )
            .field("provenance", &self.provenance)
            .finish()
    }
}

/// The ternary digit string, e.g. `0202`.
impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.digits.iter().map(|d| char::from(b'0' + d)).collect();
        f.write_str(&s)
    }
}

impl FromStr for CantorPoint {
    type Err = Error;

    /// Accepts a bare digit string (`0202`) or one prefixed by `0.`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix("0.").unwrap_or(body);
        let mut digits = Vec::with_capacity(body.len());
        for (position, c) in body.chars().enumerate() {
            match c {
                '0' => digits.push(0),
                '2' => digits.push(2),
                _ => return Err(Error::InvalidDigit { position, digit: c }),
            }
        }
        CantorPoint::from_ternary(&digits)
    }
}

/// Draws a `mu`-distributed point: iid fair digits from `{0, 2}`.
///
/// Digit `j` depends only on `(master_seed, index, j)`, so a deeper sample
/// extends a shallower one.
pub fn sample_cantor(master_seed: u64, index: u64, depth: usize) -> CantorPoint {
    assert!(depth >= 1, "depth must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    let mut digits = Vec::with_capacity(depth);
    while digits.len() < depth {
        let word = rng.next_u64();
        let take = (depth - digits.len()).min(64);
        digits.extend((0..take).map(|i| (((word >> i) & 1) as u8) << 1));
    }
    CantorPoint {
        digits,
        provenance: Provenance::Sampled {
            seed: master_seed,
            index,
        },
    }
}

/// A truncated binary expansion, used for Lebesgue-distributed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryPoint {
    /// Bits of the fraction, most significant first, 64 to a word.
    words: Vec<u64>,
    bits: usize,
    provenance: Provenance,
}

impl BinaryPoint {
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if let Some((position, &b)) = bits.iter().enumerate().find(|(_, &b)| b > 1) {
            return Err(Error::InvalidParameter(format!(
                "binary digit {b} at position {position}"
            )));
        }
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            words[i / 64] |= (b as u64) << (63 - i % 64);
        }
        Ok(BinaryPoint {
            words,
            bits: bits.len(),
            provenance: Provenance::Explicit,
        })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn to_f64(&self) -> f64 {
        self.words.first().map_or(0.0, |&w| (w >> 11) as f64 * 2f64.powi(-53))
    }

    pub fn refined(&self, bits: usize) -> Option<BinaryPoint> {
        match self.provenance {
            Provenance::Sampled { seed, index } => Some(sample_lebesgue(seed, index, bits.max(self.bits))),
            Provenance::Explicit => None,
        }
    }
}

/// Draws a Lebesgue-distributed point of the circle to `bits` binary digits.
pub fn sample_lebesgue(master_seed: u64, index: u64, bits: usize) -> BinaryPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed ^ LEBESGUE_DOMAIN);
    rng.set_stream(index);
    let mut words: Vec<u64> = (0..bits.div_ceil(64)).map(|_| rng.next_u64()).collect();
    if bits % 64 != 0 {
        let last = words.len() - 1;
        words[last] &= !0u64 << (64 - bits % 64);
    }
    BinaryPoint {
        words,
        bits,
        provenance: Provenance::Sampled {
            seed: master_seed,
            index,
        },
    }
}

/// `3^depth`, computed once and shared by every point of that depth.
#[derive(Debug, Clone)]
pub struct TernaryScale {
    depth: usize,
    modulus: BigUint,
}

impl TernaryScale {
    pub fn new(depth: usize) -> Self {
        TernaryScale {
            depth,
            modulus: BigUint::from(3u32).pow(depth as u32),
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// `3^{-depth}` as a double (may underflow to zero).
    pub fn inverse_f64(&self) -> f64 {
        match self.modulus.to_f64() {
            Some(m) if m.is_finite() => 1.0 / m,
            _ => 0.0,
        }
    }
}

impl Default for TernaryScale {
    fn default() -> Self {
        TernaryScale {
            depth: 0,
            modulus: BigUint::one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn quarter(m: usize) -> CantorPoint {
        let digits: Vec<u8> = (0..m).map(|j| if j % 2 == 0 { 0 } else { 2 }).collect();
        CantorPoint::from_ternary(&digits).unwrap()
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_cantor(7, 3, 500);
        let b = sample_cantor(7, 3, 500);
        assert_eq!(a, b);
        assert_eq!(a.provenance(), Provenance::Sampled { seed: 7, index: 3 });
    }

    #[test]
    fn deeper_sample_extends_shallower() {
        let short = sample_cantor(11, 5, 130);
        let long = sample_cantor(11, 5, 1000);
        assert_eq!(short.digits(), &long.digits()[..130]);
        assert_eq!(short.refined(1000).unwrap(), long);
    }

    #[test]
    fn fair_digit_frequency() {
        // 6 sigma for Binomial(1e5, 1/2) is 6 * 158 = 949 < 1000
        let p = sample_cantor(1, 0, 100_000);
        let twos = p.digits().iter().filter(|&&d| d == 2).count();
        let frac = twos as f64 / 100_000.0;
        assert!((frac - 0.5).abs() <= 0.01, "fraction of 2s = {frac}");
    }

    #[test]
    fn distinct_indices_give_distinct_points() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..1000 {
            assert!(seen.insert(sample_cantor(99, i, 128).digits().to_vec()));
        }
    }

    #[test]
    fn from_ternary_values() {
        let m = 20;
        let q = quarter(m);
        let three_m = BigUint::from(3u32).pow(m as u32);
        // p = (3^M - 1) / 4 for the 1/4 truncation with M even
        assert_eq!(q.numerator() * 4u32 + 1u32, three_m);
        assert!((q.to_f64() - 0.25).abs() < 1e-9);

        let zero = CantorPoint::from_ternary(&[0; 17]).unwrap();
        assert!(zero.numerator().is_zero());

        let ones = CantorPoint::from_ternary(&[2; 17]).unwrap();
        assert_eq!(ones.numerator() + 1u32, BigUint::from(3u32).pow(17));
    }

    #[test]
    fn rejects_bad_digits() {
        assert!(matches!(
            CantorPoint::from_ternary(&[0, 2, 1]),
            Err(Error::InvalidDigit { position: 2, .. })
        ));
        assert!("0.0212".parse::<CantorPoint>().is_err());
        assert!("".parse::<CantorPoint>().is_err());
    }

    #[test]
    fn string_round_trip() {
        let p: CantorPoint = "0.020220".parse().unwrap();
        assert_eq!(p.to_string(), "020220");
        assert_eq!(p.to_string().parse::<CantorPoint>().unwrap(), p);
    }

    #[test]
    fn lebesgue_prefix_and_masking() {
        let a = sample_lebesgue(3, 1, 100);
        let b = sample_lebesgue(3, 1, 256);
        assert_eq!(a.words()[0], b.words()[0]);
        assert_eq!(a.words()[1], b.words()[1] & (!0u64 << 28));
        let p = BinaryPoint::from_bits(&[0, 1]).unwrap();
        assert_eq!(p.to_f64(), 0.25);
    }
}
