// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Counting the frequencies `l 2^n` at which the Cantor-measure transform
//! fails to decay.
//!
//! For `N/2 ≤ 3^r` the numbers `l 4^n`, `0 ≤ n < 3^r`, run through every
//! residue class mod `3^{r+m+1}` congruent to `l` mod `3^{m+1}` (where
//! `3^m ‖ l`), so their base-3 digits `m+1 ..= m+r` take every value in
//! `{0,1,2}^r` exactly once. Each digit equal to 1 forces one cosine factor
//! to be at most 1/2 in absolute value. Indices whose window holds at least
//! `r/8` ones (the set S1) thus have a small transform, and the remaining
//! set S2 is counted exactly by a binomial sum.
//!
//! This module checks each of those steps by enumeration and compares the
//! resulting bound with a direct count of large transform values.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fourier_mu::{product_from_digits, Angle, DEFAULT_TOL};

/// Largest `r` accepted by the enumeration routines (`3^13 ≈ 1.6e6` indices).
pub const MAX_ENUMERATION_R: u32 = 13;

/// Largest `N` accepted by [`exceptional_count_direct`].
pub const MAX_DIRECT_N: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasselsConstants {
    /// `2^{log 2 / (8 log 3)}`
    pub c1: f64,
    /// `2 (3/2)^{1 - 25 / (288 log 3)}`
    pub c2: f64,
    /// Rounded decay exponent, 0.078.
    pub decay_exponent: f64,
    /// Rounded count exponent, 0.922.
    pub count_exponent: f64,
    /// `log 2 / (8 log 3)` before rounding.
    pub exact_decay_exponent: f64,
    /// `1 - 25 / (288 log 3)` before rounding.
    pub exact_count_exponent: f64,
}

impl CasselsConstants {
    /// The roundings to 0.078 and 0.922 only weaken the bounds.
    pub fn roundings_conservative(&self) -> bool {
        self.exact_decay_exponent >= self.decay_exponent && self.exact_count_exponent <= self.count_exponent
    }

    /// `C1 N^{-0.078}`.
    pub fn decay_threshold(&self, n: u64) -> f64 {
        self.c1 * (n as f64).powf(-self.decay_exponent)
    }

    /// `C2 N^{0.922}`.
    pub fn count_bound(&self, n: u64) -> f64 {
        self.c2 * (n as f64).powf(self.count_exponent)
    }
}

pub fn constants() -> CasselsConstants {
    let ln2 = std::f64::consts::LN_2;
    let ln3 = 3f64.ln();
    let exact_decay_exponent = ln2 / (8.0 * ln3);
    let exact_count_exponent = 1.0 - 25.0 / (288.0 * ln3);
    CasselsConstants {
        c1: 2f64.powf(exact_decay_exponent),
        c2: 2.0 * 1.5f64.powf(exact_count_exponent),
        decay_exponent: 0.078,
        count_exponent: 0.922,
        exact_decay_exponent,
        exact_count_exponent,
    }
}

/// The unique `r ≥ 0` with `3^{r-1} < N/2 ≤ 3^r`.
pub fn r_from_n(n: u64) -> Result<u32> {
    if n < 2 {
        return Err(Error::invalid(format!("N must be at least 2, got {n}")));
    }
    let mut r = 0u32;
    let mut pow = 1u128;
    while 2 * pow < n as u128 {
        pow *= 3;
        r += 1;
    }
    Ok(r)
}

/// `m` with `3^m ‖ l`.
pub fn three_adic_valuation(l: i64) -> Result<u32> {
    if l == 0 {
        return Err(Error::invalid("l must be nonzero"));
    }
    let mut l = l.unsigned_abs();
    let mut m = 0;
    while l % 3 == 0 {
        l /= 3;
        m += 1;
    }
    Ok(m)
}

fn pow3(e: u32) -> u64 {
    3u64.pow(e)
}

/// Validates `(l, r)` and returns `(m, 3^{r+m+1})`.
fn enumeration_setup(l: i64, r: u32) -> Result<(u32, u64)> {
    let m = three_adic_valuation(l)?;
    if r > MAX_ENUMERATION_R {
        return Err(Error::Resource {
            what: format!("enumeration over 3^{r} indices"),
            limit: MAX_ENUMERATION_R as u64,
        });
    }
    if r + m + 1 > 40 {
        return Err(Error::Resource {
            what: format!("modulus 3^{} exceeds 64-bit arithmetic", r + m + 1),
            limit: 40,
        });
    }
    Ok((m, pow3(r + m + 1)))
}

/// `l 4^n mod modulus` for `0 ≤ n < 3^r`, in order.
fn powers_of_four(l: i64, r: u32, modulus: u64) -> impl Iterator<Item = u64> {
    let start = l.rem_euclid(modulus as i64) as u64;
    (0..pow3(r)).scan(start, move |acc, _| {
        let cur = *acc;
        *acc = ((cur as u128 * 4) % modulus as u128) as u64;
        Some(cur)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueOrbit {
    pub l: i64,
    pub r: u32,
    pub m: u32,
    pub modulus: u64,
    /// `l 4^n mod 3^{r+m+1}` for `n = 0 .. 3^r`, in order of `n`.
    pub residues: Vec<u64>,
    /// The residues are distinct, there are `3^r` of them, and each is
    /// congruent to `l` mod `3^{m+1}`; together that is every such class.
    pub verified: bool,
}

pub fn residue_orbit(l: i64, r: u32) -> Result<ResidueOrbit> {
    let (m, modulus) = enumeration_setup(l, r)?;
    let residues: Vec<u64> = powers_of_four(l, r, modulus).collect();
    let class_mod = pow3(m + 1);
    let class = l.rem_euclid(class_mod as i64) as u64;
    let mut sorted = residues.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let verified = sorted.len() as u64 == pow3(r) && residues.iter().all(|&x| x % class_mod == class);
    Ok(ResidueOrbit {
        l,
        r,
        m,
        modulus,
        residues,
        verified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitPartition {
    pub l: i64,
    pub r: u32,
    pub m: u32,
    /// Indices whose digit window holds at least `r/8` ones.
    pub s1_count: u64,
    pub s2_count: u64,
}

/// Number of ones among base-3 digits `m+1 ..= m+r` of `value`.
fn window_ones(value: u64, m: u32, r: u32) -> u32 {
    let mut w = value / pow3(m + 1);
    let mut ones = 0;
    for _ in 0..r {
        if w % 3 == 1 {
            ones += 1;
        }
        w /= 3;
    }
    ones
}

/// Splits `0 ≤ n < 3^r` by the digit window of `l 4^n`.
pub fn digit_partition(l: i64, r: u32) -> Result<DigitPartition> {
    let (m, modulus) = enumeration_setup(l, r)?;
    let mut s1 = 0u64;
    let mut s2 = 0u64;
    for v in powers_of_four(l, r, modulus) {
        // ones >= r / 8, in integers
        if 8 * window_ones(v, m, r) >= r {
            s1 += 1;
        } else {
            s2 += 1;
        }
    }
    Ok(DigitPartition {
        l,
        r,
        m,
        s1_count: s1,
        s2_count: s2,
    })
}

/// `#{b ∈ {0,1,2}^r : #{j : b_j = 1} < r/8} = Σ_{k < r/8} C(r,k) 2^{r-k}`.
pub fn s2_closed_form(r: u32) -> BigUint {
    let mut total = BigUint::zero();
    let mut binom = BigUint::one();
    let mut k = 0u32;
    while 8 * k < r {
        total += &binom << (r - k) as usize;
        binom = binom * (r - k) / (k + 1);
        k += 1;
    }
    total
}

#[derive(Debug, Clone, PartialEq)]
pub struct HoeffdingCheck {
    pub r: u32,
    pub exact: BigUint,
    /// `2 · 3^r · e^{-25 r / 288}`
    pub bound: f64,
    pub holds: bool,
}

pub fn hoeffding_check(r: u32) -> Result<HoeffdingCheck> {
    if r < 1 {
        return Err(Error::invalid("r must be at least 1"));
    }
    let exact = s2_closed_form(r);
    let log_bound = 2f64.ln() + r as f64 * 3f64.ln() - 25.0 * r as f64 / 288.0;
    let bound = log_bound.exp();
    let holds = match exact.to_f64() {
        Some(e) if e.is_finite() => e <= bound,
        // compare logs once the count no longer fits a double
        _ => (exact.bits() as f64 - 1.0) * std::f64::consts::LN_2 <= log_bound,
    };
    Ok(HoeffdingCheck { r, exact, bound, holds })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExceptionalCount {
    pub l: i64,
    pub n_limit: u64,
    /// `C1 N^{-0.078}`
    pub threshold: f64,
    /// Indices `0 ≤ n < N` with `|mu^(l 2^n)| > threshold` (or not certified
    /// to be at most the threshold).
    pub count: u64,
    /// Split by the parity of `n`: even `n = 2j` is frequency `l 4^j`, odd
    /// `n = 2j+1` is `2l 4^j`.
    pub even_count: u64,
    pub odd_count: u64,
}

/// Base-3 digits, least significant first.
#[derive(Debug, Clone)]
struct TernaryDigits(Vec<u8>);

impl TernaryDigits {
    fn from_u64(mut v: u64) -> Self {
        let mut d = Vec::new();
        while v > 0 {
            d.push((v % 3) as u8);
            v /= 3;
        }
        TernaryDigits(d)
    }

    fn mul_small(&mut self, k: u8) {
        let mut carry = 0u32;
        for d in self.0.iter_mut() {
            let v = *d as u32 * k as u32 + carry;
            *d = (v % 3) as u8;
            carry = v / 3;
        }
        while carry > 0 {
            self.0.push((carry % 3) as u8);
            carry /= 3;
        }
    }
}

/// Counts `0 ≤ n < N` with `|∫ e(l 2^n x) dmu| > C1 N^{-0.078}`.
///
/// The frequencies are maintained as ternary digit strings and multiplied by
/// 4 in place. Values that cannot be certified below the threshold count as
/// exceedances.
pub fn exceptional_count_direct(l: i64, n_limit: u64) -> Result<ExceptionalCount> {
    if l == 0 {
        return Err(Error::invalid("l must be nonzero"));
    }
    if n_limit > MAX_DIRECT_N {
        return Err(Error::Resource {
            what: format!("direct count up to N = {n_limit}"),
            limit: MAX_DIRECT_N,
        });
    }
    if n_limit < 1 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let threshold = constants().decay_threshold(n_limit);

    let exceeds = |digits: &TernaryDigits| {
        let p = product_from_digits(&digits.0, Angle::Full, DEFAULT_TOL, threshold);
        !p.below_floor && p.upper() > threshold
    };

    let mut even = TernaryDigits::from_u64(l.unsigned_abs());
    let mut odd = TernaryDigits::from_u64(l.unsigned_abs());
    odd.mul_small(2);
    let (mut even_count, mut odd_count) = (0u64, 0u64);
    let mut n = 0u64;
    while n < n_limit {
        if exceeds(&even) {
            even_count += 1;
        }
        if n + 1 < n_limit && exceeds(&odd) {
            odd_count += 1;
        }
        even.mul_small(4);
        odd.mul_small(4);
        n += 2;
    }
    Ok(ExceptionalCount {
        l,
        n_limit,
        threshold,
        count: even_count + odd_count,
        even_count,
        odd_count,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CombinatorialBound {
    pub l: i64,
    pub n_limit: u64,
    pub r: u32,
    pub s2: BigUint,
    /// `2 · #S2`: one copy for even and one for odd `n`.
    pub upper: BigUint,
    /// `C2 N^{0.922}`
    pub bound: f64,
    pub holds: bool,
    /// `(1/2)^{r/8}`, the transform bound on S1.
    pub s1_decay: f64,
    /// `C1 N^{-0.078}`
    pub s1_threshold: f64,
    pub s1_holds: bool,
}

/// The S2-based bound on the exceptional count; closed form, so `N` may be
/// astronomically large.
pub fn exceptional_bound_combinatorial(l: i64, n_limit: u64) -> Result<CombinatorialBound> {
    three_adic_valuation(l)?;
    let r = r_from_n(n_limit)?;
    let c = constants();
    let s2 = s2_closed_form(r);
    let upper: BigUint = &s2 << 1usize;
    let bound = c.count_bound(n_limit);
    let holds = upper.to_f64().is_some_and(|u| u <= bound);
    let s1_decay = 0.5f64.powf(r as f64 / 8.0);
    let s1_threshold = c.decay_threshold(n_limit);
    Ok(CombinatorialBound {
        l,
        n_limit,
        r,
        s2,
        upper,
        bound,
        holds,
        s1_decay,
        s1_threshold,
        s1_holds: s1_decay <= s1_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_values() {
        let c = constants();
        assert!((c.c1 - 1.0562).abs() < 1e-4, "{}", c.c1);
        assert!((c.c2 - 2.9054).abs() < 1e-4, "{}", c.c2);
        assert!((c.exact_decay_exponent - 0.078_866_219).abs() < 1e-9);
        assert!(c.exact_decay_exponent >= 0.078);
        assert!(c.roundings_conservative());
    }

    #[test]
    fn r_examples() {
        assert_eq!(r_from_n(18).unwrap(), 2);
        assert_eq!(r_from_n(2).unwrap(), 0);
        assert_eq!(r_from_n(1_000_000).unwrap(), 12);
        assert!(r_from_n(1).is_err());
        for n in 2..5000u64 {
            let r = r_from_n(n).unwrap() as i32;
            assert!(3f64.powi(r - 1) < n as f64 / 2.0 && n as f64 / 2.0 <= 3f64.powi(r));
        }
    }

    #[test]
    fn residue_examples() {
        let o = residue_orbit(1, 1).unwrap();
        assert_eq!((o.modulus, o.residues.clone(), o.verified), (9, vec![1, 4, 7], true));
        let o = residue_orbit(1, 2).unwrap();
        let mut s = o.residues.clone();
        s.sort();
        assert_eq!(s, vec![1, 4, 7, 10, 13, 16, 19, 22, 25]);
        assert!(o.verified);
        let o = residue_orbit(3, 1).unwrap();
        assert_eq!((o.m, o.modulus), (1, 27));
        let mut s = o.residues.clone();
        s.sort();
        assert_eq!(s, vec![3, 12, 21]);
        assert!(o.verified);
    }

    #[test]
    fn negative_l_residues() {
        let o = residue_orbit(-2, 4).unwrap();
        assert!(o.verified);
        assert!(o.residues.iter().all(|&x| x % 3 == 1));
    }

    #[test]
    fn enumeration_guards() {
        assert!(matches!(residue_orbit(1, 14), Err(Error::Resource { .. })));
        assert!(matches!(digit_partition(3i64.pow(30), 13), Err(Error::Resource { .. })));
        assert!(residue_orbit(0, 2).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(s2_closed_form(8), BigUint::from(256u32));
        assert_eq!(s2_closed_form(0), BigUint::zero());
        assert_eq!(s2_closed_form(16), BigUint::from(589_824u32));
        assert_eq!(s2_closed_form(1), BigUint::from(2u32));
    }

    #[test]
    fn partition_sums_and_small_case() {
        let p = digit_partition(1, 8).unwrap();
        assert_eq!(p.s1_count + p.s2_count, 6561);
        assert_eq!(p.s2_count, 256);
    }

    #[test]
    fn hoeffding_examples() {
        let h = hoeffding_check(8).unwrap();
        assert_eq!(h.exact, BigUint::from(256u32));
        assert!((h.bound - 2.0 * 6561.0 * (-25.0f64 * 8.0 / 288.0).exp()).abs() < 1e-9);
        assert!(h.holds);
        let h = hoeffding_check(1).unwrap();
        assert_eq!(h.exact, BigUint::from(2u32));
        assert!((h.bound - 5.50).abs() < 0.01);
        assert!(hoeffding_check(0).is_err());
    }

    #[test]
    fn combinatorial_million() {
        let b = exceptional_bound_combinatorial(1, 1_000_000).unwrap();
        assert_eq!(b.r, 12);
        assert_eq!(b.upper, BigUint::from(2u32 * (4096 + 12 * 2048)));
        assert_eq!(b.upper, BigUint::from(57_344u32));
        assert!(b.holds && b.s1_holds);
    }

    #[test]
    fn direct_count_is_three_invariant() {
        for l in [1i64, 2, 5] {
            let a = exceptional_count_direct(l, 300).unwrap();
            let b = exceptional_count_direct(3 * l, 300).unwrap();
            assert_eq!(a.count, b.count);
            assert!(a.count <= 300);
        }
    }

    #[test]
    fn direct_count_guards() {
        assert!(matches!(
            exceptional_count_direct(1, MAX_DIRECT_N + 1),
            Err(Error::Resource { .. })
        ));
        assert!(exceptional_count_direct(0, 10).is_err());
    }

    #[test]
    fn ternary_mul() {
        let mut t = TernaryDigits::from_u64(5);
        t.mul_small(4);
        assert_eq!(t.0, TernaryDigits::from_u64(20).0);
    }
}
