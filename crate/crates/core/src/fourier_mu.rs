// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Certified Fourier transform of the Cantor measure.
//!
//! With `mu` the uniform measure on the middle-third Cantor set,
//!
//! ```text
//! mu^(t) = ∫ e(t x) dmu(x) = (-1)^t · Π_{k≥1} cos(2π t / 3^k)      (t ∈ Z)
//! ```
//!
//! Each factor depends only on `frac(t / 3^k)`, which is read off the low
//! `k` ternary digits of `t`. The reduction therefore never touches a
//! floating-point approximation of `t` itself, which matters once `t = l·2^n`
//! has thousands of bits.
//!
//! [`cosine_product`] evaluates the related product `Π |cos(π t / 3^k)|`,
//! which equals `|mu^(t/2)|`; the digit-window argument behind the decay
//! counts in [`crate::cassels`] is phrased in terms of it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Default truncation tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Bound on the absolute error of one floating factor `cos(c π f_k)`:
/// `cos` itself plus the argument error `c π |Δf_k|` with `|Δf_k| ≤ 1.5 ε`.
const FACTOR_ROUNDING: f64 = 16.0 * f64::EPSILON;

/// Above this many small factors the product is formed in log space.
const LOG_SPACE_THRESHOLD: usize = 64;

/// Number of ternary digits available on the `u64` fast path.
const FAST_DIGITS: usize = 40;
const POW3_FAST: u64 = 12_157_665_459_056_928_801; // 3^40

/// `|mu^(t)|` with its certificate: the true value lies in
/// `[magnitude - error(), magnitude + error()] ∩ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierValue {
    pub magnitude: f64,
    /// Bound from dropping factors `k > cutoff`.
    pub truncation_error: f64,
    /// Bound from floating evaluation of the kept factors.
    pub rounding_error: f64,
    /// Number of product factors evaluated.
    pub cutoff: usize,
    pub frequency: BigInt,
}

impl FourierValue {
    pub fn error(&self) -> f64 {
        self.truncation_error + self.rounding_error
    }

    pub fn lower(&self) -> f64 {
        (self.magnitude - self.error()).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        (self.magnitude + self.error()).min(1.0)
    }
}

impl fmt::Display for FourierValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|mu^({})| = {:.15} ± {:.3e} (K = {})",
            self.frequency,
            self.magnitude,
            self.error(),
            self.cutoff
        )
    }
}

/// A real value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certified {
    pub value: f64,
    pub error: f64,
}

/// Which product is evaluated: `cos(π t/3^k)` or `cos(2π t/3^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Angle {
    Half,
    Full,
}

impl Angle {
    fn multiplier(self) -> f64 {
        match self {
            Angle::Half => std::f64::consts::PI,
            Angle::Full => 2.0 * std::f64::consts::PI,
        }
    }
}

/// Raw outcome of a product evaluation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Product {
    /// Midpoint of the certified magnitude interval.
    pub magnitude: f64,
    pub truncation_error: f64,
    pub rounding_error: f64,
    pub cutoff: usize,
    /// Sign of `Π cos(c π f_k)` over the evaluated factors.
    pub sign: f64,
    /// Set when evaluation stopped because the magnitude was certified to
    /// lie below the caller's floor; the interval is then `[0, 2·magnitude]`.
    pub below_floor: bool,
}

impl Product {
    pub fn upper(&self) -> f64 {
        self.magnitude + self.truncation_error + self.rounding_error
    }
}

/// Evaluates `Π_k |cos(c π t / 3^k)|` from the ternary digits of `|t|`,
/// least significant first. `digits.len()` must cover every nonzero digit.
///
/// Stops at the first `K` with `t < 3^K / 2` and tail bound
/// `Σ_{k>K} (c π t/3^k)^2 / 2 = (c π f_K)^2 / 16 ≤ tol`, or as soon as the
/// running upper bound drops below `floor`.
pub(crate) fn product_from_digits(digits: &[u8], angle: Angle, tol: f64, floor: f64) -> Product {
    let c = angle.multiplier();
    let significant = digits.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);

    let mut f = 0.0f64; // frac(t / 3^k)
    let mut k = 0usize;
    let mut lin = 1.0f64;
    let mut lin_upper = 1.0f64;
    let mut log_p = 0.0f64;
    let mut log_upper = 0.0f64;
    let mut small = 0usize;
    let mut negative = false;
    let log_floor = if floor > 0.0 { floor.ln() } else { f64::NEG_INFINITY };

    let tail = |f: f64| (c * f).powi(2) / 16.0;

    loop {
        if k >= significant && f < 0.5 && tail(f) <= tol {
            break;
        }
        let d = digits.get(k).copied().unwrap_or(0);
        f = (d as f64 + f) / 3.0;
        k += 1;
        let factor = (c * f).cos();
        if factor < 0.0 {
            negative = !negative;
        }
        let a = factor.abs();
        let a_up = (a + FACTOR_ROUNDING).min(1.0);
        if a < 0.99 {
            small += 1;
        }
        lin *= a;
        lin_upper *= a_up;
        log_p += a.ln();
        log_upper += a_up.ln();
        if log_upper < log_floor {
            let upper = log_upper.exp().max(lin_upper);
            return Product {
                magnitude: upper / 2.0,
                truncation_error: upper / 2.0,
                rounding_error: 0.0,
                cutoff: k,
                sign: if negative { -1.0 } else { 1.0 },
                below_floor: true,
            };
        }
    }

    let (p, upper) = if small > LOG_SPACE_THRESHOLD {
        (log_p.exp(), log_upper.exp())
    } else {
        (lin, lin_upper)
    };
    let tau = tail(f);
    // true value in [p (1 - tau) - rounding, upper]
    Product {
        magnitude: p * (1.0 - tau / 2.0),
        truncation_error: p * tau / 2.0,
        rounding_error: (upper - p).max(0.0),
        cutoff: k,
        sign: if negative { -1.0 } else { 1.0 },
        below_floor: false,
    }
}

fn ternary_digits(t: &BigInt) -> Vec<u8> {
    if t.is_zero() {
        Vec::new()
    } else {
        t.magnitude().to_radix_le(3)
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

fn value_of(t: &BigInt, p: Product) -> FourierValue {
    FourierValue {
        magnitude: p.magnitude.clamp(0.0, 1.0),
        truncation_error: p.truncation_error,
        rounding_error: p.rounding_error,
        cutoff: p.cutoff,
        frequency: t.clone(),
    }
}

/// `|mu^(t)|` to within `tol`. `t = 0` gives exactly 1.
pub fn mu_hat(t: &BigInt, tol: f64) -> Result<FourierValue> {
    check_tol(tol)?;
    let p = product_from_digits(&ternary_digits(t), Angle::Full, tol, 0.0);
    Ok(value_of(t, p))
}

pub fn mu_hat_int(t: i64, tol: f64) -> Result<FourierValue> {
    mu_hat(&BigInt::from(t), tol)
}

/// `|∫ e(l 2^n x) dmu|`, with `l 2^n` formed exactly.
pub fn mu_hat_geometric(l: i64, n: u64, tol: f64) -> Result<FourierValue> {
    let t = BigInt::from(l) << n as usize;
    mu_hat(&t, tol)
}

/// `Π_{k≥1} |cos(π t / 3^k)|`, equal to `|mu^(t/2)|`.
pub fn cosine_product(t: &BigInt, tol: f64) -> Result<FourierValue> {
    check_tol(tol)?;
    let p = product_from_digits(&ternary_digits(t), Angle::Half, tol, 0.0);
    Ok(value_of(t, p))
}

/// The real value `mu^(t) = (-1)^t Π cos(2π t/3^k)`. The measure is symmetric
/// about 1/2, so the transform is real at integers and even in `t`.
pub fn mu_hat_signed(t: &BigInt, tol: f64) -> Result<Certified> {
    check_tol(tol)?;
    let digits = ternary_digits(t);
    let p = product_from_digits(&digits, Angle::Full, tol, 0.0);
    Ok(Certified {
        value: parity_sign(&digits) * p.sign * p.magnitude,
        error: p.truncation_error + p.rounding_error,
    })
}

/// `(-1)^t` from the ternary digits of `t` (3 is odd, so parity is the digit
/// sum's).
fn parity_sign(digits: &[u8]) -> f64 {
    let odd = digits.iter().map(|&d| d as u32).sum::<u32>() % 2 == 1;
    if odd {
        -1.0
    } else {
        1.0
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow2_mod(mut n: u64, m: u64) -> u64 {
    let mut base = 2 % m;
    let mut acc = 1 % m;
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        n >>= 1;
    }
    acc
}

/// `mu^(l 2^n)` as a signed value, certified only down to `floor`: once the
/// magnitude is known to be below `floor` the evaluation stops and reports
/// the interval `[-bound, bound]` around zero.
///
/// The first 40 factors come from `l 2^n mod 3^40` in machine arithmetic; the
/// exact big-integer route is taken only when those do not settle the value.
pub fn mu_hat_geometric_floor(l: i64, n: u64, floor: f64, tol: f64) -> Result<Certified> {
    check_tol(tol)?;
    if l == 0 {
        return Ok(Certified { value: 1.0, error: 0.0 });
    }
    let residue = mul_mod(l.unsigned_abs() % POW3_FAST, pow2_mod(n, POW3_FAST), POW3_FAST);
    let mut low = [0u8; FAST_DIGITS];
    let mut r = residue;
    for d in low.iter_mut() {
        *d = (r % 3) as u8;
        r /= 3;
    }
    // l 2^n has more than 40 ternary digits whenever n >= 64, so the low
    // window is only a prefix; stopping inside it is what the floor buys.
    let whole = n < 64 && ((l.unsigned_abs() as u128) << n) < POW3_FAST as u128;
    if !whole {
        let p = product_from_digits_prefix(&low, floor);
        if let Some(bound) = p {
            return Ok(Certified {
                value: 0.0,
                error: bound,
            });
        }
    }
    let t = BigInt::from(l) << n as usize;
    let digits = ternary_digits(&t);
    let p = product_from_digits(&digits, Angle::Full, tol, floor);
    if p.below_floor {
        return Ok(Certified {
            value: 0.0,
            error: p.upper(),
        });
    }
    Ok(Certified {
        value: parity_sign(&digits) * p.sign * p.magnitude,
        error: p.truncation_error + p.rounding_error,
    })
}

/// Runs the first `low.len()` factors and returns the upper bound if it falls
/// below `floor`.
fn product_from_digits_prefix(low: &[u8], floor: f64) -> Option<f64> {
    let c = Angle::Full.multiplier();
    let mut f = 0.0f64;
    let mut upper = 1.0f64;
    for &d in low {
        f = (d as f64 + f) / 3.0;
        upper *= ((c * f).cos().abs() + FACTOR_ROUNDING).min(1.0);
        if upper < floor {
            return Some(upper);
        }
    }
    None
}
