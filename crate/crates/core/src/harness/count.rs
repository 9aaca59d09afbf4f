// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::{ApproxFunction, SamplePoint, TargetSequence};
use crate::error::{Error, Result};
use crate::exact_orbit::{circle_distance, BinaryOrbit, CircleValue, Provenance, TernaryScale};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountRow {
    pub n: u64,
    pub hit: bool,
    pub hits_cum: u64,
    pub expected_cum: f64,
    pub ratio: f64,
}

/// How a curve was produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveMeta {
    pub sampler: String,
    pub seed: Option<u64>,
    pub index: Option<u64>,
    pub psi: ApproxFunction,
    pub targets: String,
    pub depth: usize,
    pub guard_bits: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountCurve {
    pub rows: Vec<CountRow>,
    pub meta: CurveMeta,
    /// Steps whose hit status stayed undecided at every available precision;
    /// they are counted as hits.
    pub unresolved: u64,
}

impl CountCurve {
    pub fn hits(&self) -> u64 {
        self.rows.last().map_or(0, |r| r.hits_cum)
    }

    pub fn final_ratio(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.ratio)
    }
}

/// Final tallies of one count, without the per-step rows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountSummary {
    pub hits: u64,
    pub expected: f64,
    pub ratio: f64,
    pub unresolved: u64,
}

/// Decides `d(y, t) ≤ ψ` for every `y` in `[r/D, (r+w)/D]` on the circle,
/// in exact integer arithmetic. `None` when the interval straddles the
/// ball's edge.
pub(crate) fn exact_decision(r: &BigUint, den: &BigUint, w: &BigUint, t: f64, psi: f64) -> Option<bool> {
    if psi >= 0.5 {
        return Some(true);
    }
    let (t_mant, t_exp) = dyadic(t);
    let (p_mant, p_exp) = dyadic(psi);
    let s = (-t_exp).max(-p_exp).max(0) as u32;
    let scale = |m: u64, e: i32| BigUint::from(m) << (s as i32 + e) as u32;
    let t_num = scale(t_mant, t_exp);
    let p_num = scale(p_mant, p_exp);

    let modulus = den << s;
    let y0 = r << s;
    let len = w << s;
    let pd = &p_num * den;
    let two_pd = &pd << 1u32;
    // start of the ball, t - ψ, mod 1
    let start = (&t_num * den + &modulus - &pd) % &modulus;
    let offset = (y0 + &modulus - start) % &modulus;
    let end = &offset + &len;
    if offset <= two_pd && end <= two_pd {
        Some(true)
    } else if offset > two_pd && end < modulus {
        Some(false)
    } else {
        None
    }
}

/// `v = m 2^e` exactly, for finite non-negative `v`.
fn dyadic(v: f64) -> (u64, i32) {
    if v == 0.0 {
        return (0, 0);
    }
    let bits = v.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    }
}

/// Exact hit test at step `n` for the point's own truncation.
fn exact_at(point: &SamplePoint, n: u64, t: f64, psi: f64) -> Option<bool> {
    let (q, den) = point.exact_fraction();
    let r = (q << n as usize) % &den;
    exact_decision(&r, &den, &(BigUint::from(1u32) << n as usize), t, psi)
}

/// Resolves a step the fast test left open: exact arithmetic at the current
/// depth, then at twice the depth for sampled points. `(hit, unresolved)`.
fn resolve(point: &SamplePoint, n: u64, t: f64, psi: f64, refined: &mut Option<Option<SamplePoint>>) -> (bool, bool) {
    if let Some(hit) = exact_at(point, n, t, psi) {
        return (hit, false);
    }
    let deeper = refined.get_or_insert_with(|| point.refined());
    match deeper.as_ref().and_then(|p| exact_at(p, n, t, psi)) {
        Some(hit) => (hit, false),
        None => (true, true),
    }
}

/// Runs the hit test for `n = 1..=N`, reporting each step to `visit`;
/// returns the unresolved count.
pub(crate) fn scan_hits(
    point: &SamplePoint,
    orbit: &BinaryOrbit,
    n_limit: u64,
    psi: &ApproxFunction,
    targets: &[f64],
    mut visit: impl FnMut(u64, bool),
) -> Result<u64> {
    if targets.len() < n_limit as usize {
        return Err(Error::TargetsExhausted {
            available: targets.len(),
            requested: n_limit,
        });
    }
    orbit.at(n_limit)?;
    let mut unresolved = 0;
    let mut refined = None;
    for n in 1..=n_limit {
        let t = targets[n as usize - 1];
        let radius = psi.radius(n);
        let d = circle_distance(orbit.at_unchecked(n), CircleValue::exact(t));
        let hit = if d.value() + d.error() <= radius {
            true
        } else if d.value() - d.error() > radius {
            false
        } else {
            let (hit, open) = resolve(point, n, t, radius, &mut refined);
            unresolved += open as u64;
            hit
        };
        visit(n, hit);
    }
    Ok(unresolved)
}

fn meta(point: &SamplePoint, psi: &ApproxFunction, targets: &TargetSequence, guard_bits: u32) -> CurveMeta {
    let (seed, index) = match point.provenance() {
        Provenance::Sampled { seed, index } => (Some(seed), Some(index)),
        Provenance::Explicit => (None, None),
    };
    let sampler = match (point, seed) {
        (_, None) => "explicit",
        (SamplePoint::Cantor(_), Some(_)) => "mu",
        (SamplePoint::Binary(_), Some(_)) => "lebesgue",
    };
    CurveMeta {
        sampler: sampler.to_string(),
        seed,
        index,
        psi: *psi,
        targets: targets.to_string(),
        depth: point.depth(),
        guard_bits,
    }
}

/// Accumulates hits into rows.
struct Tally<'a> {
    psi: &'a ApproxFunction,
    hits: u64,
    expected: f64,
}

impl Tally<'_> {
    fn push(&mut self, n: u64, hit: bool) -> CountRow {
        self.hits += hit as u64;
        self.expected += self.psi.mass(n);
        CountRow {
            n,
            hit,
            hits_cum: self.hits,
            expected_cum: self.expected,
            ratio: self.hits as f64 / self.expected,
        }
    }
}

/// The counting function `#{n ≤ N : d(2^n x, x_n) ≤ ψ(n)}` along the orbit.
pub fn count_hits(
    point: &SamplePoint,
    n_limit: u64,
    psi: &ApproxFunction,
    targets: &TargetSequence,
    guard_bits: u32,
) -> Result<CountCurve> {
    let orbit = point.orbit(guard_bits, n_limit)?;
    let xs = targets.take(n_limit)?;
    let mut tally = Tally {
        psi,
        hits: 0,
        expected: 0.0,
    };
    let mut rows = Vec::with_capacity(n_limit as usize);
    let unresolved = scan_hits(point, &orbit, n_limit, psi, &xs, |n, hit| rows.push(tally.push(n, hit)))?;
    Ok(CountCurve {
        rows,
        meta: meta(point, psi, targets, guard_bits),
        unresolved,
    })
}

/// [`count_hits`] keeping only the final tallies; `targets` must hold
/// `x_1..x_N`.
pub(crate) fn count_summary(
    point: &SamplePoint,
    scale: Option<&TernaryScale>,
    n_limit: u64,
    psi: &ApproxFunction,
    targets: &[f64],
    guard_bits: u32,
) -> Result<CountSummary> {
    let orbit = point.orbit_scaled(scale, guard_bits, n_limit)?;
    let mut tally = Tally {
        psi,
        hits: 0,
        expected: 0.0,
    };
    let unresolved = scan_hits(point, &orbit, n_limit, psi, targets, |n, hit| {
        tally.push(n, hit);
    })?;
    Ok(CountSummary {
        hits: tally.hits,
        expected: tally.expected,
        ratio: tally.hits as f64 / tally.expected,
        unresolved,
    })
}

/// Dyadic approximation `|x - p/2^n| ≤ ψ(n)/2^n` for some integer `p`,
/// decided from the exact residues `2^n q mod D` of the point's truncation
/// `q/D`; the nearest `p` is `round(2^n x)`, so this is the distance from
/// `frac(2^n x)` to 0.
pub fn dyadic_hits(point: &SamplePoint, n_limit: u64, psi: &ApproxFunction, guard_bits: u32) -> Result<CountCurve> {
    // same precision contract as the orbit
    let max_safe = match point {
        SamplePoint::Cantor(p) => crate::exact_orbit::max_safe_step(p.depth(), guard_bits),
        SamplePoint::Binary(p) => (p.bits() as u64).saturating_sub(guard_bits as u64),
    };
    if n_limit > max_safe {
        return Err(Error::PrecisionExhausted {
            requested: n_limit,
            max_safe,
            depth: point.depth(),
        });
    }
    let (mut r, den) = point.exact_fraction();
    let mut width = BigUint::from(1u32);
    let mut tally = Tally {
        psi,
        hits: 0,
        expected: 0.0,
    };
    let mut rows = Vec::with_capacity(n_limit as usize);
    let mut unresolved = 0;
    let mut refined = None;
    for n in 1..=n_limit {
        r <<= 1u32;
        if r >= den {
            r -= &den;
        }
        width <<= 1u32;
        let radius = psi.radius(n);
        let hit = match exact_decision(&r, &den, &width, 0.0, radius) {
            Some(hit) => hit,
            None => {
                let deeper = refined.get_or_insert_with(|| point.refined());
                match deeper.as_ref().and_then(|p| exact_at(p, n, 0.0, radius)) {
                    Some(hit) => hit,
                    None => {
                        unresolved += 1;
                        true
                    }
                }
            }
        };
        rows.push(tally.push(n, hit));
    }
    debug_assert!(r < den || r.is_zero());
    Ok(CountCurve {
        rows,
        meta: meta(point, psi, &TargetSequence::Zero, guard_bits),
        unresolved,
    })
}
