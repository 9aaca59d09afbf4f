// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_orbit::{
    depth_for_steps, sample_cantor, sample_lebesgue, BinaryOrbit, BinaryPoint, CantorPoint, Provenance, TernaryScale,
};

/// Which measure points are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    /// The Cantor measure.
    Mu,
    /// Lebesgue measure on the circle.
    Lebesgue,
}

impl fmt::Display for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sampler::Mu => "mu",
            Sampler::Lebesgue => "lebesgue",
        })
    }
}

impl FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu" => Ok(Sampler::Mu),
            "lebesgue" => Ok(Sampler::Lebesgue),
            _ => Err(Error::invalid(format!(
                "unknown sampler {s:?}; expected mu or lebesgue"
            ))),
        }
    }
}

impl Sampler {
    /// Sample `index` of stream `seed`, deep enough to certify `steps`
    /// doublings with `guard_bits` to spare.
    pub fn sample(self, seed: u64, index: u64, steps: u64, guard_bits: u32) -> SamplePoint {
        self.sample_at_depth(seed, index, self.depth_for(steps, guard_bits))
    }

    /// Ternary digits (`Mu`) or bits (`Lebesgue`) needed for `steps`.
    pub fn depth_for(self, steps: u64, guard_bits: u32) -> usize {
        match self {
            Sampler::Mu => depth_for_steps(steps, guard_bits),
            Sampler::Lebesgue => (steps + guard_bits as u64) as usize,
        }
    }

    /// Sample `index` of stream `seed` at an explicit depth.
    pub fn sample_at_depth(self, seed: u64, index: u64, depth: usize) -> SamplePoint {
        match self {
            Sampler::Mu => SamplePoint::Cantor(sample_cantor(seed, index, depth)),
            Sampler::Lebesgue => SamplePoint::Binary(sample_lebesgue(seed, index, depth)),
        }
    }
}

/// A point whose orbit is followed: a truncated Cantor expansion or a
/// truncated binary expansion.
#[derive(Debug, Clone, PartialEq)]
pub enum SamplePoint {
    Cantor(CantorPoint),
    Binary(BinaryPoint),
}

impl SamplePoint {
    pub fn provenance(&self) -> Provenance {
        match self {
            SamplePoint::Cantor(p) => p.provenance(),
            SamplePoint::Binary(p) => p.provenance(),
        }
    }

    /// Ternary digits for Cantor points, bits for binary ones.
    pub fn depth(&self) -> usize {
        match self {
            SamplePoint::Cantor(p) => p.depth(),
            SamplePoint::Binary(p) => p.bits(),
        }
    }

    pub fn orbit(&self, guard_bits: u32, steps: u64) -> Result<BinaryOrbit> {
        match self {
            SamplePoint::Cantor(p) => BinaryOrbit::from_cantor(p, guard_bits, steps),
            SamplePoint::Binary(p) => BinaryOrbit::from_binary(p, guard_bits, steps),
        }
    }

    /// As [`Self::orbit`], reusing `3^M` when it matches.
    pub(crate) fn orbit_scaled(
        &self,
        scale: Option<&TernaryScale>,
        guard_bits: u32,
        steps: u64,
    ) -> Result<BinaryOrbit> {
        match (self, scale) {
            (SamplePoint::Cantor(p), Some(s)) if s.depth() == p.depth() => {
                BinaryOrbit::from_cantor_scaled(p, s, guard_bits, steps)
            }
            _ => self.orbit(guard_bits, steps),
        }
    }

    /// The same point at twice the depth, when its continuation is known.
    pub fn refined(&self) -> Option<SamplePoint> {
        match self {
            SamplePoint::Cantor(p) => p.refined(2 * p.depth()).map(SamplePoint::Cantor),
            SamplePoint::Binary(p) => p.refined(2 * p.bits()).map(SamplePoint::Binary),
        }
    }

    /// `(q, D)` with the point in `[q/D, (q+1)/D]`.
    pub(crate) fn exact_fraction(&self) -> (BigUint, BigUint) {
        match self {
            SamplePoint::Cantor(p) => (p.numerator(), BigUint::from(3u32).pow(p.depth() as u32)),
            SamplePoint::Binary(p) => {
                let bytes: Vec<u8> = p.words().iter().flat_map(|w| w.to_be_bytes()).collect();
                let q = BigUint::from_bytes_be(&bytes) >> (64 * p.words().len() - p.bits());
                (q, BigUint::from(1u32) << p.bits())
            }
        }
    }
}
