// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{max_safe_step, CantorPoint, CircleValue, FLOAT_SLACK, LOG2_3};
use crate::error::{Error, Result};

/// The doubling-map orbit of a [`CantorPoint`] as the residue
/// `2^n p mod 3^M`.
///
/// `residue / 3^M` is `frac(2^n p / 3^M)` exactly; the orbit of the true
/// point lies at most `2^n 3^{-M}` above it on the circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCursor {
    residue: BigUint,
    step: u64,
    depth: usize,
    guard_bits: u32,
    modulus: Arc<BigUint>,
}

impl OrbitCursor {
    pub fn new(point: &CantorPoint, guard_bits: u32) -> Self {
        let modulus = Arc::new(BigUint::from(3u32).pow(point.depth() as u32));
        Self::with_modulus(point, guard_bits, modulus)
    }

    /// Reuses a precomputed `3^M`; it must match the point's depth.
    pub fn with_modulus(point: &CantorPoint, guard_bits: u32, modulus: Arc<BigUint>) -> Self {
        debug_assert_eq!(*modulus, BigUint::from(3u32).pow(point.depth() as u32));
        OrbitCursor {
            residue: point.numerator(),
            step: 0,
            depth: point.depth(),
            guard_bits,
            modulus,
        }
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn max_safe_step(&self) -> u64 {
        max_safe_step(self.depth, self.guard_bits)
    }

    /// `2^n 3^{-M}`, the width of the certified orbit interval.
    pub fn error_bound(&self) -> f64 {
        (self.step as f64 - self.depth as f64 * LOG2_3).exp2()
    }

    /// One doubling, in place.
    pub fn advance_in_place(&mut self) -> Result<()> {
        let max_safe = self.max_safe_step();
        if self.step + 1 > max_safe {
            return Err(Error::PrecisionExhausted {
                requested: self.step + 1,
                max_safe,
                depth: self.depth,
            });
        }
        self.residue <<= 1u32;
        if self.residue >= *self.modulus {
            self.residue -= &*self.modulus;
        }
        self.step += 1;
        Ok(())
    }

    pub fn advance(&self) -> Result<OrbitCursor> {
        let mut next = self.clone();
        next.advance_in_place()?;
        Ok(next)
    }

    /// Advances until `step == target`.
    pub fn advance_to(&mut self, target: u64) -> Result<()> {
        if target > self.max_safe_step() {
            return Err(Error::PrecisionExhausted {
                requested: target,
                max_safe: self.max_safe_step(),
                depth: self.depth,
            });
        }
        while self.step < target {
            self.advance_in_place()?;
        }
        Ok(())
    }

    /// The orbit value as a certified circle point.
    ///
    /// Costs one big division; use [`super::BinaryOrbit`] when every step is
    /// needed.
    pub fn value(&self) -> CircleValue {
        let top = ((&self.residue << 64u32) / &*self.modulus)
            .to_u64()
            .expect("residue < modulus");
        let lo = top as f64 * 2f64.powi(-64);
        let width = self.error_bound() + 2f64.powi(-64);
        CircleValue::new(lo + width / 2.0, width / 2.0 + FLOAT_SLACK)
    }
}
