// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The power-law radius schedule `ψ(n) = c n^{-θ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxFunction {
    c: f64,
    theta: f64,
}

impl ApproxFunction {
    pub fn new(c: f64, theta: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::invalid(format!("c must be positive, got {c}")));
        }
        if !(theta >= 0.0 && theta.is_finite()) {
            return Err(Error::invalid(format!("theta must be non-negative, got {theta}")));
        }
        Ok(ApproxFunction { c, theta })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `ψ(n)` for `n ≥ 1`.
    pub fn radius(&self, n: u64) -> f64 {
        self.c * (n as f64).powf(-self.theta)
    }

    /// Measure of the target ball, `min(2ψ(n), 1)`: a ball of radius 1/2
    /// is the whole circle.
    pub fn mass(&self, n: u64) -> f64 {
        (2.0 * self.radius(n)).min(1.0)
    }
}

impl fmt::Display for ApproxFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*n^-{}", self.c, self.theta)
    }
}

/// Partial sums of `ψ` up to `N` and the divergence classification of the
/// power-law family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceSum {
    pub n_limit: u64,
    pub sum_psi: f64,
    pub sum_mass: f64,
    /// `Σ ψ(n) = ∞`, which for `c n^{-θ}` means `θ ≤ 1`.
    pub divergent: bool,
}

pub fn convergence_sum(psi: &ApproxFunction, n_limit: u64) -> ConvergenceSum {
    // summed smallest-first to keep the long tail from being absorbed
    let (mut sum_psi, mut sum_mass) = (0.0, 0.0);
    for n in (1..=n_limit).rev() {
        sum_psi += psi.radius(n);
        sum_mass += psi.mass(n);
    }
    ConvergenceSum {
        n_limit,
        sum_psi,
        sum_mass,
        divergent: psi.theta() <= 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mass_clamps() {
        let psi = ApproxFunction::new(0.5, 0.0).unwrap();
        assert_eq!(psi.mass(1), 1.0);
        assert_eq!(psi.mass(1000), 1.0);
        let psi = ApproxFunction::new(0.05, 0.3).unwrap();
        assert!((psi.mass(10) - 0.1 * 10f64.powf(-0.3)).abs() < 1e-17);
        assert!(ApproxFunction::new(0.0, 1.0).is_err());
        assert!(ApproxFunction::new(1.0, -0.1).is_err());
    }

    #[test]
    fn p_series_classification() {
        let s = convergence_sum(&ApproxFunction::new(1.0, 2.0).unwrap(), 100_000);
        assert!(!s.divergent);
        assert!((s.sum_psi - std::f64::consts::PI.powi(2) / 6.0).abs() < 1.1e-5);
        let h = convergence_sum(&ApproxFunction::new(1.0, 1.0).unwrap(), 100_000);
        assert!(h.divergent);
        // H_N = ln N + γ + 1/(2N) - ..
        assert!((h.sum_psi - (100_000f64.ln() + 0.577_215_664_901_532_9)).abs() < 1e-5);
    }

    #[test]
    fn desk_scale_mass() {
        let s = convergence_sum(&ApproxFunction::new(0.05, 0.3).unwrap(), 100_000);
        // direct summation
        let direct: f64 = (1..=100_000u64).map(|n| 0.1 * (n as f64).powf(-0.3)).sum();
        assert!((s.sum_mass - direct).abs() < 1e-9);
        assert!((s.sum_mass - 452.0).abs() < 1.0, "{}", s.sum_mass);
    }
}
