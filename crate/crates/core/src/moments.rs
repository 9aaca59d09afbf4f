// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! First and second moments of `S_N(x) = Σ_{n≤N} f_n(2^n x)` under the
//! Cantor measure.
//!
//! The Fourier route expands each bump and integrates term by term:
//!
//! ```text
//! ∫ f_n(2^n x) dμ = c_{0,n} + Σ_{l≥1} 2 G_n(l) cos(2π l x_n) μ^(l 2^n),
//! ```
//!
//! truncated at `|l| ≤ L`; the dropped tail is bounded by the bump's
//! coefficient tail. The Monte Carlo route averages `S_N` over sampled
//! points.

use std::f64::consts::PI;

use serde::Serialize;

use crate::bump::{make_bump, BumpFunction, BumpSpec};
use crate::error::{Error, Result};
use crate::exact_orbit::{depth_for_steps, sample_cantor, BinaryOrbit, TernaryScale};
use crate::fourier_mu::{mu_hat_geometric_floor, DEFAULT_TOL};
use crate::harness::TargetSequence;
use crate::parallel::map_indexed;
use crate::stats::{log_log_slope, sample_variance};

/// `|μ^|` below this is not resolved further; its contribution is charged to
/// the error bar instead.
pub const FOURIER_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Fourier,
    MonteCarlo,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Fourier => "fourier",
            Method::MonteCarlo => "monte-carlo",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub n_limit: u64,
    pub value: f64,
    pub error_bar: f64,
    pub method: Method,
    pub sample_count: Option<u64>,
    pub truncation: Option<u64>,
}

/// The bumps `f_n` with plateau `a n^{-θ}` and support `b n^{-θ}` around the
/// targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BumpFamily {
    pub a: f64,
    pub b: f64,
    pub theta: f64,
}

impl BumpFamily {
    pub fn new(a: f64, b: f64, theta: f64) -> Result<Self> {
        let fam = BumpFamily { a, b, theta };
        // validates a, b, θ and the support at n = 1, the widest bump
        make_bump(BumpSpec::new(1, 0.0, a, b, theta))?;
        Ok(fam)
    }

    pub fn bump(&self, n: u64, center: f64) -> Result<BumpFunction> {
        make_bump(BumpSpec::new(n, center, self.a, self.b, self.theta))
    }

    /// `f_1 .. f_N` around `x_1 .. x_N`.
    pub fn bumps(&self, n_limit: u64, targets: &TargetSequence) -> Result<Vec<BumpFunction>> {
        let xs = targets.take(n_limit)?;
        xs.iter().zip(1..).map(|(&x, n)| self.bump(n, x)).collect()
    }

    /// `Σ_{n≤N} c_{0,n} = (a + b) Σ n^{-θ}`.
    pub fn leading_term(&self, n_limit: u64) -> f64 {
        (self.a + self.b) * power_sum(self.theta, n_limit)
    }
}

/// `Σ_{n≤N} n^{-θ}`, smallest terms first.
fn power_sum(theta: f64, n_limit: u64) -> f64 {
    (1..=n_limit).rev().map(|n| (n as f64).powf(-theta)).sum()
}

/// `⌈N^{0.03}⌉`.
pub fn default_truncation(n_limit: u64) -> u64 {
    ((n_limit as f64).powf(0.03).ceil() as u64).max(1)
}

/// `E_μ[S_N]` from the truncated Fourier expansions.
///
/// The error bar adds the coefficient tails beyond `L`, the `μ^` values cut
/// off at [`FOURIER_FLOOR`] or certified only to a tolerance, and a rounding
/// allowance for the summation.
pub fn expectation_fourier(
    n_limit: u64,
    order: u64,
    family: &BumpFamily,
    targets: &TargetSequence,
) -> Result<MomentEstimate> {
    if order < 1 {
        return Err(Error::invalid("truncation order must be at least 1"));
    }
    if n_limit < 1 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let bumps = family.bumps(n_limit, targets)?;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut magnitude = 0.0;
    for f in &bumps {
        let mut term = f.mass();
        let mut term_abs = f.mass();
        let phi = 2.0 * PI * f.center();
        for l in 1..=order as i64 {
            let g = 2.0 * f.profile_coeff(l) * (phi * l as f64).cos();
            let mu = mu_hat_geometric_floor(l, f.n(), FOURIER_FLOOR, DEFAULT_TOL)?;
            term += g * mu.value;
            term_abs += (g * mu.value).abs();
            error += g.abs() * mu.error;
        }
        value += term;
        magnitude += term_abs;
        error += f.tail_bound(order);
    }
    // each product and sum costs a few ulps of the running magnitude
    error += 8.0 * f64::EPSILON * magnitude * (order as f64 + 2.0);
    Ok(MomentEstimate {
        n_limit,
        value,
        error_bar: error,
        method: Method::Fourier,
        sample_count: None,
        truncation: Some(order),
    })
}

/// `S_N` at each `N` of the increasing `grid`, for one point.
fn trajectory(
    bumps: &[BumpFunction],
    seed: u64,
    index: u64,
    scale: &TernaryScale,
    guard_bits: u32,
    grid: &[u64],
) -> Result<Vec<f64>> {
    let n_max = bumps.len() as u64;
    let point = sample_cantor(seed, index, scale.depth());
    let orbit = BinaryOrbit::from_cantor_scaled(&point, scale, guard_bits, n_max)?;
    let mut out = Vec::with_capacity(grid.len());
    let mut next = grid.iter().peekable();
    let mut s = 0.0;
    for (n, f) in (1..=n_max).zip(bumps) {
        s += f.eval_circle(orbit.at_unchecked(n));
        while next.next_if(|&&g| g == n).is_some() {
            out.push(s);
        }
    }
    Ok(out)
}

fn check_grid(grid: &[u64]) -> Result<u64> {
    if grid.is_empty() || grid[0] == 0 || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("N grid must be nonempty, positive and increasing"));
    }
    Ok(*grid.last().unwrap())
}

/// Shared setup of the sampling routes: the bumps and `S_N` on the grid for
/// each of `m` points.
fn sample_sums(
    grid: &[u64],
    m: u64,
    seed: u64,
    family: &BumpFamily,
    targets: &TargetSequence,
    guard_bits: u32,
    workers: usize,
) -> Result<Vec<Vec<f64>>> {
    let n_max = check_grid(grid)?;
    let bumps = family.bumps(n_max, targets)?;
    let scale = TernaryScale::new(depth_for_steps(n_max, guard_bits));
    map_indexed(workers, m, |i| trajectory(&bumps, seed, i, &scale, guard_bits, grid))
}

/// `E_μ[S_N]` as the mean over `m` sampled points, with standard error.
#[allow(clippy::too_many_arguments)]
pub fn expectation_mc(
    n_limit: u64,
    m: u64,
    seed: u64,
    family: &BumpFamily,
    targets: &TargetSequence,
    guard_bits: u32,
    workers: usize,
) -> Result<MomentEstimate> {
    if m < 2 {
        return Err(Error::invalid("Monte Carlo needs at least two samples"));
    }
    let sums: Vec<f64> = sample_sums(&[n_limit], m, seed, family, targets, guard_bits, workers)?
        .into_iter()
        .map(|v| v[0])
        .collect();
    let mean = sums.iter().sum::<f64>() / m as f64;
    let var = sample_variance(&sums)?;
    Ok(MomentEstimate {
        n_limit,
        value: mean,
        error_bar: (var / m as f64).sqrt(),
        method: Method::MonteCarlo,
        sample_count: Some(m),
        truncation: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariancePoint {
    pub n_limit: u64,
    pub mean: f64,
    pub variance: f64,
    /// Standard error of `variance`, `√((m₄ - s⁴ (m-3)/(m-1)) / m)`.
    pub variance_error: f64,
    /// `Var / mean²`.
    pub relative: f64,
    /// `0 ≤ Var ≤ N E[S_N]`, which `0 ≤ f_n ≤ 1` forces.
    pub within_bounds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceReport {
    pub sample_count: u64,
    pub points: Vec<VariancePoint>,
    /// Least-squares slope of `ln Var` against `ln N`.
    pub growth_exponent: f64,
}

/// Empirical `Var[S_N]` over `m` points, each followed once to the largest
/// grid value.
#[allow(clippy::too_many_arguments)]
pub fn variance_mc(
    grid: &[u64],
    m: u64,
    seed: u64,
    family: &BumpFamily,
    targets: &TargetSequence,
    guard_bits: u32,
    workers: usize,
) -> Result<VarianceReport> {
    if m < 2 {
        return Err(Error::invalid("variance needs at least two samples"));
    }
    let sums = sample_sums(grid, m, seed, family, targets, guard_bits, workers)?;
    let mut points = Vec::with_capacity(grid.len());
    for (j, &n) in grid.iter().enumerate() {
        let column: Vec<f64> = sums.iter().map(|s| s[j]).collect();
        let mean = column.iter().sum::<f64>() / m as f64;
        let variance = sample_variance(&column)?;
        let m4 = column.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / m as f64;
        let mf = m as f64;
        let spread = m4 - variance * variance * (mf - 3.0) / (mf - 1.0);
        points.push(VariancePoint {
            n_limit: n,
            mean,
            variance,
            variance_error: (spread.max(0.0) / mf).sqrt(),
            relative: variance / (mean * mean),
            within_bounds: variance >= 0.0 && variance <= n as f64 * mean,
        });
    }
    let growth_exponent = if grid.len() >= 2 {
        let x: Vec<f64> = grid.iter().map(|&n| n as f64).collect();
        let y: Vec<f64> = points.iter().map(|p| p.variance).collect();
        log_log_slope(&x, &y)?
    } else {
        f64::NAN
    };
    Ok(VarianceReport {
        sample_count: m,
        points,
        growth_exponent,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub theta: f64,
    /// `(N, Σ_{n≤N} n^{-θ})`.
    pub sums: Vec<(u64, f64)>,
    /// Fitted exponent of the main term, to be compared with `1 - θ`.
    pub exponent: f64,
}

/// Growth exponent of `Σ_{n≤N} c_{0,n} ∝ Σ n^{-θ}` over the grid.
pub fn growth_check(theta: f64, grid: &[u64]) -> Result<GrowthReport> {
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::invalid(format!("theta must lie in [0, 1), got {theta}")));
    }
    check_grid(grid)?;
    if grid.len() < 2 {
        return Err(Error::invalid("growth fit needs two or more grid points"));
    }
    let sums: Vec<(u64, f64)> = grid.iter().map(|&n| (n, power_sum(theta, n))).collect();
    let x: Vec<f64> = sums.iter().map(|s| s.0 as f64).collect();
    let y: Vec<f64> = sums.iter().map(|s| s.1).collect();
    Ok(GrowthReport {
        theta,
        exponent: log_log_slope(&x, &y)?,
        sums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_term_closed_form() {
        let fam = BumpFamily::new(0.05, 0.15, 0.3).unwrap();
        let direct: f64 = (1..=500u64)
            .map(|n| fam.bump(n, 0.3).unwrap().fourier_coeff(0).value.re)
            .sum();
        assert!((fam.leading_term(500) - direct).abs() < 1e-12);
    }

    #[test]
    fn default_order() {
        assert_eq!(default_truncation(1), 1);
        assert_eq!(default_truncation(2000), 2);
        assert_eq!(default_truncation(1_000_000), 2);
    }

    #[test]
    fn growth_exponents() {
        let grid = [1_000, 10_000, 100_000, 1_000_000];
        for theta in [0.0, 0.01, 0.5] {
            let g = growth_check(theta, &grid).unwrap();
            assert!((g.exponent - (1.0 - theta)).abs() < 0.01, "θ = {theta}: {}", g.exponent);
        }
        assert!(growth_check(1.0, &grid).is_err());
        assert!(growth_check(0.5, &[10, 5]).is_err());
    }

    #[test]
    fn mc_two_samples_is_defined() {
        let fam = BumpFamily::new(0.05, 0.15, 0.3).unwrap();
        let e = expectation_mc(50, 2, 1, &fam, &TargetSequence::Zero, 64, 1).unwrap();
        assert!(e.error_bar.is_finite() && e.error_bar >= 0.0);
        assert!(expectation_mc(50, 1, 1, &fam, &TargetSequence::Zero, 64, 1).is_err());
        let v = variance_mc(&[20, 50], 2, 1, &fam, &TargetSequence::Zero, 64, 1).unwrap();
        assert!(v.points.iter().all(|p| p.variance >= 0.0));
    }

    #[test]
    fn near_degenerate_bumps_cover_almost_everything() {
        // b n^{-θ} = 0.49 for every n, so ∫ f_n = a + b just under 0.98
        let fam = BumpFamily::new(0.485, 0.49, 0.0).unwrap();
        let e = expectation_mc(400, 50, 3, &fam, &TargetSequence::IidUniform { seed: 2 }, 64, 1).unwrap();
        assert!(e.value >= 0.97 * 400.0 && e.value <= 400.0, "{}", e.value);
    }
}
