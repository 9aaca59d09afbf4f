// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::count::count_summary;
use super::{ApproxFunction, CountSummary, Sampler, TargetSequence};
use crate::error::{Error, Result};
use crate::exact_orbit::TernaryScale;
use crate::parallel::map_indexed;
use crate::stats::{mann_whitney, RankSumTest, Summary};

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleConfig {
    pub m: u64,
    pub n_limit: u64,
    pub psi: ApproxFunction,
    pub targets: TargetSequence,
    pub sampler: Sampler,
    pub seed: u64,
    pub guard_bits: u32,
    /// Overrides the sampling depth chosen by the precision policy.
    pub depth: Option<usize>,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    /// Per-sample tallies in sample-index order.
    pub samples: Vec<CountSummary>,
    /// Statistics of the final ratios `hits / Σ min(2ψ, 1)`.
    pub ratios: Summary,
    pub mean_hits: f64,
    pub expected: f64,
    pub unresolved: u64,
}

impl EnsembleReport {
    pub fn final_ratios(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.ratio).collect()
    }
}

/// `m` independent counts; sample `i` is point `i` of stream `seed`, so the
/// report does not depend on `workers`.
pub fn ensemble(cfg: &EnsembleConfig) -> Result<EnsembleReport> {
    if cfg.m == 0 {
        return Err(Error::invalid("ensemble needs at least one sample"));
    }
    let targets = cfg.targets.take(cfg.n_limit)?;
    let depth = cfg
        .depth
        .unwrap_or_else(|| cfg.sampler.depth_for(cfg.n_limit, cfg.guard_bits));
    let scale = match cfg.sampler {
        Sampler::Mu => Some(TernaryScale::new(depth)),
        Sampler::Lebesgue => None,
    };
    let samples = map_indexed(cfg.workers, cfg.m, |i| {
        let point = cfg.sampler.sample_at_depth(cfg.seed, i, depth);
        count_summary(&point, scale.as_ref(), cfg.n_limit, &cfg.psi, &targets, cfg.guard_bits)
    })?;
    let ratios: Vec<f64> = samples.iter().map(|s| s.ratio).collect();
    Ok(EnsembleReport {
        ratios: Summary::of(&ratios)?,
        mean_hits: samples.iter().map(|s| s.hits as f64).sum::<f64>() / samples.len() as f64,
        expected: samples[0].expected,
        unresolved: samples.iter().map(|s| s.unresolved).sum(),
        samples,
    })
}

/// Rank-sum comparison of two ensembles' final ratios.
pub fn location_test(a: &EnsembleReport, b: &EnsembleReport) -> Result<RankSumTest> {
    mann_whitney(&a.final_ratios(), &b.final_ratios())
}
