// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use cantorlab_core::bump::{audit, AuditConfig};
use cantorlab_core::cassels::{
    constants, digit_partition, exceptional_bound_combinatorial, exceptional_count_direct, residue_orbit,
    s2_closed_form,
};
use cantorlab_core::exact_orbit::binary_digits;
use cantorlab_core::fourier_mu::{cosine_product, mu_hat, mu_hat_geometric};
use cantorlab_core::harness::{
    convergence_sum, count_hits, dyadic_hits, ensemble, zero_runs, EnsembleConfig, ZeroRuns,
};
use cantorlab_core::moments::{default_truncation, expectation_fourier, expectation_mc, variance_mc};
use cantorlab_core::parallel::map_indexed;
use cantorlab_core::stats::Summary;
use cantorlab_core::{ApproxFunction, BumpFamily, CantorPoint, CountCurve, SamplePoint, Sampler, TargetSequence};
use num_bigint::BigInt;
use serde_json::json;

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};

/// Settings shared by every subcommand.
pub struct Context {
    pub guard_bits: u32,
    pub depth: Option<usize>,
    pub workers: usize,
}

impl Context {
    fn sampled(&self, sampler: Sampler, seed: u64, index: u64, steps: u64) -> SamplePoint {
        let depth = self.depth.unwrap_or_else(|| sampler.depth_for(steps, self.guard_bits));
        sampler.sample_at_depth(seed, index, depth)
    }
}

pub fn execute(command: &Command, ctx: &Context) -> CliResult<Table> {
    if ctx.depth == Some(0) {
        return Err(CliError::usage("--depth must be at least 1"));
    }
    match command {
        Command::Fourier(a) => fourier(a),
        Command::FourierScan(a) => fourier_scan(a),
        Command::Cassels(a) => cassels(a),
        Command::Residues(a) => residues(a),
        Command::Digits(a) => digits(a, ctx),
        Command::BumpAudit(a) => bump_audit(a),
        Command::Moments(a) => moments(a, ctx),
        Command::Count(a) => count(a, ctx),
        Command::DyadicCount(a) => dyadic_count(a, ctx),
        Command::Runs(a) => runs(a, ctx),
        Command::Sums(a) => sums(a),
    }
}

fn sampler_of(s: SamplerArg) -> Sampler {
    match s {
        SamplerArg::Mu => Sampler::Mu,
        SamplerArg::Lebesgue => Sampler::Lebesgue,
    }
}

fn targets_of(spec: &str) -> CliResult<TargetSequence> {
    Ok(spec.parse::<TargetSequence>()?)
}

fn explicit_point(digits: &str) -> CliResult<SamplePoint> {
    Ok(SamplePoint::Cantor(digits.parse::<CantorPoint>()?))
}

/// The single point named by `--point` or `--seed/--index`.
fn single_point(p: &PointArgs, ctx: &Context, steps: u64) -> CliResult<SamplePoint> {
    match &p.point {
        Some(digits) => explicit_point(digits),
        None => Ok(ctx.sampled(sampler_of(p.sampler), p.seed, p.index.unwrap_or(0), steps)),
    }
}

fn fourier(a: &FourierArgs) -> CliResult<Table> {
    let t: BigInt =
        a.l.trim()
            .parse()
            .map_err(|_| CliError::usage(format!("--l must be an integer, got {:?}", a.l)))?;
    let v = match a.product {
        Product::Transform => mu_hat(&t, a.tol)?,
        Product::CosineProduct => cosine_product(&t, a.tol)?,
    };
    let mut table = Table::new(&["l", "magnitude", "error", "cutoff"]);
    table.push(vec![
        Cell::Big(t.to_string()),
        v.magnitude.into(),
        v.error().into(),
        v.cutoff.into(),
    ]);
    Ok(table)
}

fn fourier_scan(a: &FourierScanArgs) -> CliResult<Table> {
    let mut table = Table::new(&["l", "n", "magnitude", "error"]);
    for n in 0..=a.n_max {
        let v = mu_hat_geometric(a.l, n, a.tol)?;
        table.push(vec![a.l.into(), n.into(), v.magnitude.into(), v.error().into()]);
    }
    Ok(table)
}

fn cassels(a: &CasselsArgs) -> CliResult<Table> {
    let k = constants();
    let summary = json!({
        "c1": k.c1,
        "c2": k.c2,
        "decay_exponent": k.decay_exponent,
        "count_exponent": k.count_exponent,
        "roundings_conservative": k.roundings_conservative(),
    });
    match a.mode {
        CasselsMode::Combinatorial => {
            let b = exceptional_bound_combinatorial(a.l, a.n_limit)?;
            let mut table = Table::new(&[
                "l",
                "N",
                "r",
                "s2",
                "upper",
                "bound",
                "holds",
                "s1_decay",
                "s1_threshold",
                "s1_holds",
            ]);
            table.push(vec![
                b.l.into(),
                b.n_limit.into(),
                b.r.into(),
                Cell::Big(b.s2.to_string()),
                Cell::Big(b.upper.to_string()),
                b.bound.into(),
                b.holds.into(),
                b.s1_decay.into(),
                b.s1_threshold.into(),
                b.s1_holds.into(),
            ]);
            Ok(table.with_summary(summary))
        }
        CasselsMode::Direct => {
            let c = exceptional_count_direct(a.l, a.n_limit)?;
            let bound = k.count_bound(a.n_limit);
            let mut table = Table::new(&[
                "l",
                "N",
                "threshold",
                "count",
                "even_count",
                "odd_count",
                "bound",
                "holds",
            ]);
            table.push(vec![
                c.l.into(),
                c.n_limit.into(),
                c.threshold.into(),
                c.count.into(),
                c.even_count.into(),
                c.odd_count.into(),
                bound.into(),
                (c.count as f64 <= bound).into(),
            ]);
            Ok(table.with_summary(summary))
        }
    }
}

fn residues(a: &ResiduesArgs) -> CliResult<Table> {
    let orbit = residue_orbit(a.l, a.r)?;
    let part = digit_partition(a.l, a.r)?;
    let closed = s2_closed_form(a.r);
    let mut table = Table::new(&["j", "residue"]);
    for (j, &v) in orbit.residues.iter().enumerate() {
        table.push(vec![j.into(), v.into()]);
    }
    Ok(table.with_summary(json!({
        "l": orbit.l,
        "r": orbit.r,
        "m": orbit.m,
        "modulus": orbit.modulus,
        "bijection_verified": orbit.verified,
        "s1_count": part.s1_count,
        "s2_count": part.s2_count,
        "s2_closed_form": closed.to_string(),
        "s2_matches_closed_form": closed == part.s2_count.into(),
    })))
}

fn digits(a: &DigitsArgs, ctx: &Context) -> CliResult<Table> {
    let point = match &a.point {
        Some(s) => s.parse::<CantorPoint>()?,
        None => match ctx.sampled(Sampler::Mu, a.seed, a.index.unwrap_or(0), a.count as u64) {
            SamplePoint::Cantor(p) => p,
            SamplePoint::Binary(_) => unreachable!("the mu sampler yields Cantor points"),
        },
    };
    let d = binary_digits(&point, a.count, ctx.guard_bits)?;
    let mut table = Table::new(&["n", "digit", "ambiguous"]);
    for (i, (&digit, &amb)) in d.digits.iter().zip(&d.ambiguous).enumerate() {
        table.push(vec![(i + 1).into(), (digit as u32).into(), amb.into()]);
    }
    Ok(table.with_summary(json!({
        "depth": point.depth(),
        "ambiguous": d.ambiguous_count(),
    })))
}

fn bump_audit(a: &BumpAuditArgs) -> CliResult<Table> {
    let cfg = AuditConfig {
        a: a.a,
        b: a.b,
        theta: a.theta,
        center: a.center,
        ns: a.ns.clone(),
        orders: a.orders.clone(),
        grid_size: a.grid,
        sandwich_scale: a.radius,
        sandwich_epsilon: a.epsilon,
    };
    let rows = audit(&cfg)?;
    let failed = rows.iter().filter(|r| !r.holds).count();
    let mut table = Table::new(&["property", "n", "L", "value", "reference", "holds"]);
    for r in rows {
        table.push(vec![
            r.property.into(),
            r.n.into(),
            r.order.into(),
            r.value.into(),
            r.reference.into(),
            r.holds.into(),
        ]);
    }
    Ok(table.with_summary(json!({ "failed": failed })))
}

fn moments(a: &MomentsArgs, ctx: &Context) -> CliResult<Table> {
    let family = BumpFamily::new(a.a, a.b, a.theta)?;
    let targets = targets_of(&a.targets)?;
    if a.n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::usage("--N values must be strictly increasing"));
    }
    let mut table = Table::new(&["N", "method", "value", "error_bar"]);
    match a.stat {
        Statistic::Mean => {
            for &n in &a.n_grid {
                if matches!(a.method, MomentMethod::Fourier | MomentMethod::Both) {
                    let order = a.order.unwrap_or_else(|| default_truncation(n));
                    log::info!("fourier N = {n}, L = {order}");
                    let e = expectation_fourier(n, order, &family, &targets)?;
                    table.push(vec![
                        n.into(),
                        e.method.to_string().into(),
                        e.value.into(),
                        e.error_bar.into(),
                    ]);
                }
                if matches!(a.method, MomentMethod::MonteCarlo | MomentMethod::Both) {
                    log::info!("monte carlo N = {n}, m = {}", a.m);
                    let e = expectation_mc(n, a.m, a.seed, &family, &targets, ctx.guard_bits, ctx.workers)?;
                    table.push(vec![
                        n.into(),
                        e.method.to_string().into(),
                        e.value.into(),
                        e.error_bar.into(),
                    ]);
                }
            }
            Ok(table)
        }
        Statistic::Variance => {
            if a.method == MomentMethod::Fourier {
                return Err(CliError::usage("the variance is estimated by Monte Carlo only"));
            }
            let report = variance_mc(&a.n_grid, a.m, a.seed, &family, &targets, ctx.guard_bits, ctx.workers)?;
            for p in &report.points {
                table.push(vec![
                    p.n_limit.into(),
                    "monte-carlo".into(),
                    p.variance.into(),
                    p.variance_error.into(),
                ]);
            }
            Ok(table.with_summary(serde_json::to_value(&report).expect("report serializes")))
        }
    }
}

fn curve_table(curve: &CountCurve) -> Table {
    let mut table = Table::new(&["n", "hit", "hits_cum", "expected_cum", "ratio"]);
    for r in &curve.rows {
        table.push(vec![
            r.n.into(),
            r.hit.into(),
            r.hits_cum.into(),
            r.expected_cum.into(),
            r.ratio.into(),
        ]);
    }
    table.with_summary(json!({
        "meta": curve.meta,
        "hits": curve.hits(),
        "final_ratio": curve.final_ratio(),
        "unresolved": curve.unresolved,
    }))
}

fn count(a: &CountArgs, ctx: &Context) -> CliResult<Table> {
    let psi = ApproxFunction::new(a.c, a.theta)?;
    let targets = targets_of(&a.targets)?;
    if a.m == 0 {
        return Err(CliError::usage("--m must be at least 1"));
    }
    if a.m == 1 || a.point.point.is_some() {
        if a.m > 1 {
            return Err(CliError::usage("--point names a single point; drop --m"));
        }
        let point = single_point(&a.point, ctx, a.n_limit)?;
        let curve = count_hits(&point, a.n_limit, &psi, &targets, ctx.guard_bits)?;
        return Ok(curve_table(&curve));
    }
    if a.point.index.is_some() {
        return Err(CliError::usage("--index selects a single point; use --m 1"));
    }
    let cfg = EnsembleConfig {
        m: a.m,
        n_limit: a.n_limit,
        psi,
        targets,
        sampler: sampler_of(a.point.sampler),
        seed: a.point.seed,
        guard_bits: ctx.guard_bits,
        depth: ctx.depth,
        workers: ctx.workers,
    };
    let report = ensemble(&cfg)?;
    let mut table = Table::new(&["sample", "hits", "expected_cum", "ratio", "unresolved"]);
    for (i, s) in report.samples.iter().enumerate() {
        table.push(vec![
            i.into(),
            s.hits.into(),
            s.expected.into(),
            s.ratio.into(),
            s.unresolved.into(),
        ]);
    }
    Ok(table.with_summary(json!({
        "median_ratio": report.ratios.median,
        "mean_ratio": report.ratios.mean,
        "iqr": report.ratios.iqr(),
        "ratios": report.ratios,
        "mean_hits": report.mean_hits,
        "expected": report.expected,
        "unresolved": report.unresolved,
    })))
}

fn dyadic_count(a: &DyadicCountArgs, ctx: &Context) -> CliResult<Table> {
    let psi = ApproxFunction::new(a.c, a.theta)?;
    let point = single_point(&a.point, ctx, a.n_limit)?;
    let curve = dyadic_hits(&point, a.n_limit, &psi, ctx.guard_bits)?;
    Ok(curve_table(&curve))
}

fn runs(a: &RunsArgs, ctx: &Context) -> CliResult<Table> {
    if a.m == 0 {
        return Err(CliError::usage("--m must be at least 1"));
    }
    if a.m == 1 || a.point.point.is_some() {
        if a.m > 1 {
            return Err(CliError::usage("--point names a single point; drop --m"));
        }
        let point = single_point(&a.point, ctx, a.n_limit)?;
        let r = zero_runs(&point, a.n_limit, a.c_run, ctx.guard_bits)?;
        let mut table = Table::new(&["n"]);
        for &n in &r.positions {
            table.push(vec![n.into()]);
        }
        return Ok(table.with_summary(json!({
            "count": r.count(),
            "trivial": r.trivial,
            "unresolved": r.unresolved,
        })));
    }
    if a.point.index.is_some() {
        return Err(CliError::usage("--index selects a single point; use --m 1"));
    }
    let sampler = sampler_of(a.point.sampler);
    let results: Vec<ZeroRuns> = map_indexed(ctx.workers, a.m, |i| {
        let point = ctx.sampled(sampler, a.point.seed, i, a.n_limit);
        zero_runs(&point, a.n_limit, a.c_run, ctx.guard_bits)
    })?;
    let mut table = Table::new(&["sample", "count", "first", "unresolved"]);
    for (i, r) in results.iter().enumerate() {
        table.push(vec![
            i.into(),
            r.count().into(),
            r.positions.first().copied().into(),
            r.unresolved.into(),
        ]);
    }
    let nonempty = results.iter().filter(|r| r.count() > 0).count();
    let counts: Vec<f64> = results.iter().map(|r| r.count() as f64).collect();
    Ok(table.with_summary(json!({
        "nonempty_fraction": nonempty as f64 / results.len() as f64,
        "counts": Summary::of(&counts)?,
    })))
}

fn sums(a: &SumsArgs) -> CliResult<Table> {
    let psi = ApproxFunction::new(a.c, a.theta)?;
    let mut table = Table::new(&["N", "sum_psi", "sum_mass", "divergent"]);
    for &n in &a.n_grid {
        let s = convergence_sum(&psi, n);
        table.push(vec![
            s.n_limit.into(),
            s.sum_psi.into(),
            s.sum_mass.into(),
            s.divergent.into(),
        ]);
    }
    Ok(table)
}
