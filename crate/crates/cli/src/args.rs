// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "cantorlab",
    version,
    about = "Dyadic approximation experiments on the middle-third Cantor set"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,

    /// Threads for sample-level parallelism; output does not depend on it.
    /// Defaults to the available parallelism.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub workers: Option<usize>,

    /// Bits of headroom kept by the orbit precision policy.
    #[arg(long, global = true, default_value_t = 64)]
    pub guard_bits: u32,

    /// Sampling depth (ternary digits for mu, bits for lebesgue), overriding
    /// the precision policy.
    #[arg(long, global = true)]
    pub depth: Option<usize>,

    /// Log progress to stderr; repeat for more detail.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    #[serde(skip)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Fourier transform of the Cantor measure at one frequency.
    Fourier(FourierArgs),
    /// |mu^(l 2^n)| for n = 0..=N.
    FourierScan(FourierScanArgs),
    /// Exceptional-set counts for the decay lemma.
    Cassels(CasselsArgs),
    /// Residues of l 4^n modulo 3^(r+m+1) and their digit partition.
    Residues(ResiduesArgs),
    /// Dyadic digits of a Cantor point with ambiguity flags.
    Digits(DigitsArgs),
    /// Property audit of the smooth bump family.
    BumpAudit(BumpAuditArgs),
    /// Expectation or variance of the bump sums.
    Moments(MomentsArgs),
    /// Shrinking-target hit counts.
    Count(CountArgs),
    /// Dyadic approximation counts from exact residues.
    DyadicCount(DyadicCountArgs),
    /// Runs of zero digits after position n.
    Runs(RunsArgs),
    /// Partial sums of psi.
    Sums(SumsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Product {
    /// mu^(t) = ∫ e(tx) dμ, magnitude Π |cos(2π t/3^k)|.
    Transform,
    /// Π |cos(π t/3^k)|, which equals |mu^(t/2)|.
    CosineProduct,
}

#[derive(Debug, Args, Serialize)]
pub struct FourierArgs {
    /// Integer frequency; any size.
    #[arg(long, allow_hyphen_values = true)]
    pub l: String,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Product::Transform)]
    pub product: Product,
}

#[derive(Debug, Args, Serialize)]
pub struct FourierScanArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub l: i64,
    /// Largest exponent n.
    #[arg(long = "N")]
    pub n_max: u64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CasselsMode {
    Combinatorial,
    Direct,
}

#[derive(Debug, Args, Serialize)]
pub struct CasselsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub l: i64,
    #[arg(long = "N")]
    pub n_limit: u64,
    #[arg(long, value_enum, default_value_t = CasselsMode::Combinatorial)]
    pub mode: CasselsMode,
}

#[derive(Debug, Args, Serialize)]
pub struct ResiduesArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub l: i64,
    #[arg(long)]
    pub r: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct DigitsArgs {
    /// Explicit ternary digits such as 0.0202; otherwise a sampled point.
    #[arg(long, conflicts_with = "index")]
    pub point: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub index: Option<u64>,
    /// Number of dyadic digits.
    #[arg(long)]
    pub count: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct BumpAuditArgs {
    #[arg(long, default_value_t = 0.2)]
    pub a: f64,
    #[arg(long, default_value_t = 0.3)]
    pub b: f64,
    #[arg(long, default_value_t = 0.01)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.3)]
    pub center: f64,
    /// Bump indices.
    #[arg(long = "n", value_delimiter = ',', default_values_t = [10u64, 100, 1000])]
    pub ns: Vec<u64>,
    /// Truncation orders.
    #[arg(long = "L", value_delimiter = ',', default_values_t = [64u64, 128, 256, 512, 1024, 2048, 4096])]
    pub orders: Vec<u64>,
    #[arg(long, default_value_t = 32768)]
    pub grid: usize,
    /// Ball radius scale c for the sandwich, radius c n^-theta.
    #[arg(long, default_value_t = 0.2)]
    pub radius: f64,
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentMethod {
    Fourier,
    MonteCarlo,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Mean,
    Variance,
}

#[derive(Debug, Args, Serialize)]
pub struct MomentsArgs {
    /// One or more N, increasing.
    #[arg(long = "N", value_delimiter = ',', required = true)]
    pub n_grid: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Statistic::Mean)]
    pub stat: Statistic,
    #[arg(long, value_enum, default_value_t = MomentMethod::Both)]
    pub method: MomentMethod,
    /// Fourier truncation order; defaults to ceil(N^0.03).
    #[arg(long = "L")]
    pub order: Option<u64>,
    /// Monte Carlo samples.
    #[arg(long, default_value_t = 2000)]
    pub m: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.05)]
    pub a: f64,
    #[arg(long, default_value_t = 0.15)]
    pub b: f64,
    #[arg(long, default_value_t = 0.3)]
    pub theta: f64,
    /// zero, constant:V, iid-uniform:SEED or file:PATH.
    #[arg(long, default_value = "zero")]
    pub targets: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerArg {
    Mu,
    Lebesgue,
}

#[derive(Debug, Args, Serialize)]
pub struct PointArgs {
    /// Explicit Cantor point as ternary digits; otherwise points are sampled.
    #[arg(long)]
    pub point: Option<String>,
    #[arg(long, value_enum, default_value_t = SamplerArg::Mu)]
    pub sampler: SamplerArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample index of a single point.
    #[arg(long)]
    pub index: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub point: PointArgs,
    /// Ensemble size; 1 prints the full count curve.
    #[arg(long, default_value_t = 1)]
    pub m: u64,
    #[arg(long = "N")]
    pub n_limit: u64,
    #[arg(long)]
    pub c: f64,
    #[arg(long)]
    pub theta: f64,
    /// zero, constant:V, iid-uniform:SEED or file:PATH.
    #[arg(long, default_value = "zero")]
    pub targets: String,
}

#[derive(Debug, Args, Serialize)]
pub struct DyadicCountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub point: PointArgs,
    #[arg(long = "N")]
    pub n_limit: u64,
    #[arg(long)]
    pub c: f64,
    #[arg(long)]
    pub theta: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct RunsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub point: PointArgs,
    /// Number of sampled points; 1 lists positions.
    #[arg(long, default_value_t = 1)]
    pub m: u64,
    #[arg(long = "N")]
    pub n_limit: u64,
    /// Block length factor: blocks have floor(c_run log2 n) digits.
    #[arg(long = "c-run", default_value_t = 0.5)]
    pub c_run: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct SumsArgs {
    #[arg(long)]
    pub c: f64,
    #[arg(long)]
    pub theta: f64,
    /// One or more N.
    #[arg(long = "N", value_delimiter = ',', required = true)]
    pub n_grid: Vec<u64>,
}
