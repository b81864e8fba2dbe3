//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ethsm_core::StrategyId;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "ethsm", version, about = "Selfish-mining revenue under Ethereum-style uncle rewards")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form report for one strategy at one point.
    Analytic(AnalyticArgs),
    /// Closed-form reports over a (q, gamma) grid with the dominant strategy.
    Sweep(SweepArgs),
    /// Attacker share where one strategy starts beating another.
    Threshold(ThresholdArgs),
    /// Monte Carlo run of one strategy.
    Simulate(SimArgs),
    /// Monte Carlo run compared with the closed forms, quantity by quantity.
    Validate(SimArgs),
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Uncle reference window, overrides the config file.
    #[arg(long)]
    pub n1: Option<u32>,
    /// TOML file with n1, inclusion_reward, uncle_reward_numerators, coinbase, interblock_time_s.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads; defaults to one per core.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct Point {
    #[arg(long, value_parser = parse_strategy)]
    pub strategy: StrategyId,
    /// Attacker hashrate share, `0 <= q < 0.5`.
    #[arg(long)]
    pub q: f64,
    /// Share of honest miners that extend the attacker's block in a tie.
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub point: Point,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.01)]
    pub q_min: f64,
    #[arg(long, default_value_t = 0.49)]
    pub q_max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub q_step: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub gamma_step: f64,
    /// Comma-separated subset of HONEST, SM1, SM2A, SM2B.
    #[arg(long = "strategy", alias = "strategies", value_delimiter = ',', value_parser = parse_strategy,
          default_value = "HONEST,SM1,SM2A,SM2B")]
    pub strategies: Vec<StrategyId>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    /// Strategy expected to overtake the baseline as q grows.
    #[arg(long, value_parser = parse_strategy)]
    pub strategy: StrategyId,
    #[arg(long, value_parser = parse_strategy, default_value = "HONEST")]
    pub baseline: StrategyId,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    /// Search bracket.
    #[arg(long, default_value_t = 0.01)]
    pub q_lo: f64,
    #[arg(long, default_value_t = 0.49)]
    pub q_hi: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Cap {
    On,
    Off,
}

#[derive(Debug, Clone, Args)]
pub struct SimArgs {
    #[command(flatten)]
    pub point: Point,
    #[arg(long, default_value_t = 1_000_000)]
    pub cycles: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Two-uncle limit per nephew; defaults to on for SM2B and off otherwise.
    #[arg(long, value_enum)]
    pub cap: Option<Cap>,
    #[command(flatten)]
    pub common: Common,
}

fn parse_strategy(s: &str) -> Result<StrategyId, String> {
    s.parse().map_err(|e: ethsm_core::ModelError| e.to_string())
}
