//! Long-run sums with exact integer moments, and the estimates built on them.

use ethsm_core::{ProtocolParams, StrategyId};
use serde::Serialize;

use crate::error::SimError;

/// Per-cycle features, in order; attacker uncles by distance follow.
pub mod feature {
    pub const CYCLES: usize = 0;
    pub const L: usize = 1;
    pub const U: usize = 2;
    pub const US: usize = 3;
    pub const UH: usize = 4;
    pub const V: usize = 5;
    pub const DELTA: usize = 6;
    pub const ATTACKER_OFFICIAL: usize = 7;
    /// Index of the count of attacker-owned uncles referenced at distance `d`.
    pub const fn attacker_uncles(d: u32) -> usize {
        7 + d as usize
    }
    pub const fn count(n1: u32) -> usize {
        8 + n1 as usize
    }
}

/// Cycle classes in the order of `LongRunStats::shape_counts`.
pub const SHAPE_NAMES: [&str; 5] = ["H", "SHS", "SHH", "SS", "honest"];

/// Length histogram buckets; the last one collects everything longer.
pub const LENGTH_BUCKETS: usize = 64;

/// Scale of the fixed-point sum used for the mean-of-ratios diagnostic.
pub(crate) const RATIO_SCALE: f64 = (1u64 << 40) as f64;

/// How a run was set up.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMeta {
    pub strategy: StrategyId,
    pub q: f64,
    pub gamma: f64,
    pub n1: u32,
    pub cap: Option<usize>,
    pub seed: u64,
    pub batch_size: u64,
    pub warmup: u64,
    pub block_size: u64,
}

/// Sums over measured cycles. Moments are taken over blocks of consecutive
/// cycles so that standard errors account for the dependence the carried
/// uncles introduce. All counters are integers, so merging is exact and
/// independent of order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LongRunStats {
    pub meta: RunMeta,
    pub cycle_count: u64,
    pub blocks: u64,
    pub sums: Vec<i128>,
    /// Row-major products of block sums, `features x features`.
    pub cross: Vec<i128>,
    pub shape_counts: [u64; 5],
    /// `SHH` cycles whose second honest block extended the attacker's.
    pub shh_joined: u64,
    /// `length_hist[n]` counts cycles with `n` official blocks.
    pub length_hist: Vec<u64>,
    /// Uncles of measured cycles still pending when their batch stopped.
    pub censored: u64,
    /// Candidates that aged out without being referenced.
    pub expired: u64,
    pub ratio_fixed: i128,
}

impl LongRunStats {
    pub fn empty(meta: RunMeta) -> Self {
        let f = feature::count(meta.n1);
        LongRunStats {
            meta,
            cycle_count: 0,
            blocks: 0,
            sums: vec![0; f],
            cross: vec![0; f * f],
            shape_counts: [0; 5],
            shh_joined: 0,
            length_hist: vec![0; LENGTH_BUCKETS + 1],
            censored: 0,
            expired: 0,
            ratio_fixed: 0,
        }
    }

    pub fn features(&self) -> usize {
        self.sums.len()
    }

    /// Fold one block of cycles (its feature sums) into the moments.
    pub fn add_block(&mut self, block: &[i64]) {
        let f = self.features();
        debug_assert_eq!(block.len(), f);
        for i in 0..f {
            self.sums[i] += block[i] as i128;
            for j in 0..f {
                self.cross[i * f + j] += block[i] as i128 * block[j] as i128;
            }
        }
        self.cycle_count += block[feature::CYCLES] as u64;
        self.blocks += 1;
    }

    /// Add another run's sums. Panics if the feature layouts differ.
    pub fn merge(&mut self, other: &LongRunStats) {
        assert_eq!(self.features(), other.features(), "incompatible stats");
        self.cycle_count += other.cycle_count;
        self.blocks += other.blocks;
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            *a += b;
        }
        for (a, b) in self.cross.iter_mut().zip(&other.cross) {
            *a += b;
        }
        for (a, b) in self.shape_counts.iter_mut().zip(other.shape_counts) {
            *a += b;
        }
        for (a, b) in self.length_hist.iter_mut().zip(&other.length_hist) {
            *a += b;
        }
        self.shh_joined += other.shh_joined;
        self.censored += other.censored;
        self.expired += other.expired;
        self.ratio_fixed += other.ratio_fixed;
    }

    pub fn censored_fraction(&self) -> f64 {
        if self.cycle_count == 0 {
            0.0
        } else {
            self.censored as f64 / self.cycle_count as f64
        }
    }

    /// Ratio `a.sums / b.sums` of two linear combinations of features, with
    /// its delta-method standard error over blocks.
    pub fn ratio(&self, a: &[f64], b: &[f64]) -> Estimate {
        let f = self.features();
        let dot = |w: &[f64]| -> f64 { w.iter().zip(&self.sums).map(|(x, &s)| x * s as f64).sum() };
        let num = dot(a);
        let den = dot(b);
        let mean = num / den;
        let k = self.blocks as f64;
        if self.blocks < 2 {
            return Estimate { mean, se: f64::NAN };
        }
        let e: Vec<f64> = (0..f).map(|i| a[i] - mean * b[i]).collect();
        let mut ss = 0.0;
        for i in 0..f {
            if e[i] == 0.0 {
                continue;
            }
            for j in 0..f {
                ss += e[i] * e[j] * self.cross[i * f + j] as f64;
            }
        }
        let se = (ss.max(0.0) * k / (k - 1.0)).sqrt() / den.abs();
        Estimate { mean, se }
    }

    /// Mean per cycle of a single feature.
    pub fn per_cycle(&self, index: usize) -> Estimate {
        let f = self.features();
        let mut a = vec![0.0; f];
        let mut b = vec![0.0; f];
        a[index] = 1.0;
        b[feature::CYCLES] = 1.0;
        self.ratio(&a, &b)
    }
}

/// A mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
}

/// Empirical counterpart of the analytic report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalReport {
    pub cycle_count: u64,
    pub l: Estimate,
    pub u: Estimate,
    pub us: Estimate,
    pub uh: Estimate,
    pub v: Estimate,
    pub delta: Estimate,
    pub revenue_blocks: Estimate,
    pub revenue_uncles: Estimate,
    pub revenue_nephews: Estimate,
    /// Ratio of means, the long-run definition.
    pub apparent_hashrate_eth: Estimate,
    pub deflation_index: Estimate,
    pub honest_apparent_hashrate: Estimate,
    /// Mean over cycles of each cycle's own revenue share; biased, for
    /// comparison only.
    pub mean_of_ratios: f64,
    pub censored_fraction: f64,
}

pub const MIN_CYCLES: u64 = 1000;

pub fn empirical_report(stats: &LongRunStats, params: &ProtocolParams) -> Result<EmpiricalReport, SimError> {
    if stats.cycle_count < MIN_CYCLES {
        return Err(SimError::InsufficientSamples {
            have: stats.cycle_count,
            need: MIN_CYCLES,
        });
    }
    let f = stats.features();
    let n1 = stats.meta.n1;
    let ku = |d: u32| {
        let r = params.uncle_reward(d);
        *r.numer() as f64 / *r.denom() as f64
    };
    let pi = {
        let r = params.inclusion_reward();
        *r.numer() as f64 / *r.denom() as f64
    };
    let unit = |i: usize| {
        let mut w = vec![0.0; f];
        w[i] = 1.0;
        w
    };
    let mut uncle_rewards = vec![0.0; f];
    for d in 1..=n1 {
        uncle_rewards[feature::attacker_uncles(d)] = ku(d);
    }
    let nephew_rewards: Vec<f64> = unit(feature::US).iter().map(|x| x * pi).collect();
    let revenue: Vec<f64> = (0..f)
        .map(|i| unit(feature::ATTACKER_OFFICIAL)[i] + uncle_rewards[i] + nephew_rewards[i])
        .collect();
    let mut slots = unit(feature::L);
    slots[feature::U] = 1.0;
    let mut deficit = vec![0.0; f];
    deficit[feature::U] = 1.0 - ku(1) - pi;
    deficit[feature::DELTA] = ku(1) - ku(2);
    let honest: Vec<f64> = (0..f).map(|i| slots[i] - revenue[i] - deficit[i]).collect();
    let cycles = unit(feature::CYCLES);

    Ok(EmpiricalReport {
        cycle_count: stats.cycle_count,
        l: stats.per_cycle(feature::L),
        u: stats.per_cycle(feature::U),
        us: stats.per_cycle(feature::US),
        uh: stats.per_cycle(feature::UH),
        v: stats.per_cycle(feature::V),
        delta: stats.per_cycle(feature::DELTA),
        revenue_blocks: stats.per_cycle(feature::ATTACKER_OFFICIAL),
        revenue_uncles: stats.ratio(&uncle_rewards, &cycles),
        revenue_nephews: stats.ratio(&nephew_rewards, &cycles),
        apparent_hashrate_eth: stats.ratio(&revenue, &slots),
        deflation_index: if stats.meta.strategy == StrategyId::Honest {
            Estimate { mean: 0.0, se: 0.0 }
        } else {
            stats.ratio(&deficit, &slots)
        },
        honest_apparent_hashrate: if stats.meta.strategy == StrategyId::Honest {
            let q = stats.ratio(&revenue, &slots);
            Estimate { mean: 1.0 - q.mean, se: q.se }
        } else {
            stats.ratio(&honest, &slots)
        },
        mean_of_ratios: stats.ratio_fixed as f64 / RATIO_SCALE / stats.cycle_count as f64,
        censored_fraction: stats.censored_fraction(),
    })
}
