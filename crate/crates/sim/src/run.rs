//! Seeded, batch-parallel runs.

use std::collections::VecDeque;

use ethsm_core::combinatorics::CycleShape;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chain::{ChainSimulator, CycleRecord, Owner, SimConfig};
use crate::draws::RandomDraws;
use crate::error::SimError;
use crate::stats::{feature, LongRunStats, RunMeta, LENGTH_BUCKETS, RATIO_SCALE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    /// Measured cycles in total.
    pub cycles: u64,
    pub seed: u64,
    /// Measured cycles per batch. Batch `i` uses stream `i` of the seed.
    pub batch_size: u64,
    /// Cycles discarded at the start of every batch.
    pub warmup: u64,
    /// Cycles per block for the standard errors.
    pub block_size: u64,
}

impl RunConfig {
    pub fn new(cycles: u64, seed: u64) -> Self {
        RunConfig {
            cycles,
            seed,
            batch_size: 100_000,
            warmup: 100,
            block_size: 1000,
        }
    }

    pub fn batches(&self) -> u64 {
        self.cycles.div_ceil(self.batch_size)
    }
}

/// Run `run.cycles` measured cycles under `config`, splitting them into
/// independent batches on the current rayon pool. The result depends only
/// on the configuration, never on the number of threads.
pub fn run_simulation(config: &SimConfig, run: &RunConfig) -> Result<LongRunStats, SimError> {
    if run.cycles == 0 || run.batch_size == 0 || run.block_size == 0 {
        return Err(SimError::NoCycles);
    }
    let meta = meta(config, run);
    let parts: Vec<LongRunStats> = (0..run.batches())
        .into_par_iter()
        .map(|i| {
            let measured = run.batch_size.min(run.cycles - i * run.batch_size);
            run_batch(config, run, meta.clone(), i, measured)
        })
        .collect();
    let mut total = LongRunStats::empty(meta);
    for p in &parts {
        total.merge(p);
    }
    Ok(total)
}

fn meta(config: &SimConfig, run: &RunConfig) -> RunMeta {
    RunMeta {
        strategy: config.strategy,
        q: *config.mix.q(),
        gamma: *config.mix.gamma(),
        n1: config.params.n1(),
        cap: config.cap,
        seed: run.seed,
        batch_size: run.batch_size,
        warmup: run.warmup,
        block_size: run.block_size,
    }
}

/// One batch: a fresh chain and an independent random stream.
pub fn run_batch(config: &SimConfig, run: &RunConfig, meta: RunMeta, index: u64, measured: u64) -> LongRunStats {
    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
    rng.set_stream(index);
    let mut draws = RandomDraws(rng);
    let mut sim = ChainSimulator::new(config.clone());
    let mut acc = Attribution::new(config, run, meta);
    for _ in 0..run.warmup + measured {
        let record = sim.next_cycle(&mut draws);
        acc.push(&record);
    }
    acc.finish(&sim)
}

struct OpenCycle {
    index: u64,
    features: Vec<i64>,
    shape: usize,
    joined: bool,
}

/// Credits every referral to the cycle that created the uncle, and hands
/// cycles to the statistics once no uncle of theirs can still be referenced.
struct Attribution {
    n1: u32,
    warmup: u64,
    block_size: u64,
    uncle_reward: Vec<f64>,
    inclusion_reward: f64,
    open: VecDeque<OpenCycle>,
    block: Vec<i64>,
    stats: LongRunStats,
}

impl Attribution {
    fn new(config: &SimConfig, run: &RunConfig, meta: RunMeta) -> Self {
        let params = &config.params;
        let as_f64 = |r: num_rational::Ratio<i64>| *r.numer() as f64 / *r.denom() as f64;
        let n1 = params.n1();
        Attribution {
            n1,
            warmup: run.warmup,
            block_size: run.block_size,
            uncle_reward: (0..=n1).map(|d| as_f64(params.uncle_reward(d))).collect(),
            inclusion_reward: as_f64(params.inclusion_reward()),
            open: VecDeque::new(),
            block: vec![0; feature::count(n1)],
            stats: LongRunStats::empty(meta),
        }
    }

    fn push(&mut self, r: &CycleRecord) {
        let mut features = vec![0i64; feature::count(self.n1)];
        features[feature::CYCLES] = 1;
        features[feature::L] = r.official_len as i64;
        features[feature::ATTACKER_OFFICIAL] = r.attacker_official as i64;
        let shape = match r.shape {
            Some(CycleShape::H) => 0,
            Some(CycleShape::Shs) => 1,
            Some(CycleShape::Shh) => 2,
            Some(CycleShape::SsDyck { .. }) => 3,
            None => 4,
        };
        self.open.push_back(OpenCycle {
            index: r.index,
            features,
            shape,
            joined: r.honest_joined == Some(true),
        });
        if r.index >= self.warmup {
            self.stats.expired += r.expired as u64;
        }
        let front = self.open.front().map_or(0, |c| c.index);
        for x in &r.referrals {
            let slot = (x.uncle_cycle - front) as usize;
            let c = &mut self.open[slot].features;
            c[feature::U] += 1;
            c[feature::DELTA] += x.distance as i64;
            match x.nephew_owner {
                Owner::Attacker => c[feature::US] += 1,
                Owner::Honest => c[feature::UH] += 1,
            }
            if x.uncle_cycle < r.index {
                c[feature::V] += 1;
            }
            if x.uncle_owner == Owner::Attacker {
                c[feature::attacker_uncles(x.distance)] += 1;
            }
        }
        // Uncles expire within n1 heights and each cycle adds at least one.
        while let Some(c) = self.open.front() {
            if c.index + self.n1 as u64 + 1 < r.index {
                let c = self.open.pop_front().unwrap();
                self.close(c);
            } else {
                break;
            }
        }
    }

    fn close(&mut self, c: OpenCycle) {
        if c.index < self.warmup {
            return;
        }
        let f = &c.features;
        let l = f[feature::L] as usize;
        self.stats.length_hist[l.min(LENGTH_BUCKETS)] += 1;
        self.stats.shape_counts[c.shape] += 1;
        self.stats.shh_joined += c.joined as u64;
        let uncles: f64 = (1..=self.n1)
            .map(|d| self.uncle_reward[d as usize] * f[feature::attacker_uncles(d)] as f64)
            .sum();
        let revenue = f[feature::ATTACKER_OFFICIAL] as f64 + uncles + self.inclusion_reward * f[feature::US] as f64;
        let share = revenue / (f[feature::L] + f[feature::U]) as f64;
        self.stats.ratio_fixed += (share * RATIO_SCALE).round() as i128;
        for (b, x) in self.block.iter_mut().zip(f) {
            *b += x;
        }
        if self.block[feature::CYCLES] as u64 == self.block_size {
            self.flush();
        }
    }

    fn flush(&mut self) {
        if self.block[feature::CYCLES] > 0 {
            self.stats.add_block(&self.block);
            self.block.iter_mut().for_each(|b| *b = 0);
        }
    }

    fn finish(mut self, sim: &ChainSimulator) -> LongRunStats {
        self.stats.censored += sim.pending().iter().filter(|u| u.cycle >= self.warmup).count() as u64;
        while let Some(c) = self.open.pop_front() {
            self.close(c);
        }
        self.flush();
        self.stats
    }
}
