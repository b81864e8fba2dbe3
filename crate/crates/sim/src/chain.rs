//! One attack cycle at a time, with block heights and pending uncles.
//!
//! Heights are absolute. With the official tip at `T` when a cycle starts,
//! the `k`-th attacker block of the cycle sits at `T + k` and the `j`-th
//! honest block at `T + j`. Blocks are replayed in the order they were
//! mined; an official block that signals references pending uncles at a
//! height difference between 1 and `n1`.

use std::collections::VecDeque;

use ethsm_core::combinatorics::{CycleShape, Letter};
use ethsm_core::{Mix, ProtocolParams, StrategyId};
use serde::Serialize;

use crate::draws::Draws;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Owner {
    Attacker,
    Honest,
}

/// Which eligible uncles a capped nephew keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum CapOrder {
    /// Highest uncles first (shortest distance).
    #[default]
    NewestFirst,
    /// Lowest uncles first (longest distance).
    OldestFirst,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub strategy: StrategyId,
    pub mix: Mix,
    pub params: ProtocolParams,
    /// Maximum uncles per nephew; `None` lifts the limit.
    pub cap: Option<usize>,
    pub cap_order: CapOrder,
}

impl SimConfig {
    /// The cap setting used to validate each strategy: on for the
    /// non-signalling brutal fork, off otherwise.
    pub fn validation(strategy: StrategyId, mix: Mix, params: ProtocolParams) -> Self {
        let cap = (strategy == StrategyId::Sm2b).then_some(2);
        SimConfig {
            strategy,
            mix,
            params,
            cap,
            cap_order: CapOrder::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PendingUncle {
    pub height: u64,
    pub owner: Owner,
    /// Index of the cycle that created it.
    pub cycle: u64,
}

/// Orphans that may still be referenced, in creation order.
#[derive(Debug, Clone, Default)]
pub struct PendingUncleQueue {
    entries: VecDeque<PendingUncle>,
}

impl PendingUncleQueue {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PendingUncle> {
        self.entries.iter()
    }

    pub fn push(&mut self, uncle: PendingUncle) {
        self.entries.push_back(uncle);
    }

    /// Drop uncles too far below an official block at `height`; returns how
    /// many were dropped.
    pub fn expire(&mut self, height: u64, n1: u32) -> usize {
        let before = self.entries.len();
        self.entries.retain(|u| height <= u.height + n1 as u64);
        before - self.entries.len()
    }

    /// Remove and return the uncles a nephew at `height` references.
    pub fn take_for_nephew(&mut self, height: u64, cap: Option<usize>, order: CapOrder) -> Vec<PendingUncle> {
        let mut eligible: Vec<usize> = (0..self.entries.len())
            .filter(|&i| self.entries[i].height < height)
            .collect();
        if let Some(cap) = cap {
            if eligible.len() > cap {
                match order {
                    CapOrder::NewestFirst => eligible.sort_by_key(|&i| std::cmp::Reverse(self.entries[i].height)),
                    CapOrder::OldestFirst => eligible.sort_by_key(|&i| self.entries[i].height),
                }
                eligible.truncate(cap);
                eligible.sort_unstable();
            }
        }
        let mut taken = Vec::with_capacity(eligible.len());
        for &i in eligible.iter().rev() {
            taken.push(self.entries.remove(i).expect("index in range"));
        }
        taken.reverse();
        taken
    }
}

/// An uncle reference made during a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Referral {
    pub uncle_cycle: u64,
    pub uncle_owner: Owner,
    pub nephew_owner: Owner,
    pub distance: u32,
}

/// What happened in one cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleRecord {
    pub index: u64,
    pub letters: Vec<Letter>,
    /// `None` when the attacker mines honestly.
    pub shape: Option<CycleShape>,
    /// For `SHH`: whether the second honest block extended the attacker's.
    pub honest_joined: Option<bool>,
    pub official_len: u32,
    pub attacker_official: u32,
    /// Orphans with an official parent created in this cycle.
    pub candidates: Vec<(u64, Owner)>,
    /// References made by this cycle's official blocks (to uncles of this or
    /// earlier cycles).
    pub referrals: Vec<Referral>,
    pub expired: u32,
}

#[derive(Debug, Clone, Copy)]
struct Block {
    height: u64,
    owner: Owner,
    official: bool,
    candidate: bool,
}

/// Stateful cycle generator: official tip, pending uncles, cycle counter.
#[derive(Debug, Clone)]
pub struct ChainSimulator {
    config: SimConfig,
    tip: u64,
    next_index: u64,
    pending: PendingUncleQueue,
}

impl ChainSimulator {
    pub fn new(config: SimConfig) -> Self {
        ChainSimulator {
            config,
            tip: 0,
            next_index: 0,
            pending: PendingUncleQueue::default(),
        }
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn tip(&self) -> u64 {
        self.tip
    }

    pub fn pending(&self) -> &PendingUncleQueue {
        &self.pending
    }

    /// Simulate the next attack cycle.
    pub fn next_cycle<D: Draws>(&mut self, draws: &mut D) -> CycleRecord {
        let q = self.config.mix.q().to_owned();
        let gamma = self.config.mix.gamma().to_owned();
        let strategy = self.config.strategy;
        let t = self.tip;
        let mut letters = Vec::with_capacity(4);
        let mut blocks = Vec::with_capacity(4);
        let mut honest_joined = None;
        let block = |height, owner, official, candidate| Block {
            height,
            owner,
            official,
            candidate,
        };
        let shape;

        if strategy == StrategyId::Honest {
            let attacker = draws.attacker_mines(q);
            let owner = if attacker { Owner::Attacker } else { Owner::Honest };
            letters.push(if attacker { Letter::S } else { Letter::H });
            blocks.push(block(t + 1, owner, true, false));
            shape = None;
        } else if !draws.attacker_mines(q) {
            letters.push(Letter::H);
            blocks.push(block(t + 1, Owner::Honest, true, false));
            shape = Some(CycleShape::H);
        } else {
            letters.push(Letter::S);
            if !draws.attacker_mines(q) {
                letters.push(Letter::H);
                if draws.attacker_mines(q) {
                    letters.push(Letter::S);
                    blocks.push(block(t + 1, Owner::Attacker, true, false));
                    blocks.push(block(t + 1, Owner::Honest, false, true));
                    blocks.push(block(t + 2, Owner::Attacker, true, false));
                    shape = Some(CycleShape::Shs);
                } else {
                    letters.push(Letter::H);
                    let joined = draws.joins_attacker(gamma);
                    honest_joined = Some(joined);
                    blocks.push(block(t + 1, Owner::Attacker, joined, !joined));
                    blocks.push(block(t + 1, Owner::Honest, !joined, joined));
                    blocks.push(block(t + 2, Owner::Honest, true, false));
                    shape = Some(CycleShape::Shh);
                }
            } else {
                letters.push(Letter::S);
                blocks.push(block(t + 1, Owner::Attacker, true, false));
                blocks.push(block(t + 2, Owner::Attacker, true, false));
                let (mut s, mut h) = (2u64, 0u64);
                loop {
                    if draws.attacker_mines(q) {
                        s += 1;
                        letters.push(Letter::S);
                        blocks.push(block(t + s, Owner::Attacker, true, false));
                    } else {
                        h += 1;
                        letters.push(Letter::H);
                        // Later honest blocks have an official parent only when
                        // they extend a block the attacker matched and published.
                        let candidate = h == 1 || (strategy == StrategyId::Sm1 && draws.joins_attacker(gamma));
                        blocks.push(block(t + h, Owner::Honest, false, candidate));
                        if h + 1 == s {
                            break;
                        }
                    }
                }
                shape = Some(CycleShape::SsDyck {
                    dyck_half_len: (s - 2) as usize,
                });
            }
        }

        let index = self.next_index;
        let mut record = CycleRecord {
            index,
            letters,
            shape,
            honest_joined,
            official_len: 0,
            attacker_official: 0,
            candidates: Vec::new(),
            referrals: Vec::new(),
            expired: 0,
        };
        if strategy == StrategyId::Honest {
            record.official_len = 1;
            record.attacker_official = (blocks[0].owner == Owner::Attacker) as u32;
        } else {
            self.replay(&blocks, &mut record);
        }
        self.tip = t + record.official_len as u64;
        self.next_index += 1;
        record
    }

    fn replay(&mut self, blocks: &[Block], record: &mut CycleRecord) {
        let n1 = self.config.params.n1();
        let attacker_signals = self.config.strategy.attacker_signals();
        for b in blocks {
            if b.official {
                record.official_len += 1;
                if b.owner == Owner::Attacker {
                    record.attacker_official += 1;
                }
                record.expired += self.pending.expire(b.height, n1) as u32;
                if b.owner == Owner::Honest || attacker_signals {
                    for u in self.pending.take_for_nephew(b.height, self.config.cap, self.config.cap_order) {
                        record.referrals.push(Referral {
                            uncle_cycle: u.cycle,
                            uncle_owner: u.owner,
                            nephew_owner: b.owner,
                            distance: (b.height - u.height) as u32,
                        });
                    }
                }
            }
            if b.candidate {
                record.candidates.push((b.height, b.owner));
                self.pending.push(PendingUncle {
                    height: b.height,
                    owner: b.owner,
                    cycle: record.index,
                });
            }
        }
    }
}
