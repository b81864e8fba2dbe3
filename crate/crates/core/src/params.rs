//! Model inputs: the hashrate split, the reward protocol and strategy ids.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::scalar::Scalar;

/// Attacker / honest hashrate split plus the connectivity `gamma`.
///
/// Construction enforces `0 <= q < 1/2` (so that `q < p`) and
/// `0 <= gamma <= 1`; every formula downstream relies on it.
#[derive(Debug, Clone, PartialEq)]
pub struct MinerMix<S> {
    q: S,
    p: S,
    gamma: S,
}

impl<S: Scalar> MinerMix<S> {
    pub fn new(q: S, gamma: S) -> Result<Self> {
        let half = S::from_ratio(1, 2);
        if q < S::zero() || q >= half {
            return Err(ModelError::Domain {
                param: "q",
                value: format!("{:?}", q),
                reason: "attacker share must satisfy 0 <= q < 0.5",
            });
        }
        if gamma < S::zero() || gamma > S::one() {
            return Err(ModelError::Domain {
                param: "gamma",
                value: format!("{:?}", gamma),
                reason: "connectivity must lie in [0, 1]",
            });
        }
        let p = S::one() - q.clone();
        Ok(MinerMix { q, p, gamma })
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn p(&self) -> &S {
        &self.p
    }

    pub fn gamma(&self) -> &S {
        &self.gamma
    }

    /// `(p, q, gamma)` by value, for formula bodies.
    pub fn parts(&self) -> (S, S, S) {
        (self.p.clone(), self.q.clone(), self.gamma.clone())
    }

    pub fn with_gamma(&self, gamma: S) -> Result<Self> {
        Self::new(self.q.clone(), gamma)
    }

    pub fn to_f64(&self) -> MinerMix<f64> {
        MinerMix {
            q: self.q.to_f64(),
            p: self.p.to_f64(),
            gamma: self.gamma.to_f64(),
        }
    }
}

/// Ethereum-style reward protocol.
///
/// Rewards are fractions of the coinbase `b` and are kept as exact small
/// rationals so that they can be lifted into any [`Scalar`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolParams {
    n1: u32,
    /// `uncle_reward[d - 1]` is `K_u(d)` for `1 <= d <= n1`.
    uncle_reward: Vec<Ratio<i64>>,
    inclusion_reward: Ratio<i64>,
    pub coinbase: f64,
    pub interblock_time: f64,
}

impl Default for ProtocolParams {
    fn default() -> Self {
        Self::ethereum()
    }
}

impl ProtocolParams {
    /// `n1 = 6`, `K_u(d) = (8 - d)/8`, `pi = 1/32`, `b = 1`, `tau = 15 s`.
    pub fn ethereum() -> Self {
        Self::with_eighths_schedule(6).expect("default parameters are valid")
    }

    /// Default `(8 - d)/8` schedule (floored at zero) truncated at `n1`.
    pub fn with_eighths_schedule(n1: u32) -> Result<Self> {
        let schedule = (1..=n1 as i64)
            .map(|d| Ratio::new((8 - d).max(0), 8))
            .collect();
        Self::new(n1, schedule, Ratio::new(1, 32))
    }

    pub fn new(n1: u32, uncle_reward: Vec<Ratio<i64>>, inclusion_reward: Ratio<i64>) -> Result<Self> {
        if n1 < 2 {
            return Err(ModelError::Params(format!("n1 must be at least 2, got {n1}")));
        }
        if uncle_reward.len() != n1 as usize {
            return Err(ModelError::Params(format!(
                "uncle reward schedule has {} entries, expected n1 = {n1}",
                uncle_reward.len()
            )));
        }
        if uncle_reward.iter().any(|k| *k < Ratio::zero() || *k > Ratio::one()) {
            return Err(ModelError::Params("uncle rewards must lie in [0, 1]".into()));
        }
        if inclusion_reward < Ratio::zero() || inclusion_reward >= Ratio::one() {
            return Err(ModelError::Params("inclusion reward must satisfy 0 <= pi < 1".into()));
        }
        Ok(ProtocolParams {
            n1,
            uncle_reward,
            inclusion_reward,
            coinbase: 1.0,
            interblock_time: 15.0,
        })
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    /// `K_u(d)`; zero outside `1..=n1`.
    pub fn uncle_reward(&self, d: u32) -> Ratio<i64> {
        if d == 0 || d > self.n1 {
            Ratio::zero()
        } else {
            self.uncle_reward[d as usize - 1]
        }
    }

    pub fn uncle_schedule(&self) -> &[Ratio<i64>] {
        &self.uncle_reward
    }

    pub fn inclusion_reward(&self) -> Ratio<i64> {
        self.inclusion_reward
    }

    pub fn ku<S: Scalar>(&self, d: u32) -> S {
        S::from_small_ratio(&self.uncle_reward(d))
    }

    pub fn pi<S: Scalar>(&self) -> S {
        S::from_small_ratio(&self.inclusion_reward)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StrategyId {
    #[serde(rename = "HONEST")]
    Honest,
    /// Maximum belligerence, signals every uncle.
    #[serde(rename = "SM1")]
    Sm1,
    /// Brutal fork, signals every uncle.
    #[serde(rename = "SM2A")]
    Sm2a,
    /// Brutal fork, never signals.
    #[serde(rename = "SM2B")]
    Sm2b,
}

impl StrategyId {
    pub const ALL: [StrategyId; 4] = [
        StrategyId::Honest,
        StrategyId::Sm1,
        StrategyId::Sm2a,
        StrategyId::Sm2b,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyId::Honest => "HONEST",
            StrategyId::Sm1 => "SM1",
            StrategyId::Sm2a => "SM2A",
            StrategyId::Sm2b => "SM2B",
        }
    }

    /// Whether blocks mined by the attacker reference uncles.
    pub fn attacker_signals(self) -> bool {
        matches!(self, StrategyId::Sm1 | StrategyId::Sm2a)
    }

    /// Whether the attacker publishes matching blocks to force competitions.
    pub fn is_belligerent(self) -> bool {
        self == StrategyId::Sm1
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyId {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "HONEST" | "HM" => Ok(StrategyId::Honest),
            "SM1" => Ok(StrategyId::Sm1),
            "SM2A" => Ok(StrategyId::Sm2a),
            "SM2B" => Ok(StrategyId::Sm2b),
            _ => Err(ModelError::Params(format!("unknown strategy `{s}`"))),
        }
    }
}
