//! Per-strategy aggregation: cycle expectations, revenue and long-run rates.

use serde::Serialize;

use crate::error::Result;
use crate::params::{MinerMix, ProtocolParams, StrategyId};
use crate::scalar::Scalar;

use super::common::{apparent_hashrate_btc as btc_share, expected_selfish_blocks, expected_uncle_reward};
use super::{sm1, sm2a, sm2b};

/// Expected per-cycle counts for one strategy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleExpectations<S> {
    /// Official blocks.
    pub l: S,
    /// Referred uncles.
    pub u: S,
    /// Uncles referred by attacker nephews.
    pub us: S,
    /// Uncles referred by honest nephews.
    pub uh: S,
    /// Uncles referred in a later cycle than the one that created them.
    pub v: S,
    /// Sum of uncle-to-nephew distances.
    pub delta: S,
}

pub fn strategy_expectations<S: Scalar>(
    strategy: StrategyId,
    mix: &MinerMix<S>,
    params: &ProtocolParams,
) -> Result<CycleExpectations<S>> {
    let n1 = params.n1();
    let l = crate::combinatorics::expected_cycle_length(mix);
    Ok(match strategy {
        StrategyId::Honest => CycleExpectations {
            l: S::one(),
            u: S::zero(),
            us: S::zero(),
            uh: S::zero(),
            v: S::zero(),
            delta: S::zero(),
        },
        StrategyId::Sm1 => CycleExpectations {
            l,
            u: sm1::expected_u(mix, n1),
            us: sm1::expected_us(mix, n1),
            uh: sm1::expected_uh(mix, n1),
            v: sm1::expected_v(mix, n1),
            delta: sm1::expected_delta(mix, n1),
        },
        StrategyId::Sm2a => CycleExpectations {
            l,
            u: sm2a::expected_u(mix, n1),
            us: sm2a::expected_us(mix, n1),
            uh: sm2a::expected_uh(mix, n1),
            v: sm2a::expected_v(mix, n1),
            delta: sm2a::expected_delta(mix, n1),
        },
        StrategyId::Sm2b => CycleExpectations {
            l,
            u: sm2b::expected_u(mix, n1)?,
            us: sm2b::expected_us(mix, n1)?,
            uh: sm2b::expected_uh(mix, n1)?,
            v: sm2b::expected_v(mix, n1)?,
            delta: sm2b::expected_delta(mix, n1)?,
        },
    })
}

/// Everything known in closed form about one `(strategy, q, gamma)` point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticReport<S> {
    pub strategy: StrategyId,
    pub q: S,
    pub gamma: S,
    pub n1: u32,
    pub expected: CycleExpectations<S>,
    /// `E[R_s]`: official attacker blocks per cycle, in coinbase units.
    pub revenue_blocks: S,
    /// `E[R_u]`: attacker uncle rewards per cycle.
    pub revenue_uncles: S,
    /// `E[R_n]`: attacker inclusion rewards per cycle.
    pub revenue_nephews: S,
    /// `q̃_B`: share of official blocks.
    pub apparent_hashrate_btc: S,
    /// `q̃_E`: share of issued rewards per block slot.
    pub apparent_hashrate_eth: S,
    /// `ι`: coin-issuance deficit per block slot.
    pub deflation_index: S,
    /// `p̃ = 1 - q̃_E - ι`.
    pub honest_apparent_hashrate: S,
}

impl<S: Scalar> AnalyticReport<S> {
    /// The three summands of `q̃_E`: official blocks, own uncles, inclusions.
    pub fn apparent_hashrate_terms(&self) -> [S; 3] {
        let slots = self.expected.l.clone() + self.expected.u.clone();
        [
            self.apparent_hashrate_btc.clone() * self.expected.l.clone() / slots.clone(),
            self.revenue_uncles.clone() / slots.clone(),
            self.revenue_nephews.clone() / slots,
        ]
    }

    pub fn to_f64(&self) -> AnalyticReport<f64> {
        let e = &self.expected;
        AnalyticReport {
            strategy: self.strategy,
            q: self.q.to_f64(),
            gamma: self.gamma.to_f64(),
            n1: self.n1,
            expected: CycleExpectations {
                l: e.l.to_f64(),
                u: e.u.to_f64(),
                us: e.us.to_f64(),
                uh: e.uh.to_f64(),
                v: e.v.to_f64(),
                delta: e.delta.to_f64(),
            },
            revenue_blocks: self.revenue_blocks.to_f64(),
            revenue_uncles: self.revenue_uncles.to_f64(),
            revenue_nephews: self.revenue_nephews.to_f64(),
            apparent_hashrate_btc: self.apparent_hashrate_btc.to_f64(),
            apparent_hashrate_eth: self.apparent_hashrate_eth.to_f64(),
            deflation_index: self.deflation_index.to_f64(),
            honest_apparent_hashrate: self.honest_apparent_hashrate.to_f64(),
        }
    }
}

pub fn analytic_report<S: Scalar>(
    strategy: StrategyId,
    mix: &MinerMix<S>,
    params: &ProtocolParams,
) -> Result<AnalyticReport<S>> {
    let expected = strategy_expectations(strategy, mix, params)?;
    let (revenue_blocks, revenue_uncles, revenue_nephews, btc) = match strategy {
        StrategyId::Honest => (mix.q().clone(), S::zero(), S::zero(), mix.q().clone()),
        _ => (
            expected_selfish_blocks(mix),
            expected_uncle_reward(mix, params),
            params.pi::<S>() * expected.us.clone(),
            btc_share(mix),
        ),
    };
    let slots = expected.l.clone() + expected.u.clone();
    let eth = (revenue_blocks.clone() + revenue_uncles.clone() + revenue_nephews.clone()) / slots.clone();
    let iota = deflation(&expected, params, strategy);
    let honest = S::one() - eth.clone() - iota.clone();
    Ok(AnalyticReport {
        strategy,
        q: mix.q().clone(),
        gamma: mix.gamma().clone(),
        n1: params.n1(),
        expected,
        revenue_blocks,
        revenue_uncles,
        revenue_nephews,
        apparent_hashrate_btc: btc,
        apparent_hashrate_eth: eth,
        deflation_index: iota,
        honest_apparent_hashrate: honest,
    })
}

/// `ι = ((1 - K_u(1) - π) E[U] + (K_u(1) - K_u(2)) E[Δ]) / (E[L] + E[U])`.
fn deflation<S: Scalar>(e: &CycleExpectations<S>, params: &ProtocolParams, strategy: StrategyId) -> S {
    if strategy == StrategyId::Honest {
        return S::zero();
    }
    let k1 = params.ku::<S>(1);
    let k2 = params.ku::<S>(2);
    let per_uncle = S::one() - k1.clone() - params.pi::<S>();
    (per_uncle * e.u.clone() + (k1 - k2) * e.delta.clone()) / (e.l.clone() + e.u.clone())
}

pub fn apparent_hashrate_eth<S: Scalar>(
    strategy: StrategyId,
    mix: &MinerMix<S>,
    params: &ProtocolParams,
) -> Result<S> {
    Ok(analytic_report(strategy, mix, params)?.apparent_hashrate_eth)
}

pub fn deflation_index<S: Scalar>(strategy: StrategyId, mix: &MinerMix<S>, params: &ProtocolParams) -> Result<S> {
    Ok(analytic_report(strategy, mix, params)?.deflation_index)
}

pub fn honest_apparent_hashrate<S: Scalar>(
    strategy: StrategyId,
    mix: &MinerMix<S>,
    params: &ProtocolParams,
) -> Result<S> {
    Ok(analytic_report(strategy, mix, params)?.honest_apparent_hashrate)
}
