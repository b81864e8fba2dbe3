//! Quantities shared by every strategy: block revenue and uncle reward.

use crate::params::{MinerMix, ProtocolParams};
use crate::scalar::Scalar;

pub use crate::combinatorics::expected_cycle_length;

/// `E[R_s]`: expected official attacker blocks per cycle.
pub fn expected_selfish_blocks<S: Scalar>(mix: &MinerMix<S>) -> S {
    let (p, q, g) = mix.parts();
    let d = p.clone() - q.clone();
    let pq = p.clone() * q.clone();
    let head = (d.clone() * (S::one() + pq.clone()) + pq) * q.clone();
    let lost = d.clone() * p.clone() * p * q * (S::one() - g);
    (head - lost) / d
}

/// `q̃_B = E[R_s] / E[L]`: the attacker's share of official blocks.
pub fn apparent_hashrate_btc<S: Scalar>(mix: &MinerMix<S>) -> S {
    let (p, q, _) = mix.parts();
    // (p - q) E[L] = p^2 q + p - q
    let denom = p.clone() * p.clone() * q.clone() + p - q.clone();
    expected_selfish_blocks(mix) * (p_minus_q(mix)) / denom
}

/// `E[R_u] = p^2 q (1 - gamma) K_u(1)`: the attacker's own uncle rewards,
/// earned only at distance 1 after losing an `SHH` race.
pub fn expected_uncle_reward<S: Scalar>(mix: &MinerMix<S>, params: &ProtocolParams) -> S {
    let (p, q, g) = mix.parts();
    p.clone() * p * q * (S::one() - g) * params.ku::<S>(1)
}

pub(crate) fn p_minus_q<S: Scalar>(mix: &MinerMix<S>) -> S {
    mix.p().clone() - mix.q().clone()
}
