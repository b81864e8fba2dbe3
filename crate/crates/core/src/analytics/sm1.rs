//! Maximum belligerence, signalling every uncle.
//!
//! The attacker answers each honest block by publishing the matching
//! secret block, so honest descents can be orphaned several times per
//! cycle.

use crate::params::MinerMix;
use crate::scalar::Scalar;

use super::sm2a;

/// `E[H | SS]`: expected honest blocks that become uncles in a cycle that
/// starts with `SS`. Equals `u_{n1 - 2}`.
pub fn expected_h_given_ss<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    let (p, q, _) = mix.parts();
    let ratio = q.clone() / p.clone();
    p.clone() / (p - q) * (S::one() - ratio.powi(n1 as i32 - 1))
}

/// `E[D | SS]`: expected sum of `h(b) + 1` over those honest blocks.
/// Equals `v_{n1 - 2} + 3 u_{n1 - 2}`.
pub fn expected_d_given_ss<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    let (p, q, _) = mix.parts();
    let d = p.clone() - q.clone();
    let ratio = q.clone() / p.clone();
    let n = S::from_int(n1 as i64);
    let two = S::from_int(2);
    let tail = (p.clone() + n * d.clone()) * ratio.powi(n1 as i32 - 1);
    p.clone() / (d.clone() * d) * (two * p - q - tail)
}

/// Expected uncles referred per cycle.
pub fn expected_u<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    let (p, q, g) = mix.parts();
    let d = p.clone() - q.clone();
    let ratio = q.clone() / p.clone();
    q.clone() + q.powu(3) * g.clone() / d.clone()
        - p.powu(3) / d * ratio.powu(n1 + 1) * g.clone()
        - q.powu(n1 + 1) * (S::one() - g)
}

/// Expected uncles created in a cycle but referred in a later one.
pub fn expected_v<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    let (p, q, g) = mix.parts();
    let pq = p.clone() * q.clone();
    let contested = q.clone() * q.clone() / p.clone() * (S::one() - q.powi(n1 as i32 - 1)) * g.clone();
    let lone = (S::one() - g) * p * q.clone() * q * (S::one() - pq.powi(n1 as i32 - 1)) / (S::one() - pq);
    contested + lone
}

/// Expected uncles referred by honest nephews.
pub fn expected_uh<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    honest_referrals(mix, expected_v(mix, n1))
}

/// Expected uncles referred by the attacker's own blocks.
pub fn expected_us<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    expected_u(mix, n1) - expected_uh(mix, n1)
}

/// Expected sum of uncle-to-nephew distances per cycle.
pub fn expected_delta<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    let (p, q, g) = mix.parts();
    let head = p.clone() * q.clone();
    let contested = q.clone() * g.clone() * expected_d_given_ss(mix, n1) * q.clone();
    // With probability 1 - gamma only the first honest block of an SS cycle
    // is ever orphaned, exactly as under the brutal fork.
    let lone = (S::one() - g) * (sm2a::expected_delta(mix, n1) - head.clone());
    head + contested + lone
}

/// `p^2 q + (p + (1 - gamma) p^2 q) E[V]`: honest nephews either close an
/// `SHH` race or pick up a deferred uncle as the next official block.
pub(crate) fn honest_referrals<S: Scalar>(mix: &MinerMix<S>, deferred: S) -> S {
    let (p, q, g) = mix.parts();
    let shh = p.clone() * p.clone() * q;
    shh.clone() + (p + (S::one() - g) * shh) * deferred
}
