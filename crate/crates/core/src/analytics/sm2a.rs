//! Brutal fork, signalling every uncle.
//!
//! The attacker keeps its branch secret until the honest chain is one
//! block behind, so at most the first honest block of a cycle is orphaned.

use crate::params::MinerMix;
use crate::scalar::Scalar;

use super::sm1::honest_referrals;

/// `E[U] = q - q^{n1 + 1}`; `U` is 0 or 1.
pub fn expected_u<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    let q = mix.q().clone();
    q.clone() - q.powu(n1 + 1)
}

/// `E[V] = p q^2 (1 - (pq)^{n1 - 1}) / (1 - pq)`.
pub fn expected_v<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    let (p, q, _) = mix.parts();
    let pq = p.clone() * q.clone();
    p * q.clone() * q * (S::one() - pq.powi(n1 as i32 - 1)) / (S::one() - pq)
}

pub fn expected_uh<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    honest_referrals(mix, expected_v(mix, n1))
}

pub fn expected_us<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    expected_u(mix, n1) - expected_uh(mix, n1)
}

/// `E[Δ] = sum_{k=1}^{n1} k p q^k`: a cycle opening with `k` attacker
/// blocks then an honest one leaves one uncle at distance `k`.
pub fn expected_delta<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> S {
    let (p, q, _) = mix.parts();
    let n = S::from_int(n1 as i64);
    let tail = q.clone() * (S::one() + p.clone()) - (S::one() + n * p.clone()) * q.powu(n1);
    p.clone() * q.clone() + q / p * tail
}
