//! Brutal fork without signalling: the attacker never references uncles,
//! so every uncle is picked up by an honest nephew.
//!
//! Uncles left by attacker-won cycles wait for the next honest official
//! block; `P_{n1}` and `Q_{n1}` are the expected count and distance sum
//! collected by the head `H` block of a cycle.

use crate::combinatorics::{attacker_won_within, pi_k};
use crate::error::{require_at_least, Result};
use crate::params::MinerMix;
use crate::scalar::Scalar;

/// `P_{n1} = P[U'(H) = 1] + 2 P[U'(H) = 2]`.
pub fn p_n1<S: Scalar>(n1: u32, mix: &MinerMix<S>) -> Result<S> {
    require_at_least("n1", n1 as i64, 3)?;
    let (one, two) = referral_law(n1, mix);
    Ok(one + S::from_int(2) * two)
}

/// `(P[U'(H) = 1], P[U'(H) = 2])`.
///
/// One uncle: a single attacker-won cycle of length `i` precedes `H` and the
/// one before it could not have supplied a second uncle. Two uncles: two
/// attacker-won cycles, in order, of total length at most `n1`.
pub fn referral_law<S: Scalar>(n1: u32, mix: &MinerMix<S>) -> (S, S) {
    let pis: Vec<S> = (0..=n1).map(|k| pi_k(k, mix)).collect();
    let mut one = S::zero();
    for i in 2..=n1 {
        let blocked = attacker_won_within((n1 - i) as i64, mix);
        one = one + pis[i as usize].clone() * (S::one() - blocked);
    }
    let mut two = S::zero();
    for i in 2..=n1 {
        for j in 2..=n1.saturating_sub(i) {
            two = two + pis[i as usize].clone() * pis[j as usize].clone();
        }
    }
    (one, two)
}

/// `Q_{n1}`: expected sum of distances between the head `H` and the uncles
/// it refers.
///
/// Runs of consecutive attacker-won cycles of lengths `t_1, ..., t_m`
/// (oldest first, each `>= 2`, total `<= n1`) contribute
/// `sum_j j t_j` times their probability. A lone cycle also requires that
/// the cycle before it was not an attacker win short enough to matter.
pub fn q_n1<S: Scalar>(n1: u32, mix: &MinerMix<S>) -> Result<S> {
    require_at_least("n1", n1 as i64, 3)?;
    let n = n1 as usize;
    let pis: Vec<S> = (0..=n1).map(|k| pi_k(k, mix)).collect();
    // mass[s][m], dist[s][m]: runs of m cycles totalling s.
    let mut mass = vec![vec![S::zero(); n + 1]; n + 1];
    let mut dist = vec![vec![S::zero(); n + 1]; n + 1];
    mass[0][0] = S::one();
    for m in 0..n {
        for s in 0..=n {
            if mass[s][m].is_zero() {
                continue;
            }
            for k in 2..=n - s {
                let w = pis[k].clone();
                let step = S::from_int(((m + 1) * k) as i64);
                let grown_mass = mass[s][m].clone() * w.clone();
                let grown_dist = (dist[s][m].clone() + step * mass[s][m].clone()) * w;
                mass[s + k][m + 1] = mass[s + k][m + 1].clone() + grown_mass;
                dist[s + k][m + 1] = dist[s + k][m + 1].clone() + grown_dist;
            }
        }
    }
    let mut total = S::zero();
    for (s, row) in dist.iter().enumerate().take(n + 1).skip(2) {
        let lone = S::one() - attacker_won_within((n - s) as i64, mix);
        total = total + row[1].clone() * lone;
        for d in &row[2..=n] {
            total = total + d.clone();
        }
    }
    Ok(total)
}

/// `E[U] = (p + (1 - gamma) p^2 q) P_{n1} + gamma p^2 q Cbar(n1 - 1) + p^2 q`.
pub fn expected_u<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> Result<S> {
    let (p, q, g) = mix.parts();
    let shh = p.clone() * p.clone() * q;
    let head = p + (S::one() - g.clone()) * shh.clone();
    let after_win = attacker_won_within(n1 as i64 - 1, mix);
    Ok(head * p_n1(n1, mix)? + g * shh.clone() * after_win + shh)
}

/// Deferred uncles: every uncle except the one settled inside an `SHH` race.
pub fn expected_v<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> Result<S> {
    let (p, q, _) = mix.parts();
    Ok(expected_u(mix, n1)? - p.clone() * p * q)
}

pub fn expected_uh<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> Result<S> {
    expected_u(mix, n1)
}

pub fn expected_us<S: Scalar>(_mix: &MinerMix<S>, _n1: u32) -> Result<S> {
    Ok(S::zero())
}

/// `E[Δ] = (p + (1 - gamma) p^2 q) Q_{n1} + gamma p^2 q Q_{n1 - 1} + p^2 q`.
pub fn expected_delta<S: Scalar>(mix: &MinerMix<S>, n1: u32) -> Result<S> {
    require_at_least("n1", n1 as i64, 4)?;
    let (p, q, g) = mix.parts();
    let shh = p.clone() * p.clone() * q;
    let head = p + (S::one() - g.clone()) * shh.clone();
    Ok(head * q_n1(n1, mix)? + g * shh.clone() * q_n1(n1 - 1, mix)? + shh)
}
