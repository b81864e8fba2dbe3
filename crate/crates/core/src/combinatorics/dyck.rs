//! The Dyck-word measure `P̄[w] = p (pq)^{|w|/2}` and its marginals.

use crate::params::MinerMix;
use crate::scalar::Scalar;

use super::catalan::catalan_partial_sum;
use super::cycle::Letter;

/// Balanced word whose running `S - H` count never goes negative.
pub fn is_dyck_word(letters: &[Letter]) -> bool {
    let mut height = 0i64;
    for l in letters {
        height += l.step();
        if height < 0 {
            return false;
        }
    }
    height == 0
}

/// `P̄` of a single Dyck word; the caller guarantees `letters` is one.
pub fn dyck_word_measure<S: Scalar>(letters: &[Letter], mix: &MinerMix<S>) -> S {
    let (p, q, _) = mix.parts();
    p.clone() * (p * q).powu((letters.len() / 2) as u32)
}

/// Measure of the Dyck words of half-length at most `n`: `p C_n(pq)`.
pub fn dyck_bounded_mass<S: Scalar>(n: u32, mix: &MinerMix<S>) -> S {
    let (p, q, _) = mix.parts();
    p.clone() * catalan_partial_sum(n, &(p * q))
}

/// Measure of the Dyck words ending with exactly `n` letters `H`.
///
/// `n = 0` is the empty word, of measure `p`.
pub fn dyck_trailing_h_prob<S: Scalar>(n: u32, mix: &MinerMix<S>) -> S {
    let (p, q, _) = mix.parts();
    p * q.powu(n)
}

/// Measure of the Dyck words whose first `H` is among the first `n` letters,
/// leaving out the words `S^k H^k`.
pub fn dyck_first_h_bounded_mass<S: Scalar>(n: u32, mix: &MinerMix<S>) -> S {
    let (p, q, _) = mix.parts();
    let pq = p.clone() * q.clone();
    let geometric = S::one() - q.powu(n);
    geometric - p * (S::one() - pq.powu(n)) / (S::one() - pq)
}
