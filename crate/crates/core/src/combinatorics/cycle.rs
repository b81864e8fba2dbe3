//! Attack cycles as words over `{S, H}` and the law of their length.

use std::fmt;
use std::str::FromStr;

use crate::error::{require_at_least, ModelError, Result};
use crate::params::MinerMix;
use crate::scalar::Scalar;

use super::catalan::{catalan_partial_sum, catalan_series, Horizon, Truncated};
use super::dyck::is_dyck_word;

/// Block owner: `S` for the selfish miner, `H` for the honest miners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    S,
    H,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::S => 'S',
            Letter::H => 'H',
        }
    }

    pub fn step(self) -> i64 {
        match self {
            Letter::S => 1,
            Letter::H => -1,
        }
    }
}

/// Chronological block sequence of one attack cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CycleWord {
    letters: Vec<Letter>,
}

impl CycleWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        CycleWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    /// For a cycle `SS w H`, the path `X_0 = 0, X_i = X_{i-1} ± 1` over
    /// `w H`. `None` for words that do not start with `SS`.
    pub fn inner_path(&self) -> Option<Vec<i64>> {
        if self.letters.len() < 3 || self.letters[..2] != [Letter::S, Letter::S] {
            return None;
        }
        let mut path = Vec::with_capacity(self.letters.len() - 1);
        path.push(0);
        let mut x = 0;
        for l in &self.letters[2..] {
            x += l.step();
            path.push(x);
        }
        Some(path)
    }
}

impl fmt::Display for CycleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for CycleWord {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'S' | 's' => Ok(Letter::S),
                'H' | 'h' => Ok(Letter::H),
                other => Err(ModelError::Params(format!("invalid block letter `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(CycleWord::new)
    }
}

/// The four legal forms of an attack cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleShape {
    H,
    Shs,
    Shh,
    /// `SS w H` with `w` a Dyck word of half-length `dyck_half_len`.
    SsDyck { dyck_half_len: usize },
}

impl CycleShape {
    /// Number of blocks the cycle adds to the official chain.
    pub fn official_len(self) -> usize {
        match self {
            CycleShape::H => 1,
            CycleShape::Shs | CycleShape::Shh => 2,
            CycleShape::SsDyck { dyck_half_len } => dyck_half_len + 2,
        }
    }

    /// Whether every official block of the cycle belongs to the attacker.
    pub fn attacker_won(self) -> bool {
        matches!(self, CycleShape::Shs | CycleShape::SsDyck { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CycleCheck<S> {
    Valid { shape: CycleShape, probability: S },
    Invalid { reason: String },
}

impl<S> CycleCheck<S> {
    pub fn is_valid(&self) -> bool {
        matches!(self, CycleCheck::Valid { .. })
    }
}

/// Classify `word` and return its probability under `mix` when legal.
///
/// For `SHH` the probability covers both branches of the competition.
pub fn validate_cycle_word<S: Scalar>(word: &CycleWord, mix: &MinerMix<S>) -> CycleCheck<S> {
    use Letter::{H, S};
    let (p, q, _) = mix.parts();
    let letters = word.letters();
    let invalid = |reason: String| CycleCheck::Invalid { reason };
    match letters {
        [] => invalid("empty word".into()),
        [H] => CycleCheck::Valid {
            shape: CycleShape::H,
            probability: p,
        },
        [S, H, S] => CycleCheck::Valid {
            shape: CycleShape::Shs,
            probability: p * q.clone() * q,
        },
        [S, H, H] => CycleCheck::Valid {
            shape: CycleShape::Shh,
            probability: p.clone() * p * q,
        },
        [S, S, inner @ .., H] => {
            if !is_dyck_word(inner) {
                return invalid(format!("`{word}`: interior of an SS cycle must be a Dyck word"));
            }
            let half = inner.len() / 2;
            let probability = q.clone() * q.clone() * p.clone() * (p * q).powu(half as u32);
            CycleCheck::Valid {
                shape: CycleShape::SsDyck { dyck_half_len: half },
                probability,
            }
        }
        [S, S, ..] => invalid(format!("`{word}`: an SS cycle must end with H")),
        [H, ..] => invalid(format!("`{word}`: a cycle starting with H has length 1")),
        [S, H, ..] => invalid(format!("`{word}`: a cycle starting with SH has length 3")),
        [S] => invalid(format!("`{word}`: unfinished cycle")),
    }
}

/// `P[L = n]`: probability that an attack cycle adds `n` official blocks.
pub fn cycle_length_pmf<S: Scalar>(n: u32, mix: &MinerMix<S>) -> Result<S> {
    require_at_least("n", n as i64, 1)?;
    let (p, q, _) = mix.parts();
    Ok(match n {
        1 => p,
        2 => p.clone() * q.clone() + p * q.clone() * q,
        _ => {
            let k = n - 2;
            let c = S::from_biguint(&super::catalan::catalan(k));
            p.clone() * q.clone() * q.clone() * (p * q).powu(k) * c
        }
    })
}

/// `E[L] = 1 + p^2 q / (p - q)`.
pub fn expected_cycle_length<S: Scalar>(mix: &MinerMix<S>) -> S {
    let (p, q, _) = mix.parts();
    S::one() + p.clone() * p.clone() * q.clone() / (p - q)
}

/// `pi_k`: probability that the cycle is won by the attacker and `L = k`.
pub fn pi_k<S: Scalar>(k: u32, mix: &MinerMix<S>) -> S {
    if k < 2 {
        return S::zero();
    }
    let (p, q, _) = mix.parts();
    let base = p.clone() * q.clone() * q.clone();
    let c = S::from_biguint(&super::catalan::catalan(k - 2));
    let mut mass = (p * q).powu(k - 2) * c;
    if k == 2 {
        mass = mass + S::one();
    }
    base * mass
}

/// Probability that the cycle is won by the attacker with `L <= k`, `k >= 2`.
pub fn attacker_win_cdf<S: Scalar>(k: u32, mix: &MinerMix<S>) -> Result<S> {
    require_at_least("k", k as i64, 2)?;
    Ok(attacker_won_within(k as i64, mix))
}

/// Same as [`attacker_win_cdf`] but total: zero for `k < 2`.
pub fn attacker_won_within<S: Scalar>(k: i64, mix: &MinerMix<S>) -> S {
    if k < 2 {
        return S::zero();
    }
    let (p, q, _) = mix.parts();
    let base = p.clone() * q.clone() * q;
    base.clone() + base * catalan_partial_sum((k - 2) as u32, &(p * mix.q().clone()))
}

/// `sum_{n <= N} P[L = n]` with a bound on the omitted mass.
pub fn cycle_length_total(mix: &MinerMix<f64>, horizon: Horizon) -> Truncated {
    let (p, q, _) = mix.parts();
    let series = catalan_series(p * q, shift(horizon));
    let w = p * q * q;
    Truncated {
        value: p + p * q + w * series.value,
        tail_bound: w * series.tail_bound,
        last_index: series.last_index + 2,
    }
}

/// `sum_{k <= N} pi_k`, which tends to `q^2 (1 + p)`.
pub fn attacker_win_total(mix: &MinerMix<f64>, horizon: Horizon) -> Truncated {
    let (p, q, _) = mix.parts();
    let series = catalan_series(p * q, shift(horizon));
    let w = p * q * q;
    Truncated {
        value: w + w * series.value,
        tail_bound: w * series.tail_bound,
        last_index: series.last_index + 2,
    }
}

// Cycle length N corresponds to Catalan index N - 2.
fn shift(horizon: Horizon) -> Horizon {
    match horizon {
        Horizon::Terms(n) => Horizon::Terms(n.saturating_sub(2)),
        tol => tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn exact_mix(num: i64, den: i64) -> MinerMix<BigRational> {
        MinerMix::new(BigRational::from_ratio(num, den), BigRational::from_int(0)).unwrap()
    }

    /// Words of length <= `max_len` that form a complete cycle, decided by
    /// replaying the race instead of by the Dyck grammar.
    fn complete_cycles(max_len: usize) -> Vec<String> {
        // Some(true) when the race settles exactly at the last letter.
        fn finished(word: &[u8]) -> Option<bool> {
            let mut lead: i64 = 0;
            let mut tied = false;
            for (i, &c) in word.iter().enumerate() {
                let ends = if tied {
                    true
                } else {
                    match (lead, c) {
                        (0, b'H') => true,
                        (1, b'H') => {
                            tied = true;
                            false
                        }
                        (_, b'S') => {
                            lead += 1;
                            false
                        }
                        (_, _) => {
                            lead -= 1;
                            lead == 1
                        }
                    }
                };
                if ends {
                    return Some(i + 1 == word.len());
                }
            }
            None
        }
        let mut out = Vec::new();
        for len in 1..=max_len {
            for bits in 0..(1u32 << len) {
                let w: Vec<u8> = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { b'S' } else { b'H' })
                    .collect();
                if finished(&w) == Some(true) {
                    out.push(String::from_utf8(w).unwrap());
                }
            }
        }
        out
    }

    fn word_prob(word: &str, p: f64, q: f64) -> f64 {
        word.chars().map(|c| if c == 'S' { q } else { p }).product()
    }

    fn official_len(word: &str) -> usize {
        match word {
            "H" => 1,
            "SHS" | "SHH" => 2,
            w => w.chars().filter(|&c| c == 'S').count(),
        }
    }

    #[test]
    fn enumerated_cycles_are_exactly_the_grammar() {
        let mix = MinerMix::<f64>::new(0.3, 0.5).unwrap();
        let words = complete_cycles(13);
        assert!(words.contains(&"SSH".to_string()));
        assert!(words.contains(&"SSSHSHH".to_string()));
        for w in &words {
            let word: CycleWord = w.parse().unwrap();
            assert!(validate_cycle_word(&word, &mix).is_valid(), "{w}");
        }
        for bad in ["SHSH", "SS", "HH", "SSHH", "SHHS", "SSHSH"] {
            let word: CycleWord = bad.parse().unwrap();
            assert!(!validate_cycle_word(&word, &mix).is_valid(), "{bad}");
        }
    }

    #[test]
    fn pmf_matches_enumeration() {
        let (p, q) = (0.7, 0.3);
        let mix = MinerMix::<f64>::new(q, 0.0).unwrap();
        let words = complete_cycles(13);
        for n in 1..=6u32 {
            let oracle: f64 = words
                .iter()
                .filter(|w| official_len(w) == n as usize)
                .map(|w| word_prob(w, p, q))
                .sum();
            let got = cycle_length_pmf(n, &mix).unwrap();
            assert!((got - oracle).abs() < 1e-15, "n = {n}: {got} vs {oracle}");
        }
        // n = 3: p^2 q^3
        assert!((cycle_length_pmf(3, &mix).unwrap() - 0.49 * 0.027).abs() < 1e-15);
        assert!(cycle_length_pmf(0, &mix).is_err());
    }

    #[test]
    fn word_probabilities_match_products() {
        let mix = MinerMix::<f64>::new(0.3, 0.0).unwrap();
        for w in complete_cycles(11) {
            let word: CycleWord = w.parse().unwrap();
            match validate_cycle_word(&word, &mix) {
                CycleCheck::Valid { probability, .. } => {
                    assert!((probability - word_prob(&w, 0.7, 0.3)).abs() < 1e-15, "{w}");
                }
                CycleCheck::Invalid { reason } => panic!("{w}: {reason}"),
            }
        }
    }

    #[test]
    fn first_values() {
        let mix = exact_mix(1, 3);
        let (p, q, _) = mix.parts();
        assert_eq!(cycle_length_pmf(1, &mix).unwrap(), p.clone());
        assert_eq!(
            cycle_length_pmf(2, &mix).unwrap(),
            p.clone() * q.clone() + p.clone() * q.clone() * q.clone()
        );
        assert_eq!(pi_k(0, &mix), BigRational::from_int(0));
        assert_eq!(pi_k(1, &mix), BigRational::from_int(0));
        assert_eq!(pi_k(2, &mix), BigRational::from_int(2) * p * q.clone() * q);
        assert_eq!(expected_cycle_length(&mix), BigRational::from_ratio(13, 9));
    }

    #[test]
    fn pi_5_matches_enumeration_of_attacker_wins() {
        let mix = MinerMix::<f64>::new(0.3, 0.0).unwrap();
        let oracle: f64 = complete_cycles(11)
            .iter()
            .filter(|w| w.starts_with("SS") && official_len(w) == 5)
            .map(|w| word_prob(w, 0.7, 0.3))
            .sum();
        assert!((pi_k(5, &mix) - oracle).abs() < 1e-16);
    }

    #[test]
    fn cdf_is_cumulative_pi_exactly() {
        let mix = exact_mix(3, 10);
        let mut running = BigRational::from_int(0);
        for k in 2..=12 {
            running += pi_k(k, &mix);
            assert_eq!(attacker_win_cdf(k, &mix).unwrap(), running, "k = {k}");
        }
        assert!(attacker_win_cdf(1, &mix).is_err());
        assert_eq!(attacker_won_within(1, &mix), BigRational::from_int(0));
    }

    #[test]
    fn normalization_with_tail_bounds() {
        for &q in &[0.05, 0.1, 0.2, 0.3, 0.4, 0.45] {
            let mix = MinerMix::<f64>::new(q, 0.0).unwrap();
            let p = 1.0 - q;
            let total = cycle_length_total(&mix, Horizon::Tolerance(1e-13));
            assert!((1.0 - total.value).abs() <= total.tail_bound + 1e-12, "q = {q}");
            let wins = attacker_win_total(&mix, Horizon::Tolerance(1e-13));
            assert!((wins.value - q * q * (1.0 + p)).abs() < 1e-10, "q = {q}");
            // A fixed 200-term horizon is tight enough for moderate q.
            let fixed = cycle_length_total(&mix, Horizon::Terms(200));
            assert_eq!(fixed.last_index, 200);
            let residual = 1.0 - fixed.value;
            assert!(residual <= fixed.tail_bound + 1e-15);
            if q <= 0.35 {
                assert!(residual < 1e-9, "q = {q}: residual {residual}");
            }
        }
    }
}
