//! Sources of the two random choices the model makes.

use std::collections::VecDeque;

use rand::Rng;

pub trait Draws {
    /// Whether the next block is mined by the attacker.
    fn attacker_mines(&mut self, q: f64) -> bool;
    /// Whether an honest block is mined on top of the attacker's competing
    /// block rather than the honest one.
    fn joins_attacker(&mut self, gamma: f64) -> bool;
}

/// Draws from a random number generator.
#[derive(Debug, Clone)]
pub struct RandomDraws<R>(pub R);

impl<R: Rng> Draws for RandomDraws<R> {
    fn attacker_mines(&mut self, q: f64) -> bool {
        self.0.gen::<f64>() < q
    }

    fn joins_attacker(&mut self, gamma: f64) -> bool {
        self.0.gen::<f64>() < gamma
    }
}

/// Fixed outcomes, consumed in order. Panics when a script runs out.
#[derive(Debug, Clone, Default)]
pub struct ScriptedDraws {
    blocks: VecDeque<bool>,
    joins: VecDeque<bool>,
}

impl ScriptedDraws {
    /// `word` lists block owners (`S` attacker, `H` honest); `joins` lists the
    /// competition outcomes in the order they are asked for.
    pub fn new(word: &str, joins: &[bool]) -> Self {
        ScriptedDraws {
            blocks: word.chars().map(|c| c == 'S').collect(),
            joins: joins.iter().copied().collect(),
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.blocks.is_empty() && self.joins.is_empty()
    }
}

impl Draws for ScriptedDraws {
    fn attacker_mines(&mut self, _q: f64) -> bool {
        self.blocks.pop_front().expect("block script exhausted")
    }

    fn joins_attacker(&mut self, _gamma: f64) -> bool {
        self.joins.pop_front().expect("competition script exhausted")
    }
}
