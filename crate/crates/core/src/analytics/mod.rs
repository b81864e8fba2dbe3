//! Closed-form expectations per attack cycle and the long-run rates built
//! from them.

pub mod common;
pub mod report;
pub mod sm1;
pub mod sm2a;
pub mod sm2b;
pub mod threshold;

pub use common::{apparent_hashrate_btc, expected_selfish_blocks, expected_uncle_reward};
pub use report::{
    analytic_report, apparent_hashrate_eth, deflation_index, honest_apparent_hashrate,
    strategy_expectations, AnalyticReport, CycleExpectations,
};
pub use threshold::{crossover, Crossover, SearchRange};
