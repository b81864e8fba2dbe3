//! Monte Carlo simulation of selfish-mining attack cycles.
//!
//! [`ChainSimulator`] produces one cycle at a time with block heights and a
//! queue of pending uncles; [`run_simulation`] drives it over many seeded
//! batches and aggregates exact integer moments into [`LongRunStats`].

pub mod chain;
pub mod draws;
pub mod error;
pub mod export;
pub mod run;
pub mod stats;
pub mod validate;

pub use chain::{
    CapOrder, ChainSimulator, CycleRecord, Owner, PendingUncle, PendingUncleQueue, Referral, SimConfig,
};
pub use draws::{Draws, RandomDraws, ScriptedDraws};
pub use error::SimError;
pub use export::StatsJson;
pub use run::{run_batch, run_simulation, RunConfig};
pub use stats::{empirical_report, EmpiricalReport, Estimate, LongRunStats, RunMeta};
pub use validate::{compare, Comparison};
