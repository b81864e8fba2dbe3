//! Closed-form model of selfish mining on a chain with uncle and nephew
//! rewards.
//!
//! Every formula is generic over [`Scalar`], so the same code evaluates in
//! `f64`, `f32` or exact [`BigRational`] arithmetic.

pub mod analytics;
pub mod combinatorics;
pub mod error;
pub mod params;
pub mod scalar;

pub use error::{ModelError, Result};
pub use num_rational::BigRational;
pub use params::{MinerMix, ProtocolParams, StrategyId};
pub use scalar::{parse_rational, Scalar};

/// Mining mix in double precision.
pub type Mix = MinerMix<f64>;
/// Mining mix in exact rational arithmetic.
pub type ExactMix = MinerMix<BigRational>;
