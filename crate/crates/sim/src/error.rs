use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("need at least {need} measured cycles, have {have}")]
    InsufficientSamples { have: u64, need: u64 },
    #[error("simulation needs at least one cycle")]
    NoCycles,
}
