//! Hashrate at which one strategy starts paying more than another.

use crate::error::Result;
use crate::params::{MinerMix, ProtocolParams, StrategyId};

use super::report::apparent_hashrate_eth;

/// A sign change of `q̃_E(challenger) - q̃_E(baseline)` in `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    pub q: f64,
    /// Bracket width when bisection stopped.
    pub width: f64,
    pub iterations: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRange {
    pub lo: f64,
    pub hi: f64,
    /// Coarse scan step used to bracket the first sign change.
    pub step: f64,
    pub tolerance: f64,
}

impl Default for SearchRange {
    fn default() -> Self {
        SearchRange {
            lo: 0.01,
            hi: 0.49,
            step: 0.005,
            tolerance: 1e-10,
        }
    }
}

/// Smallest `q` in the range where `challenger` overtakes `baseline`
/// (going from below to above), or `None` when no such change exists.
pub fn crossover(
    challenger: StrategyId,
    baseline: StrategyId,
    gamma: f64,
    params: &ProtocolParams,
    range: SearchRange,
) -> Result<Option<Crossover>> {
    let gap = |q: f64| -> Result<f64> {
        let mix = MinerMix::new(q, gamma)?;
        Ok(apparent_hashrate_eth(challenger, &mix, params)? - apparent_hashrate_eth(baseline, &mix, params)?)
    };
    let mut lo = range.lo;
    let mut f_lo = gap(lo)?;
    let mut bracket = None;
    while lo < range.hi {
        let hi = (lo + range.step).min(range.hi);
        let f_hi = gap(hi)?;
        if f_lo <= 0.0 && f_hi > 0.0 {
            bracket = Some((lo, hi));
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    let Some((mut a, mut b)) = bracket else {
        return Ok(None);
    };
    let mut iterations = 0;
    while b - a > range.tolerance {
        let mid = 0.5 * (a + b);
        if gap(mid)? > 0.0 {
            b = mid;
        } else {
            a = mid;
        }
        iterations += 1;
    }
    Ok(Some(Crossover {
        q: 0.5 * (a + b),
        width: b - a,
        iterations,
    }))
}
