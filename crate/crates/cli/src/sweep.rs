//! Analytic (q, γ) grid sweeps with a dominant strategy per point.

use ethsm_core::analytics::{analytic_report, AnalyticReport};
use ethsm_core::{Mix, ProtocolParams, StrategyId};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::output::{sig12, Record};

/// Relative gap below which two apparent hashrates count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub q_min: f64,
    pub q_max: f64,
    pub q_step: f64,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub gamma_step: f64,
    pub strategies: Vec<StrategyId>,
}

/// `min, min + step, ...` up to `max`, computed by index so that no
/// rounding drift accumulates.
fn axis(min: f64, max: f64, step: f64) -> Vec<f64> {
    let n = ((max - min) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| (min + i as f64 * step).min(max)).collect()
}

impl SweepGrid {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Domain(m.to_string()));
        let finite = [self.q_min, self.q_max, self.q_step, self.gamma_min, self.gamma_max, self.gamma_step];
        if finite.iter().any(|x| !x.is_finite()) {
            return bad("grid bounds must be finite");
        }
        if !(0.0 < self.q_min && self.q_min <= self.q_max && self.q_max < 0.5) {
            return bad("grid needs 0 < q_min <= q_max < 0.5");
        }
        if !(0.0 <= self.gamma_min && self.gamma_min <= self.gamma_max && self.gamma_max <= 1.0) {
            return bad("grid needs 0 <= gamma_min <= gamma_max <= 1");
        }
        if self.q_step <= 0.0 || self.gamma_step <= 0.0 {
            return bad("grid steps must be positive");
        }
        if self.strategies.is_empty() {
            return bad("grid needs at least one strategy");
        }
        Ok(())
    }

    pub fn q_values(&self) -> Vec<f64> {
        axis(self.q_min, self.q_max, self.q_step)
    }

    pub fn gamma_values(&self) -> Vec<f64> {
        axis(self.gamma_min, self.gamma_max, self.gamma_step)
    }

    /// Grid points, `q` outer and `gamma` inner.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let gammas = self.gamma_values();
        self.q_values()
            .into_iter()
            .flat_map(|q| gammas.iter().map(move |&g| (q, g)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub q: f64,
    pub gamma: f64,
    pub strategy: StrategyId,
    pub q_tilde: f64,
    pub p_tilde: f64,
    pub iota: f64,
    #[serde(rename = "E_L")]
    pub e_l: f64,
    #[serde(rename = "E_U")]
    pub e_u: f64,
    #[serde(rename = "E_Us")]
    pub e_us: f64,
    #[serde(rename = "E_Uh")]
    pub e_uh: f64,
    #[serde(rename = "E_Delta")]
    pub e_delta: f64,
    pub dominant: StrategyId,
    pub tie: bool,
}

impl Record for SweepRow {
    fn header() -> Vec<&'static str> {
        vec![
            "q", "gamma", "strategy", "q_tilde", "p_tilde", "iota", "E_L", "E_U", "E_Us", "E_Uh", "E_Delta", "dominant",
            "tie",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            sig12(self.q),
            sig12(self.gamma),
            self.strategy.as_str().into(),
            sig12(self.q_tilde),
            sig12(self.p_tilde),
            sig12(self.iota),
            sig12(self.e_l),
            sig12(self.e_u),
            sig12(self.e_us),
            sig12(self.e_uh),
            sig12(self.e_delta),
            self.dominant.as_str().into(),
            self.tie.to_string(),
        ]
    }
}

/// Winner among `(strategy, q̃)` pairs and whether the top was shared.
/// Shared tops go to HONEST if present, else to the smallest id.
pub fn dominant(values: &[(StrategyId, f64)]) -> (StrategyId, bool) {
    let best = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let tol = TIE_TOLERANCE * best.abs().max(f64::MIN_POSITIVE);
    let mut top: Vec<StrategyId> = values.iter().filter(|v| best - v.1 <= tol).map(|v| v.0).collect();
    top.sort_by_key(|s| (*s != StrategyId::Honest, s.as_str()));
    (top[0], top.len() > 1)
}

fn point_rows(q: f64, gamma: f64, strategies: &[StrategyId], params: &ProtocolParams) -> Result<Vec<SweepRow>, CliError> {
    let mix = Mix::new(q, gamma)?;
    let reports: Vec<AnalyticReport<f64>> = strategies
        .iter()
        .map(|&s| analytic_report(s, &mix, params))
        .collect::<Result<_, _>>()?;
    let values: Vec<(StrategyId, f64)> = reports.iter().map(|r| (r.strategy, r.apparent_hashrate_eth)).collect();
    let (winner, tie) = dominant(&values);
    Ok(reports
        .into_iter()
        .map(|r| SweepRow {
            q,
            gamma,
            strategy: r.strategy,
            q_tilde: r.apparent_hashrate_eth,
            p_tilde: r.honest_apparent_hashrate,
            iota: r.deflation_index,
            e_l: r.expected.l,
            e_u: r.expected.u,
            e_us: r.expected.us,
            e_uh: r.expected.uh,
            e_delta: r.expected.delta,
            dominant: winner,
            tie,
        })
        .collect())
}

/// One row per grid point and strategy, in grid order whatever the pool size.
pub fn sweep(grid: &SweepGrid, params: &ProtocolParams) -> Result<Vec<SweepRow>, CliError> {
    grid.validate()?;
    let per_point: Vec<Vec<SweepRow>> = grid
        .points()
        .par_iter()
        .map(|&(q, g)| point_rows(q, g, &grid.strategies, params))
        .collect::<Result<_, _>>()?;
    Ok(per_point.into_iter().flatten().collect())
}
