//! Closed forms against simulation, quantity by quantity.

use ethsm_core::analytics::AnalyticReport;
use serde::Serialize;

use crate::stats::{EmpiricalReport, Estimate};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub quantity: &'static str,
    pub analytic: f64,
    pub empirical: f64,
    pub se: f64,
    pub z: f64,
}

impl Comparison {
    fn new(quantity: &'static str, analytic: f64, est: Estimate) -> Self {
        let diff = est.mean - analytic;
        let z = if est.se > 0.0 {
            diff / est.se
        } else if diff.abs() <= 1e-12 * analytic.abs().max(1.0) {
            0.0
        } else {
            f64::INFINITY.copysign(diff)
        };
        Comparison {
            quantity,
            analytic,
            empirical: est.mean,
            se: est.se,
            z,
        }
    }

    pub fn passes(&self, limit: f64) -> bool {
        self.z.abs() <= limit
    }
}

/// `L, U, U_s, U_h, V, Δ, q̃, p̃, ι` in that order.
pub fn compare(analytic: &AnalyticReport<f64>, empirical: &EmpiricalReport) -> Vec<Comparison> {
    let e = &analytic.expected;
    vec![
        Comparison::new("L", e.l, empirical.l),
        Comparison::new("U", e.u, empirical.u),
        Comparison::new("Us", e.us, empirical.us),
        Comparison::new("Uh", e.uh, empirical.uh),
        Comparison::new("V", e.v, empirical.v),
        Comparison::new("Delta", e.delta, empirical.delta),
        Comparison::new("q_tilde", analytic.apparent_hashrate_eth, empirical.apparent_hashrate_eth),
        Comparison::new("p_tilde", analytic.honest_apparent_hashrate, empirical.honest_apparent_hashrate),
        Comparison::new("iota", analytic.deflation_index, empirical.deflation_index),
    ]
}
