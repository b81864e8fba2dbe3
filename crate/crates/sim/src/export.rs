//! JSON form of a run.

use serde::Serialize;

use crate::stats::{EmpiricalReport, LongRunStats};

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsJson {
    pub cycle_count: u64,
    pub mean_L: f64,
    pub se_L: f64,
    pub mean_U: f64,
    pub se_U: f64,
    pub mean_Us: f64,
    pub se_Us: f64,
    pub mean_Uh: f64,
    pub se_Uh: f64,
    pub mean_V: f64,
    pub se_V: f64,
    pub mean_Delta: f64,
    pub se_Delta: f64,
    pub R_s: f64,
    pub R_u: f64,
    pub R_n: f64,
    pub q_tilde: f64,
    pub se_q_tilde: f64,
    pub p_tilde: f64,
    pub se_p_tilde: f64,
    pub iota: f64,
    pub se_iota: f64,
    pub q_tilde_mean_of_ratios: f64,
    pub seed: u64,
    pub strategy: String,
    pub q: f64,
    pub gamma: f64,
    pub n1: u32,
    pub cap_enabled: bool,
    pub censored_fraction: f64,
}

impl StatsJson {
    pub fn new(stats: &LongRunStats, report: &EmpiricalReport) -> Self {
        let m = &stats.meta;
        StatsJson {
            cycle_count: stats.cycle_count,
            mean_L: report.l.mean,
            se_L: report.l.se,
            mean_U: report.u.mean,
            se_U: report.u.se,
            mean_Us: report.us.mean,
            se_Us: report.us.se,
            mean_Uh: report.uh.mean,
            se_Uh: report.uh.se,
            mean_V: report.v.mean,
            se_V: report.v.se,
            mean_Delta: report.delta.mean,
            se_Delta: report.delta.se,
            R_s: report.revenue_blocks.mean,
            R_u: report.revenue_uncles.mean,
            R_n: report.revenue_nephews.mean,
            q_tilde: report.apparent_hashrate_eth.mean,
            se_q_tilde: report.apparent_hashrate_eth.se,
            p_tilde: report.honest_apparent_hashrate.mean,
            se_p_tilde: report.honest_apparent_hashrate.se,
            iota: report.deflation_index.mean,
            se_iota: report.deflation_index.se,
            q_tilde_mean_of_ratios: report.mean_of_ratios,
            seed: m.seed,
            strategy: m.strategy.to_string(),
            q: m.q,
            gamma: m.gamma,
            n1: m.n1,
            cap_enabled: m.cap.is_some(),
            censored_fraction: report.censored_fraction,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
