//! Protocol parameters from a TOML file, overridden by flags.

use std::path::Path;

use ethsm_core::{parse_rational, ProtocolParams};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Deserialize;

use crate::error::CliError;

/// A reward given either as a number or as text such as `"1/32"`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum RewardValue {
    Integer(i64),
    Float(f64),
    Text(String),
}

impl RewardValue {
    fn to_ratio(&self) -> Result<Ratio<i64>, CliError> {
        let text = match self {
            RewardValue::Integer(i) => i.to_string(),
            RewardValue::Float(f) => f.to_string(),
            RewardValue::Text(t) => t.clone(),
        };
        let bad = || CliError::Domain(format!("cannot read `{text}` as a rational reward"));
        let r = parse_rational(&text).ok_or_else(bad)?;
        let n = r.numer().to_i64().ok_or_else(bad)?;
        let d = r.denom().to_i64().ok_or_else(bad)?;
        Ok(Ratio::new(n, d))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n1: Option<u32>,
    pub inclusion_reward: Option<RewardValue>,
    /// Uncle reward numerators over 8. Either `n1` entries for `d = 1..=n1`,
    /// or `n1 + 1` entries indexed directly by `d` (entry 0 unused).
    pub uncle_reward_numerators: Option<Vec<i64>>,
    pub coinbase: Option<f64>,
    pub interblock_time_s: Option<f64>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Domain(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Build parameters; `n1_flag` wins over the file.
    pub fn params(&self, n1_flag: Option<u32>) -> Result<ProtocolParams, CliError> {
        let n1 = n1_flag.or(self.n1).unwrap_or(6);
        let schedule = match &self.uncle_reward_numerators {
            None => ProtocolParams::with_eighths_schedule(n1)?.uncle_schedule().to_vec(),
            Some(nums) => {
                let nums = if nums.len() == n1 as usize + 1 {
                    &nums[1..]
                } else if nums.len() == n1 as usize {
                    &nums[..]
                } else {
                    return Err(CliError::Domain(format!(
                        "uncle_reward_numerators has {} entries, n1 = {n1} needs {n1} or {}",
                        nums.len(),
                        n1 + 1
                    )));
                };
                nums.iter().map(|&k| Ratio::new(k, 8)).collect()
            }
        };
        let inclusion = match &self.inclusion_reward {
            None => Ratio::new(1, 32),
            Some(v) => v.to_ratio()?,
        };
        let mut params = ProtocolParams::new(n1, schedule, inclusion)?;
        if let Some(b) = self.coinbase {
            if !(b.is_finite() && b > 0.0) {
                return Err(CliError::Domain(format!("coinbase must be positive, got {b}")));
            }
            params.coinbase = b;
        }
        if let Some(t) = self.interblock_time_s {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Domain(format!("interblock_time_s must be positive, got {t}")));
            }
            params.interblock_time = t;
        }
        Ok(params)
    }
}
