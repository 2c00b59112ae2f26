//! JSON form of a shift configuration.
//!
//! ```json
//! {
//!   "group": {"family": "cyclic", "moduli": [100]},
//!   "k": 2,
//!   "pattern": {"support": [[0]], "values": [0]},
//!   "F": [[0], [1], [2], [3], [4], [5], [6], [7]]
//! }
//! ```
//!
//! Infinite groups also need `core_radius`; `universe_radius` defaults to the
//! smallest radius that holds every event domain. Both radii are ignored for
//! finite groups, where the window is the whole group. An optional `L`
//! replaces the automatically selected separated subset.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::builder::ShiftConfig;
use super::{Pattern, ShiftError};
use crate::group::{GroupContext, GroupSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternFile {
    pub support: Vec<Value>,
    pub values: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftConfigFile {
    pub group: GroupSpec,
    pub k: u32,
    pub pattern: PatternFile,
    #[serde(rename = "F")]
    pub translates: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core_radius: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe_radius: Option<u64>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<Value>>,
}

impl ShiftConfigFile {
    pub fn parse(text: &str) -> Result<Self, ShiftError> {
        serde_json::from_str(text).map_err(|e| ShiftError::InvalidConfig(e.to_string()))
    }

    pub fn to_config(&self) -> Result<ShiftConfig, ShiftError> {
        let ctx = GroupContext::from_spec(&self.group)?;
        if self.pattern.support.len() != self.pattern.values.len() {
            return Err(ShiftError::InvalidPattern(format!(
                "{} support elements but {} values",
                self.pattern.support.len(),
                self.pattern.values.len()
            )));
        }
        let pairs = self
            .pattern
            .support
            .iter()
            .zip(&self.pattern.values)
            .map(|(e, &x)| Ok((ctx.decode(e)?, x)))
            .collect::<Result<Vec<_>, ShiftError>>()?;
        let pattern = Pattern::new(pairs, self.k)?;
        let translates = ctx.decode_set(&Value::Array(self.translates.clone()))?;
        let cfg = if ctx.is_finite() {
            ShiftConfig::whole_group(ctx.clone(), pattern, translates)?
        } else {
            let core = self.core_radius.ok_or_else(|| {
                ShiftError::InvalidConfig(format!("core_radius is required for {}", ctx.describe()))
            })?;
            ShiftConfig::windowed(ctx.clone(), pattern, translates, core, self.universe_radius)?
        };
        match &self.l {
            Some(l) => Ok(cfg.with_l(ctx.decode_set(&Value::Array(l.clone()))?)),
            None => Ok(cfg),
        }
    }
}

pub fn config_from_json(text: &str) -> Result<ShiftConfig, ShiftError> {
    ShiftConfigFile::parse(text)?.to_config()
}
