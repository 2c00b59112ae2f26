//! Configurations of the Bernoulli shift `k^Γ` trapped in `F · V_φ`.
//!
//! Given a pattern `φ : D → k` and a finite translate set `F`, pick
//! `L ⊆ F` with `L⁻¹` left `D`-separated and build, for every `γ` in a core
//! window, the bad event `B_γ` on `D L⁻¹ γ` that forbids missing `φ` in every
//! block `D λ⁻¹ γ`. A solution to these events is a configuration whose
//! orbit (restricted to the core window) stays inside `L · V_φ ⊆ F · V_φ`.

use thiserror::Error;

use crate::group::{ElementSet, GroupElement, GroupError};
use crate::lll::LllError;
use crate::separated::SeparationError;

mod builder;
pub mod config;
mod threshold;
mod trap;

pub use builder::{
    build_bad_event, build_instance, check_bounds, event_domain, min_universe_radius, select_l,
    BoundsReport, ShiftConfig, ShiftInstance,
};
pub use threshold::{
    compute_ell0, compute_n, endgame_value, endgame_verdict, threshold, Threshold, ThresholdError,
    LOG_MARGIN, MAX_ELL, MAX_EXACT_BITS,
};
pub use trap::{is_trapped_at, verify_trapping, ShiftPoint, TrapReport, TrapVerdict};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShiftError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Separation(#[from] SeparationError),
    #[error(transparent)]
    Lll(#[from] LllError),
    #[error(transparent)]
    Threshold(#[from] ThresholdError),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("translates D λ⁻¹ of L are not pairwise disjoint")]
    NotSeparated,
    #[error("universe does not contain {element}, needed by the event at {gamma}")]
    UniverseTooSmall { gamma: String, element: String },
    #[error("position {0} lies outside the configuration window")]
    OutsideWindow(String),
    #[error("bound violated: {0:?}")]
    BoundViolation(Vec<String>),
    #[error("solution is not trapped at {0}")]
    TrappingImplication(String),
}

/// A finite pattern `φ : D → 0..k`, defining the cylinder set `V_φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    support: ElementSet,
    values: Vec<u32>,
    k: u32,
}

impl Pattern {
    /// Builds a pattern from `(δ, φ(δ))` pairs. The support must be nonempty
    /// and duplicate-free, and every value below `k`.
    pub fn new(pairs: impl IntoIterator<Item = (GroupElement, u32)>, k: u32) -> Result<Self, ShiftError> {
        if k == 0 {
            return Err(ShiftError::InvalidPattern("alphabet size must be at least 1".into()));
        }
        let mut pairs: Vec<(GroupElement, u32)> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(ShiftError::InvalidPattern("support must be nonempty".into()));
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(ShiftError::InvalidPattern("support element listed twice".into()));
        }
        if let Some((e, x)) = pairs.iter().find(|(_, x)| *x >= k) {
            return Err(ShiftError::InvalidPattern(format!("value {x} at {e} is not below k = {k}")));
        }
        let values = pairs.iter().map(|p| p.1).collect();
        let support = pairs.into_iter().map(|p| p.0).collect();
        Ok(Pattern { support, values, k })
    }

    pub fn support(&self) -> &ElementSet {
        &self.support
    }

    /// Values aligned with the canonical order of the support.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value_at(&self, delta: &GroupElement) -> Option<u32> {
        self.support.position(delta).map(|i| self.values[i])
    }
}
