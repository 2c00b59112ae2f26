//! Lovász Local Lemma instances, a resampling solver, and configurations of
//! Bernoulli shifts over concrete groups whose orbits are trapped in a union
//! of translated cylinder sets.
//!
//! * [`group`]: exact arithmetic for lattices, cyclic products, free groups
//!   and finite multiplication tables.
//! * [`separated`]: collision graphs and greedy separated subsets.
//! * [`lll`]: bad events, the `e · p · (d + 1) < 1` criterion, Moser–Tardos
//!   resampling and an exhaustive backtracking oracle.
//! * [`shift`]: thresholds, the trapping instance, and trapping verification.

pub mod certify;
pub mod group;
pub mod lll;
pub mod rng;
pub mod separated;
pub mod shift;

pub use certify::Verdict;
pub use group::{ElementSet, GroupContext, GroupElement, GroupError, GroupSpec};
pub use lll::{Assignment, BadEvent, Instance, LllError, VariableUniverse};
pub use shift::{Pattern, ShiftConfig, ShiftError, ShiftInstance};
