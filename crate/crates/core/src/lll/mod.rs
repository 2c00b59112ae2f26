//! Lovász Local Lemma instances in the variable framework.
//!
//! An [`Instance`] is a set of [`BadEvent`]s over a finite
//! [`VariableUniverse`] with alphabet `0..k`. The instance is *correct* when
//! `e · p · (d + 1) < 1`, where `p` is the largest event probability and `d`
//! the largest number of other events sharing a variable with one event;
//! correct instances always have a solution, which
//! [`solve_moser_tardos`] finds by resampling.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::certify::{self, Verdict};

mod event;
pub mod io;
mod solver;

pub use event::{BadEvent, EventBody, ImplicitRule, ENUMERATION_LIMIT};
pub use solver::{
    solve_backtracking, solve_backtracking_with, solve_moser_tardos, BacktrackOutcome, MtSolution,
    SolveError, DEFAULT_MAX_NODES, DEFAULT_MAX_RESAMPLES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LllError {
    #[error("alphabet size must be at least 1")]
    InvalidAlphabet,
    #[error("invalid bad event: {0}")]
    InvalidEvent(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("variable index {index} outside a universe of {size}")]
    VariableOutOfRange { index: usize, size: usize },
    #[error("event alphabet {event} differs from instance alphabet {instance}")]
    AlphabetMismatch { event: u32, instance: u32 },
    #[error("no event with index {0}")]
    BadIndex(usize),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("malformed instance file: {0}")]
    Format(String),
}

/// Named variables plus the alphabet size `k`.
#[derive(Clone, Debug)]
pub struct VariableUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
    k: u32,
}

impl PartialEq for VariableUniverse {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.names == other.names
    }
}

impl Eq for VariableUniverse {}

impl VariableUniverse {
    pub fn new(names: Vec<String>, k: u32) -> Result<Self, LllError> {
        if k == 0 {
            return Err(LllError::InvalidAlphabet);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(LllError::DuplicateVariable(n.clone()));
            }
        }
        Ok(VariableUniverse { names, index, k })
    }

    /// Variables named `v0, v1, ...`.
    pub fn anonymous(size: usize, k: u32) -> Result<Self, LllError> {
        Self::new((0..size).map(|i| format!("v{i}")).collect(), k)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

/// A total map from variables to `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<u32>,
    k: u32,
}

impl Assignment {
    pub fn new(values: Vec<u32>, k: u32) -> Result<Self, LllError> {
        if k == 0 {
            return Err(LllError::InvalidAlphabet);
        }
        if let Some(x) = values.iter().find(|&&x| x >= k) {
            return Err(LllError::InvalidAssignment(format!("symbol {x} outside alphabet of size {k}")));
        }
        Ok(Assignment { values, k })
    }

    pub fn constant(len: usize, value: u32, k: u32) -> Result<Self, LllError> {
        Self::new(vec![value; len], k)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn get(&self, v: usize) -> u32 {
        self.values[v]
    }

    pub fn set(&mut self, v: usize, value: u32) {
        assert!(value < self.k, "symbol {value} outside alphabet of size {}", self.k);
        self.values[v] = value;
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Flat `name -> symbol` map, keyed by the universe's variable names.
    pub fn to_named(&self, universe: &VariableUniverse) -> BTreeMap<String, u32> {
        universe.names().iter().cloned().zip(self.values.iter().copied()).collect()
    }

    pub fn from_named(universe: &VariableUniverse, map: &BTreeMap<String, u32>) -> Result<Self, LllError> {
        let mut values = vec![None; universe.len()];
        for (name, &x) in map {
            let i = universe.lookup(name).ok_or_else(|| LllError::UnknownVariable(name.clone()))?;
            values[i] = Some(x);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| {
                    LllError::InvalidAssignment(format!("no value for {}", universe.name(i)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Assignment::new(values, universe.k())
    }
}

/// A collection of bad events over one universe, with `p` and `d`
/// precomputed.
#[derive(Clone, Debug)]
pub struct Instance {
    universe: VariableUniverse,
    events: Vec<BadEvent>,
    neighbors: Vec<Vec<usize>>,
    max_probability: BigRational,
    max_degree: usize,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.events == other.events
    }
}

impl Eq for Instance {}

impl Instance {
    pub fn new(universe: VariableUniverse, events: Vec<BadEvent>) -> Result<Self, LllError> {
        let size = universe.len();
        let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); size];
        for (i, ev) in events.iter().enumerate() {
            if ev.alphabet() != universe.k() {
                return Err(LllError::AlphabetMismatch { event: ev.alphabet(), instance: universe.k() });
            }
            for &v in ev.domain() {
                if v >= size {
                    return Err(LllError::VariableOutOfRange { index: v, size });
                }
                incidence[v].push(i);
            }
        }
        let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); events.len()];
        // last_seen[j] == i once j has been recorded as a neighbour of i
        let mut last_seen = vec![usize::MAX; events.len()];
        for (i, ev) in events.iter().enumerate() {
            last_seen[i] = i;
            let nb = &mut neighbors[i];
            for &v in ev.domain() {
                for &j in &incidence[v] {
                    if last_seen[j] != i {
                        last_seen[j] = i;
                        nb.push(j);
                    }
                }
            }
            nb.sort_unstable();
        }
        let max_probability =
            events.iter().map(BadEvent::probability).max().unwrap_or_else(BigRational::zero);
        let max_degree = neighbors.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Instance { universe, events, neighbors, max_probability, max_degree })
    }

    pub fn universe(&self) -> &VariableUniverse {
        &self.universe
    }

    pub fn k(&self) -> u32 {
        self.universe.k()
    }

    pub fn events(&self) -> &[BadEvent] {
        &self.events
    }

    pub fn event(&self, i: usize) -> Result<&BadEvent, LllError> {
        self.events.get(i).ok_or(LllError::BadIndex(i))
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Indices of the other events whose domains meet the domain of event `i`.
    pub fn neighborhood(&self, i: usize) -> Result<&[usize], LllError> {
        self.neighbors.get(i).map(Vec::as_slice).ok_or(LllError::BadIndex(i))
    }

    pub fn degree(&self, i: usize) -> Result<usize, LllError> {
        self.neighborhood(i).map(<[usize]>::len)
    }

    /// `p(B)`: the largest event probability (0 for an empty instance).
    pub fn max_probability(&self) -> &BigRational {
        &self.max_probability
    }

    /// `d(B)`: the largest degree (0 for an empty instance).
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `p · (d + 1)`.
    pub fn lll_product(&self) -> BigRational {
        &self.max_probability * BigRational::from_integer((self.max_degree + 1).into())
    }

    /// Certified evaluation of `e · p · (d + 1) < 1`.
    pub fn correctness(&self) -> Verdict {
        certify::e_times(&self.lll_product())
    }

    /// Indices of the events `f` fails to avoid, ascending. Empty iff `f` is
    /// a solution.
    pub fn verify_solution(&self, f: &Assignment) -> Vec<usize> {
        assert_eq!(f.len(), self.universe.len(), "assignment is not total on the universe");
        self.events
            .iter()
            .enumerate()
            .filter(|(_, ev)| !ev.avoided_by(f))
            .map(|(i, _)| i)
            .collect()
    }
}
