//! JSON instance and assignment files.
//!
//! ```json
//! {
//!   "k": 2,
//!   "variables": ["a", "b", "c"],
//!   "events": [
//!     {"domain": ["a", "b"], "forbidden": [[1, 1]]},
//!     {"domain": ["b", "c"], "generator": {"kind": "block_pattern", "pattern": [0]}}
//!   ]
//! }
//! ```
//!
//! Explicit events list their forbidden maps; implicit events name their
//! generator and its parameters. Assignments are flat `name -> symbol`
//! objects with keys in sorted order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Assignment, BadEvent, EventBody, ImplicitRule, Instance, LllError, VariableUniverse};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub k: u32,
    pub variables: Vec<String>,
    pub events: Vec<EventFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EventFile {
    Explicit { domain: Vec<String>, forbidden: Vec<Vec<u32>> },
    Generated { domain: Vec<String>, generator: Generator },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Generator {
    BlockPattern { pattern: Vec<u32> },
}

pub type AssignmentFile = BTreeMap<String, u32>;

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let u = inst.universe();
        let names = |dom: &[usize]| dom.iter().map(|&v| u.name(v).to_string()).collect::<Vec<_>>();
        let events = inst
            .events()
            .iter()
            .map(|ev| match ev.body() {
                EventBody::Explicit(list) => {
                    EventFile::Explicit { domain: names(ev.domain()), forbidden: list.clone() }
                }
                EventBody::Implicit { rule: ImplicitRule::BlockPattern { pattern }, .. } => {
                    EventFile::Generated {
                        domain: names(ev.domain()),
                        generator: Generator::BlockPattern { pattern: pattern.clone() },
                    }
                }
            })
            .collect();
        InstanceFile { k: u.k(), variables: u.names().to_vec(), events }
    }

    pub fn to_instance(&self) -> Result<Instance, LllError> {
        let universe = VariableUniverse::new(self.variables.clone(), self.k)?;
        let resolve = |dom: &[String]| {
            dom.iter()
                .map(|n| universe.lookup(n).ok_or_else(|| LllError::UnknownVariable(n.clone())))
                .collect::<Result<Vec<_>, _>>()
        };
        let events = self
            .events
            .iter()
            .map(|ev| match ev {
                EventFile::Explicit { domain, forbidden } => {
                    BadEvent::explicit(resolve(domain)?, forbidden.clone(), self.k)
                }
                EventFile::Generated { domain, generator: Generator::BlockPattern { pattern } } => {
                    BadEvent::block_pattern(resolve(domain)?, pattern.clone(), self.k)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Instance::new(universe, events)
    }
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("instance serializes")
}

pub fn instance_from_json(text: &str) -> Result<Instance, LllError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| LllError::Format(e.to_string()))?;
    file.to_instance()
}

pub fn assignment_to_json(universe: &VariableUniverse, f: &Assignment) -> String {
    serde_json::to_string_pretty(&f.to_named(universe)).expect("assignment serializes")
}

pub fn assignment_from_json(universe: &VariableUniverse, text: &str) -> Result<Assignment, LllError> {
    let map: AssignmentFile = serde_json::from_str(text).map_err(|e| LllError::Format(e.to_string()))?;
    Assignment::from_named(universe, &map)
}
