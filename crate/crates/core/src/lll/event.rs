use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Assignment, LllError};

/// Largest number of maps an event may enumerate (`k^|domain|`).
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

/// Membership rules for events whose forbidden set is too large to list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ImplicitRule {
    /// The domain is split into consecutive blocks of `pattern.len()`
    /// variables. A map is forbidden iff it differs from `pattern`
    /// somewhere in every block.
    BlockPattern { pattern: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventBody {
    /// Forbidden maps on the domain, listed in domain order. Sorted, unique.
    Explicit(Vec<Vec<u32>>),
    /// A membership rule plus the exact number of maps it forbids.
    Implicit { rule: ImplicitRule, forbidden: BigUint },
}

/// A bad event: a finite domain of variables together with a set of
/// forbidden maps from that domain to `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadEvent {
    domain: Vec<usize>,
    alphabet: u32,
    body: EventBody,
}

fn check_domain(domain: &[usize]) -> Result<(), LllError> {
    let mut seen = HashSet::with_capacity(domain.len());
    for v in domain {
        if !seen.insert(v) {
            return Err(LllError::InvalidEvent(format!("variable {v} repeated in domain")));
        }
    }
    Ok(())
}

fn map_count(k: u32, len: usize) -> BigUint {
    BigUint::from(k).pow(len as u32)
}

impl BadEvent {
    /// An event given by its forbidden maps. The list must be nonempty;
    /// an event with empty domain may forbid only the empty map.
    pub fn explicit(domain: Vec<usize>, forbidden: Vec<Vec<u32>>, k: u32) -> Result<Self, LllError> {
        if k == 0 {
            return Err(LllError::InvalidAlphabet);
        }
        check_domain(&domain)?;
        if forbidden.is_empty() {
            return Err(LllError::InvalidEvent("explicit event forbids nothing".into()));
        }
        for phi in &forbidden {
            if phi.len() != domain.len() {
                return Err(LllError::InvalidEvent(format!(
                    "forbidden map has {} values for a domain of {}",
                    phi.len(),
                    domain.len()
                )));
            }
            if let Some(x) = phi.iter().find(|&&x| x >= k) {
                return Err(LllError::InvalidEvent(format!("symbol {x} outside alphabet of size {k}")));
            }
        }
        let mut sorted = forbidden;
        sorted.sort();
        let before = sorted.len();
        sorted.dedup();
        if sorted.len() != before {
            return Err(LllError::InvalidEvent("duplicate forbidden map".into()));
        }
        Ok(BadEvent { domain, alphabet: k, body: EventBody::Explicit(sorted) })
    }

    /// Implicit event forbidding every map that misses `pattern` in each
    /// block of the domain. Forbids exactly `(k^b - 1)^(|domain| / b)` maps
    /// where `b = |pattern|`.
    pub fn block_pattern(domain: Vec<usize>, pattern: Vec<u32>, k: u32) -> Result<Self, LllError> {
        if k == 0 {
            return Err(LllError::InvalidAlphabet);
        }
        check_domain(&domain)?;
        if pattern.is_empty() || !domain.len().is_multiple_of(pattern.len()) {
            return Err(LllError::InvalidEvent(format!(
                "domain of {} variables is not a union of blocks of {}",
                domain.len(),
                pattern.len()
            )));
        }
        if let Some(x) = pattern.iter().find(|&&x| x >= k) {
            return Err(LllError::InvalidEvent(format!("symbol {x} outside alphabet of size {k}")));
        }
        let blocks = domain.len() / pattern.len();
        let forbidden = (map_count(k, pattern.len()) - 1u32).pow(blocks as u32);
        Ok(BadEvent {
            domain,
            alphabet: k,
            body: EventBody::Implicit { rule: ImplicitRule::BlockPattern { pattern }, forbidden },
        })
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn body(&self) -> &EventBody {
        &self.body
    }

    pub fn forbidden_count(&self) -> BigUint {
        match &self.body {
            EventBody::Explicit(list) => BigUint::from(list.len()),
            EventBody::Implicit { forbidden, .. } => forbidden.clone(),
        }
    }

    /// `|B| / k^|dom(B)|`, exactly.
    pub fn probability(&self) -> BigRational {
        let num = self.forbidden_count();
        if num.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(num.into(), map_count(self.alphabet, self.domain.len()).into())
    }

    /// Whether the map given by `values` (aligned with the domain) is
    /// forbidden.
    pub fn is_forbidden(&self, values: &[u32]) -> bool {
        debug_assert_eq!(values.len(), self.domain.len());
        match &self.body {
            EventBody::Explicit(list) => list.binary_search_by(|phi| phi.as_slice().cmp(values)).is_ok(),
            EventBody::Implicit { rule: ImplicitRule::BlockPattern { pattern }, .. } => values
                .chunks(pattern.len())
                .all(|block| block != pattern.as_slice()),
        }
    }

    fn forbidden_with(&self, value_of: impl Fn(usize) -> u32) -> bool {
        match &self.body {
            EventBody::Explicit(list) => {
                let values: Vec<u32> = self.domain.iter().map(|&v| value_of(v)).collect();
                list.binary_search(&values).is_ok()
            }
            EventBody::Implicit { rule: ImplicitRule::BlockPattern { pattern }, .. } => {
                self.domain.chunks(pattern.len()).all(|block| {
                    block.iter().zip(pattern).any(|(&v, &want)| value_of(v) != want)
                })
            }
        }
    }

    /// True iff `f` extends none of the forbidden maps.
    pub fn avoided_by(&self, f: &Assignment) -> bool {
        !self.forbidden_with(|v| f.get(v))
    }

    pub(crate) fn violated_by_values(&self, values: &[u32]) -> bool {
        self.forbidden_with(|v| values[v])
    }

    fn enumerable(&self) -> bool {
        map_count(self.alphabet, self.domain.len()) <= BigUint::from(ENUMERATION_LIMIT)
    }

    /// Counts forbidden maps by running the membership test on every map of
    /// the domain. `None` when there are more than [`ENUMERATION_LIMIT`] maps.
    pub fn enumerate_forbidden_count(&self) -> Option<u64> {
        if !self.enumerable() {
            return None;
        }
        let mut count = 0;
        for_each_map(self.alphabet, self.domain.len(), |values| {
            if self.is_forbidden(values) {
                count += 1;
            }
        });
        Some(count)
    }

    /// The same event with its forbidden maps listed explicitly. Fails on
    /// domains with more than [`ENUMERATION_LIMIT`] maps.
    pub fn materialize(&self) -> Result<BadEvent, LllError> {
        if let EventBody::Explicit(_) = self.body {
            return Ok(self.clone());
        }
        if !self.enumerable() {
            return Err(LllError::TooLarge(format!(
                "{}^{} maps exceed the enumeration limit",
                self.alphabet,
                self.domain.len()
            )));
        }
        let mut list = Vec::new();
        for_each_map(self.alphabet, self.domain.len(), |values| {
            if self.is_forbidden(values) {
                list.push(values.to_vec());
            }
        });
        if list.is_empty() {
            return Err(LllError::InvalidEvent("event forbids nothing".into()));
        }
        BadEvent::explicit(self.domain.clone(), list, self.alphabet)
    }

    pub(crate) fn max_variable(&self) -> Option<usize> {
        self.domain.iter().copied().max()
    }
}

/// Calls `visit` on every map `0..len -> 0..k` in lexicographic order.
pub(crate) fn for_each_map(k: u32, len: usize, mut visit: impl FnMut(&[u32])) {
    let mut values = vec![0u32; len];
    loop {
        visit(&values);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < k {
                break;
            }
            values[i] = 0;
        }
    }
}
