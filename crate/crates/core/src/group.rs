//! Exact arithmetic for the supported group families.
//!
//! Four families are available: integer lattices `Z^d`, finite products of
//! cyclic groups `Z_m1 x ... x Z_mr`, free groups of finite rank, and
//! arbitrary finite groups given by a multiplication table. Elements are
//! always kept in canonical form (reduced residues, freely reduced words), so
//! structural equality is group equality and [`ElementSet`] can deduplicate
//! by sorting.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element {element} is not a canonical element of {context}")]
    Mismatch { element: String, context: String },
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("cannot decode a group element from {0}")]
    Decode(String),
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
}

/// A group element in the representation of its family.
///
/// `Vector` serves both lattices (arbitrary integers) and cyclic products
/// (residues in `[0, m_i)`). `Word` is a freely reduced word over signed
/// generator indices: `[1, -2]` is `g1 g2^-1`. `Index` is a row of a
/// multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Vector(Vec<i64>),
    Word(Vec<i32>),
    Index(usize),
}

impl GroupElement {
    fn rank(&self) -> u8 {
        match self {
            GroupElement::Vector(_) => 0,
            GroupElement::Word(_) => 1,
            GroupElement::Index(_) => 2,
        }
    }
}

// Vectors compare lexicographically, words by shortlex, indices numerically.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupElement::Vector(a), GroupElement::Vector(b)) => a.cmp(b),
            (GroupElement::Word(a), GroupElement::Word(b)) => {
                a.len().cmp(&b.len()).then_with(|| a.cmp(b))
            }
            (GroupElement::Index(a), GroupElement::Index(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Vector(v) => write!(f, "{}", serde_json::to_string(v).unwrap()),
            GroupElement::Word(w) => write!(f, "{}", serde_json::to_string(w).unwrap()),
            GroupElement::Index(i) => write!(f, "{i}"),
        }
    }
}

/// A finite, duplicate-free, canonically sorted set of group elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(Vec<GroupElement>);

impl ElementSet {
    pub fn new() -> Self {
        ElementSet(Vec::new())
    }

    pub fn singleton(e: GroupElement) -> Self {
        ElementSet(vec![e])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[GroupElement] {
        &self.0
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.0.binary_search(e).is_ok()
    }

    /// Position of `e` in canonical order.
    pub fn position(&self, e: &GroupElement) -> Option<usize> {
        self.0.binary_search(e).ok()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.iter().all(|e| other.contains(e))
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().all(|e| !large.contains(e))
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.iter().chain(other.iter()).cloned().collect()
    }
}

impl FromIterator<GroupElement> for ElementSet {
    fn from_iter<I: IntoIterator<Item = GroupElement>>(iter: I) -> Self {
        let mut v: Vec<GroupElement> = iter.into_iter().collect();
        v.sort();
        v.dedup();
        ElementSet(v)
    }
}

impl IntoIterator for ElementSet {
    type Item = GroupElement;
    type IntoIter = std::vec::IntoIter<GroupElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a GroupElement;
    type IntoIter = std::slice::Iter<'a, GroupElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Serialized form of a group, as it appears in configuration files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GroupSpec {
    Lattice { dim: usize },
    Cyclic { moduli: Vec<u64> },
    Free { rank: usize },
    Table { mul: Vec<Vec<usize>>, identity: usize },
}

/// A finite group given by its Cayley table. Validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteTable {
    pub fn new(mul: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        let n = mul.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if identity >= n {
            return Err(GroupError::NotAGroup(format!("identity {identity} out of range")));
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::NotAGroup(format!("entry {x} in row {a} out of range")));
            }
        }
        for (a, row) in mul.iter().enumerate() {
            if mul[identity][a] != a || row[identity] != a {
                return Err(GroupError::NotAGroup(format!(
                    "{identity} is not a two-sided identity (fails at {a})"
                )));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == identity) {
                Some(b) if mul[b][a] == identity => inv[a] = b,
                _ => return Err(GroupError::NotAGroup(format!("{a} has no two-sided inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteTable { mul, inv, identity })
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Family {
    Lattice { dim: usize },
    Cyclic { moduli: Vec<u64> },
    Free { rank: usize },
    Table(FiniteTable),
}

/// A concrete group together with its element arithmetic.
///
/// Immutable after construction; every operation is a pure function of its
/// arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupContext {
    family: Family,
}

impl GroupContext {
    pub fn lattice(dim: usize) -> Result<Self, GroupError> {
        if dim == 0 {
            return Err(GroupError::InvalidSpec("lattice dimension must be at least 1".into()));
        }
        Ok(GroupContext { family: Family::Lattice { dim } })
    }

    pub fn cyclic(moduli: Vec<u64>) -> Result<Self, GroupError> {
        if moduli.is_empty() {
            return Err(GroupError::InvalidSpec("cyclic product needs at least one modulus".into()));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 2 || m > i64::MAX as u64) {
            return Err(GroupError::InvalidSpec(format!("modulus {m} out of range (need m >= 2)")));
        }
        Ok(GroupContext { family: Family::Cyclic { moduli } })
    }

    pub fn free(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 || rank > i32::MAX as usize {
            return Err(GroupError::InvalidSpec("free group rank must be at least 1".into()));
        }
        Ok(GroupContext { family: Family::Free { rank } })
    }

    pub fn table(mul: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        Ok(GroupContext { family: Family::Table(FiniteTable::new(mul, identity)?) })
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self, GroupError> {
        match spec {
            GroupSpec::Lattice { dim } => Self::lattice(*dim),
            GroupSpec::Cyclic { moduli } => Self::cyclic(moduli.clone()),
            GroupSpec::Free { rank } => Self::free(*rank),
            GroupSpec::Table { mul, identity } => Self::table(mul.clone(), *identity),
        }
    }

    pub fn spec(&self) -> GroupSpec {
        match &self.family {
            Family::Lattice { dim } => GroupSpec::Lattice { dim: *dim },
            Family::Cyclic { moduli } => GroupSpec::Cyclic { moduli: moduli.clone() },
            Family::Free { rank } => GroupSpec::Free { rank: *rank },
            Family::Table(t) => GroupSpec::Table { mul: t.mul.clone(), identity: t.identity },
        }
    }

    /// Number of elements, or `None` for infinite groups.
    pub fn order(&self) -> Option<u128> {
        match &self.family {
            Family::Lattice { .. } | Family::Free { .. } => None,
            Family::Cyclic { moduli } => {
                moduli.iter().try_fold(1u128, |acc, &m| acc.checked_mul(m as u128))
            }
            Family::Table(t) => Some(t.order() as u128),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.family, Family::Cyclic { .. } | Family::Table(_))
    }

    pub fn identity(&self) -> GroupElement {
        match &self.family {
            Family::Lattice { dim } => GroupElement::Vector(vec![0; *dim]),
            Family::Cyclic { moduli } => GroupElement::Vector(vec![0; moduli.len()]),
            Family::Free { .. } => GroupElement::Word(Vec::new()),
            Family::Table(t) => GroupElement::Index(t.identity),
        }
    }

    fn mismatch(&self, e: &GroupElement) -> GroupError {
        GroupError::Mismatch { element: e.to_string(), context: self.describe() }
    }

    /// Short human-readable name of the group, e.g. `Z^2` or `Z_6 x Z_4`.
    pub fn describe(&self) -> String {
        match &self.family {
            Family::Lattice { dim: 1 } => "Z".into(),
            Family::Lattice { dim } => format!("Z^{dim}"),
            Family::Cyclic { moduli } => {
                moduli.iter().map(|m| format!("Z_{m}")).collect::<Vec<_>>().join(" x ")
            }
            Family::Free { rank } => format!("F_{rank}"),
            Family::Table(t) => format!("table group of order {}", t.order()),
        }
    }

    /// Checks that `e` is a canonical element of this group.
    pub fn check(&self, e: &GroupElement) -> Result<(), GroupError> {
        let ok = match (&self.family, e) {
            (Family::Lattice { dim }, GroupElement::Vector(v)) => v.len() == *dim,
            (Family::Cyclic { moduli }, GroupElement::Vector(v)) => {
                v.len() == moduli.len()
                    && v.iter().zip(moduli).all(|(&x, &m)| x >= 0 && (x as u64) < m)
            }
            (Family::Free { rank }, GroupElement::Word(w)) => {
                w.iter().all(|&g| g != 0 && g.unsigned_abs() as usize <= *rank)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (Family::Table(t), GroupElement::Index(i)) => *i < t.order(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mismatch(e))
        }
    }

    /// Brings a representative into canonical form (residues reduced, words
    /// freely reduced). Canonical inputs are returned unchanged.
    pub fn canonicalize(&self, e: &GroupElement) -> Result<GroupElement, GroupError> {
        match (&self.family, e) {
            (Family::Cyclic { moduli }, GroupElement::Vector(v)) if v.len() == moduli.len() => {
                Ok(GroupElement::Vector(
                    v.iter().zip(moduli).map(|(&x, &m)| x.rem_euclid(m as i64)).collect(),
                ))
            }
            (Family::Free { rank }, GroupElement::Word(w)) => {
                if w.iter().any(|&g| g == 0 || g.unsigned_abs() as usize > *rank) {
                    return Err(self.mismatch(e));
                }
                Ok(GroupElement::Word(reduce_word(w.iter().copied())))
            }
            _ => {
                self.check(e)?;
                Ok(e.clone())
            }
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (&self.family, a, b) {
            (Family::Lattice { .. }, GroupElement::Vector(x), GroupElement::Vector(y)) => {
                let v = x
                    .iter()
                    .zip(y)
                    .map(|(p, q)| p.checked_add(*q).ok_or(GroupError::Overflow))
                    .collect::<Result<Vec<_>, _>>()?;
                GroupElement::Vector(v)
            }
            (Family::Cyclic { moduli }, GroupElement::Vector(x), GroupElement::Vector(y)) => {
                GroupElement::Vector(
                    x.iter()
                        .zip(y)
                        .zip(moduli)
                        .map(|((p, q), &m)| ((*p as i128 + *q as i128) % m as i128) as i64)
                        .collect(),
                )
            }
            (Family::Free { .. }, GroupElement::Word(x), GroupElement::Word(y)) => {
                GroupElement::Word(reduce_word(x.iter().chain(y).copied()))
            }
            (Family::Table(t), GroupElement::Index(i), GroupElement::Index(j)) => {
                GroupElement::Index(t.mul(*i, *j))
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(match (&self.family, a) {
            (Family::Lattice { .. }, GroupElement::Vector(x)) => GroupElement::Vector(
                x.iter()
                    .map(|p| p.checked_neg().ok_or(GroupError::Overflow))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            (Family::Cyclic { moduli }, GroupElement::Vector(x)) => GroupElement::Vector(
                x.iter().zip(moduli).map(|(&p, &m)| (m as i64 - p) % m as i64).collect(),
            ),
            (Family::Free { .. }, GroupElement::Word(w)) => {
                GroupElement::Word(w.iter().rev().map(|g| -g).collect())
            }
            (Family::Table(t), GroupElement::Index(i)) => GroupElement::Index(t.inv(*i)),
            _ => unreachable!("checked above"),
        })
    }

    /// `{ab : a in A, b in B}`.
    pub fn set_product(&self, a: &ElementSet, b: &ElementSet) -> Result<ElementSet, GroupError> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(self.multiply(x, y)?);
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn set_inverse(&self, a: &ElementSet) -> Result<ElementSet, GroupError> {
        a.iter().map(|x| self.inverse(x)).collect()
    }

    /// Right translate `A g`.
    pub fn translate_right(&self, a: &ElementSet, g: &GroupElement) -> Result<ElementSet, GroupError> {
        a.iter().map(|x| self.multiply(x, g)).collect()
    }

    /// Left translate `g A`.
    pub fn translate_left(&self, g: &GroupElement, a: &ElementSet) -> Result<ElementSet, GroupError> {
        a.iter().map(|x| self.multiply(g, x)).collect()
    }

    /// Length of an element with respect to the standard generators: the
    /// sup-norm on lattices, the word length in free groups. Finite families
    /// report 0, since their balls are the whole group.
    pub fn length(&self, e: &GroupElement) -> Result<u64, GroupError> {
        self.check(e)?;
        Ok(match e {
            GroupElement::Vector(v) if matches!(self.family, Family::Lattice { .. }) => {
                v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
            }
            GroupElement::Word(w) => w.len() as u64,
            _ => 0,
        })
    }

    /// All elements of a finite group, in canonical order.
    pub fn elements(&self) -> Option<ElementSet> {
        match &self.family {
            Family::Cyclic { moduli } => {
                let mut out = vec![Vec::new()];
                for &m in moduli {
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<i64>| {
                            (0..m as i64).map(move |x| {
                                let mut v = prefix.clone();
                                v.push(x);
                                v
                            })
                        })
                        .collect();
                }
                Some(out.into_iter().map(GroupElement::Vector).collect())
            }
            Family::Table(t) => Some((0..t.order()).map(GroupElement::Index).collect()),
            _ => None,
        }
    }

    /// The closed ball of the given radius around the identity: sup-norm
    /// cube on lattices, word-length ball on free groups, and the whole group
    /// for finite families regardless of radius.
    pub fn ball(&self, radius: u64) -> ElementSet {
        match &self.family {
            Family::Lattice { dim } => {
                let r = radius as i64;
                let mut out = vec![Vec::new()];
                for _ in 0..*dim {
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<i64>| {
                            (-r..=r).map(move |x| {
                                let mut v = prefix.clone();
                                v.push(x);
                                v
                            })
                        })
                        .collect();
                }
                out.into_iter().map(GroupElement::Vector).collect()
            }
            Family::Free { rank } => {
                let gens: Vec<i32> =
                    (1..=*rank as i32).flat_map(|g| [g, -g]).collect();
                let mut all = vec![Vec::<i32>::new()];
                let mut frontier = vec![Vec::<i32>::new()];
                for _ in 0..radius {
                    let mut next = Vec::new();
                    for w in &frontier {
                        for &g in &gens {
                            if w.last() == Some(&-g) {
                                continue;
                            }
                            let mut v = w.clone();
                            v.push(g);
                            next.push(v);
                        }
                    }
                    all.extend(next.iter().cloned());
                    frontier = next;
                }
                all.into_iter().map(GroupElement::Word).collect()
            }
            _ => self.elements().expect("finite family"),
        }
    }

    /// JSON encoding: integer array for lattice/cyclic elements, signed
    /// generator array for free-group words, plain index for table elements.
    pub fn encode(&self, e: &GroupElement) -> Value {
        match e {
            GroupElement::Vector(v) => Value::from(v.clone()),
            GroupElement::Word(w) => Value::from(w.clone()),
            GroupElement::Index(i) => Value::from(*i),
        }
    }

    /// Decodes and canonicalizes an element. For one-coordinate groups
    /// (`Z`, `Z_m`) a bare integer is accepted in place of a one-element
    /// array.
    pub fn decode(&self, v: &Value) -> Result<GroupElement, GroupError> {
        let bad = || GroupError::Decode(v.to_string());
        let ints = |v: &Value| -> Result<Vec<i64>, GroupError> {
            match v {
                Value::Array(xs) => xs.iter().map(|x| x.as_i64().ok_or_else(bad)).collect(),
                Value::Number(n) => Ok(vec![n.as_i64().ok_or_else(bad)?]),
                _ => Err(bad()),
            }
        };
        let raw = match &self.family {
            Family::Lattice { .. } | Family::Cyclic { .. } => GroupElement::Vector(ints(v)?),
            Family::Free { .. } => match v {
                Value::Array(_) => GroupElement::Word(
                    ints(v)?
                        .into_iter()
                        .map(|g| i32::try_from(g).map_err(|_| bad()))
                        .collect::<Result<_, _>>()?,
                ),
                _ => return Err(bad()),
            },
            Family::Table(_) => {
                GroupElement::Index(v.as_u64().ok_or_else(bad)? as usize)
            }
        };
        self.canonicalize(&raw).map_err(|_| bad())
    }

    pub fn decode_set(&self, v: &Value) -> Result<ElementSet, GroupError> {
        match v {
            Value::Array(xs) => xs.iter().map(|x| self.decode(x)).collect(),
            _ => Err(GroupError::Decode(v.to_string())),
        }
    }

    /// Stable variable name for an element: its compact JSON encoding.
    pub fn name(&self, e: &GroupElement) -> String {
        self.encode(e).to_string()
    }

    /// Inverse of [`GroupContext::name`].
    pub fn from_name(&self, name: &str) -> Result<GroupElement, GroupError> {
        let v: Value =
            serde_json::from_str(name).map_err(|_| GroupError::Decode(name.to_string()))?;
        self.decode(&v)
    }

    /// Lookup table from elements to their position in `set`.
    pub fn index_of(set: &ElementSet) -> HashMap<GroupElement, usize> {
        set.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()
    }
}

fn reduce_word(letters: impl Iterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for g in letters {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> GroupElement {
        GroupElement::Vector(xs.to_vec())
    }

    fn w(xs: &[i32]) -> GroupElement {
        GroupElement::Word(xs.to_vec())
    }

    fn set(xs: &[i64]) -> ElementSet {
        xs.iter().map(|&x| v(&[x])).collect()
    }

    fn mod_set(ctx: &GroupContext, xs: &[i64]) -> ElementSet {
        xs.iter().map(|&x| ctx.canonicalize(&v(&[x])).unwrap()).collect()
    }

    #[test]
    fn identities() {
        assert_eq!(GroupContext::lattice(2).unwrap().identity(), v(&[0, 0]));
        assert_eq!(GroupContext::free(2).unwrap().identity(), w(&[]));
        assert_eq!(GroupContext::cyclic(vec![6]).unwrap().identity(), v(&[0]));
    }

    #[test]
    fn multiply_examples() {
        let z2 = GroupContext::lattice(2).unwrap();
        assert_eq!(z2.multiply(&v(&[1, 2]), &v(&[3, -1])).unwrap(), v(&[4, 1]));
        let f2 = GroupContext::free(2).unwrap();
        assert_eq!(f2.multiply(&w(&[1]), &w(&[-1])).unwrap(), w(&[]));
        assert_eq!(f2.multiply(&w(&[1, 2]), &w(&[-2, 1])).unwrap(), w(&[1, 1]));
        let z6 = GroupContext::cyclic(vec![6]).unwrap();
        assert_eq!(z6.multiply(&v(&[4]), &v(&[5])).unwrap(), v(&[3]));
    }

    #[test]
    fn inverse_examples() {
        let z2 = GroupContext::lattice(2).unwrap();
        assert_eq!(z2.inverse(&v(&[2, -3])).unwrap(), v(&[-2, 3]));
        let z6 = GroupContext::cyclic(vec![6]).unwrap();
        assert_eq!(z6.inverse(&v(&[4])).unwrap(), v(&[2]));
        assert_eq!(z6.inverse(&v(&[0])).unwrap(), v(&[0]));
        let f2 = GroupContext::free(2).unwrap();
        assert_eq!(f2.inverse(&w(&[1, 2])).unwrap(), w(&[-2, -1]));
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let z6 = GroupContext::cyclic(vec![6]).unwrap();
        assert!(z6.multiply(&v(&[6]), &v(&[0])).is_err());
        assert!(z6.multiply(&w(&[1]), &v(&[0])).is_err());
        let f2 = GroupContext::free(2).unwrap();
        assert!(f2.inverse(&w(&[1, -1])).is_err());
        assert!(f2.inverse(&w(&[3])).is_err());
        let z2 = GroupContext::lattice(2).unwrap();
        assert!(z2.inverse(&v(&[1])).is_err());
    }

    #[test]
    fn set_product_examples() {
        let z = GroupContext::lattice(1).unwrap();
        let b = set(&[0, 3]);
        assert_eq!(z.set_product(&ElementSet::singleton(z.identity()), &b).unwrap(), b);
        assert_eq!(z.set_product(&set(&[0, 1]), &set(&[0, 3])).unwrap(), set(&[0, 1, 3, 4]));
        let z4 = GroupContext::cyclic(vec![4]).unwrap();
        let a = set(&[0, 2]);
        assert_eq!(z4.set_product(&a, &a).unwrap(), a);
    }

    #[test]
    fn set_inverse_examples() {
        let z = GroupContext::lattice(1).unwrap();
        let e = ElementSet::singleton(z.identity());
        assert_eq!(z.set_inverse(&e).unwrap(), e);
        assert_eq!(z.set_inverse(&set(&[1, 2])).unwrap(), set(&[-1, -2]));
        let z6 = GroupContext::cyclic(vec![6]).unwrap();
        assert_eq!(z6.set_inverse(&set(&[1, 2])).unwrap(), mod_set(&z6, &[5, 4]));
    }

    #[test]
    fn ball_examples() {
        let z = GroupContext::lattice(1).unwrap();
        assert_eq!(z.ball(2), set(&[-2, -1, 0, 1, 2]));
        let f2 = GroupContext::free(2).unwrap();
        let b1 = f2.ball(1);
        let expected: ElementSet =
            [w(&[]), w(&[1]), w(&[-1]), w(&[2]), w(&[-2])].into_iter().collect();
        assert_eq!(b1, expected);
        assert_eq!(f2.ball(2).len(), 17);
        let z6 = GroupContext::cyclic(vec![6]).unwrap();
        assert_eq!(z6.ball(0).len(), 6);
        assert_eq!(GroupContext::cyclic(vec![2, 3]).unwrap().ball(5).len(), 6);
    }

    #[test]
    fn table_validation_rejects_non_groups() {
        // not associative: a Latin square that is not a group
        let quasigroup = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 1]];
        assert!(GroupContext::table(quasigroup, 0).is_err());
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(GroupContext::table(z3.clone(), 1).is_err());
        assert!(GroupContext::table(z3.clone(), 0).is_ok());
        assert!(GroupContext::table(vec![vec![0, 1], vec![1]], 0).is_err());
        assert!(GroupContext::table(vec![vec![0, 5], vec![1, 0]], 0).is_err());
        // identity exists but 1 and 2 both map to 1 -> no inverse for 1
        assert!(GroupContext::table(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]], 0).is_err());
    }

    #[test]
    fn encode_decode() {
        let f2 = GroupContext::free(2).unwrap();
        let e = f2.decode(&serde_json::json!([1, -2])).unwrap();
        assert_eq!(e, w(&[1, -2]));
        assert_eq!(f2.decode(&serde_json::json!([1, 2, -2])).unwrap(), w(&[1]));
        assert_eq!(f2.name(&e), "[1,-2]");
        assert_eq!(f2.from_name("[1,-2]").unwrap(), e);
        assert!(f2.decode(&serde_json::json!([3])).is_err());
        let z6 = GroupContext::cyclic(vec![6]).unwrap();
        assert_eq!(z6.decode(&serde_json::json!(7)).unwrap(), v(&[1]));
        assert_eq!(z6.decode(&serde_json::json!([-1])).unwrap(), v(&[5]));
        let spec: GroupSpec =
            serde_json::from_str(r#"{"family": "cyclic", "moduli": [100]}"#).unwrap();
        assert_eq!(spec, GroupSpec::Cyclic { moduli: vec![100] });
        let spec: GroupSpec = serde_json::from_str(r#"{"family": "free", "rank": 2}"#).unwrap();
        assert_eq!(GroupContext::from_spec(&spec).unwrap().spec(), spec);
    }

    #[test]
    fn free_words_sort_shortlex() {
        let f2 = GroupContext::free(2).unwrap();
        let b = f2.ball(2);
        let lens: Vec<usize> = b
            .iter()
            .map(|e| match e {
                GroupElement::Word(w) => w.len(),
                _ => unreachable!(),
            })
            .collect();
        assert!(lens.windows(2).all(|p| p[0] <= p[1]));
    }
}
