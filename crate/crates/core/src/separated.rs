//! Separated subsets of groups via collision graphs and greedy independent
//! sets.
//!
//! A set `L` is left `D`-separated when the translates `D λ`, `λ ∈ L`, are
//! pairwise disjoint, and right `T`-separated when the translates `λ T` are.
//! Both are extracted from a finite `F` by building the graph on `F` whose
//! edges join elements with colliding translates and taking a greedy
//! independent set. Every vertex has at most `|D⁻¹D| - 1 ≤ |D|² - 1`
//! neighbours, which gives `|L| ≥ |F| / |D|²`.

use std::collections::HashMap;

use thiserror::Error;

use crate::group::{ElementSet, GroupContext, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparationError {
    #[error("translate set must be nonempty")]
    EmptyTranslates,
    #[error("input set must be nonempty")]
    EmptyInput,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Translates `D σ`.
    Left,
    /// Translates `σ T`.
    Right,
}

/// Graph on a finite element set whose edges join elements with
/// intersecting translates. Symmetric, irreflexive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionGraph {
    vertices: ElementSet,
    adjacency: Vec<Vec<usize>>,
    max_degree: usize,
}

impl CollisionGraph {
    /// Builds a graph from explicit edges over `vertices` (by position).
    /// Self-loops are dropped and edges are symmetrized.
    pub fn from_edges(vertices: ElementSet, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range");
            if a != b {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        CollisionGraph { vertices, adjacency, max_degree }
    }

    pub fn vertices(&self) -> &ElementSet {
        &self.vertices
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// Collision graph on `f`: on the left side `σ ~ σ'` iff `Dσ ∩ Dσ' ≠ ∅`,
/// on the right side iff `σD ∩ σ'D ≠ ∅`.
pub fn collision_graph(
    ctx: &GroupContext,
    f: &ElementSet,
    d: &ElementSet,
    side: Side,
) -> Result<CollisionGraph, SeparationError> {
    if d.is_empty() {
        return Err(SeparationError::EmptyTranslates);
    }
    // Bucket vertices by the elements their translates cover; vertices
    // sharing a bucket collide.
    let mut covers: HashMap<_, Vec<usize>> = HashMap::new();
    for (i, sigma) in f.iter().enumerate() {
        for delta in d {
            let x = match side {
                Side::Left => ctx.multiply(delta, sigma)?,
                Side::Right => ctx.multiply(sigma, delta)?,
            };
            covers.entry(x).or_default().push(i);
        }
    }
    let mut edges = Vec::new();
    for bucket in covers.values() {
        for (a, &i) in bucket.iter().enumerate() {
            for &j in &bucket[a + 1..] {
                edges.push((i, j));
            }
        }
    }
    Ok(CollisionGraph::from_edges(f.clone(), edges))
}

/// Greedy independent set: scan vertices in canonical order, keep a vertex
/// if none of its neighbours was kept. The result has at least
/// `⌈|V| / (maxDegree + 1)⌉` elements.
pub fn greedy_independent_set(g: &CollisionGraph) -> ElementSet {
    let n = g.vertices.len();
    let mut blocked = vec![false; n];
    let mut chosen = Vec::new();
    for v in 0..n {
        if blocked[v] {
            continue;
        }
        chosen.push(g.vertices.as_slice()[v].clone());
        blocked[v] = true;
        for &u in g.neighbors(v) {
            blocked[u] = true;
        }
    }
    chosen.into_iter().collect()
}

fn separated_subset(
    ctx: &GroupContext,
    f: &ElementSet,
    d: &ElementSet,
    side: Side,
) -> Result<ElementSet, SeparationError> {
    if f.is_empty() {
        return Err(SeparationError::EmptyInput);
    }
    let g = collision_graph(ctx, f, d, side)?;
    let l = greedy_independent_set(&g);
    debug_assert!(l.len() * d.len() * d.len() >= f.len());
    Ok(l)
}

/// A left `D`-separated subset `L ⊆ F` with `|L| ≥ |F| / |D|²`.
pub fn left_separated_subset(
    ctx: &GroupContext,
    f: &ElementSet,
    d: &ElementSet,
) -> Result<ElementSet, SeparationError> {
    separated_subset(ctx, f, d, Side::Left)
}

/// A right `T`-separated subset of `F` with `|L| ≥ |F| / |T|²`. This is the
/// finite counterpart of extracting an infinite right-separated set; only
/// finite `F` can be handled.
pub fn right_separated_subset(
    ctx: &GroupContext,
    f: &ElementSet,
    t: &ElementSet,
) -> Result<ElementSet, SeparationError> {
    separated_subset(ctx, f, t, Side::Right)
}

/// Exhaustive check that the translates of `l` (on the given side) are
/// pairwise disjoint.
pub fn is_separated(
    ctx: &GroupContext,
    l: &ElementSet,
    d: &ElementSet,
    side: Side,
) -> Result<bool, GroupError> {
    let translates = l
        .iter()
        .map(|x| match side {
            Side::Left => ctx.translate_right(d, x),
            Side::Right => ctx.translate_left(x, d),
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (i, a) in translates.iter().enumerate() {
        for b in &translates[i + 1..] {
            if !a.is_disjoint(b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
