mod common;

use std::collections::HashSet;

use lll_shift::separated::{
    collision_graph, greedy_independent_set, is_separated, left_separated_subset, right_separated_subset,
    CollisionGraph, Side,
};
use lll_shift::{ElementSet, GroupContext, GroupElement};
use proptest::prelude::*;

use common::{int, symmetric_group};

fn graph_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=15).prop_flat_map(|n| {
        let edges = prop::collection::vec((0..n, 0..n), 0..40)
            .prop_map(|es| es.into_iter().filter(|(a, b)| a != b).collect::<Vec<_>>());
        (Just(n), edges)
    })
}

fn max_independent_set(n: usize, adjacent: &[Vec<bool>]) -> usize {
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|a| mask >> a & 1 == 0 || (a + 1..n).all(|b| mask >> b & 1 == 0 || !adjacent[a][b]))
        })
        .map(u32::count_ones)
        .max()
        .unwrap() as usize
}

fn groups() -> Vec<(GroupContext, u64, u64)> {
    vec![
        (GroupContext::lattice(1).unwrap(), 25, 4),
        (GroupContext::lattice(2).unwrap(), 4, 2),
        (GroupContext::cyclic(vec![30]).unwrap(), 0, 0),
        (GroupContext::free(2).unwrap(), 3, 1),
        (symmetric_group(4), 0, 0),
    ]
}

fn pick(pool: &ElementSet, idx: &[usize]) -> ElementSet {
    idx.iter().map(|&i| pool.as_slice()[i % pool.len()].clone()).collect()
}

fn translates_disjoint(ctx: &GroupContext, l: &ElementSet, d: &ElementSet, side: Side) -> bool {
    let mut seen = HashSet::new();
    l.iter().all(|x| {
        d.iter().all(|delta| {
            let y = match side {
                Side::Left => ctx.multiply(delta, x).unwrap(),
                Side::Right => ctx.multiply(x, delta).unwrap(),
            };
            seen.insert(y)
        })
    })
}

proptest! {
    #[test]
    fn greedy_against_exhaustive_oracle((n, edges) in graph_strategy()) {
        let vertices: ElementSet = (0..n as i64).map(int).collect();
        let g = CollisionGraph::from_edges(vertices.clone(), edges.iter().copied());
        let mut adjacent = vec![vec![false; n]; n];
        for &(a, b) in &edges {
            adjacent[a][b] = true;
            adjacent[b][a] = true;
        }
        let chosen: Vec<usize> = greedy_independent_set(&g).iter().map(|e| vertices.position(e).unwrap()).collect();
        for (i, &a) in chosen.iter().enumerate() {
            for &b in &chosen[i + 1..] {
                prop_assert!(!adjacent[a][b]);
            }
        }
        // maximal
        for (v, row) in adjacent.iter().enumerate() {
            prop_assert!(chosen.contains(&v) || chosen.iter().any(|&c| row[c]));
        }
        let max_degree = adjacent.iter().map(|row| row.iter().filter(|&&x| x).count()).max().unwrap();
        prop_assert_eq!(g.max_degree(), max_degree);
        prop_assert!(chosen.len() * (max_degree + 1) >= n);
        prop_assert!(chosen.len() <= max_independent_set(n, &adjacent));
    }

    #[test]
    fn separated_subsets_meet_the_bound(
        which in 0usize..5,
        f_idx in prop::collection::vec(any::<usize>(), 1..30),
        d_idx in prop::collection::vec(any::<usize>(), 1..4),
    ) {
        let (ctx, f_radius, d_radius) = &groups()[which];
        let f = pick(&ctx.ball(*f_radius), &f_idx);
        let d = pick(&ctx.ball(*d_radius), &d_idx);
        for side in [Side::Left, Side::Right] {
            let l = match side {
                Side::Left => left_separated_subset(ctx, &f, &d).unwrap(),
                Side::Right => right_separated_subset(ctx, &f, &d).unwrap(),
            };
            prop_assert!(l.is_subset(&f));
            prop_assert!(translates_disjoint(ctx, &l, &d, side));
            prop_assert!(is_separated(ctx, &l, &d, side).unwrap());
            prop_assert!(l.len() * d.len() * d.len() >= f.len());
        }
    }

    #[test]
    fn collision_graph_matches_pairwise_intersections(
        which in 0usize..5,
        f_idx in prop::collection::vec(any::<usize>(), 1..15),
        d_idx in prop::collection::vec(any::<usize>(), 1..4),
    ) {
        let (ctx, f_radius, d_radius) = &groups()[which];
        let f = pick(&ctx.ball(*f_radius), &f_idx);
        let d = pick(&ctx.ball(*d_radius), &d_idx);
        for side in [Side::Left, Side::Right] {
            let g = collision_graph(ctx, &f, &d, side).unwrap();
            let translate = |x: &GroupElement| match side {
                Side::Left => ctx.translate_right(&d, x).unwrap(),
                Side::Right => ctx.translate_left(x, &d).unwrap(),
            };
            let mut edges = 0;
            for (i, a) in f.iter().enumerate() {
                for (j, b) in f.iter().enumerate().skip(i + 1) {
                    let collide = !translate(a).is_disjoint(&translate(b));
                    prop_assert_eq!(g.is_adjacent(i, j), collide);
                    edges += collide as usize;
                }
            }
            prop_assert_eq!(g.edge_count(), edges);
        }
    }
}

#[test]
fn left_and_right_differ_in_nonabelian_groups() {
    let ctx = symmetric_group(3);
    let all = ctx.elements().unwrap();
    let differ = all.iter().any(|a| {
        all.iter().any(|b| {
            let pair: ElementSet = [a.clone(), b.clone()].into_iter().collect();
            all.iter().any(|c| {
                let d: ElementSet = [ctx.identity(), c.clone()].into_iter().collect();
                pair.len() == 2
                    && is_separated(&ctx, &pair, &d, Side::Left).unwrap()
                        != is_separated(&ctx, &pair, &d, Side::Right).unwrap()
            })
        })
    });
    assert!(differ);
}

#[test]
fn empty_inputs_are_errors() {
    let ctx = GroupContext::lattice(1).unwrap();
    let some: ElementSet = [int(0)].into_iter().collect();
    assert!(left_separated_subset(&ctx, &ElementSet::new(), &some).is_err());
    assert!(left_separated_subset(&ctx, &some, &ElementSet::new()).is_err());
}
