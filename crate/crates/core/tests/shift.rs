mod common;

use lll_shift::lll::DEFAULT_MAX_RESAMPLES;
use lll_shift::shift::config::config_from_json;
use lll_shift::shift::{build_bad_event, build_instance, check_bounds, event_domain, select_l};
use lll_shift::{Assignment, ElementSet, GroupContext, GroupElement, Pattern, ShiftConfig, ShiftError, Verdict};
use num_bigint::BigUint;
use proptest::prelude::*;

use common::{dihedral_group, int};

fn solve_and_trap(cfg: ShiftConfig, seeds: u64) -> usize {
    let si = build_instance(cfg).unwrap();
    check_bounds(&si).unwrap();
    for seed in 0..seeds {
        let sol = si.solve(seed, DEFAULT_MAX_RESAMPLES).unwrap();
        let report = si.verify_trapping(&sol.assignment).unwrap();
        assert!(report.all_trapped());
        assert_eq!(report.trapped, si.config().core_window.len());
    }
    si.instance().len()
}

#[test]
fn integers_with_a_window() {
    let ctx = GroupContext::lattice(1).unwrap();
    let pattern = Pattern::new([(int(0), 1), (int(1), 0)], 2).unwrap();
    let f: ElementSet = (0..40).map(int).collect();
    let cfg = ShiftConfig::windowed(ctx, pattern, f, 10, None).unwrap();
    assert_eq!(solve_and_trap(cfg, 5), 21);
}

#[test]
fn plane_with_a_window() {
    let ctx = GroupContext::lattice(2).unwrap();
    let origin = GroupElement::Vector(vec![0, 0]);
    let pattern = Pattern::new([(origin, 1)], 2).unwrap();
    let f = ctx.ball(1);
    let cfg = ShiftConfig::windowed(ctx, pattern, f, 3, None).unwrap();
    assert_eq!(solve_and_trap(cfg, 5), 49);
}

#[test]
fn free_group_with_a_window() {
    let ctx = GroupContext::free(2).unwrap();
    let pattern = Pattern::new([(ctx.identity(), 0)], 2).unwrap();
    let f = ctx.ball(2);
    let cfg = ShiftConfig::windowed(ctx.clone(), pattern, f.clone(), 2, None).unwrap();
    assert_eq!(cfg.universe, ctx.ball(4));
    let si = build_instance(cfg).unwrap();
    assert_eq!(si.l(), &f);
    // 17 translates, so |L| = 17 >= l0 = 8 and the instance is correct
    let report = check_bounds(&si).unwrap();
    assert_eq!(report.l_meets_ell0, Some(true));
    assert_eq!(report.lll_verdict, Verdict::Correct);
    let sol = si.solve(11, DEFAULT_MAX_RESAMPLES).unwrap();
    assert!(si.verify_trapping(&sol.assignment).unwrap().all_trapped());
}

#[test]
fn dihedral_group_whole() {
    let ctx = dihedral_group(30);
    let all = ctx.elements().unwrap();
    let d: Vec<GroupElement> = vec![GroupElement::Index(0), GroupElement::Index(31)];
    let pattern = Pattern::new(d.into_iter().map(|x| (x, 1)), 2).unwrap();
    let cfg = ShiftConfig::whole_group(ctx, pattern, all).unwrap();
    assert_eq!(solve_and_trap(cfg, 3), 60);
}

#[test]
fn undersized_universe_is_reported() {
    let ctx = GroupContext::lattice(1).unwrap();
    let pattern = Pattern::new([(int(0), 0)], 2).unwrap();
    let f: ElementSet = (0..5).map(int).collect();
    let cfg = ShiftConfig::windowed(ctx, pattern, f, 3, Some(4)).unwrap();
    assert!(matches!(build_instance(cfg), Err(ShiftError::UniverseTooSmall { .. })));
}

#[test]
fn overlapping_explicit_l_is_rejected() {
    let ctx = GroupContext::cyclic(vec![10]).unwrap();
    let pattern = Pattern::new([(int(0), 0), (int(1), 0)], 2).unwrap();
    let f: ElementSet = (0..10).map(int).collect();
    let l: ElementSet = [int(0), int(1)].into_iter().collect();
    let cfg = ShiftConfig::whole_group(ctx, pattern, f).unwrap().with_l(l);
    assert_eq!(build_instance(cfg).unwrap_err(), ShiftError::NotSeparated);
}

#[test]
fn config_files() {
    let z100 = r#"{"group": {"family": "cyclic", "moduli": [100]}, "k": 2,
        "pattern": {"support": [[0]], "values": [0]}, "F": [0, 1, 2, 3, 4, 5, 6, 7]}"#;
    let si = build_instance(config_from_json(z100).unwrap()).unwrap();
    assert_eq!((si.instance().len(), si.l().len()), (100, 8));

    let free = r#"{"group": {"family": "free", "rank": 2}, "k": 2,
        "pattern": {"support": [[]], "values": [1]}, "F": [[], [1], [-1], [2], [-2]],
        "core_radius": 1}"#;
    let si = build_instance(config_from_json(free).unwrap()).unwrap();
    assert_eq!(si.instance().len(), 5);

    let missing_radius = r#"{"group": {"family": "lattice", "dim": 1}, "k": 2,
        "pattern": {"support": [0], "values": [0]}, "F": [0]}"#;
    assert!(config_from_json(missing_radius).is_err());
    let bad_value = r#"{"group": {"family": "cyclic", "moduli": [5]}, "k": 2,
        "pattern": {"support": [0], "values": [2]}, "F": [0]}"#;
    assert!(matches!(config_from_json(bad_value), Err(ShiftError::InvalidPattern(_))));
    let unknown_field = r#"{"group": {"family": "cyclic", "moduli": [5]}, "k": 2,
        "pattern": {"support": [0], "values": [1]}, "F": [0], "G": 1}"#;
    assert!(config_from_json(unknown_field).is_err());
}

fn pattern_strategy(width: i64) -> impl Strategy<Value = Vec<(i64, u32)>> {
    prop::collection::btree_map(0..width, 0u32..2, 1..=3).prop_map(|m| m.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn event_domains_are_block_translates(
        m in 6i64..40,
        pairs in pattern_strategy(6),
        f in prop::collection::btree_set(0i64..40, 1..20),
        g in 0i64..40,
    ) {
        let ctx = GroupContext::cyclic(vec![m as u64]).unwrap();
        let pattern = Pattern::new(pairs.iter().map(|&(x, v)| (int(x), v)), 2).unwrap();
        let f: ElementSet = f.iter().map(|x| int(x % m)).collect();
        let l = select_l(&ctx, &f, pattern.support()).unwrap();
        let gamma = int(g % m);
        let domain = event_domain(&ctx, &gamma, &l, pattern.support()).unwrap();
        prop_assert_eq!(domain.len(), l.len() * pattern.len());
        let mut i = 0;
        for lam in &l {
            for delta in pattern.support() {
                let expected = ctx.multiply(delta, &ctx.multiply(&ctx.inverse(lam).unwrap(), &gamma).unwrap()).unwrap();
                prop_assert_eq!(&domain[i], &expected);
                i += 1;
            }
        }
        let universe = ctx.elements().unwrap();
        let ev = build_bad_event(&ctx, &gamma, &l, &pattern, &universe).unwrap();
        let expected = BigUint::from(2u32.pow(pattern.len() as u32) - 1).pow(l.len() as u32);
        prop_assert_eq!(ev.forbidden_count(), expected);
        if let Some(count) = ev.enumerate_forbidden_count() {
            prop_assert_eq!(BigUint::from(count), ev.forbidden_count());
        }
    }

    #[test]
    fn trapped_by_l_iff_event_avoided(
        values in prop::collection::vec(0u32..2, 41),
        f in prop::collection::btree_set(-6i64..6, 1..8),
    ) {
        let ctx = GroupContext::lattice(1).unwrap();
        let pattern = Pattern::new([(int(0), 1), (int(2), 1)], 2).unwrap();
        let f: ElementSet = f.into_iter().map(int).collect();
        let cfg = ShiftConfig::windowed(ctx, pattern, f, 5, Some(20)).unwrap();
        let si = build_instance(cfg).unwrap();
        let x = Assignment::new(values, 2).unwrap();
        let by_l = si.trapping_by_l(&x).unwrap();
        let by_f = si.verify_trapping(&x).unwrap();
        let violated = si.instance().verify_solution(&x);
        for (i, (vl, vf)) in by_l.verdicts.iter().zip(&by_f.verdicts).enumerate() {
            prop_assert_eq!(vl.witness.is_none(), violated.contains(&i));
            prop_assert!(vf.witness.is_some() || violated.contains(&i));
        }
    }
}
