//! Placement, delivery decomposition, rates and end-to-end simulation.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;
use sicps::icp::{build_single_icp, GapVector};
use sicps::macc::{
    build_delivery_icp, composition_count_max_below, end_to_end_simulate,
    enumerate_placement_sets, group_rotation_classes, memory_shared_rate, placement_map,
    placement_set_count, rate_hkd, rate_new, rate_rk, tradeoff_curve, weak_compositions,
    CcdnConfig, RateSource,
};
use sicps::ratio::{binomial, frac, int};
use sicps::Error;

fn subsets(k: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize == w {
            out.push((1..=k).filter(|&c| mask >> (c - 1) & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

fn circular_ok(set: &[usize], k: usize, l: usize) -> bool {
    set.iter().all(|&a| {
        set.iter().all(|&b| a == b || {
            let d = a.abs_diff(b);
            d >= l && k - d >= l
        })
    })
}

/// Rate by walking every composition.
fn rate_by_enumeration(k: usize, l: usize, w: usize) -> BigRational {
    if w * l == k {
        return int(0);
    }
    let b = weak_compositions(k - w * l - 1, w + 1);
    let total: usize = b
        .iter()
        .map(|c| (2 * (k - w * l) + w - 1 - c.iter().max().unwrap()).min(k))
        .sum();
    let s = enumerate_placement_sets(k, l, w).unwrap().len();
    frac(total, s * (w + 1))
}

#[test]
fn placement_matches_brute_force_filter() {
    for k in 1..=12 {
        for l in 1..=k {
            for w in 1..=k / l {
                let want: Vec<Vec<usize>> =
                    subsets(k, w).into_iter().filter(|s| circular_ok(s, k, l)).collect();
                assert_eq!(enumerate_placement_sets(k, l, w).unwrap(), want, "K={k} L={l} w={w}");
            }
        }
    }
}

#[test]
fn k8_l2_w2_placement() {
    let sets = enumerate_placement_sets(8, 2, 2).unwrap();
    let expect: Vec<Vec<usize>> = vec![
        vec![1, 3], vec![1, 4], vec![1, 5], vec![1, 6], vec![1, 7],
        vec![2, 4], vec![2, 5], vec![2, 6], vec![2, 7], vec![2, 8],
        vec![3, 5], vec![3, 6], vec![3, 7], vec![3, 8],
        vec![4, 6], vec![4, 7], vec![4, 8],
        vec![5, 7], vec![5, 8],
        vec![6, 8],
    ];
    assert_eq!(sets, expect);
    let plan = placement_map(CcdnConfig::new(8, 8, 2).unwrap(), 2).unwrap();
    assert_eq!(plan.subfile_size(), frac(1, 20));
    for c in 1..=8 {
        assert_eq!(plan.cache_load(c), int(2));
        assert_eq!(plan.cache_sets(c).len(), 5);
    }
}

#[test]
fn cache_loads_equal_memory() {
    for k in 2..=14 {
        for l in 1..=k {
            for w in 1..=k / l {
                let cfg = CcdnConfig::new(7, k, l).unwrap();
                let plan = placement_map(cfg, w).unwrap();
                let per_cache = binomial((k - w * l + w - 1) as u64, (w - 1) as u64);
                for c in 1..=k {
                    assert_eq!(plan.cache_load(c), cfg.memory(w));
                    assert_eq!(BigUint::from(plan.cache_sets(c).len()), per_cache);
                }
            }
        }
    }
}

#[test]
fn rate_matches_enumeration() {
    for k in 1..=22 {
        for l in 1..=k {
            for w in 1..=k / l {
                assert_eq!(rate_new(k, l, w).unwrap(), rate_by_enumeration(k, l, w), "K={k} L={l} w={w}");
            }
        }
    }
}

#[test]
fn listed_rates() {
    assert_eq!(rate_new(8, 2, 2).unwrap(), frac(68, 60));
    assert_eq!(rate_hkd(8, 2, 2).unwrap(), frac(4, 3));
    assert_eq!(rate_rk(8, 8, 2, &frac(2, 1)).unwrap(), int(2));
    assert_eq!(rate_rk(100, 100, 1, &int(50)).unwrap(), int(25));
    assert_eq!(rate_hkd(40, 4, 4).unwrap(), frac(24, 5));
}

#[test]
fn delivery_columns_are_single_instances() {
    for (k, l, w) in [(8, 2, 2), (10, 2, 3), (9, 3, 2), (7, 1, 3), (11, 2, 3), (12, 5, 1)] {
        let cfg = CcdnConfig::new(k, k, l).unwrap();
        let demands: Vec<usize> = (1..=k).collect();
        let table = build_delivery_icp(cfg, w, &demands).unwrap();
        let plan = table.plan();
        let expected_cols = binomial((k - w * l + w - 1) as u64, w as u64);
        assert_eq!(BigUint::from(table.columns().len()), expected_cols);

        let labels: BTreeSet<Vec<usize>> = table.columns().iter().map(|c| c.label.clone()).collect();
        let all: BTreeSet<Vec<usize>> = weak_compositions(k - w * l - 1, w + 1).into_iter().collect();
        assert_eq!(labels, all, "columns biject with compositions");

        for (j, col) in table.columns().iter().enumerate() {
            let single = build_single_icp(&GapVector::new(col.label.clone(), l).unwrap());
            for user in 1..=k {
                let knows: Vec<usize> = (1..=k)
                    .filter(|&r| r != user && plan.user_has(user, table.entry_set(r, j)))
                    .collect();
                assert_eq!(knows, single.known(user), "K={k} L={l} w={w} column {j} user {user}");
                assert!(!plan.user_has(user, table.entry_set(user, j)));
            }
        }
        for user in 1..=k {
            let missing: BTreeSet<usize> =
                (0..plan.sets().len()).filter(|&s| !plan.user_has(user, s)).collect();
            let row: BTreeSet<usize> = (0..table.columns().len()).map(|j| table.entry_set(user, j)).collect();
            assert_eq!(row, missing);
        }
    }
}

#[test]
fn k8_l2_w2_classes() {
    let classes = group_rotation_classes(&weak_compositions(3, 3));
    let reps: Vec<Vec<usize>> = classes.iter().map(|c| c.representative.clone()).collect();
    assert_eq!(reps, vec![vec![3, 0, 0], vec![2, 1, 0], vec![2, 0, 1], vec![1, 1, 1]]);
    assert_eq!(classes[3].period, 1);
    assert_eq!(classes[3].repeat, 3);
    assert_eq!(classes.iter().map(|c| c.members.len()).sum::<usize>(), 10);
}

#[test]
fn simulation_k8_l2_w2() {
    let cfg = CcdnConfig::new(8, 8, 2).unwrap();
    let demands: Vec<usize> = (1..=8).collect();
    let r = end_to_end_simulate(cfg, 2, &demands, None, 7).unwrap();
    assert!(r.decoded_ok, "{:?}", r.failures);
    assert_eq!(r.total_rate, frac(68, 60));
    assert_eq!(r.realized_rate, frac(68, 60));
    assert_eq!(r.transmitted_symbols, 68);
    let chis: Vec<(Vec<usize>, usize)> = r.classes.iter().map(|c| (c.representative.clone(), c.chi)).collect();
    assert_eq!(
        chis,
        vec![(vec![3, 0, 0], 6), (vec![2, 1, 0], 7), (vec![2, 0, 1], 7), (vec![1, 1, 1], 8)]
    );
    let again = end_to_end_simulate(cfg, 2, &demands, None, 7).unwrap();
    assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());
}

#[test]
fn simulation_matches_formula_on_assorted_networks() {
    for (n, k, l, w) in [(10, 10, 2, 1), (11, 11, 2, 3), (7, 7, 2, 3), (9, 9, 3, 2), (6, 6, 1, 2), (12, 12, 5, 1)] {
        let cfg = CcdnConfig::new(n, k, l).unwrap();
        let demands: Vec<usize> = (1..=k).collect();
        let r = end_to_end_simulate(cfg, w, &demands, Some(257), 11).unwrap();
        assert!(r.decoded_ok, "({n},{k},{l}) w={w}: {:?}", r.failures);
        assert_eq!(r.total_rate, rate_new(k, l, w).unwrap());
        assert!(r.realized_rate <= r.total_rate);
    }
}

#[test]
fn simulation_full_coverage_and_repeats() {
    let cfg = CcdnConfig::new(4, 8, 2).unwrap();
    let r = end_to_end_simulate(cfg, 4, &[1, 2, 3, 4, 1, 2, 3, 4], None, 1).unwrap();
    assert!(r.decoded_ok);
    assert_eq!(r.total_rate, int(0));
    assert!(r.classes.is_empty());

    let cfg = CcdnConfig::new(3, 8, 2).unwrap();
    let r = end_to_end_simulate(cfg, 2, &[1, 1, 2, 2, 3, 3, 1, 2], None, 5).unwrap();
    assert!(r.decoded_ok);
    assert!(r.total_rate <= frac(68, 60));
}

#[test]
fn simulation_input_errors() {
    let cfg = CcdnConfig::new(8, 8, 2).unwrap();
    let d: Vec<usize> = (1..=8).collect();
    assert_eq!(end_to_end_simulate(cfg, 2, &d, Some(7), 1).unwrap_err(), Error::FieldTooSmall { order: 7, colors: 8 });
    assert_eq!(end_to_end_simulate(cfg, 2, &d, Some(9), 1).unwrap_err(), Error::NotPrime(9));
    assert!(matches!(end_to_end_simulate(cfg, 5, &d, None, 1), Err(Error::InvalidMultiplier { .. })));
    assert!(matches!(end_to_end_simulate(cfg, 2, &d[..3], None, 1), Err(Error::DemandLength { .. })));
}

#[test]
fn tradeoff_shape() {
    for (n, k, l) in [(100, 40, 4), (8, 8, 2), (20, 9, 4), (50, 50, 10)] {
        let cfg = CcdnConfig::new(n, k, l).unwrap();
        let curve = tradeoff_curve(cfg, 25).unwrap();
        assert_eq!(curve.first().unwrap().rate, int(k));
        assert_eq!(curve.last().unwrap().rate, int(0));
        assert_eq!(curve.last().unwrap().memory, frac(k.div_ceil(l) * n, k));
        for p in curve.windows(2) {
            assert!(p[0].memory < p[1].memory);
            assert!(p[0].rate >= p[1].rate);
        }
        for w in 1..=cfg.max_multiplier() {
            if w * l < k {
                let at = memory_shared_rate(cfg, &cfg.memory(w)).unwrap();
                assert!(at <= rate_new(k, l, w).unwrap());
            }
        }
    }
    let cfg = CcdnConfig::new(8, 8, 2).unwrap();
    let curve = tradeoff_curve(cfg, 0).unwrap();
    assert!(curve.iter().filter(|p| p.source == RateSource::New).count() >= 3);
    let mid = memory_shared_rate(cfg, &frac(3, 2)).unwrap();
    assert_eq!(mid, (rate_new(8, 2, 1).unwrap() + rate_new(8, 2, 2).unwrap()) / int(2));
}

proptest! {
    #[test]
    fn stanley_count_matches_filter(n in 0usize..9, m in 1usize..6, t in 1usize..10) {
        let brute = weak_compositions(n, m).iter().filter(|c| c.iter().all(|&x| x < t)).count();
        prop_assert_eq!(composition_count_max_below(n, m, t), BigUint::from(brute));
    }

    #[test]
    fn rotation_classes_partition(n in 0usize..7, m in 1usize..5) {
        let b = weak_compositions(n, m);
        let classes = group_rotation_classes(&b);
        let mut seen = BTreeSet::new();
        for c in &classes {
            prop_assert_eq!(c.members.len(), c.period);
            prop_assert_eq!(c.period * c.repeat, m);
            prop_assert_eq!(c.members[0].clone(), c.representative.clone());
            for (t, member) in c.members.iter().enumerate() {
                prop_assert_eq!(sicps::icp::rotate_gaps(&c.representative, t), member.clone());
                prop_assert!(seen.insert(member.clone()));
            }
        }
        prop_assert_eq!(seen.len(), b.len());
    }

    #[test]
    fn placement_count_identity((k, l, w) in (1usize..25)
        .prop_flat_map(|k| (Just(k), 1..=k))
        .prop_flat_map(|(k, l)| (Just(k), Just(l), 1..=k / l)))
    {
        let n = enumerate_placement_sets(k, l, w).unwrap().len();
        prop_assert_eq!(placement_set_count(k, l, w).unwrap(), BigUint::from(n));
    }
}
