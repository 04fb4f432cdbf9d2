mod common;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use sweepcount_core::geom::{validate_point_set, Point, PointSet, Segment, SweepIndex};
use sweepcount_core::oracle::{convex_position, enumerate, extract_path, fan5};
use sweepcount_core::sampler::{reconstruct, reconstruct_with_order, record_tables, sample, SampleOptions};
use sweepcount_core::sweep::{PathKey, PathTable};
use sweepcount_core::{EdgeList, Family};

use common::instances;

fn tuple_of(s: &[Segment], family: Family, ps: &PointSet) -> Vec<PathKey> {
    ps.lines().map(|l| extract_path(s, l, family, ps).unwrap()).collect()
}

#[test]
fn reconstruction_inverts_extraction() {
    for family in [Family::Tri, Family::Pt] {
        for ps in instances(8, 4) {
            for s in enumerate(&ps, family, None).unwrap().structures {
                let got = reconstruct(&tuple_of(&s, family, &ps), &ps, family).unwrap();
                assert_eq!(got.edges, s);
            }
        }
    }
}

#[test]
fn completion_order_is_irrelevant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (ps, family) in [(convex_position(5), Family::Tri), (fan5(), Family::Pt), (common::random(7, 2), Family::Pt)] {
        let n = ps.len();
        let mut order: Vec<Segment> = (0..n).flat_map(|a| (a + 1..n).map(move |b| Segment::new(a, b))).collect();
        for s in enumerate(&ps, family, None).unwrap().structures {
            let tuple = tuple_of(&s, family, &ps);
            for _ in 0..6 {
                order.shuffle(&mut rng);
                assert_eq!(reconstruct_with_order(&tuple, &ps, family, &order).unwrap().edges, s);
            }
        }
    }
}

/// Every root-to-leaf walk of the sampler with its exact probability.
fn leaves(tables: &[PathTable]) -> Vec<(Vec<PathKey>, BigRational)> {
    let ratio = |a: &num_bigint::BigUint, b: &num_bigint::BigUint| BigRational::new(BigInt::from(a.clone()), BigInt::from(b.clone()));
    let mut out = Vec::new();
    let mut stack = vec![(tables.len() - 1, 0usize, vec![tables[tables.len() - 1].entries[0].key.clone()], BigRational::one())];
    while let Some((t, idx, tuple, p)) = stack.pop() {
        if t == 0 {
            let mut tuple = tuple;
            tuple.reverse();
            out.push((tuple, p));
            continue;
        }
        let entry = &tables[t].entries[idx];
        for &pi in &entry.parents {
            let parent = &tables[t - 1].entries[pi as usize];
            let mut next = tuple.clone();
            next.push(parent.key.clone());
            stack.push((t - 1, pi as usize, next, &p * ratio(&parent.count, &entry.count)));
        }
    }
    out
}

#[test]
fn decision_tree_is_exactly_uniform() {
    let pts = |v: &[(i64, i64)]| validate_point_set(&v.iter().map(|&(x, y)| Point::new(x, y)).collect::<Vec<_>>()).unwrap();
    let sets = [convex_position(3), convex_position(4), pts(&[(0, 0), (10, 1), (3, 8), (4, 3)]), pts(&[(0, 5), (4, 0), (4, 9), (9, 4)])];
    for ps in sets {
        for family in [Family::Tri, Family::Pt] {
            let tables = record_tables(&ps, family, &SampleOptions::default()).unwrap();
            let oracle = enumerate(&ps, family, None).unwrap();
            let mut prob: BTreeMap<EdgeList, BigRational> = BTreeMap::new();
            for (tuple, p) in leaves(&tables) {
                let s = reconstruct(&tuple, &ps, family).unwrap();
                *prob.entry(s.edges).or_insert_with(BigRational::zero) += p;
            }
            let want = BigRational::new(BigInt::one(), BigInt::from(oracle.count.clone()));
            assert_eq!(prob.keys().cloned().collect::<Vec<_>>(), oracle.structures);
            assert!(prob.values().all(|p| *p == want), "{family} {:?}", ps.points());
        }
    }
}

#[test]
fn conv5_draws_look_uniform() {
    let ps = convex_position(5);
    let cats: BTreeSet<EdgeList> = enumerate(&ps, Family::Tri, None).unwrap().structures.into_iter().collect();
    let draws = sample(&ps, Family::Tri, 11, 5000).unwrap();
    let mut freq: BTreeMap<EdgeList, f64> = BTreeMap::new();
    for d in draws {
        assert!(cats.contains(&d.edges));
        *freq.entry(d.edges).or_default() += 1.0;
    }
    let expected = 5000.0 / cats.len() as f64;
    let stat: f64 = cats.iter().map(|c| (freq.get(c).copied().unwrap_or(0.0) - expected).powi(2) / expected).sum();
    let p = 1.0 - ChiSquared::new((cats.len() - 1) as f64).unwrap().cdf(stat);
    assert!(p >= 1e-3, "chi-square p = {p}");
}

#[test]
fn every_line_table_is_consistent() {
    let ps = fan5();
    for family in [Family::Tri, Family::Pt] {
        let tables = record_tables(&ps, family, &SampleOptions::default()).unwrap();
        assert_eq!(tables.len(), ps.len() - 1);
        for (i, t) in tables.iter().enumerate() {
            assert_eq!(t.line, SweepIndex(i + 1));
        }
    }
}
