use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use sweepcount_core::analysis::{bound_sequence, report};
use sweepcount_core::oracle::{catalan, convex_position, enumerate, fan5};
use sweepcount_core::sampler::system_for;
use sweepcount_core::sweep::run_sweep;
use sweepcount_core::Family;

#[test]
fn fan5_values() {
    let ps = fan5();
    let tri = run_sweep(system_for(Family::Tri), &ps, false).unwrap();
    assert_eq!(tri.count, BigUint::from(3u32));
    assert_eq!(tri.stats.t_per_line, vec![1, 2, 2, 1]);
    // Pinned from the brute-force enumerator.
    assert_eq!(enumerate(&ps, Family::Pt, None).unwrap().count, BigUint::from(8u32));
    let pt = run_sweep(system_for(Family::Pt), &ps, false).unwrap();
    assert_eq!(pt.count, BigUint::from(8u32));
    assert_eq!(pt.stats.t_per_line, vec![1, 4, 4, 1]);
}

#[test]
fn convex_sets_follow_catalan() {
    for n in 3..=10 {
        let ps = convex_position(n);
        for family in [Family::Tri, Family::Pt] {
            let out = run_sweep(system_for(family), &ps, false).unwrap();
            assert_eq!(out.count, catalan(n as u32 - 2), "{family} n = {n}");
        }
        assert_eq!(enumerate(&ps, Family::Tri, None).unwrap().count, catalan(n as u32 - 2));
    }
}

#[test]
fn bound_sequence_terms_and_growth() {
    let seq = bound_sequence(200);
    let f: Vec<u64> = seq[..7].iter().map(|b| b.f.to_u64().unwrap()).collect();
    assert_eq!(f, vec![0, 1, 3, 13, 67, 381, 2307]);
    assert!(seq[0].g == BigUint::default() && seq[1].g.is_one());
    for b in &seq[1..] {
        assert!(b.f < BigUint::from(8u32).pow(b.k as u32));
    }
    let ratio = seq[200].f.to_f64().unwrap() / seq[199].f.to_f64().unwrap();
    assert!((ratio - 8.0).abs() <= 0.4, "ratio {ratio}");
}

#[test]
fn binomial_sum_of_powers_of_eight() {
    for a in 0u32..=30 {
        let mut binom = BigUint::one();
        let mut sum = BigUint::default();
        for i in 0..=a {
            sum += &binom * BigUint::from(8u32).pow(i);
            binom = binom * BigUint::from(a - i) / BigUint::from(i + 1);
        }
        assert_eq!(sum, BigUint::from(9u32).pow(a));
    }
}

#[test]
fn reports_compare_against_bounds() {
    let ps = convex_position(5);
    let out = run_sweep(system_for(Family::Tri), &ps, false).unwrap();
    let r = report(&out.stats, &ps, Family::Tri, &out.count);
    assert_eq!(r.t_max, 3);
    assert!(r.t_max_le_count);
    assert_eq!(r.t_within_nine_pow_n, Some(true));
    let pt = run_sweep(system_for(Family::Pt), &ps, false).unwrap();
    assert_eq!(report(&pt.stats, &ps, Family::Pt, &pt.count).t_within_nine_pow_n, None);
}
