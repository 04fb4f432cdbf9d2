mod common;

use std::collections::BTreeSet;

use sweepcount_core::geom::PointSet;
use sweepcount_core::oracle::{collect_all_paths, enumerate};
use sweepcount_core::sampler::system_for;
use sweepcount_core::sweep::{run_sweep, run_sweep_with, PathKey, SweepOptions};
use sweepcount_core::Family;

use common::{instances, random};

fn check_populations(ps: &PointSet, family: Family) {
    let oracle = enumerate(ps, family, None).unwrap();
    let out = run_sweep(system_for(family), ps, true).unwrap();
    assert_eq!(out.count, oracle.count, "{family} count for {:?}", ps.points());
    let t = &out.stats.t_per_line;
    assert_eq!((t[0], t[t.len() - 1]), (1, 1));
    let expected = collect_all_paths(ps, family, &oracle.structures).unwrap();
    let tables = out.tables.unwrap();
    assert_eq!(tables.len(), expected.len());
    for (table, want) in tables.iter().zip(&expected) {
        let got: BTreeSet<PathKey> = table.keys().cloned().collect();
        assert_eq!(&got, want, "{family} paths at line {} for {:?}", table.line.0, ps.points());
    }
}

#[test]
fn triangulation_paths_match_oracle() {
    for ps in instances(8, 20) {
        check_populations(&ps, Family::Tri);
    }
}

#[test]
fn pseudotriangulation_paths_match_oracle() {
    for ps in instances(8, 20) {
        check_populations(&ps, Family::Pt);
    }
}

#[test]
fn nine_point_triangulation_counts() {
    for seed in 0..6 {
        let ps = random(9, seed);
        let out = run_sweep(system_for(Family::Tri), &ps, false).unwrap();
        assert_eq!(out.count, enumerate(&ps, Family::Tri, None).unwrap().count);
    }
}

#[test]
fn threads_do_not_change_tables() {
    for family in [Family::Tri, Family::Pt] {
        let ps = random(8, 5);
        let one = run_sweep(system_for(family), &ps, true).unwrap();
        let opts = SweepOptions { record_parents: true, threads: 4, ..SweepOptions::default() };
        let four = run_sweep_with(system_for(family), &ps, &opts).unwrap();
        assert_eq!(one.count, four.count);
        assert_eq!(one.stats.t_per_line, four.stats.t_per_line);
        assert_eq!(one.tables, four.tables);
    }
}
