//! Structural properties of T-paths and PT-paths over brute-force enumerations.

mod common;

use std::collections::{BTreeSet, HashSet};

use sweepcount_core::geom::{edge_crosses_line, PointSet};
use sweepcount_core::oracle::{enumerate, enumerate_triangulations};
use sweepcount_core::ptpath::{extract_ptpath, search_ptpaths, PseudoTriangulation};
use sweepcount_core::sweep::{paths_cross, PathKey};
use sweepcount_core::tpath::{enumerate_tpaths, extract_tpath, flip, is_flippable, is_good_edge, Triangulation};
use sweepcount_core::Family;

use common::instances;

fn triangulations(ps: &PointSet) -> Vec<Triangulation> {
    enumerate_triangulations(ps, None).unwrap().structures.into_iter().map(Triangulation::new).collect()
}

fn pseudotriangulations(ps: &PointSet) -> Vec<PseudoTriangulation> {
    enumerate(ps, Family::Pt, None).unwrap().structures.into_iter().map(PseudoTriangulation::new).collect()
}

#[test]
fn one_tpath_per_triangulation_and_line() {
    for ps in instances(8, 6) {
        for t in triangulations(&ps) {
            for line in ps.lines() {
                let found = enumerate_tpaths(line, &ps, &|e| t.contains(e));
                assert_eq!(found.len(), 1, "{:?} at line {}", t.edge_list(), line.0);
                let again = extract_tpath(&t, line, &ps).unwrap();
                assert_eq!(extract_tpath(&t, line, &ps).unwrap(), again);
            }
        }
    }
}

#[test]
fn tpaths_at_a_line_are_equal_or_cross() {
    for ps in instances(7, 4) {
        let all = triangulations(&ps);
        for line in ps.lines() {
            let paths: Vec<PathKey> = all.iter().map(|t| PathKey(extract_tpath(t, line, &ps).unwrap().vertices)).collect();
            for a in &paths {
                for b in &paths {
                    assert!(a == b || paths_cross(a, b, &ps), "{:?} vs {:?} at line {}", a.0, b.0, line.0);
                }
            }
        }
    }
}

#[test]
fn good_edges_lie_on_the_tpath() {
    for ps in instances(8, 6) {
        for t in triangulations(&ps) {
            for line in ps.lines() {
                let path = PathKey(extract_tpath(&t, line, &ps).unwrap().vertices);
                let on_path: HashSet<_> = path.edges().collect();
                for e in t.edge_list().into_iter().filter(|&e| edge_crosses_line(e, line)) {
                    if is_good_edge(&t, e, line, &ps).unwrap() {
                        assert!(on_path.contains(&e));
                    }
                }
            }
        }
    }
}

#[test]
fn flippable_edges_are_covered_by_some_tpath() {
    for ps in instances(8, 6) {
        for t in triangulations(&ps) {
            let covered: HashSet<_> =
                ps.lines().flat_map(|l| PathKey(extract_tpath(&t, l, &ps).unwrap().vertices).edges().collect::<Vec<_>>()).collect();
            for e in t.edge_list() {
                if is_flippable(&t, e, &ps).unwrap() {
                    assert!(covered.contains(&e), "flippable {e:?} of {:?} on no path", t.edge_list());
                }
            }
        }
    }
}

#[test]
fn tpath_tuples_are_injective() {
    for ps in instances(8, 6) {
        let all = triangulations(&ps);
        let tuples: BTreeSet<Vec<Vec<usize>>> =
            all.iter().map(|t| ps.lines().map(|l| extract_tpath(t, l, &ps).unwrap().vertices).collect()).collect();
        assert_eq!(tuples.len(), all.len());
    }
}

#[test]
fn flip_graph_reaches_every_triangulation() {
    for ps in instances(8, 4) {
        let all: BTreeSet<Vec<_>> = triangulations(&ps).iter().map(|t| t.edge_list()).collect();
        let start = Triangulation::new(all.iter().next().unwrap().clone());
        let mut seen = BTreeSet::from([start.edge_list()]);
        let mut queue = vec![start];
        while let Some(t) = queue.pop() {
            for e in t.edge_list() {
                if is_flippable(&t, e, &ps).unwrap() {
                    let u = flip(&t, e, &ps).unwrap();
                    if seen.insert(u.edge_list()) {
                        queue.push(u);
                    }
                }
            }
        }
        assert_eq!(seen, all);
    }
}

#[test]
fn one_ptpath_per_pseudotriangulation_and_line() {
    for ps in instances(8, 6) {
        for s in pseudotriangulations(&ps) {
            for line in ps.lines() {
                let extracted = extract_ptpath(&s, line, &ps).unwrap();
                let found = search_ptpaths(line, &ps, &[], &|e| s.contains(e));
                assert_eq!(found, vec![extracted.vertices], "{:?} at line {}", s.edge_list(), line.0);
            }
        }
    }
}

#[test]
fn every_pt_edge_is_on_some_ptpath() {
    for ps in instances(8, 6) {
        for s in pseudotriangulations(&ps) {
            let covered: HashSet<_> =
                ps.lines().flat_map(|l| PathKey(extract_ptpath(&s, l, &ps).unwrap().vertices).edges().collect::<Vec<_>>()).collect();
            for e in s.edge_list() {
                assert!(covered.contains(&e), "{e:?} of {:?} on no path", s.edge_list());
            }
        }
    }
}

#[test]
fn ptpath_tuples_are_injective() {
    for ps in instances(8, 6) {
        let all = pseudotriangulations(&ps);
        let tuples: BTreeSet<Vec<Vec<usize>>> =
            all.iter().map(|s| ps.lines().map(|l| extract_ptpath(s, l, &ps).unwrap().vertices).collect()).collect();
        assert_eq!(tuples.len(), all.len());
    }
}
