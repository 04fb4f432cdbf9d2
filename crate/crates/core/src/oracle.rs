//! Exhaustive enumeration for small point sets.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{validate_point_set, Point, PointSet, Segment, SweepIndex};
use crate::ptpath::{extract_ptpath, pointed_with, PseudoTriangulation};
use crate::sweep::PathKey;
use crate::tpath::{extract_tpath, Triangulation};
use crate::{EdgeList, Family};

pub const TRI_GUARD: usize = 12;
pub const PT_GUARD: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{n} points exceed the enumeration guard of {guard}")]
    TooLarge { n: usize, guard: usize },
    #[error("more than {cap} structures")]
    CapExceeded { cap: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub family: Family,
    /// Each structure as a sorted edge list; the list itself is sorted.
    pub structures: Vec<EdgeList>,
    pub count: BigUint,
}

/// Candidate edges in lexicographic order with pairwise crossing bitsets.
struct Candidates {
    edges: Vec<Segment>,
    crosses: Vec<u128>,
}

impl Candidates {
    fn new(ps: &PointSet) -> Self {
        let n = ps.len();
        let edges: Vec<Segment> = (0..n).flat_map(|a| (a + 1..n).map(move |b| Segment::new(a, b))).collect();
        assert!(edges.len() <= 128);
        let crosses = edges
            .iter()
            .map(|&e| edges.iter().enumerate().filter(|(_, &f)| ps.segments_cross(e, f)).fold(0u128, |m, (j, _)| m | 1 << j))
            .collect();
        Candidates { edges, crosses }
    }
}

fn guard(ps: &PointSet, guard: usize) -> Result<(), OracleError> {
    if ps.len() > guard {
        Err(OracleError::TooLarge { n: ps.len(), guard })
    } else {
        Ok(())
    }
}

fn finish(family: Family, mut structures: Vec<EdgeList>) -> EnumerationResult {
    structures.sort();
    let count = BigUint::from(structures.len());
    EnumerationResult { family, structures, count }
}

pub fn enumerate_triangulations(ps: &PointSet, cap: Option<usize>) -> Result<EnumerationResult, OracleError> {
    enumerate_triangulations_guarded(ps, cap, TRI_GUARD)
}

pub fn enumerate_triangulations_guarded(ps: &PointSet, cap: Option<usize>, max_n: usize) -> Result<EnumerationResult, OracleError> {
    guard(ps, max_n)?;
    let c = Candidates::new(ps);
    let target = 3 * ps.len() - 3 - ps.hull().len();
    let mut st = TriSearch { c: &c, target, cap, out: Vec::new() };
    let mut chosen = 0u128;
    for (k, &e) in c.edges.iter().enumerate() {
        if ps.is_hull_edge(e) {
            chosen |= 1 << k;
        }
    }
    st.rec(0, chosen, chosen.count_ones() as usize)?;
    let structures: Vec<EdgeList> = st.out.iter().map(|&m| mask_edges(&c, m)).collect();
    Ok(finish(Family::Tri, structures))
}

fn mask_edges(c: &Candidates, m: u128) -> EdgeList {
    (0..c.edges.len()).filter(|&k| m >> k & 1 == 1).map(|k| c.edges[k]).collect()
}

struct TriSearch<'a> {
    c: &'a Candidates,
    target: usize,
    cap: Option<usize>,
    out: Vec<u128>,
}

impl TriSearch<'_> {
    fn rec(&mut self, k: usize, chosen: u128, size: usize) -> Result<(), OracleError> {
        if size == self.target {
            if self.cap.is_some_and(|cap| self.out.len() >= cap) {
                return Err(OracleError::CapExceeded { cap: self.cap.unwrap() });
            }
            self.out.push(chosen);
            return Ok(());
        }
        let m = self.c.edges.len();
        if k == m || size + (m - k) < self.target {
            return Ok(());
        }
        if chosen >> k & 1 == 1 {
            return self.rec(k + 1, chosen, size);
        }
        let cr = self.c.crosses[k];
        if cr & chosen != 0 {
            return self.rec(k + 1, chosen, size);
        }
        self.rec(k + 1, chosen | 1 << k, size + 1)?;
        // Leaving the edge out only pays off if a later edge can block it.
        if cr >> (k + 1) != 0 {
            self.rec(k + 1, chosen, size)?;
        }
        Ok(())
    }
}

pub fn enumerate_pointed_pseudotriangulations(ps: &PointSet, cap: Option<usize>) -> Result<EnumerationResult, OracleError> {
    enumerate_pointed_pseudotriangulations_guarded(ps, cap, PT_GUARD)
}

pub fn enumerate_pointed_pseudotriangulations_guarded(
    ps: &PointSet,
    cap: Option<usize>,
    max_n: usize,
) -> Result<EnumerationResult, OracleError> {
    guard(ps, max_n)?;
    let c = Candidates::new(ps);
    let n = ps.len();
    let mut st = PtSearch { ps, c: &c, cap, adj: vec![Vec::new(); n], max_edges: 2 * n - 3, out: Vec::new() };
    let mut chosen = 0u128;
    for (k, &e) in c.edges.iter().enumerate() {
        if ps.is_hull_edge(e) {
            chosen |= 1 << k;
            st.adj[e.a].push(e.b);
            st.adj[e.b].push(e.a);
        }
    }
    st.rec(0, chosen)?;
    let mut structures = Vec::with_capacity(st.out.len());
    for &m in &st.out {
        let edges = mask_edges(&c, m);
        if edges.len() != 2 * n - 3 {
            return Err(OracleError::InternalInvariantViolation(format!(
                "maximal pointed set with {} edges instead of {}",
                edges.len(),
                2 * n - 3
            )));
        }
        structures.push(edges);
    }
    Ok(finish(Family::Pt, structures))
}

struct PtSearch<'a> {
    ps: &'a PointSet,
    c: &'a Candidates,
    cap: Option<usize>,
    adj: Vec<Vec<usize>>,
    max_edges: usize,
    out: Vec<u128>,
}

impl PtSearch<'_> {
    fn addable(&mut self, k: usize, chosen: u128) -> bool {
        if self.c.crosses[k] & chosen != 0 {
            return false;
        }
        let e = self.c.edges[k];
        self.adj[e.a].push(e.b);
        self.adj[e.b].push(e.a);
        let ok = pointed_with(e.a, &self.adj[e.a], self.ps) && pointed_with(e.b, &self.adj[e.b], self.ps);
        self.adj[e.a].pop();
        self.adj[e.b].pop();
        ok
    }

    fn maximal(&mut self, chosen: u128) -> bool {
        (0..self.c.edges.len()).all(|k| chosen >> k & 1 == 1 || !self.addable(k, chosen))
    }

    fn rec(&mut self, k: usize, chosen: u128) -> Result<(), OracleError> {
        let m = self.c.edges.len();
        if k == m || chosen.count_ones() as usize == self.max_edges {
            if self.maximal(chosen) {
                if self.cap.is_some_and(|cap| self.out.len() >= cap) {
                    return Err(OracleError::CapExceeded { cap: self.cap.unwrap() });
                }
                self.out.push(chosen);
            }
            return Ok(());
        }
        if chosen >> k & 1 == 1 {
            return self.rec(k + 1, chosen);
        }
        if self.addable(k, chosen) {
            let e = self.c.edges[k];
            self.adj[e.a].push(e.b);
            self.adj[e.b].push(e.a);
            self.rec(k + 1, chosen | 1 << k)?;
            self.adj[e.a].pop();
            self.adj[e.b].pop();
            // Excluding needs a later crossing edge or a later edge at an endpoint to block it.
            let later = !0u128 << (k + 1);
            let incident = (k + 1..m).any(|j| {
                let f = self.c.edges[j];
                f.has(e.a) || f.has(e.b)
            });
            if self.c.crosses[k] & later != 0 || incident {
                self.rec(k + 1, chosen)?;
            }
            Ok(())
        } else {
            self.rec(k + 1, chosen)
        }
    }
}

pub fn enumerate(ps: &PointSet, family: Family, cap: Option<usize>) -> Result<EnumerationResult, OracleError> {
    match family {
        Family::Tri => enumerate_triangulations(ps, cap),
        Family::Pt => enumerate_pointed_pseudotriangulations(ps, cap),
    }
}

/// The path of one structure at `line`.
pub fn extract_path(edges: &[Segment], line: SweepIndex, family: Family, ps: &PointSet) -> Result<PathKey, OracleError> {
    let bad = |e: String| OracleError::InternalInvariantViolation(e);
    match family {
        Family::Tri => {
            extract_tpath(&Triangulation::new(edges.iter().copied()), line, ps).map(|p| PathKey(p.vertices)).map_err(|e| bad(e.to_string()))
        }
        Family::Pt => extract_ptpath(&PseudoTriangulation::new(edges.iter().copied()), line, ps)
            .map(|p| PathKey(p.vertices))
            .map_err(|e| bad(e.to_string())),
    }
}

pub fn collect_paths(ps: &PointSet, line: SweepIndex, family: Family) -> Result<BTreeSet<PathKey>, OracleError> {
    let all = enumerate(ps, family, None)?;
    all.structures.iter().map(|s| extract_path(s, line, family, ps)).collect()
}

/// `collect_paths` for every line at once, indexed by `line - 1`.
pub fn collect_all_paths(ps: &PointSet, family: Family, structures: &[EdgeList]) -> Result<Vec<BTreeSet<PathKey>>, OracleError> {
    ps.lines().map(|l| structures.iter().map(|s| extract_path(s, l, family, ps)).collect()).collect()
}

pub fn catalan(m: u32) -> BigUint {
    let mut c = BigUint::from(1u32);
    for k in 0..m {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

/// `n` points on the parabola `y = x^2`.
pub fn convex_position(n: usize) -> PointSet {
    let pts: Vec<Point> = (0..n as i64).map(|k| Point::new(k, k * k)).collect();
    validate_point_set(&pts).expect("parabola points are in general position")
}

/// Four hull corners around one interior point.
pub fn fan5() -> PointSet {
    let pts = [(0, 0), (2, 2), (3, 7), (4, 8), (6, 18)].map(|(x, y)| Point::new(x, y));
    validate_point_set(&pts).expect("fan5 is in general position")
}

/// A seeded general-position set of `n` points in `[0, side)^2`, by rejection.
pub fn random_point_set(n: usize, side: i64, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Point> = (0..n).map(|_| Point::new(rng.gen_range(0..side), rng.gen_range(0..side))).collect();
        if let Ok(ps) = validate_point_set(&pts) {
            return ps;
        }
    }
}
