//! Triangulation paths: validation, extraction, flips and sweep successors.

use std::collections::{BTreeSet, HashSet};

use crate::geom::{crossing_cmp, edge_crosses_line, side, wedge_empty_unchecked, PointSet, Segment, Side, SweepIndex};
use crate::sweep::{canonicalize, PathKey, PathSystem, SweepError};
use crate::{chain_edges, Family};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPath {
    pub vertices: Vec<usize>,
    pub line: SweepIndex,
}

/// Why a chain fails to be a T-path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TPathViolation {
    TooShort,
    VertexOutOfRange,
    EdgeDoesNotCrossLine { edge: usize },
    BadFirstEdge,
    BadLastEdge,
    RepeatedEdge { edge: usize },
    OrderNotIncreasing { edge: usize },
    EdgesCross { first: usize, second: usize },
    WedgeNotEmpty { apex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TPathError {
    #[error("edge {0} is not in the triangulation")]
    EdgeNotInTriangulation(Segment),
    #[error("edge {0} does not cross the sweep line")]
    EdgeDoesNotCrossLine(Segment),
    #[error("edge {0} is not flippable")]
    NotFlippable(Segment),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl From<TPathError> for SweepError {
    fn from(e: TPathError) -> Self {
        SweepError::InternalInvariantViolation(e.to_string())
    }
}

pub fn check_tpath(chain: &[usize], line: SweepIndex, ps: &PointSet) -> Result<(), TPathViolation> {
    use TPathViolation::*;
    if chain.len() < 3 {
        return Err(TooShort);
    }
    if chain.iter().any(|&v| v >= ps.len()) {
        return Err(VertexOutOfRange);
    }
    let edges: Vec<Segment> = chain_edges(chain).collect();
    if let Some(k) = edges.iter().position(|&e| !edge_crosses_line(e, line)) {
        return Err(EdgeDoesNotCrossLine { edge: k });
    }
    let (low, high) = ps.hull_edges_crossing(line);
    if edges[0] != low {
        return Err(BadFirstEdge);
    }
    if *edges.last().unwrap() != high {
        return Err(BadLastEdge);
    }
    let mut seen = HashSet::with_capacity(edges.len());
    for (k, e) in edges.iter().enumerate() {
        if !seen.insert(*e) {
            return Err(RepeatedEdge { edge: k });
        }
    }
    for k in 1..edges.len() {
        if crossing_cmp(ps, line, edges[k - 1], edges[k]) != std::cmp::Ordering::Less {
            return Err(OrderNotIncreasing { edge: k });
        }
    }
    for i in 0..edges.len() {
        for j in i + 2..edges.len() {
            if ps.segments_cross(edges[i], edges[j]) {
                return Err(EdgesCross { first: i, second: j });
            }
        }
    }
    for k in 1..chain.len() - 1 {
        if !wedge_empty_unchecked(chain[k - 1], chain[k], chain[k + 1], line, ps) {
            return Err(WedgeNotEmpty { apex: k });
        }
    }
    Ok(())
}

pub fn validate_tpath(path: &TPath, ps: &PointSet) -> bool {
    check_tpath(&path.vertices, path.line, ps).is_ok()
}

/// A triangulation as an edge set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    pub edges: BTreeSet<Segment>,
}

impl Triangulation {
    pub fn new(edges: impl IntoIterator<Item = Segment>) -> Self {
        Triangulation { edges: edges.into_iter().collect() }
    }

    pub fn contains(&self, e: Segment) -> bool {
        self.edges.contains(&e)
    }

    pub fn edge_list(&self) -> Vec<Segment> {
        self.edges.iter().copied().collect()
    }
}

/// Non-crossing with the maximum edge count `3n - 3 - h`.
pub fn is_triangulation(edges: &[Segment], ps: &PointSet) -> bool {
    let n = ps.len();
    let set: BTreeSet<Segment> = edges.iter().copied().collect();
    if set.len() != edges.len() || set.len() != 3 * n - 3 - ps.hull().len() {
        return false;
    }
    if set.iter().any(|e| e.b >= n) {
        return false;
    }
    let v: Vec<Segment> = set.into_iter().collect();
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| !ps.segments_cross(v[i], v[j])))
}

/// All chains built from edges accepted by `allowed` that validate at `line`.
pub fn enumerate_tpaths(line: SweepIndex, ps: &PointSet, allowed: &dyn Fn(Segment) -> bool) -> Vec<Vec<usize>> {
    let (low, high) = ps.hull_edges_crossing(line);
    let mut out = Vec::new();
    if !allowed(low) {
        return out;
    }
    let crossing: Vec<Segment> = (0..line.0)
        .flat_map(|a| (line.0..ps.len()).map(move |b| Segment::new(a, b)))
        .filter(|&e| allowed(e))
        .collect();
    for start in [low.a, low.b] {
        let mut chain = vec![start, low.other(start)];
        let mut used = vec![low];
        extend_tpath(&mut chain, &mut used, &crossing, high, line, ps, &mut out);
    }
    out
}

fn extend_tpath(
    chain: &mut Vec<usize>,
    used: &mut Vec<Segment>,
    crossing: &[Segment],
    high: Segment,
    line: SweepIndex,
    ps: &PointSet,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *used.last().unwrap();
    if last == high {
        out.push(chain.clone());
        return;
    }
    let v = *chain.last().unwrap();
    let u = chain[chain.len() - 2];
    for &e in crossing {
        if !e.has(v) || used.contains(&e) {
            continue;
        }
        if crossing_cmp(ps, line, last, e) != std::cmp::Ordering::Less {
            continue;
        }
        let w = e.other(v);
        if used.iter().any(|&f| ps.segments_cross(e, f)) || !wedge_empty_unchecked(u, v, w, line, ps) {
            continue;
        }
        chain.push(w);
        used.push(e);
        extend_tpath(chain, used, crossing, high, line, ps, out);
        chain.pop();
        used.pop();
    }
}

pub fn extract_tpath(t: &Triangulation, line: SweepIndex, ps: &PointSet) -> Result<TPath, TPathError> {
    let found = enumerate_tpaths(line, ps, &|e| t.contains(e));
    match found.len() {
        1 => Ok(TPath { vertices: found.into_iter().next().unwrap(), line }),
        k => Err(TPathError::InternalInvariantViolation(format!("{k} T-paths at line {} instead of one", line.0))),
    }
}

/// Third vertices of the two triangles on either side of `e`, if present.
fn incident_triangles(t: &Triangulation, e: Segment, ps: &PointSet) -> (Option<usize>, Option<usize>) {
    let (mut left, mut right) = (None, None);
    for w in 0..ps.len() {
        if e.has(w) || !t.contains(Segment::new(e.a, w)) || !t.contains(Segment::new(e.b, w)) {
            continue;
        }
        if !crate::geom::triangle_empty(e.a, e.b, w, ps) {
            continue;
        }
        if ps.ccw(e.a, e.b, w) {
            left = Some(w);
        } else {
            right = Some(w);
        }
    }
    (left, right)
}

pub fn is_flippable(t: &Triangulation, e: Segment, ps: &PointSet) -> Result<bool, TPathError> {
    if !t.contains(e) {
        return Err(TPathError::EdgeNotInTriangulation(e));
    }
    Ok(opposite_diagonal(t, e, ps).is_some())
}

fn opposite_diagonal(t: &Triangulation, e: Segment, ps: &PointSet) -> Option<Segment> {
    match incident_triangles(t, e, ps) {
        (Some(c), Some(d)) if ps.segments_cross(e, Segment::new(c, d)) => Some(Segment::new(c, d)),
        _ => None,
    }
}

pub fn is_good_edge(t: &Triangulation, e: Segment, line: SweepIndex, ps: &PointSet) -> Result<bool, TPathError> {
    if !t.contains(e) {
        return Err(TPathError::EdgeNotInTriangulation(e));
    }
    if !edge_crosses_line(e, line) {
        return Err(TPathError::EdgeDoesNotCrossLine(e));
    }
    Ok(opposite_diagonal(t, e, ps).is_some_and(|d| side(d.a, line) != side(d.b, line)))
}

pub fn flip(t: &Triangulation, e: Segment, ps: &PointSet) -> Result<Triangulation, TPathError> {
    if !t.contains(e) {
        return Err(TPathError::EdgeNotInTriangulation(e));
    }
    let d = opposite_diagonal(t, e, ps).ok_or(TPathError::NotFlippable(e))?;
    let mut out = t.clone();
    out.edges.remove(&e);
    out.edges.insert(d);
    Ok(out)
}

fn compress(chain: &mut Vec<usize>) {
    chain.dedup();
}

/// Paths at `line + 1` compatible with a T-path at `line`.
///
/// Only the neighbourhood of the point that changes sides is rewritten. The
/// rewrite keeps a prefix of the old chain up to the locus, optionally
/// inserts a right vertex, the moving point, another right vertex, and
/// resumes on a suffix. Every candidate is checked against the T-path
/// definition and against crossing the parent.
pub fn tpath_successors(path: &TPath, ps: &PointSet) -> Result<Vec<TPath>, TPathError> {
    let line = path.line;
    let pi = &path.vertices;
    if line.0 + 1 >= ps.len() {
        return Err(TPathError::PreconditionViolated("no line after the last one".into()));
    }
    if let Err(v) = check_tpath(pi, line, ps) {
        return Err(TPathError::PreconditionViolated(format!("invalid parent path: {v:?}")));
    }
    let next = line.next();
    let p = line.0;
    let m = pi.len() - 1;
    let locus: (Option<usize>, Option<usize>) = match pi.iter().position(|&v| v == p) {
        Some(k) => {
            if pi[k + 1..].contains(&p) {
                return Err(TPathError::InternalInvariantViolation(format!("moving point {p} appears twice on the path")));
            }
            (k.checked_sub(1), if k < m { Some(k + 1) } else { None })
        }
        None => {
            let k = (1..m)
                .find(|&k| side(pi[k], line) == Side::Left && ps.in_triangle(pi[k - 1], pi[k], pi[k + 1], p))
                .ok_or_else(|| TPathError::InternalInvariantViolation(format!("moving point {p} lies in no triangle of the path")))?;
            (Some(k), Some(k))
        }
    };

    let mut prefixes: Vec<&[usize]> = vec![];
    match locus.0 {
        None => prefixes.push(&[]),
        Some(j) => {
            prefixes.push(&pi[..=j]);
            prefixes.push(&pi[..j]);
            if j == 1 {
                prefixes.push(&pi[1..2]);
            }
        }
    }
    let mut suffixes: Vec<&[usize]> = vec![];
    match locus.1 {
        None => suffixes.push(&[]),
        Some(j) => {
            suffixes.push(&pi[j..]);
            suffixes.push(&pi[j + 1..]);
            if j + 1 == m {
                suffixes.push(&pi[m - 1..m]);
            }
        }
    }

    let parent_edges: Vec<Segment> = chain_edges(pi).collect();
    let is_right = |v: usize| v > p;
    let free = |from: Option<&usize>| -> Vec<Option<usize>> {
        let mut c = vec![None];
        match from {
            Some(&u) if !is_right(u) => {
                c.extend(crate::geom::visible_points(u, &parent_edges, ps).into_iter().filter(|&x| is_right(x)).map(Some));
            }
            Some(_) => {}
            // A new chain end next to the moving point.
            None => c.extend((p + 1..ps.len()).map(Some)),
        }
        c
    };

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    let mut cand = Vec::with_capacity(pi.len() + 4);
    for pre in &prefixes {
        let xs = free(pre.last());
        for suf in &suffixes {
            let ys = free(suf.first());
            for x in &xs {
                for use_p in [true, false] {
                    for y in &ys {
                        cand.clear();
                        cand.extend_from_slice(pre);
                        cand.extend(x.iter());
                        if use_p {
                            cand.push(p);
                        }
                        cand.extend(y.iter());
                        cand.extend_from_slice(suf);
                        compress(&mut cand);
                        if seen.contains(&cand) {
                            continue;
                        }
                        seen.insert(cand.clone());
                        if check_tpath(&cand, next, ps).is_err() {
                            continue;
                        }
                        if chain_edges(&cand).any(|e| parent_edges.iter().any(|&f| ps.segments_cross(e, f))) {
                            continue;
                        }
                        out.push(TPath { vertices: cand.clone(), line: next });
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

/// The triangulation path family for the sweep.
#[derive(Clone, Copy, Debug, Default)]
pub struct TriSystem;

impl PathSystem for TriSystem {
    fn family(&self) -> Family {
        Family::Tri
    }

    fn successors(&self, path: &PathKey, line: SweepIndex, ps: &PointSet) -> Result<Vec<PathKey>, SweepError> {
        let parent = TPath { vertices: path.0.clone(), line };
        Ok(tpath_successors(&parent, ps)?.into_iter().map(|t| canonicalize(t.vertices, line.next(), ps)).collect())
    }

    fn validate(&self, path: &PathKey, line: SweepIndex, ps: &PointSet) -> bool {
        check_tpath(&path.0, line, ps).is_ok()
    }
}
