//! Pseudo-triangulation paths.
//!
//! A PT-path alternates between the two sides of the sweep line. Between two
//! consecutive crossing edges it runs along one side, and together with the
//! line it bounds an empty pseudo-triangle whose only convex chain vertex is
//! its third corner.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use crate::geom::{crossing_cmp, edge_crosses_line, point_in_polygon, side, CrossTable, PointSet, Segment, Side, SweepIndex};
use crate::sweep::{canonicalize, PathKey, PathSystem, SweepError};
use crate::{chain_edges, Family};

/// Pointedness of `v` given its neighbours: some incident direction has all
/// the others strictly on its left, leaving a reflex gap behind it.
pub fn pointed_with(v: usize, nbrs: &[usize], ps: &PointSet) -> bool {
    nbrs.len() <= 2 || nbrs.iter().any(|&w| nbrs.iter().all(|&u| u == w || ps.ccw(v, w, u)))
}

/// Isolated vertices count as pointed.
pub fn is_pointed(edges: &[Segment], v: usize, ps: &PointSet) -> bool {
    let mut nbrs: Vec<usize> = edges.iter().filter(|e| e.has(v)).map(|e| e.other(v)).collect();
    nbrs.sort();
    nbrs.dedup();
    pointed_with(v, &nbrs, ps)
}

fn adjacency(edges: &[Segment], n: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        if !adj[e.a].contains(&e.b) {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
    }
    adj
}

pub fn all_pointed(edges: &[Segment], ps: &PointSet) -> bool {
    let adj = adjacency(edges, ps.len());
    (0..ps.len()).all(|v| pointed_with(v, &adj[v], ps))
}

pub fn is_planar(edges: &[Segment], ps: &PointSet) -> bool {
    (0..edges.len()).all(|i| (i + 1..edges.len()).all(|j| !ps.segments_cross(edges[i], edges[j])))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PseudoTriangulation {
    pub edges: BTreeSet<Segment>,
}

impl PseudoTriangulation {
    pub fn new(edges: impl IntoIterator<Item = Segment>) -> Self {
        PseudoTriangulation { edges: edges.into_iter().collect() }
    }

    pub fn contains(&self, e: Segment) -> bool {
        self.edges.contains(&e)
    }

    pub fn edge_list(&self) -> Vec<Segment> {
        self.edges.iter().copied().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtViolation {
    VertexOutOfRange,
    Crossing(Segment, Segment),
    NotPointed(usize),
    /// This edge can be added without breaking planarity or pointedness.
    NotMaximal(Segment),
}

pub fn check_pseudotriangulation(edges: &[Segment], ps: &PointSet) -> Result<(), PtViolation> {
    let n = ps.len();
    if edges.iter().any(|e| e.b >= n) {
        return Err(PtViolation::VertexOutOfRange);
    }
    let set: BTreeSet<Segment> = edges.iter().copied().collect();
    let list: Vec<Segment> = set.iter().copied().collect();
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            if ps.segments_cross(list[i], list[j]) {
                return Err(PtViolation::Crossing(list[i], list[j]));
            }
        }
    }
    let mut adj = adjacency(&list, n);
    if let Some(v) = (0..n).find(|&v| !pointed_with(v, &adj[v], ps)) {
        return Err(PtViolation::NotPointed(v));
    }
    for a in 0..n {
        for b in a + 1..n {
            let e = Segment::new(a, b);
            if set.contains(&e) || list.iter().any(|&f| ps.segments_cross(e, f)) {
                continue;
            }
            adj[a].push(b);
            adj[b].push(a);
            let ok = pointed_with(a, &adj[a], ps) && pointed_with(b, &adj[b], ps);
            adj[a].pop();
            adj[b].pop();
            if ok {
                return Err(PtViolation::NotMaximal(e));
            }
        }
    }
    Ok(())
}

pub fn validate_pseudotriangulation(edges: &[Segment], ps: &PointSet) -> bool {
    check_pseudotriangulation(edges, ps).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTPath {
    pub vertices: Vec<usize>,
    pub line: SweepIndex,
}

impl PTPath {
    /// Positions of the chain edges that cross the line.
    pub fn crossings(&self) -> Vec<usize> {
        chain_edges(&self.vertices).enumerate().filter(|(_, e)| edge_crosses_line(*e, self.line)).map(|(k, _)| k).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtPathViolation {
    TooShort,
    VertexOutOfRange,
    BadFirstEdge,
    BadLastEdge,
    RepeatedEdge { edge: usize },
    EdgesCross { first: usize, second: usize },
    NotPointed { vertex: usize },
    OrderNotIncreasing { edge: usize },
    RepeatedVertex { position: usize },
    /// The region closed at this crossing edge does not have one convex chain vertex.
    CornerCount { edge: usize, convex: usize },
    RegionNotEmpty { edge: usize, point: usize },
}

#[inline]
fn is_convex_turn(a: usize, b: usize, c: usize, s: Side, ps: &PointSet) -> bool {
    // Regions left of the line are traversed clockwise, right ones counterclockwise.
    match s {
        Side::Left => ps.cross(a, b, c) < 0,
        Side::Right => ps.cross(a, b, c) > 0,
    }
}

/// Some point on side `s` strictly inside the region closed by `poly`
/// (crossing-edge far endpoint, side chain, crossing-edge far endpoint).
fn region_intruder(poly: &[usize], s: Side, line: SweepIndex, ps: &PointSet) -> Option<usize> {
    let range = match s {
        Side::Left => 0..line.0,
        Side::Right => line.0..ps.len(),
    };
    range.filter(|q| !poly.contains(q)).find(|&q| point_in_polygon(poly, q, ps) != 0)
}

pub fn check_ptpath(chain: &[usize], line: SweepIndex, ps: &PointSet) -> Result<(), PtPathViolation> {
    use PtPathViolation::*;
    if chain.len() < 3 {
        return Err(TooShort);
    }
    if chain.iter().any(|&v| v >= ps.len()) {
        return Err(VertexOutOfRange);
    }
    let edges: Vec<Segment> = chain_edges(chain).collect();
    let (low, high) = ps.hull_edges_crossing(line);
    if edges[0] != low {
        return Err(BadFirstEdge);
    }
    if *edges.last().unwrap() != high {
        return Err(BadLastEdge);
    }
    let mut seen = HashSet::new();
    for (k, e) in edges.iter().enumerate() {
        if !seen.insert(*e) {
            return Err(RepeatedEdge { edge: k });
        }
    }
    for i in 0..edges.len() {
        for j in i + 2..edges.len() {
            if ps.segments_cross(edges[i], edges[j]) {
                return Err(EdgesCross { first: i, second: j });
            }
        }
    }
    let adj = adjacency(&edges, ps.len());
    if let Some(&v) = chain.iter().find(|&&v| !pointed_with(v, &adj[v], ps)) {
        return Err(NotPointed { vertex: v });
    }
    let crossings: Vec<usize> = (0..edges.len()).filter(|&k| edge_crosses_line(edges[k], line)).collect();
    for w in crossings.windows(2) {
        let (k1, k2) = (w[0], w[1]);
        if crossing_cmp(ps, line, edges[k1], edges[k2]) != Ordering::Less {
            return Err(OrderNotIncreasing { edge: k2 });
        }
        let sub = &chain[k1 + 1..=k2];
        let s = side(sub[0], line);
        for (i, v) in sub.iter().enumerate() {
            if sub[..i].contains(v) {
                return Err(RepeatedVertex { position: k1 + 1 + i });
            }
        }
        let convex = (k1 + 1..=k2).filter(|&j| is_convex_turn(chain[j - 1], chain[j], chain[j + 1], s, ps)).count();
        if convex != 1 {
            return Err(CornerCount { edge: k2, convex });
        }
        if let Some(q) = region_intruder(&chain[k1..=k2 + 1], s, line, ps) {
            return Err(RegionNotEmpty { edge: k2, point: q });
        }
    }
    Ok(())
}

pub fn validate_ptpath(path: &PTPath, ps: &PointSet) -> bool {
    check_ptpath(&path.vertices, path.line, ps).is_ok()
}

/// Depth-first construction of PT-paths at `line`.
///
/// Chain edges must be accepted by `allowed` and may not cross `obstacles`;
/// the union of the obstacles and the chain must stay pointed. With no
/// obstacles this lists every PT-path at the line.
pub fn search_ptpaths(line: SweepIndex, ps: &PointSet, obstacles: &[Segment], allowed: &dyn Fn(Segment) -> bool) -> Vec<Vec<usize>> {
    search_with(line, ps, obstacles, allowed, ps.cross_table())
}

fn search_with(line: SweepIndex, ps: &PointSet, obstacles: &[Segment], allowed: &dyn Fn(Segment) -> bool, table: Option<&CrossTable>) -> Vec<Vec<usize>> {
    let (low, high) = ps.hull_edges_crossing(line);
    let mut out = Vec::new();
    if !allowed(low) || obstacles.iter().any(|&o| ps.segments_cross(o, low) || ps.segments_cross(o, high)) {
        return out;
    }
    let mut obs: Vec<Segment> = obstacles.to_vec();
    obs.sort();
    obs.dedup();
    let (blocked, used_bits) = match table {
        Some(t) => {
            let mut frame = vec![0u64; t.words()];
            for &o in &obs {
                frame.iter_mut().zip(t.mask(o)).for_each(|(a, b)| *a |= b);
            }
            (frame, vec![0u64; t.words()])
        }
        None => (Vec::new(), Vec::new()),
    };
    let mut search = Search {
        ps,
        line,
        high,
        allowed,
        adj: adjacency(&obs, ps.len()),
        obstacles: obs,
        chain: Vec::new(),
        used: Vec::new(),
        table,
        blocked,
        used_bits,
        out: &mut out,
    };
    for start in [low.a, low.b] {
        let w = low.other(start);
        search.chain = vec![start];
        if search.push_edge(start, w) {
            search.extend(1, 0, low);
            search.pop_edge(start, w);
        }
    }
    out.sort();
    out
}

struct Search<'a> {
    ps: &'a PointSet,
    line: SweepIndex,
    high: Segment,
    allowed: &'a dyn Fn(Segment) -> bool,
    obstacles: Vec<Segment>,
    adj: Vec<Vec<usize>>,
    chain: Vec<usize>,
    used: Vec<Segment>,
    table: Option<&'a CrossTable>,
    /// Stack of frames, the last one marking every edge crossed by an
    /// obstacle or a used edge.
    blocked: Vec<u64>,
    used_bits: Vec<u64>,
    out: &'a mut Vec<Vec<usize>>,
}

impl Search<'_> {
    fn is_used(&self, e: Segment) -> bool {
        match self.table {
            Some(t) => CrossTable::test(&self.used_bits, t.slot(e)),
            None => self.used.contains(&e),
        }
    }

    fn is_blocked(&self, e: Segment) -> bool {
        match self.table {
            Some(t) => CrossTable::test(&self.blocked[self.blocked.len() - t.words()..], t.slot(e)),
            None => self.used.iter().chain(self.obstacles.iter()).any(|&f| self.ps.segments_cross(e, f)),
        }
    }
    /// Appends edge v-w; false (and no change) if pointedness breaks.
    fn push_edge(&mut self, v: usize, w: usize) -> bool {
        let e = Segment::new(v, w);
        let fresh = !self.adj[v].contains(&w);
        if fresh {
            self.adj[v].push(w);
            self.adj[w].push(v);
            if !pointed_with(v, &self.adj[v], self.ps) || !pointed_with(w, &self.adj[w], self.ps) {
                self.adj[v].pop();
                self.adj[w].pop();
                return false;
            }
        }
        if let Some(t) = self.table {
            let slot = t.slot(e);
            self.used_bits[slot / 64] |= 1 << (slot % 64);
            let top = self.blocked.len() - t.words();
            self.blocked.extend_from_within(top..);
            let n = self.blocked.len();
            self.blocked[n - t.words()..].iter_mut().zip(t.mask(e)).for_each(|(a, b)| *a |= b);
        }
        self.used.push(e);
        self.chain.push(w);
        true
    }

    fn pop_edge(&mut self, v: usize, w: usize) {
        let e = self.used.pop().unwrap();
        self.chain.pop();
        if let Some(t) = self.table {
            let slot = t.slot(e);
            self.used_bits[slot / 64] &= !(1 << (slot % 64));
            self.blocked.truncate(self.blocked.len() - t.words());
        }
        if self.obstacles.binary_search(&e).is_err() && !self.is_used(e) {
            self.adj[v].pop();
            self.adj[w].pop();
        }
    }

    /// `sub_start` is the chain position of the current side chain's first
    /// vertex, `convex` the convex turns seen so far on it.
    fn extend(&mut self, sub_start: usize, convex: usize, last_cross: Segment) {
        let ps = self.ps;
        let v = *self.chain.last().unwrap();
        let u = self.chain[self.chain.len() - 2];
        let s = side(v, self.line);
        for w in 0..ps.len() {
            if w == v {
                continue;
            }
            let e = Segment::new(v, w);
            if self.is_used(e) || self.is_blocked(e) || !(self.allowed)(e) {
                continue;
            }
            let turn = usize::from(is_convex_turn(u, v, w, s, ps));
            if side(w, self.line) == s {
                if convex + turn > 1 || self.chain[sub_start..].contains(&w) {
                    continue;
                }
                if self.push_edge(v, w) {
                    self.extend(sub_start, convex + turn, last_cross);
                    self.pop_edge(v, w);
                }
            } else {
                if convex + turn != 1 || crossing_cmp(ps, self.line, last_cross, e) != Ordering::Less {
                    continue;
                }
                let mut poly: Vec<usize> = self.chain[sub_start - 1..].to_vec();
                poly.push(w);
                if region_intruder(&poly, s, self.line, ps).is_some() {
                    continue;
                }
                if self.push_edge(v, w) {
                    if e == self.high {
                        self.out.push(self.chain.clone());
                    } else {
                        let start = self.chain.len() - 1;
                        self.extend(start, 0, e);
                    }
                    self.pop_edge(v, w);
                }
            }
        }
    }
}

/// Which side the supporting lines of two crossing edges meet on, `lower`
/// below `upper` along the line. `None` means parallel.
fn meeting_side(lower: Segment, upper: Segment, ps: &PointSet) -> Option<Side> {
    let d = |s: Segment| {
        let (a, b) = (ps.point(s.a), ps.point(s.b));
        ((b.x - a.x) as i128, (b.y - a.y) as i128)
    };
    let (d1, d2) = (d(lower), d(upper));
    // The upper edge turning counterclockwise relative to the lower one means
    // the gap between them widens to the right, so they meet on the left.
    match (d1.0 * d2.1 - d1.1 * d2.0).cmp(&0) {
        Ordering::Greater => Some(Side::Left),
        Ordering::Less => Some(Side::Right),
        Ordering::Equal => None,
    }
}

/// Crossing edges of `s` at `line`, bottom to top.
pub fn crossing_edges(s: &PseudoTriangulation, line: SweepIndex, ps: &PointSet) -> Vec<Segment> {
    let mut v: Vec<Segment> = s.edges.iter().copied().filter(|&e| edge_crosses_line(e, line)).collect();
    v.sort_by(|&a, &b| crossing_cmp(ps, line, a, b));
    v
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PtPathError {
    #[error("edge {0} does not cross the sweep line")]
    EdgeDoesNotCrossLine(Segment),
    #[error("edge {0} is not in the pseudo-triangulation")]
    EdgeNotInStructure(Segment),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl From<PtPathError> for SweepError {
    fn from(e: PtPathError) -> Self {
        SweepError::InternalInvariantViolation(e.to_string())
    }
}

/// Signpost test: hull edges are good; any other crossing edge is good when
/// its supporting line meets those of its two neighbours along the line on
/// opposite sides.
///
/// Parallel neighbours never meet. Such a pair is read as meeting at
/// infinity on both sides, so it can never be on the opposite side from the
/// other neighbour and the edge is not good.
pub fn pt_good_edge(s: &PseudoTriangulation, e: Segment, line: SweepIndex, ps: &PointSet) -> Result<bool, PtPathError> {
    if !edge_crosses_line(e, line) {
        return Err(PtPathError::EdgeDoesNotCrossLine(e));
    }
    if !s.contains(e) {
        return Err(PtPathError::EdgeNotInStructure(e));
    }
    if ps.is_hull_edge(e) {
        return Ok(true);
    }
    let order = crossing_edges(s, line, ps);
    let k = order.iter().position(|&f| f == e).unwrap();
    if k == 0 || k + 1 == order.len() {
        return Err(PtPathError::InternalInvariantViolation("interior edge outside the hull edges".into()));
    }
    Ok(good_between(order[k - 1], e, order[k + 1], ps))
}

fn good_between(below: Segment, e: Segment, above: Segment, ps: &PointSet) -> bool {
    match (meeting_side(below, e, ps), meeting_side(e, above, ps)) {
        (Some(a), Some(b)) => a != b,
        _ => false,
    }
}

/// Angular successor of `from` around `x`: the first neighbour met turning
/// counterclockwise (`ccw`) or clockwise from the ray x -> from.
fn turn_from(x: usize, from: usize, nbrs: &[usize], ccw: bool, ps: &PointSet) -> Option<usize> {
    let half = |z: usize| -> u8 { u8::from(!ps.ccw(x, from, z)) };
    let before = |a: usize, b: usize| -> bool {
        let (ha, hb) = (half(a), half(b));
        if ha != hb {
            ha < hb
        } else {
            ps.ccw(x, a, b)
        }
    };
    let mut best: Option<usize> = None;
    for &z in nbrs.iter().filter(|&&z| z != from) {
        best = match best {
            None => Some(z),
            Some(b) => {
                let z_first = if ccw { before(z, b) } else { before(b, z) };
                Some(if z_first { z } else { b })
            }
        };
    }
    best
}

/// The PT-path of `s` at `line`, built from its good edges.
///
/// Non-good crossing edges are removed. Each pair of consecutive good edges
/// is joined along the face of what remains that lies between them, on the
/// side where their supporting lines meet.
pub fn extract_ptpath(s: &PseudoTriangulation, line: SweepIndex, ps: &PointSet) -> Result<PTPath, PtPathError> {
    let bad = |m: String| PtPathError::InternalInvariantViolation(m);
    let order = crossing_edges(s, line, ps);
    if order.len() < 2 {
        return Err(bad("fewer than two crossing edges".into()));
    }
    let mut good = vec![order[0]];
    for k in 1..order.len() - 1 {
        if good_between(order[k - 1], order[k], order[k + 1], ps) {
            good.push(order[k]);
        }
    }
    good.push(*order.last().unwrap());
    let kept: Vec<Segment> = s.edges.iter().copied().filter(|e| !edge_crosses_line(*e, line) || good.contains(e)).collect();
    let adj = adjacency(&kept, ps.len());

    let endpoint = |e: Segment, sd: Side| if side(e.a, line) == sd { e.a } else { e.b };
    let mut chain: Vec<usize> = Vec::new();
    for w in good.windows(2) {
        let (e, f) = (w[0], w[1]);
        let sd = meeting_side(e, f, ps).ok_or_else(|| bad(format!("consecutive good edges {e} and {f} are parallel")))?;
        let (start, from) = (endpoint(e, sd), endpoint(e, sd.flip()));
        match chain.last() {
            None => chain.extend([from, start]),
            Some(&last) if last == from => chain.push(start),
            Some(_) => return Err(bad(format!("side chains do not alternate at {e}"))),
        }
        // The face above e is on the right when walking leftward along e.
        let ccw = sd == Side::Left;
        let target = endpoint(f, sd);
        let (mut prev, mut cur) = (from, start);
        let mut steps = 0;
        while cur != target || turn_from(cur, prev, &adj[cur], ccw, ps) != Some(f.other(cur)) {
            let next = turn_from(cur, prev, &adj[cur], ccw, ps).ok_or_else(|| bad("dead end in face walk".into()))?;
            if side(next, line) != sd {
                return Err(bad(format!("face walk from {e} toward {f} crossed the line")));
            }
            chain.push(next);
            prev = cur;
            cur = next;
            steps += 1;
            if steps > 2 * kept.len() + 2 {
                return Err(bad("face walk did not terminate".into()));
            }
        }
    }
    let last = *good.last().unwrap();
    chain.push(last.other(*chain.last().unwrap()));
    let path = PTPath { vertices: canonicalize(chain, line, ps).0, line };
    check_ptpath(&path.vertices, line, ps).map_err(|v| bad(format!("extracted chain {:?} is invalid: {v:?}", path.vertices)))?;
    Ok(path)
}

/// Non-crossing with a pointed union.
pub fn pt_compatible(a: &[usize], b: &[usize], ps: &PointSet) -> bool {
    let ea: Vec<Segment> = chain_edges(a).collect();
    let eb: Vec<Segment> = chain_edges(b).collect();
    if ea.iter().any(|&e| eb.iter().any(|&f| ps.segments_cross(e, f))) {
        return false;
    }
    let mut all = ea;
    all.extend(eb);
    all.sort();
    all.dedup();
    all_pointed(&all, ps)
}

/// Paths at `line + 1` that do not cross `path` and keep the union pointed.
pub fn ptpath_successors(path: &PTPath, ps: &PointSet) -> Result<Vec<PTPath>, PtPathError> {
    if path.line.0 + 1 >= ps.len() {
        return Err(PtPathError::PreconditionViolated("no line after the last one".into()));
    }
    if let Err(v) = check_ptpath(&path.vertices, path.line, ps) {
        return Err(PtPathError::PreconditionViolated(format!("invalid parent path: {v:?}")));
    }
    let next = path.line.next();
    let obstacles: Vec<Segment> = chain_edges(&path.vertices).collect();
    Ok(search_ptpaths(next, ps, &obstacles, &|_| true).into_iter().map(|vertices| PTPath { vertices, line: next }).collect())
}

/// The pointed pseudo-triangulation path family for the sweep.
#[derive(Clone, Copy, Debug, Default)]
pub struct PtSystem;

impl PathSystem for PtSystem {
    fn family(&self) -> Family {
        Family::Pt
    }

    fn successors(&self, path: &PathKey, line: SweepIndex, ps: &PointSet) -> Result<Vec<PathKey>, SweepError> {
        let parent = PTPath { vertices: path.0.clone(), line };
        Ok(ptpath_successors(&parent, ps)?.into_iter().map(|p| PathKey(p.vertices)).collect())
    }

    fn validate(&self, path: &PathKey, line: SweepIndex, ps: &PointSet) -> bool {
        check_ptpath(&path.0, line, ps).is_ok()
    }
}
