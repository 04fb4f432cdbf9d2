//! Exact integer geometry on a lexicographically sorted point set.
//!
//! Sweep lines are never given coordinates. Line `l_i` separates the first
//! `i` points of the sorted order from the rest, which realizes an
//! infinitesimal rotation of the plane that removes ties in x.

mod emptiness;
mod funnel;
mod visibility;

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

pub(crate) use emptiness::wedge_empty_unchecked;
pub use emptiness::{point_in_polygon, triangle_empty, triangle_interior_mask, wedge_empty, EMPTINESS_TABLE_THRESHOLD};
pub use funnel::{shortest_homotopic_path, FunnelError};
pub use visibility::{visibility_interval, visible_points, IntervalBound, IntervalEnd, LineInterval, RationalPoint, SeparatingLine};

/// Largest accepted absolute coordinate value.
pub const MAX_COORD: i64 = i32::MAX as i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Cw,
    Ccw,
    Collinear,
}

/// Twice the signed area of triangle abc.
#[inline]
pub fn cross(a: Point, b: Point, c: Point) -> i128 {
    let (bx, by) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (cx, cy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    bx * cy - by * cx
}

pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    match cross(a, b, c).cmp(&0) {
        Ordering::Greater => Orientation::Ccw,
        Ordering::Less => Orientation::Cw,
        Ordering::Equal => Orientation::Collinear,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointSetError {
    #[error("duplicate point {0}")]
    DuplicatePoint(Point),
    #[error("collinear triple {0}, {1}, {2}")]
    CollinearTriple(Point, Point, Point),
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("coordinate of {0} exceeds the supported range of +-{MAX_COORD}")]
    CoordinateOutOfRange(Point),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("precondition violated: {0}")]
pub struct PreconditionViolated(pub &'static str);

/// An edge between two vertex indices, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub a: usize,
    pub b: usize,
}

impl Segment {
    pub fn new(u: usize, v: usize) -> Self {
        assert_ne!(u, v, "degenerate segment");
        if u < v {
            Segment { a: u, b: v }
        } else {
            Segment { a: v, b: u }
        }
    }

    pub fn has(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Sweep line `l_i`, `1 <= i <= n-1`, between sorted points `i` and `i+1`
/// (1-based). With 0-based vertex indices, vertex `v` is left iff `v < i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SweepIndex(pub usize);

impl SweepIndex {
    pub fn next(self) -> SweepIndex {
        SweepIndex(self.0 + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[inline]
pub fn side(v: usize, line: SweepIndex) -> Side {
    if v < line.0 {
        Side::Left
    } else {
        Side::Right
    }
}

#[inline]
pub fn edge_crosses_line(s: Segment, line: SweepIndex) -> bool {
    s.a < line.0 && s.b >= line.0
}

/// A validated point set: distinct points in general position, sorted by (x, y).
pub struct PointSet {
    points: Vec<Point>,
    hull: Vec<usize>,
    on_hull: Vec<bool>,
    interior_masks: OnceLock<Option<Vec<u64>>>,
    cross_table: OnceLock<Option<CrossTable>>,
}

/// For every vertex pair, the bitset of vertex pairs whose segments cross it
/// properly. A pair `a < b` occupies bit `a * n + b`.
pub struct CrossTable {
    n: usize,
    words: usize,
    masks: Vec<u64>,
}

impl CrossTable {
    fn build(ps: &PointSet) -> Self {
        let n = ps.len();
        let words = (n * n).div_ceil(64);
        let mut t = CrossTable { n, words, masks: vec![0; n * n * words] };
        let edges: Vec<Segment> = (0..n).flat_map(|a| (a + 1..n).map(move |b| Segment::new(a, b))).collect();
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                if ps.segments_cross(e, f) {
                    let (se, sf) = (t.slot(e), t.slot(f));
                    t.masks[se * words + sf / 64] |= 1 << (sf % 64);
                    t.masks[sf * words + se / 64] |= 1 << (se % 64);
                }
            }
        }
        t
    }

    pub fn slot(&self, e: Segment) -> usize {
        e.a * self.n + e.b
    }

    /// Length in words of every mask.
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn mask(&self, e: Segment) -> &[u64] {
        let s = self.slot(e);
        &self.masks[s * self.words..(s + 1) * self.words]
    }

    pub fn test(mask: &[u64], slot: usize) -> bool {
        mask[slot / 64] >> (slot % 64) & 1 == 1
    }
}

impl Clone for PointSet {
    fn clone(&self) -> Self {
        PointSet {
            points: self.points.clone(),
            hull: self.hull.clone(),
            on_hull: self.on_hull.clone(),
            interior_masks: OnceLock::new(),
            cross_table: OnceLock::new(),
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointSet").field("points", &self.points).finish()
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for PointSet {}

pub fn validate_point_set(raw: &[Point]) -> Result<PointSet, PointSetError> {
    if raw.len() < 3 {
        return Err(PointSetError::TooFewPoints(raw.len()));
    }
    if let Some(p) = raw.iter().find(|p| p.x.abs() > MAX_COORD || p.y.abs() > MAX_COORD) {
        return Err(PointSetError::CoordinateOutOfRange(*p));
    }
    let mut points = raw.to_vec();
    points.sort();
    if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
        return Err(PointSetError::DuplicatePoint(w[0]));
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for k in j + 1..points.len() {
                if cross(points[i], points[j], points[k]) == 0 {
                    return Err(PointSetError::CollinearTriple(points[i], points[j], points[k]));
                }
            }
        }
    }
    let hull = monotone_hull(&points);
    let mut on_hull = vec![false; points.len()];
    for &h in &hull {
        on_hull[h] = true;
    }
    Ok(PointSet { points, hull, on_hull, interior_masks: OnceLock::new(), cross_table: OnceLock::new() })
}

/// Andrew's monotone chain on already sorted, general-position points.
/// Returns the CCW cycle starting at vertex 0.
fn monotone_hull(pts: &[Point]) -> Vec<usize> {
    let mut lower: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while lower.len() >= 2 && cross(pts[lower[lower.len() - 2]], pts[lower[lower.len() - 1]], pts[i]) <= 0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for i in (0..pts.len()).rev() {
        while upper.len() >= 2 && cross(pts[upper[upper.len() - 2]], pts[upper[upper.len() - 1]], pts[i]) <= 0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn convex_hull(ps: &PointSet) -> Vec<usize> {
    ps.hull.clone()
}

#[inline]
pub fn segments_cross(s1: Segment, s2: Segment, ps: &PointSet) -> bool {
    ps.segments_cross(s1, s2)
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn point(&self, v: usize) -> Point {
        self.points[v]
    }

    pub fn hull(&self) -> &[usize] {
        &self.hull
    }

    pub fn is_hull_vertex(&self, v: usize) -> bool {
        self.on_hull[v]
    }

    pub fn interior_count(&self) -> usize {
        self.len() - self.hull.len()
    }

    pub fn lines(&self) -> impl Iterator<Item = SweepIndex> {
        (1..self.len()).map(SweepIndex)
    }

    #[inline]
    pub fn cross(&self, a: usize, b: usize, c: usize) -> i128 {
        cross(self.points[a], self.points[b], self.points[c])
    }

    /// True iff c is strictly left of the directed line a -> b.
    #[inline]
    pub fn ccw(&self, a: usize, b: usize, c: usize) -> bool {
        self.cross(a, b, c) > 0
    }

    pub fn is_hull_edge(&self, s: Segment) -> bool {
        let h = self.hull.len();
        (0..h).any(|k| Segment::new(self.hull[k], self.hull[(k + 1) % h]) == s)
    }

    pub fn hull_edges(&self) -> Vec<Segment> {
        let h = self.hull.len();
        (0..h).map(|k| Segment::new(self.hull[k], self.hull[(k + 1) % h])).collect()
    }

    /// The two hull edges crossing `line`: (lowest, highest) along the line.
    pub fn hull_edges_crossing(&self, line: SweepIndex) -> (Segment, Segment) {
        let h = self.hull.len();
        let mut lower = None;
        let mut upper = None;
        for k in 0..h {
            let (u, v) = (self.hull[k], self.hull[(k + 1) % h]);
            let s = Segment::new(u, v);
            if edge_crosses_line(s, line) {
                // CCW traversal runs left to right along the lower chain.
                if u < v {
                    lower = Some(s);
                } else {
                    upper = Some(s);
                }
            }
        }
        (lower.expect("hull crosses every sweep line"), upper.expect("hull crosses every sweep line"))
    }

    pub fn segments_cross(&self, s1: Segment, s2: Segment) -> bool {
        if s1.a == s2.a || s1.a == s2.b || s1.b == s2.a || s1.b == s2.b {
            return false;
        }
        let d1 = self.cross(s1.a, s1.b, s2.a).signum();
        let d2 = self.cross(s1.a, s1.b, s2.b).signum();
        if d1 == d2 {
            return false;
        }
        let d3 = self.cross(s2.a, s2.b, s1.a).signum();
        let d4 = self.cross(s2.a, s2.b, s1.b).signum();
        d3 != d4
    }

    /// True iff q lies strictly inside triangle abc.
    pub fn in_triangle(&self, a: usize, b: usize, c: usize, q: usize) -> bool {
        let o = self.cross(a, b, c).signum();
        self.cross(a, b, q).signum() == o && self.cross(b, c, q).signum() == o && self.cross(c, a, q).signum() == o
    }

    /// Crossing bitsets, built on first use for sets up to the table threshold.
    pub fn cross_table(&self) -> Option<&CrossTable> {
        self.cross_table.get_or_init(|| (self.len() <= EMPTINESS_TABLE_THRESHOLD).then(|| CrossTable::build(self))).as_ref()
    }

    pub(crate) fn interior_masks(&self) -> Option<&Vec<u64>> {
        self.interior_masks
            .get_or_init(|| {
                let n = self.len();
                if n > EMPTINESS_TABLE_THRESHOLD {
                    return None;
                }
                let mut masks = vec![0u64; n * n * n];
                for a in 0..n {
                    for b in a + 1..n {
                        for c in b + 1..n {
                            let mut m = 0u64;
                            for q in 0..n {
                                if q != a && q != b && q != c && self.in_triangle(a, b, c, q) {
                                    m |= 1 << q;
                                }
                            }
                            for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                                masks[(x * n + y) * n + z] = m;
                            }
                        }
                    }
                }
                Some(masks)
            })
            .as_ref()
    }
}

/// Order of two crossing edges along `line`, bottom to top.
///
/// Both edges must cross the line and must not properly cross each other.
pub fn crossing_cmp(ps: &PointSet, line: SweepIndex, e: Segment, f: Segment) -> Ordering {
    if e == f {
        return Ordering::Equal;
    }
    debug_assert!(edge_crosses_line(e, line) && edge_crosses_line(f, line));
    // With a < b and both crossing, a is the left endpoint.
    let f_above = if e.a == f.a {
        ps.ccw(e.a, e.b, f.b)
    } else if e.b == f.b || f.a > e.a {
        ps.ccw(e.a, e.b, f.a)
    } else {
        !ps.ccw(f.a, f.b, e.a)
    };
    if f_above {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}
