use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{edge_crosses_line, Point, PointSet, Segment, SweepIndex};

pub fn visible_points(source: usize, obstacles: &[Segment], ps: &PointSet) -> Vec<usize> {
    (0..ps.len())
        .filter(|&q| q != source)
        .filter(|&q| {
            let sight = Segment::new(source, q);
            !obstacles.iter().any(|&o| ps.segments_cross(sight, o))
        })
        .collect()
}

type QPoint = (BigRational, BigRational);

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn qp(p: Point) -> QPoint {
    (q(p.x), q(p.y))
}

fn qcross(a: &QPoint, b: &QPoint, c: &QPoint) -> BigRational {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

fn qsign(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn qsegments_cross(a: &QPoint, b: &QPoint, c: &QPoint, d: &QPoint) -> bool {
    let d1 = qsign(&qcross(a, b, c));
    let d2 = qsign(&qcross(a, b, d));
    let d3 = qsign(&qcross(c, d, a));
    let d4 = qsign(&qcross(c, d, b));
    d1 * d2 < 0 && d3 * d4 < 0
}

/// A concrete line realizing `l_i`, used only for rendering and visibility.
///
/// When the two neighbouring points have distinct x the line is vertical at
/// their mean abscissa. On an x tie it is tilted so that the lower point
/// falls on the left, matching the lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingLine {
    pub origin: (BigRational, BigRational),
    pub direction: (i64, i64),
}

impl SeparatingLine {
    pub fn new(ps: &PointSet, line: SweepIndex) -> Self {
        let a = ps.point(line.0 - 1);
        let b = ps.point(line.0);
        let two = BigInt::from(2);
        if a.x < b.x {
            SeparatingLine {
                origin: (BigRational::new(BigInt::from(a.x + b.x), two), q(0)),
                direction: (0, 1),
            }
        } else {
            let (lo, hi) = ps.points().iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p.y), hi.max(p.y)));
            let k = 2 * (hi - lo + 1);
            SeparatingLine {
                origin: (q(a.x), BigRational::new(BigInt::from(a.y + b.y), two)),
                direction: (-1, k),
            }
        }
    }

    pub fn at(&self, t: &BigRational) -> RationalPoint {
        RationalPoint {
            x: &self.origin.0 + t * q(self.direction.0),
            y: &self.origin.1 + t * q(self.direction.1),
        }
    }

    /// The origin in floating point, for drawing.
    pub fn approx_origin(&self) -> (f64, f64) {
        let f = |v: &BigRational| v.to_f64().unwrap_or(f64::NAN);
        (f(&self.origin.0), f(&self.origin.1))
    }

    /// Parameter where the supporting line of ab meets this line.
    fn meet(&self, a: &QPoint, b: &QPoint) -> Option<BigRational> {
        let d = (q(self.direction.0), q(self.direction.1));
        let ab = (&b.0 - &a.0, &b.1 - &a.1);
        let den = &ab.0 * &d.1 - &ab.1 * &d.0;
        if den.is_zero() {
            return None;
        }
        let am = (&a.0 - &self.origin.0, &a.1 - &self.origin.1);
        let num = &ab.0 * &am.1 - &ab.1 * &am.0;
        Some(num / den)
    }

    fn point(&self, t: &BigRational) -> QPoint {
        let p = self.at(t);
        (p.x, p.y)
    }
}

/// A rational point on a separating line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalBound {
    /// A crossing edge (obstacle or hull edge) meets the line here.
    Edge(Segment),
    /// The sight line from the source grazes this obstacle endpoint.
    Shadow(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalEnd {
    /// Parameter along [`SeparatingLine`]; larger is higher.
    pub t: BigRational,
    pub bound: IntervalBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineInterval {
    pub lo: IntervalEnd,
    pub hi: IntervalEnd,
}

impl LineInterval {
    pub fn contains(&self, t: &BigRational) -> bool {
        &self.lo.t <= t && t <= &self.hi.t
    }
}

/// Maximal pieces of the hull's cut by `l_i` that `p` sees past `obstacles`,
/// bottom to top.
pub fn visibility_interval(p: usize, line: SweepIndex, obstacles: &[Segment], ps: &PointSet) -> Vec<LineInterval> {
    let sl = SeparatingLine::new(ps, line);
    let (lo_hull, hi_hull) = ps.hull_edges_crossing(line);
    let meet_seg = |s: Segment| sl.meet(&qp(ps.point(s.a)), &qp(ps.point(s.b))).expect("crossing edge meets the line");
    let t_lo = meet_seg(lo_hull);
    let t_hi = meet_seg(hi_hull);

    let mut critical: Vec<IntervalEnd> = vec![
        IntervalEnd { t: t_lo.clone(), bound: IntervalBound::Edge(lo_hull) },
        IntervalEnd { t: t_hi.clone(), bound: IntervalBound::Edge(hi_hull) },
    ];
    let src = qp(ps.point(p));
    for &o in obstacles {
        if edge_crosses_line(o, line) {
            critical.push(IntervalEnd { t: meet_seg(o), bound: IntervalBound::Edge(o) });
        }
        for v in [o.a, o.b] {
            if v == p {
                continue;
            }
            if let Some(t) = sl.meet(&src, &qp(ps.point(v))) {
                critical.push(IntervalEnd { t, bound: IntervalBound::Shadow(v) });
            }
        }
    }
    critical.retain(|c| c.t >= t_lo && c.t <= t_hi);
    critical.sort_by(|a, b| a.t.cmp(&b.t));
    critical.dedup_by(|b, a| a.t == b.t);

    let obstacle_pts: Vec<(QPoint, QPoint, Segment)> =
        obstacles.iter().map(|&o| (qp(ps.point(o.a)), qp(ps.point(o.b)), o)).collect();
    let sees = |t: &BigRational| {
        let x = sl.point(t);
        !obstacle_pts.iter().any(|(a, b, o)| !o.has(p) && qsegments_cross(&src, &x, a, b))
    };

    let mut out: Vec<LineInterval> = Vec::new();
    let two = q(2);
    for w in critical.windows(2) {
        let mid = (&w[0].t + &w[1].t) / &two;
        if !sees(&mid) {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.hi.t == w[0].t => last.hi = w[1].clone(),
            _ => out.push(LineInterval { lo: w[0].clone(), hi: w[1].clone() }),
        }
    }
    out
}
