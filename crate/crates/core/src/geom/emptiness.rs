use super::{edge_crosses_line, side, PointSet, Segment, SweepIndex};

/// Point sets up to this size get a precomputed triangle-interior table.
pub const EMPTINESS_TABLE_THRESHOLD: usize = 64;

/// Bitmask of the points strictly inside triangle abc (only for table-backed sets).
pub fn triangle_interior_mask(a: usize, b: usize, c: usize, ps: &PointSet) -> Option<u64> {
    let n = ps.len();
    ps.interior_masks().map(|m| m[(a * n + b) * n + c])
}

fn scan_interior(a: usize, b: usize, c: usize, ps: &PointSet, keep: impl Fn(usize) -> bool) -> bool {
    (0..ps.len()).any(|q| q != a && q != b && q != c && keep(q) && ps.in_triangle(a, b, c, q))
}

pub fn triangle_empty(a: usize, b: usize, c: usize, ps: &PointSet) -> bool {
    match triangle_interior_mask(a, b, c, ps) {
        Some(m) => m == 0,
        None => !scan_interior(a, b, c, ps, |_| true),
    }
}

/// Emptiness of the wedge at apex `b`: triangle abd clipped to b's side of the line.
pub fn wedge_empty(a: usize, b: usize, d: usize, line: SweepIndex, ps: &PointSet) -> Result<bool, super::PreconditionViolated> {
    if !edge_crosses_line(Segment::new(a, b), line) || !edge_crosses_line(Segment::new(b, d), line) {
        return Err(super::PreconditionViolated("wedge edges must cross the sweep line"));
    }
    Ok(wedge_empty_unchecked(a, b, d, line, ps))
}

pub(crate) fn wedge_empty_unchecked(a: usize, b: usize, d: usize, line: SweepIndex, ps: &PointSet) -> bool {
    let bside = side(b, line);
    match triangle_interior_mask(a, b, d, ps) {
        Some(m) => {
            let left = if line.0 >= 64 { u64::MAX } else { (1u64 << line.0) - 1 };
            let mask = match bside {
                super::Side::Left => left,
                super::Side::Right => !left,
            };
            m & mask == 0
        }
        None => !scan_interior(a, b, d, ps, |q| side(q, line) == bside),
    }
}

/// Winding number of the closed polygon `poly` around q (q not on the boundary).
pub fn point_in_polygon(poly: &[usize], q: usize, ps: &PointSet) -> i32 {
    let p = ps.point(q);
    let mut wn = 0;
    for k in 0..poly.len() {
        let u = ps.point(poly[k]);
        let v = ps.point(poly[(k + 1) % poly.len()]);
        if u.y <= p.y {
            if v.y > p.y && super::cross(u, v, p) > 0 {
                wn += 1;
            }
        } else if v.y <= p.y && super::cross(u, v, p) < 0 {
            wn -= 1;
        }
    }
    wn
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{validate_point_set, Point};

    fn fan5() -> PointSet {
        let p = [(0, 0), (2, 2), (3, 7), (4, 8), (6, 18)].map(|(x, y)| Point::new(x, y));
        validate_point_set(&p).unwrap()
    }

    #[test]
    fn fan5_triangles() {
        let ps = fan5();
        assert!(triangle_empty(0, 1, 3, &ps));
        assert!(!triangle_empty(0, 3, 4, &ps));
        assert_eq!(triangle_interior_mask(0, 3, 4, &ps), Some(1 << 2));
    }

    #[test]
    fn fan5_wedges() {
        let ps = fan5();
        assert_eq!(wedge_empty(3, 1, 2, SweepIndex(2), &ps), Ok(true));
        assert_eq!(wedge_empty(2, 0, 4, SweepIndex(2), &ps), Ok(true));
        assert_eq!(wedge_empty(1, 0, 4, SweepIndex(1), &ps), Ok(true));
        // Apex (0,0) at l_3 with (3,7) on its side inside triangle.
        assert_eq!(wedge_empty(3, 0, 4, SweepIndex(3), &ps), Ok(false));
        assert!(wedge_empty(0, 1, 3, SweepIndex(2), &ps).is_err());
    }

    #[test]
    fn winding() {
        let ps = fan5();
        assert_eq!(point_in_polygon(&[0, 3, 4], 2, &ps).abs(), 1);
        assert_eq!(point_in_polygon(&[0, 1, 3], 2, &ps), 0);
    }
}
