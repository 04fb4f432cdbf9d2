use super::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunnelError {
    #[error("degenerate corridor: {0}")]
    DegenerateCorridor(&'static str),
}

/// Shortest path from `start` to `end` through a sleeve of triangles, each
/// sharing one edge with the next. Bends happen only at sleeve vertices.
pub fn shortest_homotopic_path(start: usize, end: usize, sleeve: &[[usize; 3]], ps: &PointSet) -> Result<Vec<usize>, FunnelError> {
    use FunnelError::DegenerateCorridor as Bad;
    if start == end {
        return Err(Bad("start equals end"));
    }
    let (Some(first), Some(last)) = (sleeve.first(), sleeve.last()) else {
        return Err(Bad("empty sleeve"));
    };
    if sleeve.iter().flatten().any(|&v| v >= ps.len()) {
        return Err(Bad("vertex out of range"));
    }
    if !first.contains(&start) || !last.contains(&end) {
        return Err(Bad("endpoints must lie on the end triangles"));
    }
    for (i, t) in sleeve.iter().enumerate() {
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return Err(Bad("repeated triangle vertex"));
        }
        let mut key = *t;
        key.sort();
        if sleeve[..i].iter().any(|u| {
            let mut k = *u;
            k.sort();
            k == key
        }) {
            return Err(Bad("sleeve revisits a triangle"));
        }
    }

    // Portals as (left, right) seen while walking from start to end.
    let mut portals = vec![(start, start)];
    for w in sleeve.windows(2) {
        let shared: Vec<usize> = w[0].iter().copied().filter(|v| w[1].contains(v)).collect();
        if shared.len() != 2 {
            return Err(Bad("consecutive triangles must share exactly one edge"));
        }
        let apex = *w[0].iter().find(|v| !shared.contains(v)).unwrap();
        let (u, v) = (shared[0], shared[1]);
        portals.push(if ps.ccw(apex, u, v) { (v, u) } else { (u, v) });
    }
    if portals.len() > 1 && (portals[1].0 == start || portals[1].1 == start) {
        return Err(Bad("start lies on the first portal"));
    }
    if portals.len() > 1 {
        let (l, r) = portals[portals.len() - 1];
        if l == end || r == end {
            return Err(Bad("end lies on the last portal"));
        }
    }
    portals.push((end, end));

    let area = |a: usize, b: usize, c: usize| ps.cross(a, b, c).signum();
    let mut path = vec![start];
    let (mut apex, mut left, mut right) = (start, start, start);
    let (mut left_i, mut right_i) = (0usize, 0usize);
    let mut i = 1;
    while i < portals.len() {
        let (pl, pr) = portals[i];
        // Tighten the right boundary.
        if area(apex, right, pr) >= 0 {
            if apex == right || area(apex, left, pr) < 0 {
                right = pr;
                right_i = i;
            } else {
                path.push(left);
                apex = left;
                right = apex;
                right_i = left_i;
                i = left_i + 1;
                continue;
            }
        }
        // Tighten the left boundary.
        if area(apex, left, pl) <= 0 {
            if apex == left || area(apex, right, pl) > 0 {
                left = pl;
                left_i = i;
            } else {
                path.push(right);
                apex = right;
                left = apex;
                left_i = right_i;
                i = right_i + 1;
                continue;
            }
        }
        i += 1;
    }
    if *path.last().unwrap() != end {
        path.push(end);
    }
    Ok(path)
}
