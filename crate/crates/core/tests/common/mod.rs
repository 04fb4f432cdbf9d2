#![allow(dead_code)]

use sweepcount_core::geom::PointSet;
use sweepcount_core::oracle::{convex_position, fan5, random_point_set};

/// Convex sets 3..=max_n, FAN5, and `per_n` seeded random sets for each n in 4..=max_n.
pub fn instances(max_n: usize, per_n: u64) -> Vec<PointSet> {
    let mut v: Vec<PointSet> = (3..=max_n).map(convex_position).collect();
    v.push(fan5());
    for n in 4..=max_n {
        for seed in 0..per_n {
            v.push(random(n, seed));
        }
    }
    v
}

/// Alternates coordinate boxes of side 8, 38 and 68 so that some sets have x ties.
pub fn random(n: usize, seed: u64) -> PointSet {
    random_point_set(n, 8 + (seed as i64 % 3) * 30, 1000 * n as u64 + seed)
}
