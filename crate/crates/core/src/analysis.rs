//! Path-count bounds and sweep reports.

use std::time::Duration;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::geom::PointSet;
use crate::sweep::SweepStats;
use crate::Family;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundSequence {
    pub k: usize,
    pub f: BigUint,
    pub g: BigUint,
}

/// `f_k` and `g_k` for `k = 0..=big_k`.
///
/// `s_k = sum_{i=1}^{k-1} f_i g_{k-i}`, `g_k = h_k + f_{k-1} + s_k`,
/// `f_k = g_k + s_k`, where `h_k` is 1 only at `k = 1`.
pub fn bound_sequence(big_k: usize) -> Vec<BoundSequence> {
    let mut f: Vec<BigUint> = vec![BigUint::zero()];
    let mut g: Vec<BigUint> = vec![BigUint::zero()];
    for k in 1..=big_k {
        let s: BigUint = (1..k).map(|i| &f[i] * &g[k - i]).sum();
        let h = if k == 1 { BigUint::one() } else { BigUint::zero() };
        let gk = h + &f[k - 1] + &s;
        f.push(&gk + s);
        g.push(gk);
    }
    f.into_iter().zip(g).enumerate().map(|(k, (f, g))| BoundSequence { k, f, g }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub n: usize,
    pub family: Family,
    pub count: BigUint,
    pub t_per_line: Vec<usize>,
    pub t_max: usize,
    pub elapsed: Duration,
    /// `t_max <= 9^n`; triangulations only.
    pub t_within_nine_pow_n: Option<bool>,
    pub t_max_le_count: bool,
}

pub fn report(stats: &SweepStats, ps: &PointSet, family: Family, count: &BigUint) -> SweepReport {
    let n = ps.len();
    let t_max = BigUint::from(stats.t_max);
    SweepReport {
        n,
        family,
        count: count.clone(),
        t_per_line: stats.t_per_line.clone(),
        t_max: stats.t_max,
        elapsed: stats.line_time.iter().sum(),
        t_within_nine_pow_n: (family == Family::Tri).then(|| t_max <= BigUint::from(9u32).pow(n as u32)),
        t_max_le_count: &t_max <= count,
    }
}
