//! Uniform sampling by walking the recorded sweep tables backwards.

use num_bigint::{BigUint, RandBigInt};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::geom::{PointSet, Segment};
use crate::ptpath::{all_pointed, pointed_with, validate_pseudotriangulation, PtSystem};
use crate::sweep::{run_sweep_with, PathKey, PathSystem, PathTable, SweepError, SweepOptions};
use crate::tpath::{is_triangulation, TriSystem};
use crate::{canonical_edges, EdgeList, Family};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SamplerError {
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error("incompatible path tuple: {0}")]
    IncompatibleTuple(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReconstructedStructure {
    pub family: Family,
    pub edges: EdgeList,
}

/// Recorded tables plus one drawn tuple.
#[derive(Clone, Debug)]
pub struct SampleRun {
    pub seed: u64,
    pub family: Family,
    pub tables: Vec<PathTable>,
    /// One path per line, first line first.
    pub tuple: Vec<PathKey>,
}

#[derive(Clone, Debug)]
pub struct SampleOptions {
    pub threads: usize,
    pub max_recorded_paths: Option<usize>,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { threads: 1, max_recorded_paths: Some(20_000_000) }
    }
}

pub fn system_for(family: Family) -> &'static dyn PathSystem {
    match family {
        Family::Tri => &TriSystem,
        Family::Pt => &PtSystem,
    }
}

pub fn record_tables(ps: &PointSet, family: Family, opts: &SampleOptions) -> Result<Vec<PathTable>, SamplerError> {
    let sweep = SweepOptions {
        record_parents: true,
        threads: opts.threads,
        max_recorded_paths: opts.max_recorded_paths,
        ..SweepOptions::default()
    };
    let out = run_sweep_with(system_for(family), ps, &sweep)?;
    out.tables.ok_or_else(|| SamplerError::InternalInvariantViolation("sweep kept no tables".into()))
}

/// The generator for draw `index`: one ChaCha stream per draw.
pub fn draw_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Walk from the last line back to the first, picking each parent with
/// probability proportional to its count.
pub fn draw_tuple(tables: &[PathTable], rng: &mut ChaCha20Rng) -> Result<Vec<PathKey>, SamplerError> {
    let bad = |m: String| SamplerError::InternalInvariantViolation(m);
    let last = tables.last().ok_or_else(|| bad("no tables".into()))?;
    if last.len() != 1 {
        return Err(bad(format!("{} paths at the last line", last.len())));
    }
    let mut idx = 0usize;
    let mut tuple = vec![last.entries[0].key.clone()];
    for t in (1..tables.len()).rev() {
        let entry = &tables[t].entries[idx];
        let prev = &tables[t - 1];
        let r = rng.gen_biguint_below(&entry.count);
        let mut acc = BigUint::default();
        let mut chosen = None;
        for &pi in &entry.parents {
            acc += &prev.entries[pi as usize].count;
            if r < acc {
                chosen = Some(pi as usize);
                break;
            }
        }
        if acc > entry.count {
            return Err(bad(format!("parent counts exceed the count at line {}", tables[t].line.0)));
        }
        idx = chosen.ok_or_else(|| bad(format!("parent counts fall short at line {}", tables[t].line.0)))?;
        tuple.push(prev.entries[idx].key.clone());
    }
    tuple.reverse();
    Ok(tuple)
}

pub fn sample_run(ps: &PointSet, family: Family, seed: u64, opts: &SampleOptions) -> Result<SampleRun, SamplerError> {
    let tables = record_tables(ps, family, opts)?;
    let tuple = draw_tuple(&tables, &mut draw_rng(seed, 0))?;
    Ok(SampleRun { seed, family, tables, tuple })
}

pub fn sample(ps: &PointSet, family: Family, seed: u64, m: usize) -> Result<Vec<ReconstructedStructure>, SamplerError> {
    sample_with(ps, family, seed, m, &SampleOptions::default())
}

pub fn sample_with(
    ps: &PointSet,
    family: Family,
    seed: u64,
    m: usize,
    opts: &SampleOptions,
) -> Result<Vec<ReconstructedStructure>, SamplerError> {
    let tables = record_tables(ps, family, opts)?;
    sample_from_tables(&tables, ps, family, seed, m, opts.threads)
}

pub fn sample_from_tables(
    tables: &[PathTable],
    ps: &PointSet,
    family: Family,
    seed: u64,
    m: usize,
    threads: usize,
) -> Result<Vec<ReconstructedStructure>, SamplerError> {
    let one = |k: usize| -> Result<ReconstructedStructure, SamplerError> {
        let tuple = draw_tuple(tables, &mut draw_rng(seed, k as u64))?;
        reconstruct(&tuple, ps, family)
    };
    if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| SamplerError::InternalInvariantViolation(format!("thread pool: {e}")))?;
        pool.install(|| (0..m).into_par_iter().map(one).collect())
    } else {
        (0..m).map(one).collect()
    }
}

fn all_candidates(n: usize) -> Vec<Segment> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| Segment::new(a, b))).collect()
}

/// The unique structure whose paths are `tuple`, completed greedily in lexicographic edge order.
pub fn reconstruct(tuple: &[PathKey], ps: &PointSet, family: Family) -> Result<ReconstructedStructure, SamplerError> {
    reconstruct_with_order(tuple, ps, family, &all_candidates(ps.len()))
}

/// `reconstruct` with an explicit completion order over candidate edges.
pub fn reconstruct_with_order(
    tuple: &[PathKey],
    ps: &PointSet,
    family: Family,
    order: &[Segment],
) -> Result<ReconstructedStructure, SamplerError> {
    let mut edges = canonical_edges(tuple.iter().flat_map(|k| k.edges()).chain(ps.hull_edges()).collect());
    if let Some(v) = edges.iter().find(|v| v.a >= ps.len() || v.b >= ps.len()) {
        return Err(SamplerError::IncompatibleTuple(format!("edge {}-{} leaves the point set", v.a, v.b)));
    }
    for (k, &e) in edges.iter().enumerate() {
        if let Some(&f) = edges[k + 1..].iter().find(|&&f| ps.segments_cross(e, f)) {
            return Err(SamplerError::IncompatibleTuple(format!("edges {}-{} and {}-{} cross", e.a, e.b, f.a, f.b)));
        }
    }
    if family == Family::Pt && !all_pointed(&edges, ps) {
        return Err(SamplerError::IncompatibleTuple("union of the paths is not pointed".into()));
    }

    let mut adj = vec![Vec::new(); ps.len()];
    for e in &edges {
        adj[e.a].push(e.b);
        adj[e.b].push(e.a);
    }
    for &e in order {
        if edges.contains(&e) || edges.iter().any(|&f| ps.segments_cross(e, f)) {
            continue;
        }
        if family == Family::Pt {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
            if !(pointed_with(e.a, &adj[e.a], ps) && pointed_with(e.b, &adj[e.b], ps)) {
                adj[e.a].pop();
                adj[e.b].pop();
                continue;
            }
        }
        edges.push(e);
    }
    edges.sort();
    let ok = match family {
        Family::Tri => is_triangulation(&edges, ps),
        Family::Pt => validate_pseudotriangulation(&edges, ps),
    };
    if !ok {
        return Err(SamplerError::InternalInvariantViolation(format!("completion is not a valid {family} structure")));
    }
    Ok(ReconstructedStructure { family, edges })
}
