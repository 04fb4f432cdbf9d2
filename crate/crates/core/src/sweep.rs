//! Generic sweep-line dynamic program over per-line path families.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::geom::{PointSet, SweepIndex};
use crate::{chain_edges, Family};

/// A path as a vertex chain, oriented from the lowest crossing upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathKey(pub Vec<usize>);

impl PathKey {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn edges(&self) -> impl Iterator<Item = crate::geom::Segment> + '_ {
        chain_edges(&self.0)
    }
}

/// Orient a chain so it starts on the lowest hull edge crossing `line`.
pub fn canonicalize(mut chain: Vec<usize>, line: SweepIndex, ps: &PointSet) -> PathKey {
    let (low, _) = ps.hull_edges_crossing(line);
    if chain.len() >= 2 && crate::geom::Segment::new(chain[0], chain[1]) != low {
        chain.reverse();
    }
    PathKey(chain)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SweepError {
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("line {line} holds {paths} paths, above the budget of {limit}")]
    PathBudgetExceeded { line: usize, paths: usize, limit: usize },
    #[error("recorded tables hold {paths} paths, above the budget of {limit}")]
    MemoryBudgetExceeded { paths: usize, limit: usize },
}

/// A family of paths that the sweep can advance line by line.
pub trait PathSystem: Sync {
    fn family(&self) -> Family;

    fn initial(&self, ps: &PointSet) -> PathKey {
        initial_path(ps)
    }

    /// All paths at `line + 1` compatible with `path` at `line`.
    fn successors(&self, path: &PathKey, line: SweepIndex, ps: &PointSet) -> Result<Vec<PathKey>, SweepError>;

    fn validate(&self, path: &PathKey, line: SweepIndex, ps: &PointSet) -> bool;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathEntry {
    pub key: PathKey,
    pub count: BigUint,
    /// Indices into the previous line's entries; empty unless recorded.
    pub parents: Vec<u32>,
}

/// The paths at one line, sorted by key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathTable {
    pub line: SweepIndex,
    pub entries: Vec<PathEntry>,
}

impl PathTable {
    pub fn get(&self, key: &PathKey) -> Option<&PathEntry> {
        self.entries.binary_search_by(|e| e.key.cmp(key)).ok().map(|i| &self.entries[i])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &PathKey> {
        self.entries.iter().map(|e| &e.key)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepStats {
    /// Population of line `i` at position `i - 1`.
    pub t_per_line: Vec<usize>,
    pub t_max: usize,
    /// Wall time spent generating successors out of each line but the last.
    pub line_time: Vec<Duration>,
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub record_parents: bool,
    pub threads: usize,
    pub max_paths_per_line: Option<usize>,
    /// Cap on the total number of recorded paths when parents are kept.
    pub max_recorded_paths: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { record_parents: false, threads: 1, max_paths_per_line: None, max_recorded_paths: None }
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub count: BigUint,
    pub stats: SweepStats,
    /// Every line's table when parents were recorded.
    pub tables: Option<Vec<PathTable>>,
}

pub fn initial_path(ps: &PointSet) -> PathKey {
    let h = ps.hull();
    PathKey(vec![h[1], 0, h[h.len() - 1]])
}

pub fn paths_cross(k1: &PathKey, k2: &PathKey, ps: &PointSet) -> bool {
    k1.edges().any(|e| k2.edges().any(|f| ps.segments_cross(e, f)))
}

pub fn run_sweep(system: &dyn PathSystem, ps: &PointSet, record_parents: bool) -> Result<SweepOutcome, SweepError> {
    run_sweep_with(system, ps, &SweepOptions { record_parents, ..SweepOptions::default() })
}

pub fn run_sweep_with(system: &dyn PathSystem, ps: &PointSet, opts: &SweepOptions) -> Result<SweepOutcome, SweepError> {
    if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| SweepError::InternalInvariantViolation(format!("thread pool: {e}")))?;
        pool.install(|| sweep_inner(system, ps, opts, true))
    } else {
        sweep_inner(system, ps, opts, false)
    }
}

fn sweep_inner(system: &dyn PathSystem, ps: &PointSet, opts: &SweepOptions, parallel: bool) -> Result<SweepOutcome, SweepError> {
    let n = ps.len();
    let first = SweepIndex(1);
    let init = system.initial(ps);
    if !system.validate(&init, first, ps) {
        return Err(SweepError::InternalInvariantViolation(format!("initial path {:?} is invalid", init.0)));
    }
    let mut current = PathTable { line: first, entries: vec![PathEntry { key: init, count: BigUint::one(), parents: vec![] }] };
    let mut stats = SweepStats { t_per_line: vec![1], t_max: 1, line_time: Vec::new() };
    let mut kept: Vec<PathTable> = Vec::new();
    let mut recorded = 1usize;

    for i in 1..n - 1 {
        let line = SweepIndex(i);
        let started = Instant::now();
        let expand = |e: &PathEntry| -> Result<Vec<PathKey>, SweepError> {
            let mut succ = system.successors(&e.key, line, ps)?;
            succ.sort();
            succ.dedup();
            Ok(succ)
        };
        let expanded: Vec<Vec<PathKey>> = if parallel {
            current.entries.par_iter().map(expand).collect::<Result<_, _>>()?
        } else {
            current.entries.iter().map(expand).collect::<Result<_, _>>()?
        };
        stats.line_time.push(started.elapsed());

        let mut merged: BTreeMap<PathKey, (BigUint, Vec<u32>)> = BTreeMap::new();
        for (pi, succ) in expanded.into_iter().enumerate() {
            let parent_count = &current.entries[pi].count;
            for key in succ {
                let slot = merged.entry(key).or_insert_with(|| (BigUint::default(), Vec::new()));
                slot.0 += parent_count;
                if opts.record_parents {
                    slot.1.push(pi as u32);
                }
            }
        }
        if let Some(limit) = opts.max_paths_per_line {
            if merged.len() > limit {
                return Err(SweepError::PathBudgetExceeded { line: i + 1, paths: merged.len(), limit });
            }
        }
        let next = PathTable {
            line: line.next(),
            entries: merged.into_iter().map(|(key, (count, parents))| PathEntry { key, count, parents }).collect(),
        };
        stats.t_per_line.push(next.len());
        stats.t_max = stats.t_max.max(next.len());
        let prev = std::mem::replace(&mut current, next);
        if opts.record_parents {
            recorded += current.len();
            if let Some(limit) = opts.max_recorded_paths {
                if recorded > limit {
                    return Err(SweepError::MemoryBudgetExceeded { paths: recorded, limit });
                }
            }
            kept.push(prev);
        }
    }

    if current.len() != 1 {
        return Err(SweepError::InternalInvariantViolation(format!(
            "expected one path at the last line, found {}",
            current.len()
        )));
    }
    let count = current.entries[0].count.clone();
    let tables = if opts.record_parents {
        kept.push(current);
        Some(kept)
    } else {
        None
    };
    Ok(SweepOutcome { count, stats, tables })
}
