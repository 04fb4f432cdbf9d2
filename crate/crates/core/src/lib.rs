//! Exact counting of triangulations and pointed pseudo-triangulations of a
//! planar point set by a left-to-right sweep over crossing paths.
//!
//! The sweep keeps, for every sweep line, the set of admissible paths
//! crossing it together with the number of compatible path prefixes that
//! end there. Brute-force enumerators in [`oracle`] give ground truth for
//! small inputs, and [`sampler`] draws uniform structures from the sweep
//! tables.

pub mod analysis;
pub mod geom;
pub mod oracle;
pub mod ptpath;
pub mod sampler;
pub mod sweep;
pub mod tpath;

use std::fmt;
use std::str::FromStr;

use geom::Segment;

/// The structure family being counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Triangulations.
    Tri,
    /// Pointed pseudo-triangulations.
    Pt,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Tri => "tri",
            Family::Pt => "pt",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tri" => Ok(Family::Tri),
            "pt" => Ok(Family::Pt),
            other => Err(format!("unknown structure family '{other}' (expected tri or pt)")),
        }
    }
}

/// A sorted, duplicate-free edge list.
pub type EdgeList = Vec<Segment>;

pub(crate) fn canonical_edges(mut edges: Vec<Segment>) -> EdgeList {
    edges.sort();
    edges.dedup();
    edges
}

/// Edges of a vertex chain.
pub fn chain_edges(chain: &[usize]) -> impl Iterator<Item = Segment> + '_ {
    chain.windows(2).map(|w| Segment::new(w[0], w[1]))
}
