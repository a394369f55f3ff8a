//! Does a graph contain a (not necessarily induced) copy of a target?
//!
//! Each named family has a dedicated detector; anything else goes through the generic
//! backtracking matcher in [`subgraph`].

pub mod clique;
pub mod matching;
pub mod subgraph;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Bits, Graph};
use crate::graph_spec::GraphSpec;

pub use clique::{has_clique, max_clique_size};
pub use matching::{max_matching, max_matching_size};

/// A target graph, tagged with its family when it has one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TargetKind {
    Clique(u32),
    /// K_{1,n}
    Star(u32),
    /// Path on n vertices.
    Path(u32),
    /// mK_2
    Matching(u32),
    /// K_2 + mK_1
    Book(u32),
    /// K_1 + nK_2
    Fan(u32),
    Generic(GraphSpec),
}

impl TargetKind {
    /// Picks the specialized family for a leaf spec, `Generic` otherwise.
    pub fn from_spec(spec: &GraphSpec) -> Self {
        match *spec {
            GraphSpec::Complete(m) => TargetKind::Clique(m),
            GraphSpec::Star(n) => TargetKind::Star(n),
            GraphSpec::Path(n) => TargetKind::Path(n),
            GraphSpec::Matching(m) => TargetKind::Matching(m),
            GraphSpec::Book(m) => TargetKind::Book(m),
            GraphSpec::Fan(n) => TargetKind::Fan(n),
            _ => TargetKind::Generic(spec.clone()),
        }
    }

    pub fn to_spec(&self) -> GraphSpec {
        match *self {
            TargetKind::Clique(m) => GraphSpec::Complete(m),
            TargetKind::Star(n) => GraphSpec::Star(n),
            TargetKind::Path(n) => GraphSpec::Path(n),
            TargetKind::Matching(m) => GraphSpec::Matching(m),
            TargetKind::Book(m) => GraphSpec::Book(m),
            TargetKind::Fan(n) => GraphSpec::Fan(n),
            TargetKind::Generic(ref s) => s.clone(),
        }
    }

    pub fn order(&self) -> u64 {
        self.to_spec().order()
    }

    pub fn realize(&self) -> Result<Graph, GraphError> {
        self.to_spec().realize()
    }
}

impl From<GraphSpec> for TargetKind {
    fn from(spec: GraphSpec) -> Self {
        TargetKind::from_spec(&spec)
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_spec())
    }
}

/// Whether `g` contains a subgraph isomorphic to the realized target.
pub fn contains_target(g: &Graph, t: &TargetKind) -> bool {
    if t.order() > g.order() as u64 {
        return false;
    }
    match *t {
        TargetKind::Clique(m) => has_clique(g, m as usize),
        TargetKind::Star(n) => g.max_degree() >= n as usize,
        TargetKind::Path(n) => g.has_path_of_order(n as usize),
        TargetKind::Matching(m) => max_matching_size(g) >= m as usize,
        TargetKind::Book(m) => has_book(g, m as usize),
        TargetKind::Fan(n) => has_fan(g, n as usize),
        TargetKind::Generic(ref spec) => {
            let pattern = spec.realize().expect("order bounded by host");
            subgraph::contains_subgraph(g, &pattern)
        }
    }
}

/// Some edge `uv` with at least `m` common neighbors.
fn has_book(g: &Graph, m: usize) -> bool {
    (0..g.order()).any(|u| {
        Bits(g.neighbors(u) & crate::graph::above(u))
            .any(|v| (g.neighbors(u) & g.neighbors(v)).count_ones() as usize >= m)
    })
}

/// Some vertex whose neighborhood holds `n` disjoint edges.
fn has_fan(g: &Graph, n: usize) -> bool {
    (0..g.order()).any(|v| g.degree(v) >= 2 * n && max_matching_size(&g.induced(g.neighbors(v))) >= n)
}
