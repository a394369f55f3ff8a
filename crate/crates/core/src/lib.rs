//! Ramsey arrowing search and verification.
//!
//! Decides whether a host graph F arrows (G, H), i.e. whether every red/blue coloring of
//! F's edges contains a red G or a blue H, and builds Ramsey numbers, critical Ramsey
//! numbers and explicit extremal colorings on top of that predicate.

pub mod arrowing;
pub mod coloring;
pub mod constructions;
pub mod containment;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod graph_spec;
pub mod verify;

pub use coloring::{Coloring, EdgeColor, EdgeTriple, Side};
pub use containment::{contains_target, TargetKind};
pub use graph::{Graph, GraphStats};
pub use graph_spec::GraphSpec;
