//! Explicit extremal colorings and an exhaustive enumerator of free colorings.

pub mod canonical;

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::arrowing::copies::{enumerate_copies, EdgeIndex};
use crate::arrowing::solver::{lit, Budget, Outcome, Solver};
use crate::coloring::{Coloring, Side};
use crate::containment::{contains_target, TargetKind};
use crate::error::ConstructionError;
use crate::formulas::{critical_bound_params, CriticalBoundParams};
use crate::graph::Graph;
use crate::graph_spec::GraphSpec;

pub use canonical::{canonical_form, isomorphic};

/// Largest host handled by [`enumerate_free_colorings`].
pub const FREE_ENUMERATION_MAX_EDGES: usize = 30;

/// A coloring built from a formula, together with the containment checks that certify it.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    #[serde(skip)]
    pub coloring: Coloring,
    pub host_spec: GraphSpec,
    pub red_target: String,
    pub blue_target: String,
    /// No red copy of the red target.
    pub red_free: bool,
    /// No blue copy of the blue target.
    pub blue_free: bool,
    pub params: CriticalBoundParams,
    /// Red block sizes in vertex order.
    pub blocks: Vec<usize>,
}

impl WitnessReport {
    pub fn is_free(&self) -> bool {
        self.red_free && self.blue_free
    }

    /// Upper bound on the path-critical number that this coloring certifies.
    pub fn certified_bound(&self) -> u64 {
        self.params.bound()
    }
}

/// Colors every host edge inside a block Red and every edge between blocks Blue.
fn block_coloring(host: Graph, blocks: &[usize]) -> Coloring {
    let mut block_of = Vec::with_capacity(host.order());
    for (b, &size) in blocks.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, size));
    }
    Coloring::from_fn(host, |u, v| block_of[u] == block_of[v])
}

/// Coloring of K_r ∖ P_{tn} with no red G and no blue H, showing that deleting a path on
/// tn vertices already breaks arrowing.
///
/// Red blocks, in vertex order: t copies of K_n ∖ P_n carrying the deleted path
/// consecutively, then k−t−1 copies of K_{n−1}, then K_{s−1}, where n = |V(G)|, k = χ(H),
/// s = s(H). Edges between blocks are Blue.
pub fn path_critical_witness(g: &TargetKind, h: &TargetKind, r: u64) -> Result<WitnessReport, ConstructionError> {
    let params = critical_bound_params(g, h, r)?;
    let CriticalBoundParams { k, s, n, t, .. } = params;
    let mut blocks = vec![n as usize; t as usize];
    blocks.extend(std::iter::repeat_n(n as usize - 1, (k - t - 1) as usize));
    if s > 1 {
        blocks.push(s as usize - 1);
    }
    blocks.retain(|&b| b > 0);
    debug_assert_eq!(blocks.iter().sum::<usize>() as u64, r);
    let host_spec = GraphSpec::minus(GraphSpec::Complete(r as u32), GraphSpec::Path((t * n) as u32));
    let host = host_spec.realize()?;
    let coloring = block_coloring(host, &blocks);
    let red_free = !contains_target(&coloring.monochromatic_subgraph(Side::Red), g);
    let blue_free = !contains_target(&coloring.monochromatic_subgraph(Side::Blue), h);
    let report = WitnessReport {
        coloring,
        host_spec,
        red_target: g.to_string(),
        blue_target: h.to_string(),
        red_free,
        blue_free,
        params,
        blocks,
    };
    if !report.is_free() {
        return Err(ConstructionError::NotFree(format!(
            "witness for ({g}, {h}) with r = {r}: red free {red_free}, blue free {blue_free}"
        )));
    }
    Ok(report)
}

/// Largest valid index for [`odd_split_coloring`] at parameter `n`.
pub fn odd_split_max_index(n: usize) -> usize {
    n.div_ceil(2) - 1
}

/// Coloring of K_{2n} with red K_{2i+1} ∪ K_{2n−2i−1} and blue the complete bipartite
/// graph between them; free of red nK_2 and blue K_3. Index 0 (red K_1 ∪ K_{2n−1}) is
/// included.
pub fn odd_split_coloring(n: usize, i: usize) -> Result<Coloring, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::Parameter(format!("n = {n} must be at least 2")));
    }
    if 2 * n > crate::graph::MAX_ORDER {
        return Err(ConstructionError::Parameter(format!("K_{} exceeds the vertex limit", 2 * n)));
    }
    let max = odd_split_max_index(n);
    if i > max {
        return Err(ConstructionError::IndexOutOfRange { index: i, max });
    }
    let c = block_coloring(Graph::complete(2 * n), &[2 * i + 1, 2 * n - 2 * i - 1]);
    if contains_target(&c.monochromatic_subgraph(Side::Red), &TargetKind::Matching(n as u32))
        || contains_target(&c.monochromatic_subgraph(Side::Blue), &TargetKind::Clique(3))
    {
        return Err(ConstructionError::NotFree(format!("odd split ({n}, {i})")));
    }
    Ok(c)
}

/// Every complete coloring of `host` with no red `red` and no blue `blue`, one per class of
/// color-preserving isomorphism. Representatives are the first class members met in
/// lexicographic order (Red before Blue over canonical edge indices).
pub fn enumerate_free_colorings(
    host: &Graph,
    red: &TargetKind,
    blue: &TargetKind,
) -> Result<Vec<Coloring>, ConstructionError> {
    let index = EdgeIndex::new(host);
    if index.len() > FREE_ENUMERATION_MAX_EDGES {
        return Err(ConstructionError::SizeLimit {
            edges: index.len(),
            limit: FREE_ENUMERATION_MAX_EDGES,
        });
    }
    let budget = Budget::new(u64::MAX);
    let mut solver = Solver::new(index.len(), (0..index.len()).collect(), &budget);
    for (target, red_side) in [(red, true), (blue, false)] {
        let fits = target.order() <= host.order() as u64;
        if fits && target.realize()?.edge_count() == 0 {
            return Ok(Vec::new());
        }
        let copies = enumerate_copies(host, &index, target, usize::MAX).expect("uncapped");
        for c in copies {
            // A red copy needs one Blue edge; a blue copy needs one Red edge.
            let clause: Vec<u32> = c.iter().map(|&e| lit(e as usize, !red_side)).collect();
            solver.add_clause(&clause);
        }
    }
    let mut classes: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut reps: Vec<Coloring> = Vec::new();
    let outcome = solver.for_each_model(|model| {
        let sides: Vec<Side> = model.iter().map(|&r| if r { Side::Red } else { Side::Blue }).collect();
        let c = Coloring::from_sides(host.clone(), &sides);
        classes.entry(canonical_form(&c)).or_insert_with(|| {
            reps.push(c);
            reps.len() - 1
        });
        ControlFlow::Continue(())
    });
    debug_assert_eq!(outcome, Outcome::Unsat);
    for c in &reps {
        debug_assert!(!contains_target(&c.monochromatic_subgraph(Side::Red), red));
        debug_assert!(!contains_target(&c.monochromatic_subgraph(Side::Blue), blue));
    }
    Ok(reps)
}
