//! Backtracking subgraph monomorphism (non-induced) with bitset candidate filtering.

use std::ops::ControlFlow;

use crate::graph::{bit, Bits, Graph};

/// Pattern vertices in search order together with, for each position, the earlier
/// positions adjacent to it.
struct Plan {
    seq: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    min_degree: Vec<usize>,
}

impl Plan {
    fn new(pattern: &Graph) -> Self {
        let p = pattern.order();
        let mut placed = 0u64;
        let mut seq = Vec::with_capacity(p);
        for _ in 0..p {
            // Most already-placed neighbors first, then highest degree, then lowest index.
            let next = (0..p)
                .filter(|&v| placed & bit(v) == 0)
                .max_by_key(|&v| {
                    (
                        (pattern.neighbors(v) & placed).count_ones(),
                        pattern.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("unplaced vertex remains");
            placed |= bit(next);
            seq.push(next);
        }
        let mut pos = vec![0; p];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        let earlier = seq
            .iter()
            .enumerate()
            .map(|(i, &v)| Bits(pattern.neighbors(v)).map(|w| pos[w]).filter(|&j| j < i).collect())
            .collect();
        let min_degree = seq.iter().map(|&v| pattern.degree(v)).collect();
        Plan { seq, earlier, min_degree }
    }
}

/// Calls `f` with every injective map `pattern vertex -> host vertex` that sends edges to
/// edges. `f` may stop the enumeration early.
pub fn for_each_embedding(
    host: &Graph,
    pattern: &Graph,
    mut f: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if pattern.order() > host.order() || pattern.edge_count() > host.edge_count() {
        return ControlFlow::Continue(());
    }
    let plan = Plan::new(pattern);
    let max_deg = pattern.max_degree();
    // degree_at_least[d]: host vertices with degree >= d.
    let degree_at_least: Vec<u64> = (0..=max_deg)
        .map(|d| (0..host.order()).filter(|&v| host.degree(v) >= d).fold(0, |m, v| m | bit(v)))
        .collect();
    let mut image = vec![0usize; pattern.order()];
    let mut by_pattern = vec![0usize; pattern.order()];
    rec(host, &plan, &degree_at_least, 0, 0, &mut image, &mut by_pattern, &mut f)
}

#[allow(clippy::too_many_arguments)]
fn rec(
    host: &Graph,
    plan: &Plan,
    degree_at_least: &[u64],
    depth: usize,
    used: u64,
    image: &mut [usize],
    by_pattern: &mut [usize],
    f: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if depth == plan.seq.len() {
        for (i, &v) in plan.seq.iter().enumerate() {
            by_pattern[v] = image[i];
        }
        return f(by_pattern);
    }
    let mut cand = degree_at_least[plan.min_degree[depth]] & !used;
    for &j in &plan.earlier[depth] {
        cand &= host.neighbors(image[j]);
    }
    for h in Bits(cand) {
        image[depth] = h;
        rec(host, plan, degree_at_least, depth + 1, used | bit(h), image, by_pattern, f)?;
    }
    ControlFlow::Continue(())
}

pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    for_each_embedding(host, pattern, |_| ControlFlow::Break(())).is_break()
}
