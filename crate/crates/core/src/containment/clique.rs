//! Maximum clique by branch and bound with a greedy-coloring bound on bitsets.

use crate::graph::{above, bit, Bits, Graph};

pub fn max_clique_size(g: &Graph) -> usize {
    let mut best = 0;
    expand(g.adjacency(), g.vertex_mask(), 0, &mut best, usize::MAX);
    best
}

/// Whether `g` has a clique on `k` vertices; stops at the first one found.
pub fn has_clique(g: &Graph, k: usize) -> bool {
    if k <= 1 {
        return g.order() >= k;
    }
    let mut best = 0;
    expand(g.adjacency(), g.vertex_mask(), 0, &mut best, k)
}

/// Greedy sequential coloring of `cand`; returns vertices with their color numbers,
/// nondecreasing in color.
fn color_order(adj: &[u64], mut cand: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    let mut k = 0;
    while cand != 0 {
        k += 1;
        let mut q = cand;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !adj[v] & !bit(v);
            cand &= !bit(v);
            order.push(v);
            colors.push(k);
        }
    }
    (order, colors)
}

fn expand(adj: &[u64], mut cand: u64, size: usize, best: &mut usize, target: usize) -> bool {
    let (order, colors) = color_order(adj, cand);
    for i in (0..order.len()).rev() {
        if size + colors[i] <= *best {
            return false;
        }
        let v = order[i];
        let next = cand & adj[v];
        if next == 0 {
            if size + 1 > *best {
                *best = size + 1;
                if *best >= target {
                    return true;
                }
            }
        } else if expand(adj, next, size + 1, best, target) {
            return true;
        }
        cand &= !bit(v);
    }
    false
}

/// All cliques on exactly `k` vertices, as vertex masks.
pub fn k_cliques(g: &Graph, k: usize, mut f: impl FnMut(u64)) {
    fn rec(adj: &[u64], chosen: u64, cand: u64, need: usize, f: &mut impl FnMut(u64)) {
        if need == 0 {
            f(chosen);
            return;
        }
        if (cand.count_ones() as usize) < need {
            return;
        }
        for v in Bits(cand) {
            // Only extend with higher-indexed vertices so each clique appears once.
            rec(adj, chosen | bit(v), cand & adj[v] & above(v), need - 1, f);
        }
    }
    rec(g.adjacency(), 0, g.vertex_mask(), k, &mut f);
}
