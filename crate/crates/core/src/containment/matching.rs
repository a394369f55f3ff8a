//! Maximum cardinality matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

use crate::graph::{Bits, Graph};

const NONE: usize = usize::MAX;

pub fn max_matching_size(g: &Graph) -> usize {
    max_matching(g).len()
}

/// A maximum matching as a list of `(u, v)` pairs with `u < v`.
pub fn max_matching(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut mate = vec![NONE; n];
    // Greedy start; augmenting paths finish the job.
    for u in 0..n {
        if mate[u] == NONE {
            if let Some(v) = Bits(g.neighbors(u)).find(|&v| mate[v] == NONE) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }
    let mut search = Blossom::new(n);
    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        let mut v = search.find_path(g, &mate, root);
        while v != NONE {
            let pv = search.parent[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }
    (0..n).filter(|&u| mate[u] != NONE && u < mate[u]).map(|u| (u, mate[u])).collect()
}

struct Blossom {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn new(n: usize) -> Self {
        Blossom {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; mate.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Breadth-first search for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, g: &Graph, mate: &[usize], root: usize) -> usize {
        let n = g.order();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in Bits(g.neighbors(v)) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return to;
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        NONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bit;
    use crate::graph_spec::GraphSpec;
    use rand::{Rng, SeedableRng};

    /// Exhaustive oracle: the largest set of pairwise disjoint edges.
    fn brute_force(g: &Graph) -> usize {
        fn rec(edges: &[(usize, usize)], i: usize, used: u64) -> usize {
            if i == edges.len() {
                return 0;
            }
            let skip = rec(edges, i + 1, used);
            let (u, v) = edges[i];
            if used & (bit(u) | bit(v)) == 0 {
                skip.max(1 + rec(edges, i + 1, used | bit(u) | bit(v)))
            } else {
                skip
            }
        }
        rec(&g.edges(), 0, 0)
    }

    fn spec(s: &str) -> Graph {
        GraphSpec::parse(s).unwrap().realize().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(max_matching_size(&Graph::complete(5)), 2);
        assert_eq!(max_matching_size(&spec("K3 u K3")), 2);
        let g = spec("K5\\P5");
        assert_eq!(brute_force(&g), 2);
        assert_eq!(max_matching_size(&g), 2);
        assert_eq!(max_matching_size(&spec("K1 u K5")), 2);
        assert_eq!(max_matching_size(&Graph::complete(64)), 32);
    }

    #[test]
    fn odd_cycles_need_blossoms() {
        // Two triangles joined by a path: greedy matching gets stuck without contraction.
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)]).unwrap();
        assert_eq!(max_matching_size(&g), 4);
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let n = rng.gen_range(0..=10);
            let p = rng.gen_range(0.1..0.7);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            let m = max_matching(&g);
            assert_eq!(m.len(), brute_force(&g), "{g:?}");
            let mut seen = 0u64;
            for &(u, v) in &m {
                assert!(g.has_edge(u, v));
                assert_eq!(seen & (bit(u) | bit(v)), 0);
                seen |= bit(u) | bit(v);
            }
        }
    }
}
