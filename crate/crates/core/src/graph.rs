//! Small simple undirected graphs backed by one `u64` neighbor mask per vertex.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Hard limit on the number of vertices of any graph.
pub const MAX_ORDER: usize = 64;

/// Largest order accepted by the exact longest-path dynamic program.
pub const LONGEST_PATH_MAX_ORDER: usize = 20;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask of all vertices with index greater than `v`.
#[inline]
pub(crate) fn above(v: usize) -> u64 {
    u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0)
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// A simple undirected graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `order` vertices. Panics if `order > 64`.
    pub fn empty(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "graph order {order} exceeds {MAX_ORDER}");
        Graph { adj: vec![0; order] }
    }

    pub fn try_empty(order: usize) -> Result<Self, GraphError> {
        if order > MAX_ORDER {
            return Err(GraphError::OrderOverflow { order: order as u64 });
        }
        Ok(Graph::empty(order))
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Graph::empty(order);
        let all = low_mask(order);
        for v in 0..order {
            g.adj[v] = all & !bit(v);
        }
        g
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::try_empty(order)?;
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    order,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbor masks. The masks must be symmetric and loop-free.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(GraphError::OrderOverflow { order: n as u64 });
        }
        for (v, &row) in adj.iter().enumerate() {
            if row & !low_mask(n) != 0 {
                return Err(GraphError::VertexOutOfRange { vertex: 63 - row.leading_zeros() as usize, order: n });
            }
            if row & bit(v) != 0 {
                return Err(GraphError::SelfLoop(v));
            }
            for w in Bits(row) {
                if adj[w] & bit(v) == 0 {
                    return Err(GraphError::Asymmetric(v, w));
                }
            }
        }
        Ok(Graph { adj })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    /// Mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.order())
    }

    /// Edges in canonical order: lexicographic on `(min endpoint, max endpoint)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in Bits(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Subgraph induced by `mask`, relabeled so that the vertices keep their relative order.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Vertices reachable from `start`, as a mask.
    pub fn component_of(&self, start: usize) -> u64 {
        let mut seen = bit(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in Bits(self.adj[v] & !seen) {
                seen |= bit(w);
                queue.push_back(w);
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.component_of(0) == self.vertex_mask()
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            order: self.order(),
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
            is_connected: self.is_connected(),
            edge_count: self.edge_count(),
        }
    }

    /// Number of vertices on a longest simple path.
    ///
    /// Exact dynamic program over vertex subsets: `ends[mask]` holds the set of vertices at
    /// which some path covering exactly `mask` terminates.
    pub fn longest_path_order(&self) -> Result<usize, GraphError> {
        self.path_search(None)
    }

    /// Whether the graph has a path on `len` vertices, stopping as soon as one is found.
    pub fn has_path_of_order(&self, len: usize) -> bool {
        if len == 0 {
            return true;
        }
        if len > self.order() {
            return false;
        }
        if self.order() <= LONGEST_PATH_MAX_ORDER {
            return self.path_search(Some(len)).expect("order checked") >= len;
        }
        // Larger hosts: plain depth-first extension.
        fn extend(g: &Graph, v: usize, used: u64, need: usize) -> bool {
            if need == 0 {
                return true;
            }
            Bits(g.adj[v] & !used).any(|w| extend(g, w, used | bit(w), need - 1))
        }
        (0..self.order()).any(|s| extend(self, s, bit(s), len - 1))
    }

    fn path_search(&self, target: Option<usize>) -> Result<usize, GraphError> {
        let n = self.order();
        if n > LONGEST_PATH_MAX_ORDER {
            return Err(GraphError::TooLargeForExact {
                order: n,
                limit: LONGEST_PATH_MAX_ORDER,
            });
        }
        if n == 0 {
            return Ok(0);
        }
        let mut ends = vec![0u32; 1usize << n];
        for v in 0..n {
            ends[1usize << v] = 1 << v;
        }
        let mut best = 1;
        if target.is_some_and(|t| best >= t) {
            return Ok(best);
        }
        for mask in 1usize..(1 << n) {
            let e = ends[mask];
            if e == 0 {
                continue;
            }
            let size = mask.count_ones() as usize;
            if size > best {
                best = size;
                if target.is_some_and(|t| best >= t) || best == n {
                    return Ok(best);
                }
            }
            for v in Bits(e as u64) {
                for w in Bits(self.adj[v] & !(mask as u64)) {
                    ends[mask | (1 << w)] |= 1 << w;
                }
            }
        }
        Ok(best)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

/// Degree and connectivity summary of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub order: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub is_connected: bool,
    pub edge_count: usize,
}
