//! Enumeration of every copy of a target inside a host, each copy given as the sorted
//! list of host edge indices it uses.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::containment::clique::k_cliques;
use crate::containment::subgraph::for_each_embedding;
use crate::containment::TargetKind;
use crate::graph::{above, bit, Bits, Graph};

/// Canonical edge numbering of a host with O(1) lookup.
#[derive(Clone, Debug)]
pub struct EdgeIndex {
    order: usize,
    table: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

impl EdgeIndex {
    pub fn new(host: &Graph) -> Self {
        let n = host.order();
        let edges = host.edges();
        let mut table = vec![u32::MAX; n * n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            table[u * n + v] = i as u32;
            table[v * n + u] = i as u32;
        }
        EdgeIndex { order: n, table, edges }
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        let i = self.table[u * self.order + v];
        debug_assert!(i != u32::MAX, "({u}, {v}) is not a host edge");
        i
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapExceeded;

struct Collector<'a> {
    index: &'a EdgeIndex,
    cap: usize,
    list: Vec<Vec<u32>>,
    seen: Option<HashSet<Vec<u32>>>,
}

impl Collector<'_> {
    fn push(&mut self, edges: impl IntoIterator<Item = (usize, usize)>) -> ControlFlow<CapExceeded> {
        let mut copy: Vec<u32> = edges.into_iter().map(|(u, v)| self.index.get(u, v)).collect();
        copy.sort_unstable();
        if let Some(seen) = &mut self.seen {
            if !seen.insert(copy.clone()) {
                return ControlFlow::Continue(());
            }
        }
        self.list.push(copy);
        if self.list.len() > self.cap {
            ControlFlow::Break(CapExceeded)
        } else {
            ControlFlow::Continue(())
        }
    }
}

/// Calls `f` with every `k`-subset of `mask`.
fn for_each_subset<B>(mask: u64, k: usize, f: &mut impl FnMut(u64) -> ControlFlow<B>) -> ControlFlow<B> {
    fn rec<B>(rest: u64, chosen: u64, k: usize, f: &mut impl FnMut(u64) -> ControlFlow<B>) -> ControlFlow<B> {
        if k == 0 {
            return f(chosen);
        }
        if (rest.count_ones() as usize) < k {
            return ControlFlow::Continue(());
        }
        for v in Bits(rest) {
            rec(rest & above(v), chosen | bit(v), k - 1, f)?;
        }
        ControlFlow::Continue(())
    }
    rec(mask, 0, k, f)
}

/// Sets of `k` pairwise disjoint edges among `edges`, in increasing index order.
fn for_each_disjoint<B>(
    edges: &[(usize, usize)],
    k: usize,
    f: &mut impl FnMut(&[(usize, usize)]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    fn rec<B>(
        edges: &[(usize, usize)],
        start: usize,
        used: u64,
        k: usize,
        chosen: &mut Vec<(usize, usize)>,
        f: &mut impl FnMut(&[(usize, usize)]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if k == 0 {
            return f(chosen);
        }
        for i in start..edges.len() {
            if edges.len() - i < k {
                break;
            }
            let (u, v) = edges[i];
            if used & (bit(u) | bit(v)) != 0 {
                continue;
            }
            chosen.push((u, v));
            rec(edges, i + 1, used | bit(u) | bit(v), k - 1, chosen, f)?;
            chosen.pop();
        }
        ControlFlow::Continue(())
    }
    rec(edges, 0, 0, k, &mut Vec::with_capacity(k), f)
}

/// Every copy of `target` in `host`. Targets without edges yield nothing; callers treat
/// them separately.
pub fn enumerate_copies(
    host: &Graph,
    index: &EdgeIndex,
    target: &TargetKind,
    cap: usize,
) -> Result<Vec<Vec<u32>>, CapExceeded> {
    let needs_dedup = matches!(
        target,
        TargetKind::Star(1) | TargetKind::Book(1) | TargetKind::Fan(1) | TargetKind::Generic(_)
    );
    let mut out = Collector {
        index,
        cap,
        list: Vec::new(),
        seen: needs_dedup.then(HashSet::new),
    };
    let n = host.order();
    if target.order() > n as u64 {
        return Ok(Vec::new());
    }
    let flow = match *target {
        TargetKind::Clique(m) => {
            let mut flow = ControlFlow::Continue(());
            if m >= 2 {
                k_cliques(host, m as usize, |mask| {
                    if flow.is_continue() {
                        let vs: Vec<usize> = Bits(mask).collect();
                        flow = out.push(
                            vs.iter()
                                .enumerate()
                                .flat_map(|(i, &u)| vs[i + 1..].iter().map(move |&v| (u, v))),
                        );
                    }
                });
            }
            flow
        }
        TargetKind::Star(k) => (0..n).try_for_each(|c| {
            for_each_subset(host.neighbors(c), k as usize, &mut |leaves| out.push(Bits(leaves).map(|l| (c, l))))
        }),
        TargetKind::Path(k) if k >= 2 => {
            let mut path = Vec::with_capacity(k as usize);
            (0..n).try_for_each(|s| {
                path.clear();
                path.push(s);
                paths_from(host, &mut path, bit(s), k as usize, &mut out)
            })
        }
        TargetKind::Path(_) => ControlFlow::Continue(()),
        TargetKind::Matching(k) => {
            for_each_disjoint(index.edges(), k as usize, &mut |es| out.push(es.iter().copied()))
        }
        TargetKind::Book(m) => index.edges().iter().try_for_each(|&(u, v)| {
            let common = host.neighbors(u) & host.neighbors(v);
            for_each_subset(common, m as usize, &mut |pages| {
                out.push(std::iter::once((u, v)).chain(Bits(pages).flat_map(|p| [(u, p), (v, p)])))
            })
        }),
        TargetKind::Fan(k) => (0..n).try_for_each(|c| {
            let nb = host.neighbors(c);
            let inner: Vec<(usize, usize)> = index
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| nb & bit(u) != 0 && nb & bit(v) != 0)
                .collect();
            for_each_disjoint(&inner, k as usize, &mut |es| {
                out.push(es.iter().flat_map(|&(u, v)| [(u, v), (c, u), (c, v)]))
            })
        }),
        TargetKind::Generic(ref spec) => {
            let pattern = spec.realize().expect("target fits inside host");
            let pattern_edges = pattern.edges();
            if pattern_edges.is_empty() {
                ControlFlow::Continue(())
            } else {
                let mut flow = ControlFlow::Continue(());
                let _ = for_each_embedding(host, &pattern, |map| {
                    flow = out.push(pattern_edges.iter().map(|&(a, b)| (map[a], map[b])));
                    match flow {
                        ControlFlow::Continue(()) => ControlFlow::Continue(()),
                        ControlFlow::Break(_) => ControlFlow::Break(()),
                    }
                });
                flow
            }
        }
    };
    match flow {
        ControlFlow::Continue(()) => Ok(out.list),
        ControlFlow::Break(e) => Err(e),
    }
}

fn paths_from(
    host: &Graph,
    path: &mut Vec<usize>,
    used: u64,
    k: usize,
    out: &mut Collector<'_>,
) -> ControlFlow<CapExceeded> {
    let last = *path.last().expect("nonempty path");
    if path.len() == k {
        // Each undirected path once: first vertex below last.
        if path[0] < last {
            return out.push(path.windows(2).map(|w| (w[0], w[1])));
        }
        return ControlFlow::Continue(());
    }
    for w in Bits(host.neighbors(last) & !used) {
        path.push(w);
        paths_from(host, path, used | bit(w), k, out)?;
        path.pop();
    }
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_spec::GraphSpec;
    use rand::{Rng, SeedableRng};

    fn count(host: &Graph, t: &TargetKind) -> usize {
        enumerate_copies(host, &EdgeIndex::new(host), t, usize::MAX).unwrap().len()
    }

    #[test]
    fn closed_form_counts() {
        let k4 = Graph::complete(4);
        assert_eq!(count(&k4, &TargetKind::Matching(2)), 3);
        assert_eq!(count(&k4, &TargetKind::Clique(3)), 4);
        assert_eq!(count(&k4, &TargetKind::Star(1)), 6);
        let k9 = Graph::complete(9);
        // 9 centers, 8 choose 2 * 6 choose 2 / 2 edge pairs.
        assert_eq!(count(&k9, &TargetKind::Fan(2)), 9 * 28 * 15 / 2);
        assert_eq!(count(&Graph::complete(7), &TargetKind::Path(7)), 5040 / 2);
        assert_eq!(count(&Graph::complete(5), &TargetKind::Book(2)), 10 * 3);
        assert_eq!(count(&Graph::complete(5), &TargetKind::Fan(1)), 10);
        assert_eq!(count(&Graph::complete(6), &TargetKind::Star(3)), 6 * 10);
    }

    #[test]
    fn cap_is_enforced() {
        let k6 = Graph::complete(6);
        let idx = EdgeIndex::new(&k6);
        assert_eq!(enumerate_copies(&k6, &idx, &TargetKind::Clique(3), 19), Err(CapExceeded));
        assert_eq!(enumerate_copies(&k6, &idx, &TargetKind::Clique(3), 20).unwrap().len(), 20);
    }

    #[test]
    fn specialized_match_generic() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        for _ in 0..150 {
            let n = rng.gen_range(1..=8);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.6) {
                        g.add_edge(u, v);
                    }
                }
            }
            let idx = EdgeIndex::new(&g);
            for k in 1..=3u32 {
                for t in [
                    TargetKind::Clique(k),
                    TargetKind::Star(k),
                    TargetKind::Path(k),
                    TargetKind::Matching(k),
                    TargetKind::Book(k),
                    TargetKind::Fan(k),
                ] {
                    let mut a = enumerate_copies(&g, &idx, &t, usize::MAX).unwrap();
                    let mut b = enumerate_copies(&g, &idx, &TargetKind::Generic(t.to_spec()), usize::MAX).unwrap();
                    a.sort();
                    b.sort();
                    if t.realize().unwrap().edge_count() > 0 {
                        assert_eq!(a, b, "{t} in {g:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn minus_host_skips_deleted_edges() {
        let host = GraphSpec::parse("K4\\P4").unwrap().realize().unwrap();
        // Remaining edges 02, 03, 13: a path 2-0-3-1 and no triangle.
        assert_eq!(count(&host, &TargetKind::Clique(3)), 0);
        assert_eq!(count(&host, &TargetKind::Path(4)), 1);
        assert_eq!(count(&host, &TargetKind::Matching(2)), 1);
    }
}
