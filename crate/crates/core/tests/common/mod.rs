//! Brute-force oracles shared by the integration tests. Deliberately naive: adjacency
//! matrices, full enumeration, no pruning beyond what keeps them finite.

#![allow(dead_code)]

use proptest::prelude::*;
use ramsey_core::{Coloring, Graph, Side, TargetKind};

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Injective map of pattern vertices into host vertices preserving every pattern edge.
pub fn naive_contains(host: &Graph, pattern: &Graph) -> bool {
    let (h, p) = (matrix(host), matrix(pattern));
    if p.len() > h.len() {
        return false;
    }
    fn extend(h: &[Vec<bool>], p: &[Vec<bool>], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == p.len() {
            return true;
        }
        for x in 0..h.len() {
            if used[x] || !(0..i).all(|j| !p[i][j] || h[x][map[j]]) {
                continue;
            }
            used[x] = true;
            map.push(x);
            if extend(h, p, map, used) {
                return true;
            }
            map.pop();
            used[x] = false;
        }
        false
    }
    extend(&h, &p, &mut Vec::new(), &mut vec![false; h.len()])
}

pub fn naive_contains_target(host: &Graph, t: &TargetKind) -> bool {
    match t.realize() {
        Ok(p) => naive_contains(host, &p),
        Err(_) => false,
    }
}

pub fn coloring_from_bits(host: &Graph, bits: u64) -> Coloring {
    let sides: Vec<Side> = (0..host.edge_count())
        .map(|i| if bits >> i & 1 == 1 { Side::Red } else { Side::Blue })
        .collect();
    Coloring::from_sides(host.clone(), &sides)
}

pub fn is_free(c: &Coloring, red: &TargetKind, blue: &TargetKind) -> bool {
    !naive_contains_target(&c.monochromatic_subgraph(Side::Red), red)
        && !naive_contains_target(&c.monochromatic_subgraph(Side::Blue), blue)
}

/// Every complete coloring, by bit pattern over canonical edge order.
pub fn naive_arrows(host: &Graph, red: &TargetKind, blue: &TargetKind) -> bool {
    let e = host.edge_count();
    assert!(e <= 20);
    (0u64..1 << e).all(|bits| !is_free(&coloring_from_bits(host, bits), red, blue))
}

/// Truth-table satisfiability for DIMACS-style clauses.
pub fn naive_sat(num_vars: usize, clauses: &[Vec<i32>]) -> bool {
    assert!(num_vars <= 22);
    (0u64..1 << num_vars).any(|a| {
        clauses
            .iter()
            .all(|c| c.iter().any(|&l| (a >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0)))
    })
}

pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.order(), &edges).unwrap()
}

pub fn relabel_coloring(c: &Coloring, perm: &[usize]) -> Coloring {
    let host = relabel(c.host(), perm);
    let red = c.monochromatic_subgraph(Side::Red);
    let mut inverse = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    Coloring::from_fn(host, |u, v| red.has_edge(inverse[u], inverse[v]))
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(cur, rest, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Color-preserving isomorphism by trying every vertex bijection.
pub fn naive_isomorphic(a: &Coloring, b: &Coloring) -> bool {
    let n = a.host().order();
    if n != b.host().order() || a.host().edge_count() != b.host().edge_count() {
        return false;
    }
    let (ar, ab) = (a.monochromatic_subgraph(Side::Red), a.monochromatic_subgraph(Side::Blue));
    let (br, bb) = (b.monochromatic_subgraph(Side::Red), b.monochromatic_subgraph(Side::Blue));
    permutations(n)
        .iter()
        .any(|p| relabel(&ar, p) == br && relabel(&ab, p) == bb)
}

pub fn graph_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

pub fn small_target() -> impl Strategy<Value = TargetKind> {
    prop_oneof![
        (2u32..=3).prop_map(TargetKind::Clique),
        (1u32..=3).prop_map(TargetKind::Star),
        (2u32..=4).prop_map(TargetKind::Path),
        (1u32..=2).prop_map(TargetKind::Matching),
        Just(TargetKind::Book(1)),
        Just(TargetKind::Fan(1)),
        Just(TargetKind::from_spec(&ramsey_core::GraphSpec::parse("P3 u K2").unwrap())),
    ]
}
