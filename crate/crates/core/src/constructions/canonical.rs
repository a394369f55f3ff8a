//! Canonical labeling of edge-colored graphs: equitable refinement on (color, cell)
//! neighbor counts, individualization on the first non-singleton cell, and pruning with
//! automorphisms found along the way.

use crate::coloring::{Coloring, EdgeColor};

/// Edge-colored adjacency matrix; 0 means no edge.
#[derive(Clone)]
struct Colored {
    n: usize,
    m: Vec<u8>,
}

impl Colored {
    fn from_coloring(c: &Coloring) -> Self {
        let n = c.host().order();
        let mut m = vec![0u8; n * n];
        for (&(u, v), &col) in c.edges().iter().zip(c.colors()) {
            let x = match col {
                EdgeColor::Red => 1,
                EdgeColor::Blue => 2,
                EdgeColor::Unassigned => 3,
            };
            m[u * n + v] = x;
            m[v * n + u] = x;
        }
        Colored { n, m }
    }

    #[inline]
    fn at(&self, u: usize, v: usize) -> u8 {
        self.m[u * self.n + v]
    }
}

const COLORS: usize = 4;

/// Ordered partition: `cells` holds vertices cell by cell, `starts` the cell boundaries.
#[derive(Clone, Debug)]
struct Partition {
    cells: Vec<usize>,
    starts: Vec<usize>,
}

impl Partition {
    fn cell_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.cells.len()];
        for c in 0..self.starts.len() {
            for &v in self.cell(c) {
                out[v] = c;
            }
        }
        out
    }

    fn cell(&self, c: usize) -> &[usize] {
        let end = self.starts.get(c + 1).copied().unwrap_or(self.cells.len());
        &self.cells[self.starts[c]..end]
    }

    fn is_discrete(&self) -> bool {
        self.starts.len() == self.cells.len()
    }

    /// Splits cells by neighbor counts per (cell, color) until nothing changes.
    fn refine(&mut self, g: &Colored) {
        loop {
            let cell_of = self.cell_of();
            let k = self.starts.len();
            let sig = |v: usize| {
                let mut s = vec![0u16; k * COLORS];
                for u in 0..g.n {
                    let x = g.at(v, u);
                    if x != 0 {
                        s[cell_of[u] * COLORS + x as usize] += 1;
                    }
                }
                s
            };
            let mut cells = Vec::with_capacity(self.cells.len());
            let mut starts = Vec::with_capacity(self.cells.len());
            for c in 0..k {
                let mut members: Vec<(Vec<u16>, usize)> = self.cell(c).iter().map(|&v| (sig(v), v)).collect();
                members.sort_by(|a, b| a.0.cmp(&b.0));
                for (i, (s, v)) in members.iter().enumerate() {
                    if i == 0 || *s != members[i - 1].0 {
                        starts.push(cells.len());
                    }
                    cells.push(*v);
                }
            }
            let changed = starts.len() != self.starts.len();
            self.cells = cells;
            self.starts = starts;
            if !changed {
                return;
            }
        }
    }

    fn individualize(&self, c: usize, v: usize) -> Partition {
        let mut p = self.clone();
        let s = p.starts[c];
        let pos = p.cells[s..].iter().position(|&x| x == v).unwrap() + s;
        p.cells[s..=pos].rotate_right(1);
        p.starts.insert(c + 1, s + 1);
        p
    }
}

struct Search<'a> {
    g: &'a Colored,
    best: Option<(Vec<u8>, Vec<usize>)>,
    first_leaf: Option<(Vec<u8>, Vec<usize>)>,
    /// Automorphisms as vertex maps.
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf_code(&self, labels: &[usize]) -> Vec<u8> {
        let n = self.g.n;
        let mut code = Vec::with_capacity(n * (n - 1) / 2);
        for p in 0..n {
            for q in p + 1..n {
                code.push(self.g.at(labels[p], labels[q]));
            }
        }
        code
    }

    fn visit(&mut self, p: Partition, fixed: &mut Vec<usize>) {
        if p.is_discrete() {
            let code = self.leaf_code(&p.cells);
            match &self.first_leaf {
                None => self.first_leaf = Some((code.clone(), p.cells.clone())),
                Some((fc, fl)) if *fc == code => {
                    // Relabeling one leaf onto the other preserves the colored graph.
                    let mut auto = vec![0; self.g.n];
                    for (i, &v) in fl.iter().enumerate() {
                        auto[v] = p.cells[i];
                    }
                    self.autos.push(auto);
                }
                _ => {}
            }
            if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                self.best = Some((code, p.cells));
            }
            return;
        }
        let target = (0..p.starts.len()).find(|&c| p.cell(c).len() > 1).unwrap();
        let candidates: Vec<usize> = p.cell(target).to_vec();
        let mut explored: Vec<usize> = Vec::new();
        for (i, &v) in candidates.iter().enumerate() {
            if i > 0 && self.same_orbit(fixed, &explored, v) {
                continue;
            }
            let mut child = p.individualize(target, v);
            child.refine(self.g);
            fixed.push(v);
            self.visit(child, fixed);
            fixed.pop();
            explored.push(v);
        }
    }

    /// Whether `v` is in the orbit of an explored vertex under the automorphisms found so
    /// far that fix every vertex in `fixed`.
    fn same_orbit(&self, fixed: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for a in &self.autos {
            if fixed.iter().all(|&f| a[f] == f) {
                for (x, &ax) in a.iter().enumerate() {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, ax));
                    parent[rx] = ry;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }
}

/// Code that is equal for two colorings exactly when some vertex relabeling maps one onto
/// the other, colors included.
pub fn canonical_form(c: &Coloring) -> Vec<u8> {
    let g = Colored::from_coloring(c);
    let n = g.n;
    let mut p = Partition {
        cells: (0..n).collect(),
        starts: if n == 0 { vec![] } else { vec![0] },
    };
    if n == 0 {
        return vec![0];
    }
    p.refine(&g);
    let mut s = Search {
        g: &g,
        best: None,
        first_leaf: None,
        autos: Vec::new(),
    };
    s.visit(p, &mut Vec::new());
    let (mut code, _) = s.best.unwrap();
    code.insert(0, n as u8);
    code
}

pub fn isomorphic(a: &Coloring, b: &Coloring) -> bool {
    canonical_form(a) == canonical_form(b)
}
