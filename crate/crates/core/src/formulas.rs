//! Chromatic quantities, Burr's lower bound, the general upper bound on the
//! path-critical number, and the catalog of known exact values.

use serde::Serialize;

use crate::containment::{max_clique_size, TargetKind};
use crate::error::{FormulaError, GraphError};
use crate::graph::{bit, Bits, Graph};

pub const CHROMATIC_MAX_ORDER: usize = 20;
pub const SURPLUS_MAX_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticData {
    pub chi: usize,
    pub surplus: usize,
}

/// A value from the catalog, with the family it comes from and the range it holds on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownValue {
    pub value: u64,
    pub source: &'static str,
    pub validity: &'static str,
}

fn greedy_colors(g: &Graph) -> usize {
    let n = g.order();
    let mut color = vec![usize::MAX; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut used = 0;
    for &v in &order {
        let taken: Vec<usize> = Bits(g.neighbors(v)).map(|u| color[u]).collect();
        let c = (0..).find(|c| !taken.contains(c)).unwrap();
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

/// Proper colorings with at most `k` colors, classes opened in vertex order so each
/// partition is produced once. `visit` sees the class masks of every complete coloring and
/// returns whether to keep going; `prune` sees partial states.
struct Colorer<'a> {
    g: &'a Graph,
    k: usize,
    classes: Vec<u64>,
}

impl Colorer<'_> {
    fn run(
        &mut self,
        v: usize,
        prune: &mut impl FnMut(&[u64], usize) -> bool,
        visit: &mut impl FnMut(&[u64]) -> bool,
    ) -> bool {
        if v == self.g.order() {
            return visit(&self.classes);
        }
        if prune(&self.classes, v) {
            return true;
        }
        let nb = self.g.neighbors(v);
        for c in 0..self.classes.len() {
            if self.classes[c] & nb == 0 {
                self.classes[c] |= bit(v);
                let go = self.run(v + 1, prune, visit);
                self.classes[c] &= !bit(v);
                if !go {
                    return false;
                }
            }
        }
        if self.classes.len() < self.k {
            self.classes.push(bit(v));
            let go = self.run(v + 1, prune, visit);
            self.classes.pop();
            if !go {
                return false;
            }
        }
        true
    }
}

fn colorable(g: &Graph, k: usize) -> bool {
    let mut found = false;
    let mut c = Colorer { g, k, classes: Vec::new() };
    c.run(0, &mut |_, _| false, &mut |_| {
        found = true;
        false
    });
    found
}

pub fn chromatic_number(g: &Graph) -> Result<usize, GraphError> {
    if g.order() > CHROMATIC_MAX_ORDER {
        return Err(GraphError::TooLargeForExact {
            order: g.order(),
            limit: CHROMATIC_MAX_ORDER,
        });
    }
    let lower = max_clique_size(g).max(1);
    let upper = greedy_colors(g);
    Ok((lower..upper).find(|&k| colorable(g, k)).unwrap_or(upper))
}

/// Smallest color class over all proper colorings with exactly χ colors.
pub fn chromatic_surplus(g: &Graph) -> Result<usize, GraphError> {
    Ok(chromatic_data(g)?.surplus)
}

pub fn chromatic_data(g: &Graph) -> Result<ChromaticData, GraphError> {
    if g.order() > SURPLUS_MAX_ORDER {
        return Err(GraphError::TooLargeForExact {
            order: g.order(),
            limit: SURPLUS_MAX_ORDER,
        });
    }
    let chi = chromatic_number(g)?;
    let best = std::cell::Cell::new(usize::MAX);
    let mut c = Colorer { g, k: chi, classes: Vec::new() };
    c.run(
        0,
        // Classes only grow, so once all are open the smallest current one bounds the result.
        &mut |classes, _| {
            classes.len() == chi && classes.iter().map(|m| m.count_ones() as usize).min().unwrap() >= best.get()
        },
        &mut |classes| {
            if classes.len() == chi {
                let m = classes.iter().map(|m| m.count_ones() as usize).min().unwrap();
                best.set(best.get().min(m));
            }
            best.get() > 1
        },
    );
    Ok(ChromaticData { chi, surplus: best.get() })
}

/// Burr's lower bound (χ(H)−1)(|V(G)|−1)+s(H) on R(G,H); G must be connected with at
/// least s(H) vertices.
pub fn burr_bound(g: &TargetKind, h: &TargetKind) -> Result<u64, FormulaError> {
    let gg = g.realize()?;
    if !gg.is_connected() {
        return Err(FormulaError::Hypothesis(format!("{g} is not connected")));
    }
    let hd = chromatic_data(&h.realize()?)?;
    let n = gg.order() as u64;
    if n < hd.surplus as u64 {
        return Err(FormulaError::Hypothesis(format!(
            "|V({g})| = {n} is below s({h}) = {}",
            hd.surplus
        )));
    }
    Ok((hd.chi as u64 - 1) * (n - 1) + hd.surplus as u64)
}

/// Whether `r = R(G,H)` attains Burr's bound.
pub fn is_good(g: &TargetKind, h: &TargetKind, r: u64) -> Result<bool, FormulaError> {
    Ok(burr_bound(g, h)? == r)
}

/// Parameters of the general path-critical upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalBoundParams {
    /// χ(H)
    pub k: u64,
    /// s(H)
    pub s: u64,
    /// |V(G)|
    pub n: u64,
    pub r: u64,
    /// Number of K_n∖P_n blocks in the witness.
    pub t: u64,
}

impl CriticalBoundParams {
    pub fn bound(&self) -> u64 {
        self.t * self.n - 1
    }
}

/// Checks the hypotheses of the general upper bound and derives `t`.
pub fn critical_bound_params(g: &TargetKind, h: &TargetKind, r: u64) -> Result<CriticalBoundParams, FormulaError> {
    let gg = g.realize()?;
    let n = gg.order() as u64;
    if !gg.is_connected() {
        return Err(FormulaError::Hypothesis(format!("{g} is not connected")));
    }
    if gg.max_degree() as u64 != n - 1 {
        return Err(FormulaError::Hypothesis(format!(
            "max degree of {g} is {}, not |V|-1 = {}",
            gg.max_degree(),
            n - 1
        )));
    }
    let hd = chromatic_data(&h.realize()?)?;
    let (k, s) = (hd.chi as u64, hd.surplus as u64);
    if n < s {
        return Err(FormulaError::Hypothesis(format!("|V({g})| = {n} is below s({h}) = {s}")));
    }
    if k < 2 {
        return Err(FormulaError::Hypothesis(format!("{h} has no edges (chromatic number 1)")));
    }
    if r > (k - 1) * n + s - 1 {
        return Err(FormulaError::Hypothesis(format!(
            "r = {r} exceeds (χ(H)-1)|V(G)| + s(H) - 1 = {}",
            (k - 1) * n + s - 1
        )));
    }
    let lower = (k - 1) * (n - 1) + s;
    if r < lower {
        return Err(FormulaError::Hypothesis(format!("r = {r} is below the lower bound {lower}")));
    }
    Ok(CriticalBoundParams { k, s, n, r, t: r - lower + 1 })
}

/// Upper bound t·n − 1 on the path-critical number, t = r − (χ(H)−1)(n−1) − s(H) + 1.
pub fn path_critical_upper_bound(g: &TargetKind, h: &TargetKind, r: u64) -> Result<u64, FormulaError> {
    Ok(critical_bound_params(g, h, r)?.bound())
}

fn lookup(
    red: &TargetKind,
    blue: &TargetKind,
    table: fn(&TargetKind, &TargetKind) -> Option<KnownValue>,
) -> Option<KnownValue> {
    table(red, blue).or_else(|| table(blue, red))
}

/// Known value of R(red, blue), tried in both color orders.
pub fn known_ramsey(red: &TargetKind, blue: &TargetKind) -> Option<KnownValue> {
    lookup(red, blue, ramsey_table)
}

fn ramsey_table(a: &TargetKind, b: &TargetKind) -> Option<KnownValue> {
    use TargetKind::*;
    let kv = |value: u32, source, validity| Some(KnownValue { value: value as u64, source, validity });
    match (a, b) {
        (&Star(n), &Clique(m)) if m >= 2 => kv(n * (m - 1) + 1, "star-clique", "n >= 1, m >= 2"),
        (&Star(n), &Book(m)) if m >= 2 && n + 4 >= 3 * m => kv(2 * n + 1, "star-book", "m >= 2, n >= 3m-4"),
        (&Fan(n), &Clique(3)) if n >= 2 => kv(4 * n + 1, "fan-triangle", "n >= 2"),
        (&Matching(n), &Clique(3)) if n >= 2 => kv(2 * n + 1, "matching-triangle", "n >= 2"),
        (&Star(m), &Path(n)) if n > 2 * m => kv(n, "star-path", "n >= 2m+1"),
        (&Matching(m), &Matching(n)) if n >= m && m >= 1 => kv(2 * n + m - 1, "matching-matching", "n >= m >= 1"),
        (&Star(m), &Star(n)) if m <= n => {
            let eps = u32::from(m % 2 == 0 && n % 2 == 0);
            kv(m + n - eps, "star-star (classical, re-verified by search for m,n <= 4)", "m, n >= 1")
        }
        _ => None,
    }
}

/// Known exact path-critical number, tried in both color orders.
pub fn closed_form_path_critical(red: &TargetKind, blue: &TargetKind) -> Option<KnownValue> {
    lookup(red, blue, path_critical_table)
}

fn path_critical_table(a: &TargetKind, b: &TargetKind) -> Option<KnownValue> {
    use TargetKind::*;
    let kv = |value: u32, source, validity| Some(KnownValue { value: value as u64, source, validity });
    match (a, b) {
        (&Star(n), &Clique(m)) if m >= 2 && n >= 2 => kv(n, "star-clique", "m, n >= 2"),
        (&Star(m), &Star(n)) if m <= n && m + n >= 3 => {
            let v = if m % 2 == 0 && n % 2 == 0 { 0 } else { m + n - 1 };
            kv(v, "star-star", "m, n >= 1, m+n >= 3")
        }
        (&Star(n), &Book(m)) if m >= 2 && n >= 3 * m + 2 => kv(n, "star-book", "m >= 2, n >= 3m+2"),
        (&Fan(n), &Clique(3)) if n >= 2 => kv(2 * n, "fan-triangle", "n >= 2"),
        (&Star(m), &Path(n)) if n >= 2 * m + 3 => kv(n, "star-path", "n >= 2m+3"),
        (&Matching(m), &Matching(n)) if n >= m && m >= 1 && n >= 2 => {
            kv(2 * n + m - 1, "matching-matching", "n >= m >= 1, n >= 2")
        }
        _ => None,
    }
}
