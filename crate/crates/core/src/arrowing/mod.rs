//! Deciding F → (G, H), Ramsey numbers, critical numbers, and CNF export.
//!
//! Every copy of the red target in the host becomes a clause "some edge of this copy is
//! Blue", every copy of the blue target a clause "some edge is Red". A satisfying
//! assignment is a free coloring; unsatisfiability means the host arrows.

pub mod copies;
pub mod dimacs;
mod prune;
pub mod solver;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{Coloring, EdgeTriple, Side};
use crate::containment::{contains_target, TargetKind};
use crate::error::SearchError;
use crate::formulas::{burr_bound, known_ramsey, KnownValue};
use crate::graph::{Graph, MAX_ORDER};
use crate::graph_spec::GraphSpec;

pub use copies::{enumerate_copies, EdgeIndex};
pub use dimacs::{export_dimacs, Cnf};
use solver::{lit, Budget, Outcome, Solver};

pub const DEFAULT_COPY_CAP: usize = 2_000_000;
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of branching decisions.
    pub budget: u64,
    /// Beyond this many target copies the search runs without clauses.
    pub copy_cap: usize,
    /// Single worker, canonical edge order: the counterexample is the lexicographically
    /// least free coloring (Red before Blue).
    pub deterministic: bool,
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            copy_cap: DEFAULT_COPY_CAP,
            deterministic: true,
            jobs: 1,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions { budget, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropagationMode {
    Propagation,
    PruneOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub runtime_ms: u64,
    pub budget_exhausted: bool,
    pub propagation_mode: PropagationMode,
    /// Target copies turned into clauses (red + blue).
    pub copies: usize,
    pub conflicts: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Arrows,
    /// A complete coloring with no red copy of the red target and no blue copy of the blue
    /// target.
    Counterexample(Coloring),
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowingResult {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

impl ArrowingResult {
    pub fn arrows(&self) -> bool {
        self.verdict == Verdict::Arrows
    }

    pub fn counterexample(&self) -> Option<&Coloring> {
        match &self.verdict {
            Verdict::Counterexample(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_indeterminate(&self) -> bool {
        self.verdict == Verdict::Indeterminate
    }

    /// `Ok(true)` for arrows, `Ok(false)` for a counterexample.
    pub fn decided(&self, budget: u64) -> Result<bool, SearchError> {
        match self.verdict {
            Verdict::Arrows => Ok(true),
            Verdict::Counterexample(_) => Ok(false),
            Verdict::Indeterminate => Err(SearchError::Indeterminate { budget }),
        }
    }

    pub fn report(&self, host: &str, red: &TargetKind, blue: &TargetKind) -> ArrowingReport {
        let (verdict, counterexample) = match &self.verdict {
            Verdict::Arrows => ("arrows", None),
            Verdict::Counterexample(c) => ("counterexample", Some(c.to_triples())),
            Verdict::Indeterminate => ("indeterminate", None),
        };
        ArrowingReport {
            host: host.to_string(),
            red: red.to_string(),
            blue: blue.to_string(),
            verdict,
            counterexample,
            stats: ReportStats {
                nodes: self.stats.nodes,
                runtime_ms: self.stats.runtime_ms,
                propagation_mode: self.stats.propagation_mode,
            },
        }
    }
}

/// JSON form of one arrowing query.
#[derive(Clone, Debug, Serialize)]
pub struct ArrowingReport {
    pub host: String,
    pub red: String,
    pub blue: String,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<EdgeTriple>>,
    pub stats: ReportStats,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportStats {
    pub nodes: u64,
    pub runtime_ms: u64,
    pub propagation_mode: PropagationMode,
}

/// Edges by descending endpoint degree sum, ties by descending index.
fn branch_order(host: &Graph, index: &EdgeIndex, deterministic: bool) -> Vec<usize> {
    let mut order: Vec<usize> = (0..index.len()).collect();
    if !deterministic {
        let key = |i: usize| {
            let (u, v) = index.edges()[i];
            (host.degree(u) + host.degree(v), i)
        };
        order.sort_by_key(|&i| std::cmp::Reverse(key(i)));
    }
    order
}

/// A target without edges that fits in the host is always present in both colors.
fn trivially_present(host: &Graph, t: &TargetKind) -> bool {
    t.order() <= host.order() as u64 && t.realize().map(|g| g.edge_count() == 0).unwrap_or(false)
}

fn verify_free(c: &Coloring, red: &TargetKind, blue: &TargetKind) {
    assert!(c.is_complete(), "counterexample must be complete");
    assert!(
        !contains_target(&c.monochromatic_subgraph(Side::Red), red),
        "counterexample has a red {red}"
    );
    assert!(
        !contains_target(&c.monochromatic_subgraph(Side::Blue), blue),
        "counterexample has a blue {blue}"
    );
}

/// Decides whether every red/blue coloring of `host` has a red `red` or a blue `blue`.
pub fn arrows(host: &Graph, red: &TargetKind, blue: &TargetKind, opts: &SearchOptions) -> ArrowingResult {
    let start = Instant::now();
    let budget = Budget::new(opts.budget);
    let index = EdgeIndex::new(host);
    let mut stats = SearchStats {
        nodes: 0,
        runtime_ms: 0,
        budget_exhausted: false,
        propagation_mode: PropagationMode::Propagation,
        copies: 0,
        conflicts: 0,
    };
    let finish = |verdict: Verdict, mut stats: SearchStats| {
        if let Verdict::Counterexample(c) = &verdict {
            verify_free(c, red, blue);
        }
        stats.nodes = budget.nodes().min(opts.budget);
        stats.budget_exhausted = verdict == Verdict::Indeterminate;
        stats.runtime_ms = start.elapsed().as_millis() as u64;
        ArrowingResult { verdict, stats }
    };

    if trivially_present(host, red) || trivially_present(host, blue) {
        return finish(Verdict::Arrows, stats);
    }

    let order = branch_order(host, &index, opts.deterministic);
    // With equal targets a coloring and its swap are both free or both not.
    let fix_first_red = red == blue && !order.is_empty();

    let red_copies = enumerate_copies(host, &index, red, opts.copy_cap);
    let blue_copies = red_copies
        .as_ref()
        .ok()
        .map(|r| enumerate_copies(host, &index, blue, opts.copy_cap.saturating_sub(r.len())));
    let (red_copies, blue_copies) = match (red_copies, blue_copies) {
        (Ok(r), Some(Ok(b))) => (r, b),
        _ => {
            stats.propagation_mode = PropagationMode::PruneOnly;
            let first = fix_first_red.then(|| order[0]);
            let verdict = match prune::search(host, &index, red, blue, &order, first, &budget) {
                Outcome::Sat(model) => Verdict::Counterexample(to_coloring(host, &model)),
                Outcome::Unsat => Verdict::Arrows,
                Outcome::Unknown => Verdict::Indeterminate,
            };
            return finish(verdict, stats);
        }
    };
    stats.copies = red_copies.len() + blue_copies.len();

    let build = |cube: &[u32]| {
        let mut s = Solver::new(index.len(), order.clone(), &budget);
        for c in &red_copies {
            s.add_clause(&c.iter().map(|&e| lit(e as usize, false)).collect::<Vec<_>>());
        }
        for c in &blue_copies {
            s.add_clause(&c.iter().map(|&e| lit(e as usize, true)).collect::<Vec<_>>());
        }
        if fix_first_red {
            s.add_clause(&[lit(order[0], true)]);
        }
        for &l in cube {
            s.add_clause(&[l]);
        }
        if !opts.deterministic {
            s.use_dynamic_order();
        }
        s
    };

    let jobs = opts.jobs.max(1);
    let (outcome, conflicts) = if opts.deterministic || jobs == 1 {
        let mut s = build(&[]);
        let o = s.solve();
        (o, s.stats.conflicts)
    } else {
        solve_split(&build, &order, fix_first_red, jobs, &budget)
    };
    stats.conflicts = conflicts;
    let verdict = match outcome {
        Outcome::Sat(model) => Verdict::Counterexample(to_coloring(host, &model)),
        Outcome::Unsat => Verdict::Arrows,
        Outcome::Unknown => Verdict::Indeterminate,
    };
    finish(verdict, stats)
}

/// Splits on the first few branch variables and solves the cubes on a worker pool.
fn solve_split<'b>(
    build: &(dyn Fn(&[u32]) -> Solver<'b> + Sync),
    order: &[usize],
    fix_first_red: bool,
    jobs: usize,
    budget: &Budget,
) -> (Outcome, u64) {
    let skip = usize::from(fix_first_red);
    let depth = ((jobs * 4).next_power_of_two().trailing_zeros() as usize).min(order.len() - skip);
    let split: Vec<usize> = order[skip..skip + depth].to_vec();
    let cubes: Vec<Vec<u32>> = (0..1u32 << depth)
        .map(|code| {
            split
                .iter()
                .enumerate()
                .map(|(i, &v)| lit(v, code & (1 << (depth - 1 - i)) == 0))
                .collect()
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("worker pool");
    let results: Vec<(Outcome, u64)> = pool.install(|| {
        cubes
            .par_iter()
            .map(|cube| {
                if budget.stopped() {
                    return (Outcome::Unknown, 0);
                }
                let mut s = build(cube);
                let o = s.solve();
                if matches!(o, Outcome::Sat(_)) {
                    budget.stop();
                }
                (o, s.stats.conflicts)
            })
            .collect()
    });
    let conflicts = results.iter().map(|r| r.1).sum();
    let mut all_unsat = true;
    for (o, _) in results {
        match o {
            Outcome::Sat(m) => return (Outcome::Sat(m), conflicts),
            Outcome::Unknown => all_unsat = false,
            Outcome::Unsat => {}
        }
    }
    (if all_unsat { Outcome::Unsat } else { Outcome::Unknown }, conflicts)
}

fn to_coloring(host: &Graph, model: &[bool]) -> Coloring {
    let sides: Vec<Side> = model.iter().map(|&r| if r { Side::Red } else { Side::Blue }).collect();
    Coloring::from_sides(host.clone(), &sides)
}

/// Outcome of a Ramsey number computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyOutcome {
    pub value: u64,
    /// First host order tried on the way up.
    pub start: u64,
    pub catalog: Option<KnownValue>,
    pub nodes: u64,
}

/// Smallest r ≤ max_r with K_r → (red, blue), found by search and cross-checked against
/// the catalog.
pub fn ramsey_number(
    red: &TargetKind,
    blue: &TargetKind,
    max_r: usize,
    opts: &SearchOptions,
) -> Result<RamseyOutcome, SearchError> {
    if max_r > MAX_ORDER {
        return Err(SearchError::HostTooLarge(max_r));
    }
    let mut nodes = 0;
    let mut check = |r: usize| -> Result<bool, SearchError> {
        let res = arrows(&Graph::complete(r), red, blue, opts);
        nodes += res.stats.nodes;
        res.decided(opts.budget)
    };
    let start = burr_bound(red, blue).unwrap_or(1).max(1) as usize;
    let mut r = start;
    loop {
        if r > max_r {
            return Err(SearchError::NotFoundWithinBound { max_r });
        }
        if check(r)? {
            break;
        }
        r += 1;
    }
    // Confirm minimality below the starting point rather than trusting the bound.
    while r > 1 && check(r - 1)? {
        r -= 1;
    }
    let catalog = known_ramsey(red, blue);
    if let Some(kv) = &catalog {
        if kv.value != r as u64 {
            return Err(SearchError::CatalogMismatch {
                search: r as u64,
                catalog: kv.value,
                source_tag: kv.source.to_string(),
            });
        }
    }
    Ok(RamseyOutcome { value: r as u64, start: start as u64, catalog, nodes })
}

/// Which subgraph is removed from K_r when computing a critical number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DeletionFamily {
    /// P_i, indexed by vertex count.
    Path,
    /// iK_2, indexed by edge count.
    Matching,
    /// K_i, indexed by vertex count.
    Clique,
}

impl DeletionFamily {
    pub fn member(self, i: u32) -> GraphSpec {
        match self {
            DeletionFamily::Path => GraphSpec::Path(i),
            DeletionFamily::Matching => GraphSpec::Matching(i),
            DeletionFamily::Clique => GraphSpec::Complete(i),
        }
    }

    /// Smallest index whose member has an edge.
    pub fn first_index(self) -> u32 {
        match self {
            DeletionFamily::Matching => 1,
            DeletionFamily::Path | DeletionFamily::Clique => 2,
        }
    }

    pub fn fits(self, i: u32, r: usize) -> bool {
        self.member(i).order() <= r as u64
    }

    pub fn convention(self) -> &'static str {
        match self {
            DeletionFamily::Path => "path indexed by vertex count; 0 when deleting one edge already breaks arrowing",
            DeletionFamily::Matching => "matching indexed by edge count; 0 when deleting one edge already breaks arrowing",
            DeletionFamily::Clique => "clique indexed by vertex count; 0 when deleting one edge already breaks arrowing",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DeletionFamily::Path => "path",
            DeletionFamily::Matching => "matching",
            DeletionFamily::Clique => "clique",
        }
    }
}

impl std::str::FromStr for DeletionFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "path" => Ok(DeletionFamily::Path),
            "matching" => Ok(DeletionFamily::Matching),
            "clique" => Ok(DeletionFamily::Clique),
            _ => Err(format!("unknown deletion family '{s}' (path, matching, clique)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalOutcome {
    pub value: u64,
    pub family: DeletionFamily,
    pub r: u64,
    pub convention: &'static str,
    pub nodes: u64,
}

/// Largest family index i with K_r minus the i-th member still arrowing, scanning upward
/// from the first member with an edge and stopping at the first failure.
pub fn critical_number(
    red: &TargetKind,
    blue: &TargetKind,
    family: DeletionFamily,
    r: usize,
    opts: &SearchOptions,
) -> Result<CriticalOutcome, SearchError> {
    if r > MAX_ORDER {
        return Err(SearchError::HostTooLarge(r));
    }
    let mut best = 0;
    let mut nodes = 0;
    let mut i = family.first_index();
    while family.fits(i, r) {
        let host = GraphSpec::minus(GraphSpec::Complete(r as u32), family.member(i)).realize()?;
        let res = arrows(&host, red, blue, opts);
        nodes += res.stats.nodes;
        if !res.decided(opts.budget)? {
            break;
        }
        best = i;
        i += 1;
    }
    Ok(CriticalOutcome {
        value: best as u64,
        family,
        r: r as u64,
        convention: family.convention(),
        nodes,
    })
}
