//! A small conflict-driven clause-learning engine over edge variables.
//!
//! Variable `v` true means edge `v` is Red. Decisions follow a fixed variable order and
//! always try Red first. Every implied literal is implied by the decisions on variables
//! earlier in that order, so the first model found is the lexicographically least one
//! (Red before Blue) with respect to the decision order.
//!
//! Besides `solve`, the engine can enumerate every model with chronological backtracking
//! (no learning), which is what the free-coloring enumerator uses.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

pub type Lit = u32;

const UNDEF: u8 = 2;
const NO_REASON: u32 = u32::MAX;

#[inline]
pub fn lit(var: usize, red: bool) -> Lit {
    ((var as u32) << 1) | (!red as u32)
}

#[inline]
fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

/// Shared node budget and cancellation flag for one search, possibly split over workers.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
    stop: AtomicBool,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn exhausted(&self) -> bool {
        self.nodes() > self.limit
    }

    pub fn stop(&self) {
        self.stop.store(true, Ordering::Relaxed);
    }

    pub fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    /// Counts one node; false once the budget is spent or another worker asked to stop.
    pub(crate) fn tick_node(&self) -> bool {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        used <= self.limit && !self.stopped()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// A model, one boolean (Red) per variable.
    Sat(Vec<bool>),
    Unsat,
    /// Budget exhausted or cancelled.
    Unknown,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub learned: u64,
}

pub struct Solver<'b> {
    clauses: Vec<Vec<Lit>>,
    learnt: Vec<bool>,
    lbd: Vec<u32>,
    deleted: Vec<bool>,
    /// Per literal: (clause, blocker) for clauses watching it. A true blocker means the
    /// clause is satisfied and need not be visited.
    watches: Vec<Vec<(u32, Lit)>>,
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    order: Vec<usize>,
    seen: Vec<bool>,
    level_stamp: Vec<u64>,
    stamp: u64,
    learnt_count: usize,
    max_learnt: usize,
    unsat: bool,
    budget: &'b Budget,
    dynamic: Option<Dynamic>,
    pub stats: SolverStats,
}

/// Activity-driven decisions with phase saving and restarts. Gives up the least-model
/// property in exchange for far fewer conflicts on hard instances.
struct Dynamic {
    activity: Vec<f64>,
    inc: f64,
    phase: Vec<bool>,
    restarts: u32,
    until_restart: u64,
}

impl Dynamic {
    fn bump(&mut self, v: usize) {
        self.activity[v] += self.inc;
        if self.activity[v] > 1e100 {
            self.activity.iter_mut().for_each(|a| *a *= 1e-100);
            self.inc *= 1e-100;
        }
    }
}

fn luby(i: u32) -> u64 {
    // Position i (0-based) of 1,1,2,1,1,2,4,...
    let mut size = 1u64;
    let mut seq = 0;
    while size < i as u64 + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    let mut x = i as u64;
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}

impl<'b> Solver<'b> {
    /// `order` lists every variable exactly once, in decision order.
    pub fn new(num_vars: usize, order: Vec<usize>, budget: &'b Budget) -> Self {
        debug_assert_eq!(order.len(), num_vars);
        Solver {
            clauses: Vec::new(),
            learnt: Vec::new(),
            lbd: Vec::new(),
            deleted: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![UNDEF; num_vars],
            level: vec![0; num_vars],
            reason: vec![NO_REASON; num_vars],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            order,
            seen: vec![false; num_vars],
            level_stamp: vec![0; num_vars + 1],
            stamp: 0,
            learnt_count: 0,
            max_learnt: 20_000,
            unsat: false,
            budget,
            dynamic: None,
            stats: SolverStats::default(),
        }
    }

    /// Switches `solve` to activity-based decisions with restarts.
    pub fn use_dynamic_order(&mut self) {
        let n = self.num_vars();
        // Seed activities so the initial order matches the static one.
        let activity = {
            let mut a = vec![0.0; n];
            for (pos, &v) in self.order.iter().enumerate() {
                a[v] = (n - pos) as f64 * 1e-6;
            }
            a
        };
        self.dynamic = Some(Dynamic {
            activity,
            inc: 1.0,
            phase: vec![true; n],
            restarts: 0,
            until_restart: 100,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    #[inline]
    fn value(&self, l: Lit) -> u8 {
        let a = self.assigns[var_of(l)];
        if a == UNDEF {
            UNDEF
        } else {
            a ^ (l & 1) as u8
        }
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Adds a problem clause. Must be called before solving (at decision level 0).
    pub fn add_clause(&mut self, lits: &[Lit]) {
        debug_assert_eq!(self.decision_level(), 0);
        if self.unsat {
            return;
        }
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return;
        }
        match c.len() {
            0 => self.unsat = true,
            1 => match self.value(c[0]) {
                0 => self.unsat = true,
                1 => {}
                _ => self.enqueue(c[0], NO_REASON),
            },
            _ => {
                self.attach(c, false, 0);
            }
        }
    }

    fn attach(&mut self, c: Vec<Lit>, learnt: bool, lbd: u32) -> u32 {
        let cr = self.clauses.len() as u32;
        self.watches[c[0] as usize].push((cr, c[1]));
        self.watches[c[1] as usize].push((cr, c[0]));
        self.clauses.push(c);
        self.learnt.push(learnt);
        self.lbd.push(lbd);
        self.deleted.push(false);
        cr
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = var_of(l);
        debug_assert_eq!(self.assigns[v], UNDEF);
        self.assigns[v] = (l & 1 == 0) as u8;
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Unit propagation with two watched literals; returns a conflicting clause.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            while i < ws.len() {
                let (cr, blocker) = ws[i];
                i += 1;
                if value_of(&self.assigns, blocker) == 1 {
                    ws[j] = (cr, blocker);
                    j += 1;
                    continue;
                }
                if self.deleted[cr as usize] {
                    continue;
                }
                let c = &mut self.clauses[cr as usize];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                if first != blocker && value_of(&self.assigns, first) == 1 {
                    ws[j] = (cr, first);
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    if value_of(&self.assigns, c[k]) != 0 {
                        c.swap(1, k);
                        self.watches[c[1] as usize].push((cr, first));
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = (cr, first);
                j += 1;
                if value_of(&self.assigns, first) == 0 {
                    conflict = Some(cr);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, cr);
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn cancel_until(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let keep = self.trail_lim[level];
        for &l in &self.trail[keep..] {
            let v = var_of(l);
            if let Some(d) = &mut self.dynamic {
                d.phase[v] = l & 1 == 0;
            }
            self.assigns[v] = UNDEF;
            self.reason[v] = NO_REASON;
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(level);
        self.qhead = keep;
    }

    fn next_var(&self) -> Option<usize> {
        match &self.dynamic {
            None => self.order.iter().copied().find(|&v| self.assigns[v] == UNDEF),
            Some(d) => (0..self.num_vars())
                .filter(|&v| self.assigns[v] == UNDEF)
                .max_by(|&a, &b| d.activity[a].total_cmp(&d.activity[b])),
        }
    }



    /// First-UIP conflict analysis. Returns the learned clause (asserting literal first,
    /// highest remaining level second) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, usize) {
        let current = self.decision_level() as u32;
        let mut learnt: Vec<Lit> = vec![0];
        let mut pending = 0;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        loop {
            let c = &self.clauses[confl as usize];
            let skip = usize::from(p.is_some());
            for &q in &c[skip..] {
                let v = var_of(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if let Some(d) = &mut self.dynamic {
                        d.bump(v);
                    }
                    if self.level[v] == current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[var_of(self.trail[index])] {
                    break;
                }
            }
            let lp = self.trail[index];
            p = Some(lp);
            self.seen[var_of(lp)] = false;
            pending -= 1;
            if pending == 0 {
                break;
            }
            confl = self.reason[var_of(lp)];
            debug_assert!(confl != NO_REASON);
        }
        learnt[0] = p.expect("conflict at a decision level") ^ 1;
        self.minimize(&mut learnt);
        for &q in &learnt[1..] {
            self.seen[var_of(q)] = false;
        }
        let mut bt = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[var_of(learnt[i])] > self.level[var_of(learnt[max_i])] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            bt = self.level[var_of(learnt[1])] as usize;
        }
        (learnt, bt)
    }

    /// Drops literals whose reason clause is entirely subsumed by the rest of the clause.
    fn minimize(&mut self, learnt: &mut Vec<Lit>) {
        let mut keep = 1;
        for i in 1..learnt.len() {
            let q = learnt[i];
            let r = self.reason[var_of(q)];
            let redundant = r != NO_REASON
                && self.clauses[r as usize][1..]
                    .iter()
                    .all(|&x| self.seen[var_of(x)] || self.level[var_of(x)] == 0);
            if redundant {
                self.seen[var_of(q)] = false;
            } else {
                learnt[keep] = q;
                keep += 1;
            }
        }
        learnt.truncate(keep);
    }

    fn compute_lbd(&mut self, c: &[Lit]) -> u32 {
        self.stamp += 1;
        let mut n = 0;
        for &l in c {
            let lv = self.level[var_of(l)] as usize;
            if self.level_stamp[lv] != self.stamp {
                self.level_stamp[lv] = self.stamp;
                n += 1;
            }
        }
        n
    }

    fn reduce_learnt(&mut self) {
        let mut candidates: Vec<u32> = (0..self.clauses.len() as u32)
            .filter(|&cr| {
                let i = cr as usize;
                self.learnt[i] && !self.deleted[i] && self.lbd[i] > 2 && !self.locked(cr)
            })
            .collect();
        candidates.sort_by_key(|&cr| std::cmp::Reverse((self.lbd[cr as usize], self.clauses[cr as usize].len())));
        for &cr in &candidates[..candidates.len() / 2] {
            self.deleted[cr as usize] = true;
            self.clauses[cr as usize] = Vec::new();
            self.learnt_count -= 1;
        }
        self.max_learnt += self.max_learnt / 10;
    }

    fn locked(&self, cr: u32) -> bool {
        let c = &self.clauses[cr as usize];
        let v = var_of(c[0]);
        self.reason[v] == cr && self.value(c[0]) == 1
    }

    fn model(&self) -> Vec<bool> {
        self.assigns.iter().map(|&a| a == 1).collect()
    }

    /// Conflict-driven search for one model.
    pub fn solve(&mut self) -> Outcome {
        if self.unsat {
            return Outcome::Unsat;
        }
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    self.unsat = true;
                    return Outcome::Unsat;
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let lbd = self.compute_lbd(&learnt);
                    let first = learnt[0];
                    let cr = self.attach(learnt, true, lbd);
                    self.learnt_count += 1;
                    self.stats.learned += 1;
                    self.enqueue(first, cr);
                }
                if self.learnt_count > self.max_learnt {
                    self.reduce_learnt();
                }
                if let Some(d) = &mut self.dynamic {
                    d.inc /= 0.95;
                    d.until_restart -= 1;
                    if d.until_restart == 0 {
                        d.restarts += 1;
                        d.until_restart = 100 * luby(d.restarts);
                        self.cancel_until(0);
                    }
                }
            } else {
                let Some(v) = self.next_var() else {
                    return Outcome::Sat(self.model());
                };
                if !self.budget.tick_node() {
                    return Outcome::Unknown;
                }
                self.stats.decisions += 1;
                let red = self.dynamic.as_ref().is_none_or(|d| d.phase[v]);
                self.trail_lim.push(self.trail.len());
                self.enqueue(lit(v, red), NO_REASON);
            }
        }
    }

    /// Visits every model by chronological backtracking. Returns `Unknown` if the budget
    /// ran out, `Sat(last model)` if the visitor stopped early, `Unsat` when finished.
    pub fn for_each_model(&mut self, mut f: impl FnMut(&[bool]) -> ControlFlow<()>) -> Outcome {
        if self.unsat {
            return Outcome::Unsat;
        }
        // Each entry is the decision literal of one level and whether it was flipped.
        let mut stack: Vec<(Lit, bool)> = Vec::new();
        loop {
            let dead_end = if self.propagate().is_some() {
                self.stats.conflicts += 1;
                true
            } else if let Some(v) = self.next_var() {
                if !self.budget.tick_node() {
                    return Outcome::Unknown;
                }
                self.stats.decisions += 1;
                let l = lit(v, true);
                stack.push((l, false));
                self.trail_lim.push(self.trail.len());
                self.enqueue(l, NO_REASON);
                false
            } else {
                let m = self.model();
                if f(&m).is_break() {
                    return Outcome::Sat(m);
                }
                true
            };
            if dead_end {
                loop {
                    let Some((l, flipped)) = stack.pop() else {
                        return Outcome::Unsat;
                    };
                    self.cancel_until(stack.len());
                    if !flipped {
                        stack.push((l ^ 1, true));
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l ^ 1, NO_REASON);
                        break;
                    }
                }
            }
        }
    }
}

#[inline]
fn value_of(assigns: &[u8], l: Lit) -> u8 {
    let a = assigns[var_of(l)];
    if a == UNDEF {
        UNDEF
    } else {
        a ^ (l & 1) as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute_models(n: usize, clauses: &[Vec<Lit>]) -> Vec<Vec<bool>> {
        // Enumerate assignments in lexicographic order with true (Red) before false.
        let mut out = Vec::new();
        for code in 0u32..(1 << n) {
            let m: Vec<bool> = (0..n).map(|v| code & (1 << (n - 1 - v)) == 0).collect();
            if clauses
                .iter()
                .all(|c| c.iter().any(|&l| m[var_of(l)] == (l & 1 == 0)))
            {
                out.push(m);
            }
        }
        out
    }

    fn random_cnf(rng: &mut impl Rng, n: usize, m: usize) -> Vec<Vec<Lit>> {
        (0..m)
            .map(|_| {
                let len = rng.gen_range(1..=4);
                (0..len).map(|_| lit(rng.gen_range(0..n), rng.gen_bool(0.5))).collect()
            })
            .collect()
    }

    #[test]
    fn agrees_with_brute_force_and_finds_least_model() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for _ in 0..400 {
            let n = rng.gen_range(1..=10);
            let m = rng.gen_range(0..=40);
            let cnf = random_cnf(&mut rng, n, m);
            let models = brute_models(n, &cnf);
            let budget = Budget::new(u64::MAX);
            let mut s = Solver::new(n, (0..n).collect(), &budget);
            for c in &cnf {
                s.add_clause(c);
            }
            match s.solve() {
                Outcome::Sat(model) => assert_eq!(Some(&model), models.first(), "{cnf:?}"),
                Outcome::Unsat => assert!(models.is_empty(), "{cnf:?}"),
                Outcome::Unknown => unreachable!(),
            }
            let mut s = Solver::new(n, (0..n).collect(), &budget);
            for c in &cnf {
                s.add_clause(c);
            }
            let mut all = Vec::new();
            assert_eq!(
                s.for_each_model(|m| {
                    all.push(m.to_vec());
                    ControlFlow::Continue(())
                }),
                Outcome::Unsat
            );
            all.sort_by(|a, b| b.cmp(a));
            assert_eq!(all, models);
        }
    }

    #[test]
    fn luby_sequence() {
        let seq: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(seq, [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn dynamic_order_agrees_on_satisfiability() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(2);
        for _ in 0..400 {
            let n = rng.gen_range(1..=12);
            let m = rng.gen_range(0..=60);
            let cnf = random_cnf(&mut rng, n, m);
            let models = brute_models(n, &cnf);
            let budget = Budget::new(u64::MAX);
            let mut s = Solver::new(n, (0..n).collect(), &budget);
            s.use_dynamic_order();
            for c in &cnf {
                s.add_clause(c);
            }
            match s.solve() {
                Outcome::Sat(model) => assert!(models.contains(&model)),
                Outcome::Unsat => assert!(models.is_empty()),
                Outcome::Unknown => unreachable!(),
            }
        }
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // 6 pigeons, 5 holes: needs real conflict analysis.
        let (p, h) = (6, 5);
        let var = |i: usize, j: usize| i * h + j;
        let budget = Budget::new(u64::MAX);
        let mut s = Solver::new(p * h, (0..p * h).collect(), &budget);
        for i in 0..p {
            s.add_clause(&(0..h).map(|j| lit(var(i, j), true)).collect::<Vec<_>>());
        }
        for j in 0..h {
            for a in 0..p {
                for b in a + 1..p {
                    s.add_clause(&[lit(var(a, j), false), lit(var(b, j), false)]);
                }
            }
        }
        assert_eq!(s.solve(), Outcome::Unsat);
        assert!(s.stats.conflicts > 0);
    }

    #[test]
    fn budget_gives_unknown() {
        let budget = Budget::new(2);
        let mut s = Solver::new(5, (0..5).collect(), &budget);
        assert_eq!(s.solve(), Outcome::Unknown);
        assert!(budget.exhausted());
    }
}
