//! Clause-free fallback: plain depth-first search over edge colors, backtracking as soon as
//! a partial color class contains its target.

use super::copies::EdgeIndex;
use super::solver::{Budget, Outcome};
use crate::containment::{contains_target, TargetKind};
use crate::graph::Graph;

struct Dfs<'a> {
    index: &'a EdgeIndex,
    red_target: &'a TargetKind,
    blue_target: &'a TargetKind,
    order: &'a [usize],
    budget: &'a Budget,
    red: Graph,
    blue: Graph,
    model: Vec<bool>,
}

impl Dfs<'_> {
    fn go(&mut self, depth: usize, first: Option<usize>) -> Outcome {
        if depth == self.order.len() {
            return Outcome::Sat(self.model.clone());
        }
        let e = self.order[depth];
        let (u, v) = self.index.edges()[e];
        let choices: &[bool] = if first == Some(e) { &[true] } else { &[true, false] };
        for &is_red in choices {
            if !self.budget.tick_node() {
                return Outcome::Unknown;
            }
            let (side, target) = if is_red {
                (&mut self.red, self.red_target)
            } else {
                (&mut self.blue, self.blue_target)
            };
            side.add_edge(u, v);
            let dead = contains_target(side, target);
            let out = if dead {
                Outcome::Unsat
            } else {
                self.model[e] = is_red;
                self.go(depth + 1, first)
            };
            let side = if is_red { &mut self.red } else { &mut self.blue };
            side.remove_edge(u, v);
            if out != Outcome::Unsat {
                return out;
            }
        }
        Outcome::Unsat
    }
}

pub(super) fn search(
    host: &Graph,
    index: &EdgeIndex,
    red: &TargetKind,
    blue: &TargetKind,
    order: &[usize],
    first_red: Option<usize>,
    budget: &Budget,
) -> Outcome {
    let n = host.order();
    let mut dfs = Dfs {
        index,
        red_target: red,
        blue_target: blue,
        order,
        budget,
        red: Graph::empty(n),
        blue: Graph::empty(n),
        model: vec![false; index.len()],
    };
    dfs.go(0, first_red)
}
