//! DIMACS CNF export of an arrowing instance.
//!
//! Variable k is host edge k−1 in canonical order, positive meaning Red. The formula is
//! satisfiable exactly when the host does not arrow.

use std::fmt::Write as _;

use super::copies::{enumerate_copies, EdgeIndex};
use crate::containment::TargetKind;
use crate::error::SearchError;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    /// Signed variable numbers, DIMACS style.
    pub clauses: Vec<Vec<i32>>,
    pub edges: Vec<(usize, usize)>,
}

impl Cnf {
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            writeln!(out, "c edge {u} {v} var {}", i + 1).unwrap();
        }
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len()).unwrap();
        for c in &self.clauses {
            for l in c {
                write!(out, "{l} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Red-target clauses (all literals negative) first, then blue-target clauses.
pub fn export_dimacs(host: &Graph, red: &TargetKind, blue: &TargetKind, cap: usize) -> Result<Cnf, SearchError> {
    let index = EdgeIndex::new(host);
    let mut clauses = Vec::new();
    for (target, sign) in [(red, -1i32), (blue, 1i32)] {
        let fits = target.order() <= host.order() as u64;
        if fits && target.realize()?.edge_count() == 0 {
            // Present in every coloring.
            clauses.push(Vec::new());
            continue;
        }
        let copies = enumerate_copies(host, &index, target, cap.saturating_sub(clauses.len()))
            .map_err(|_| SearchError::CopyCapExceeded { cap })?;
        clauses.extend(
            copies
                .into_iter()
                .map(|c| c.into_iter().map(|e| sign * (e as i32 + 1)).collect::<Vec<_>>()),
        );
    }
    Ok(Cnf {
        num_vars: index.len(),
        clauses,
        edges: index.edges().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use TargetKind::*;

    #[test]
    fn triangle() {
        let cnf = export_dimacs(&Graph::complete(3), &Clique(3), &Clique(3), 100).unwrap();
        assert_eq!(cnf.num_vars, 3);
        assert_eq!(cnf.clauses, vec![vec![-1, -2, -3], vec![1, 2, 3]]);
        let text = cnf.to_dimacs();
        assert_eq!(
            text,
            "c edge 0 1 var 1\nc edge 0 2 var 2\nc edge 1 2 var 3\np cnf 3 2\n-1 -2 -3 0\n1 2 3 0\n"
        );
    }

    #[test]
    fn perfect_matchings_of_k4() {
        let cnf = export_dimacs(&Graph::complete(4), &Matching(2), &Matching(2), 100).unwrap();
        assert_eq!(cnf.num_vars, 6);
        assert_eq!(cnf.clauses.len(), 6);
        assert!(cnf.clauses[..3].iter().all(|c| c.iter().all(|&l| l < 0)));
        assert!(cnf.clauses[3..].iter().all(|c| c.iter().all(|&l| l > 0)));
        // Edges 01,02,03,12,13,23: matchings {01,23}, {02,13}, {03,12}.
        let mut red: Vec<Vec<i32>> = cnf.clauses[..3].to_vec();
        red.sort();
        assert_eq!(red, vec![vec![-3, -4], vec![-2, -5], vec![-1, -6]]);
    }

    #[test]
    fn cap_overflow() {
        assert_eq!(
            export_dimacs(&Graph::complete(6), &Clique(3), &Clique(3), 5),
            Err(SearchError::CopyCapExceeded { cap: 5 })
        );
    }
}
