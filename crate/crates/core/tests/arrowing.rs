mod common;

use common::*;
use proptest::prelude::*;
use ramsey_core::arrowing::{
    arrows, critical_number, export_dimacs, ramsey_number, DeletionFamily, PropagationMode, SearchOptions, Verdict,
};
use ramsey_core::formulas::known_ramsey;
use ramsey_core::{Graph, GraphSpec, TargetKind};

fn small_host(max_edges: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(7).prop_filter("edge budget", move |g| g.edge_count() <= max_edges)
}

fn det() -> SearchOptions {
    SearchOptions::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_enumeration(host in small_host(14), red in small_target(), blue in small_target()) {
        let res = arrows(&host, &red, &blue, &det());
        prop_assert_eq!(res.arrows(), naive_arrows(&host, &red, &blue));
        if let Some(c) = res.counterexample() {
            prop_assert!(c.is_complete());
            prop_assert!(is_free(c, &red, &blue));
        }
    }

    #[test]
    fn counterexample_is_least(host in small_host(12), red in small_target(), blue in small_target()) {
        // Red sorts before Blue, position 0 first.
        let res = arrows(&host, &red, &blue, &det());
        let e = host.edge_count();
        let least = (0u64..1 << e)
            .filter(|&bits| is_free(&coloring_from_bits(&host, bits), &red, &blue))
            .min_by_key(|&bits| (0..e).map(|i| bits >> i & 1 == 0).collect::<Vec<bool>>());
        match (res.counterexample(), least) {
            (Some(c), Some(bits)) => prop_assert_eq!(c, &coloring_from_bits(&host, bits)),
            (None, None) => {}
            _ => prop_assert!(false, "verdicts differ"),
        }
    }

    #[test]
    fn edge_monotone(host in small_host(12), red in small_target(), blue in small_target(), u in 0usize..7, v in 0usize..7) {
        let mut bigger = host.clone();
        if u != v && u < host.order() && v < host.order() {
            bigger.add_edge(u, v);
        }
        if arrows(&host, &red, &blue, &det()).arrows() {
            prop_assert!(arrows(&bigger, &red, &blue, &det()).arrows());
        }
    }

    #[test]
    fn dimacs_agrees(host in graph_strategy(8).prop_filter("edges", |g| g.edge_count() <= 20), red in small_target(), blue in small_target()) {
        let cnf = export_dimacs(&host, &red, &blue, usize::MAX).unwrap();
        prop_assert_eq!(cnf.num_vars, host.edge_count());
        let arrowed = arrows(&host, &red, &blue, &det()).arrows();
        prop_assert_eq!(arrowed, !naive_sat(cnf.num_vars, &cnf.clauses));
    }

    #[test]
    fn deterministic_runs_repeat(host in small_host(14), red in small_target(), blue in small_target()) {
        let a = arrows(&host, &red, &blue, &det());
        let b = arrows(&host, &red, &blue, &det());
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.stats.nodes, b.stats.nodes);
    }

    #[test]
    fn parallel_verdict_agrees(host in graph_strategy(7), red in small_target(), blue in small_target()) {
        let par = SearchOptions { deterministic: false, jobs: 4, ..SearchOptions::default() };
        let a = arrows(&host, &red, &blue, &det());
        let b = arrows(&host, &red, &blue, &par);
        prop_assert_eq!(a.arrows(), b.arrows());
        if let Some(c) = b.counterexample() {
            prop_assert!(is_free(c, &red, &blue));
        }
    }

    #[test]
    fn prune_only_agrees(host in small_host(12), red in small_target(), blue in small_target()) {
        let capped = SearchOptions { copy_cap: 0, ..SearchOptions::default() };
        let a = arrows(&host, &red, &blue, &det());
        let b = arrows(&host, &red, &blue, &capped);
        prop_assert_eq!(a.arrows(), b.arrows());
        // A cap of zero is only exceeded when some copy exists.
        prop_assert!(b.stats.propagation_mode == PropagationMode::PruneOnly || b.stats.copies == 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn deletion_monotone(r in 3usize..=7, red in small_target(), blue in small_target()) {
        // Deleting a longer path leaves a subgraph, so arrowing can only be lost.
        let mut previous = true;
        for i in 2..=r as u32 {
            let host = GraphSpec::minus(GraphSpec::Complete(r as u32), GraphSpec::Path(i)).realize().unwrap();
            let now = arrows(&host, &red, &blue, &det()).arrows();
            prop_assert!(previous || !now);
            previous = now;
        }
    }
}

#[test]
fn budget_exhaustion_is_indeterminate() {
    let host = Graph::complete(6);
    let opts = SearchOptions::with_budget(1);
    let res = arrows(&host, &TargetKind::Clique(3), &TargetKind::Clique(3), &opts);
    assert_eq!(res.verdict, Verdict::Indeterminate);
    assert!(res.stats.budget_exhausted);
}

#[test]
fn ramsey_numbers_match_catalog() {
    use TargetKind::*;
    for (g, h) in [
        (Star(2), Clique(3)),
        (Star(3), Clique(3)),
        (Star(2), Book(2)),
        (Star(2), Path(5)),
        (Star(3), Star(4)),
        (Matching(2), Matching(2)),
        (Matching(2), Clique(3)),
        (Matching(3), Clique(3)),
    ] {
        let out = ramsey_number(&g, &h, 16, &det()).unwrap();
        let kv = known_ramsey(&g, &h).unwrap_or_else(|| panic!("({g}, {h}) not cataloged"));
        assert_eq!(out.value, kv.value, "({g}, {h})");
        assert!(!naive_arrows(&Graph::complete(out.value as usize - 1), &g, &h));
    }
}

#[test]
fn naive_ramsey_for_tiny_pairs() {
    use TargetKind::*;
    for (g, h) in [(Star(2), Clique(3)), (Matching(2), Matching(2)), (Path(3), Path(3)), (Clique(3), Star(2))] {
        let r = (1..=6).find(|&r| naive_arrows(&Graph::complete(r), &g, &h)).unwrap();
        assert_eq!(ramsey_number(&g, &h, 10, &det()).unwrap().value, r as u64, "({g}, {h})");
    }
}

#[test]
fn critical_numbers_by_enumeration() {
    use TargetKind::*;
    for (g, h) in [(Star(2), Clique(3)), (Matching(2), Matching(2)), (Star(2), Star(3)), (Path(3), Path(3))] {
        let r = ramsey_number(&g, &h, 10, &det()).unwrap().value as usize;
        let mut want = 0;
        for i in 2..=r as u32 {
            let host = GraphSpec::minus(GraphSpec::Complete(r as u32), GraphSpec::Path(i)).realize().unwrap();
            if !naive_arrows(&host, &g, &h) {
                break;
            }
            want = i as u64;
        }
        let got = critical_number(&g, &h, DeletionFamily::Path, r, &det()).unwrap();
        assert_eq!(got.value, want, "({g}, {h})");
    }
}
