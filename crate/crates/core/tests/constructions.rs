mod common;

use common::*;
use proptest::prelude::*;
use ramsey_core::constructions::{
    canonical_form, enumerate_free_colorings, isomorphic, odd_split_coloring, odd_split_max_index,
    path_critical_witness,
};
use ramsey_core::{Coloring, Graph, Side, TargetKind};

fn coloring_strategy(max_order: usize) -> impl Strategy<Value = Coloring> {
    graph_strategy(max_order).prop_flat_map(|g| {
        let e = g.edge_count();
        proptest::collection::vec(any::<bool>(), e).prop_map(move |red| {
            let sides: Vec<Side> = red.iter().map(|&r| if r { Side::Red } else { Side::Blue }).collect();
            Coloring::from_sides(g.clone(), &sides)
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_ignores_labels((c, perm) in coloring_strategy(9).prop_flat_map(|c| {
        let n = c.host().order();
        (Just(c), permutation(n))
    })) {
        let moved = relabel_coloring(&c, &perm);
        prop_assert_eq!(canonical_form(&c), canonical_form(&moved));
    }

    #[test]
    fn canonical_form_matches_brute_force(a in coloring_strategy(6), b in coloring_strategy(6)) {
        prop_assert_eq!(isomorphic(&a, &b), naive_isomorphic(&a, &b));
    }

    #[test]
    fn canonical_form_same_order_pairs(n in 2usize..=6, bits_a in any::<u64>(), bits_b in any::<u64>()) {
        // Same host so that near-misses are common.
        let host = Graph::complete(n);
        let (a, b) = (coloring_from_bits(&host, bits_a), coloring_from_bits(&host, bits_b));
        prop_assert_eq!(isomorphic(&a, &b), naive_isomorphic(&a, &b));
    }
}

/// Classes of free colorings by brute force: every coloring, grouped by naive isomorphism.
fn naive_free_classes(host: &Graph, red: &TargetKind, blue: &TargetKind) -> Vec<Coloring> {
    let mut reps: Vec<Coloring> = Vec::new();
    for bits in 0u64..1 << host.edge_count() {
        let c = coloring_from_bits(host, bits);
        if is_free(&c, red, blue) && !reps.iter().any(|r| naive_isomorphic(r, &c)) {
            reps.push(c);
        }
    }
    reps
}

#[test]
fn matching_triangle_free_colorings_are_odd_splits() {
    for n in 2..=3 {
        let host = Graph::complete(2 * n);
        let (red, blue) = (TargetKind::Matching(n as u32), TargetKind::Clique(3));
        let naive = naive_free_classes(&host, &red, &blue);
        let found = enumerate_free_colorings(&host, &red, &blue).unwrap();
        assert_eq!(found.len(), naive.len(), "K{}", 2 * n);
        assert_eq!(naive.len(), odd_split_max_index(n) + 1);
        for i in 0..=odd_split_max_index(n) {
            let split = odd_split_coloring(n, i).unwrap();
            assert!(is_free(&split, &red, &blue));
            assert!(naive.iter().any(|c| naive_isomorphic(c, &split)), "split {i} missing");
            assert!(found.iter().any(|c| isomorphic(c, &split)));
        }
    }
    let found = enumerate_free_colorings(&Graph::complete(8), &TargetKind::Matching(4), &TargetKind::Clique(3)).unwrap();
    assert_eq!(found.len(), 2);
    for i in 0..=1 {
        assert!(found.iter().any(|c| isomorphic(c, &odd_split_coloring(4, i).unwrap())));
    }
}

#[test]
fn free_coloring_classes_match_brute_force() {
    use TargetKind::*;
    for (host, red, blue) in [
        (Graph::complete(5), Clique(3), Clique(3)),
        (Graph::complete(4), Star(2), Clique(3)),
        (Graph::complete(5), Path(3), Path(4)),
        (Graph::complete(5), Matching(2), Star(2)),
    ] {
        let naive = naive_free_classes(&host, &red, &blue);
        let found = enumerate_free_colorings(&host, &red, &blue).unwrap();
        assert_eq!(found.len(), naive.len(), "({red}, {blue})");
        for c in &found {
            assert!(is_free(c, &red, &blue));
            assert!(naive.iter().any(|r| naive_isomorphic(r, c)));
        }
    }
}

#[test]
fn witnesses_are_free() {
    use TargetKind::*;
    let cases = [
        (Star(2), Clique(3), 5),
        (Star(3), Clique(4), 10),
        (Star(4), Clique(3), 9),
        (Fan(2), Clique(3), 9),
        (Fan(3), Clique(3), 13),
        (Star(8), Book(2), 17),
    ];
    for (g, h, r) in cases {
        let w = path_critical_witness(&g, &h, r).unwrap();
        assert!(is_free(&w.coloring, &g, &h), "({g}, {h})");
        assert_eq!(w.coloring.host().order() as u64, r);
        assert_eq!(w.blocks.iter().sum::<usize>() as u64, r);
        // The deleted path has exactly bound + 1 vertices.
        let missing = r * (r - 1) / 2 - w.coloring.host().edge_count() as u64;
        assert_eq!(missing, w.certified_bound());
    }
}
