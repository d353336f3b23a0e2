//! Property tests for the construction operators and the encodings.

use std::collections::BTreeSet;

use proptest::prelude::*;
use quasiforce_core::construct::{double, pendant};
use quasiforce_core::graph::{build_graph, LabeledGraph};
use quasiforce_core::graph6::{parse_graph6, write_graph6};
use quasiforce_core::params::{max_cut, max_cut_exhaustive};

/// Arbitrary graph on 1..=8 vertices with vertex 0 labelled 0 and, when
/// possible, vertex 1 labelled 1 (the shapes the operators need).
fn labeled_graph() -> impl Strategy<Value = LabeledGraph> {
    (1usize..=8)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_map(|(n, mask)| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            let mut labels = vec![(0u32, 0usize)];
            if n > 1 {
                labels.push((1, 1));
            }
            build_graph(n, &edges, &labels).expect("valid")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pendant_adds_to_the_cut(g in labeled_graph(), k in 1usize..=3) {
        let base = max_cut(&g).unwrap();
        let extended = pendant(&g, k).unwrap();
        prop_assert_eq!(max_cut(&extended).unwrap(), base + k);
    }

    #[test]
    fn doubling_over_the_root_doubles_the_cut(g in labeled_graph()) {
        let base = max_cut(&g).unwrap();
        let doubled = double(&g, &BTreeSet::from([0])).unwrap();
        prop_assert_eq!(max_cut(&doubled).unwrap(), 2 * base);
    }

    #[test]
    fn doubled_pendant_cut_rules(g in labeled_graph()) {
        let base = max_cut(&g).unwrap();
        // db_{0,1}(F'): 2 b(F) + 1
        let p1 = pendant(&g, 1).unwrap();
        let d1 = double(&p1, &BTreeSet::from([0, 1])).unwrap();
        prop_assert_eq!(max_cut(&d1).unwrap(), 2 * base + 1);
        // db_{1,2}(F''): 2 b(F) + 4
        let p2 = pendant(&g, 2).unwrap();
        let d2 = double(&p2, &BTreeSet::from([1, 2])).unwrap();
        prop_assert_eq!(max_cut(&d2).unwrap(), 2 * base + 4);
    }

    #[test]
    fn block_cut_matches_whole_graph_enumeration(g in labeled_graph()) {
        prop_assert_eq!(max_cut(&g).unwrap(), max_cut_exhaustive(&g).unwrap());
    }

    #[test]
    fn doubling_over_all_labels_is_the_identity(g in labeled_graph()) {
        // relabel every vertex, then double over the full label set
        let edges = g.edges().to_vec();
        let labels: Vec<(u32, usize)> = (0..g.n()).map(|v| (v as u32, v)).collect();
        let full = build_graph(g.n(), &edges, &labels).unwrap();
        let over: BTreeSet<u32> = full.labels().keys().copied().collect();
        let doubled = double(&full, &over).unwrap();
        prop_assert_eq!(doubled.n(), full.n());
        prop_assert_eq!(doubled.edges(), full.edges());
    }

    #[test]
    fn graph6_round_trip(g in labeled_graph()) {
        let line = write_graph6(&g);
        let back = parse_graph6(&line).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn graph_json_round_trip(g in labeled_graph()) {
        let text = serde_json::to_string(&g).unwrap();
        let back: LabeledGraph = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn bipartite_exactly_when_cut_is_m(g in labeled_graph()) {
        let b = max_cut(&g).unwrap();
        prop_assert_eq!(g.is_bipartite(), b == g.m());
        prop_assert!(b <= g.m());
    }
}

#[test]
fn graph6_handles_sizes_above_62() {
    let n = 90;
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let g = build_graph(n, &edges, &[]).unwrap();
    let line = write_graph6(&g);
    let back = parse_graph6(&line).unwrap();
    assert_eq!(back.n(), n);
    assert_eq!(back.edges(), g.edges());
}
