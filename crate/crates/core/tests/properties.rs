use proptest::prelude::*;
use slowcolor::graph::{canonical_key, Graph, VertexSet};
use slowcolor::invariants::bound_report;
use slowcolor::paintability::sum_paintability;
use slowcolor::solver::{optimal_painter_response, score_lower_certificate, solve, SolverCache};
use slowcolor::strategies::{lister_guarantee, painter_guarantee, ListerMarkAll, PainterGreedy};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn value(g: &Graph) -> u64 {
    solve(g, &SolverCache::new()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeling_preserves_value_and_key((g, perm) in graph_and_perm(8)) {
        let h = g.permute(&perm);
        prop_assert_eq!(canonical_key(&g), canonical_key(&h));
        prop_assert_eq!(value(&g), value(&h));
    }

    #[test]
    fn disjoint_union_adds(g in graph(5), h in graph(5)) {
        prop_assert_eq!(value(&g.disjoint_union(&h).unwrap()), value(&g) + value(&h));
    }

    #[test]
    fn induced_subgraphs_score_no_more(g in graph(7), keep in any::<u64>()) {
        let keep = VertexSet(keep) & g.vertices();
        prop_assert!(value(&g.induced(keep)) <= value(&g));
    }

    #[test]
    fn adding_an_edge_scores_no_less(g in graph(7), u in 0usize..7, v in 0usize..7) {
        let (u, v) = (u % g.n(), v % g.n());
        prop_assume!(u != v && !g.has_edge(u, v));
        let mut h = g.clone();
        h.add_edge(u, v).unwrap();
        prop_assert!(value(&g) <= value(&h));
    }

    #[test]
    fn value_respects_every_bound(g in graph(8)) {
        let report = bound_report(&g).unwrap();
        let v = value(&g);
        prop_assert!(report.admits(v), "{} scored {v}", g.to_edge_list());
        prop_assert!(report.best_lower() <= v && v <= report.best_upper());
    }

    #[test]
    fn certificate_is_legal_and_optimal(g in graph(8)) {
        let cache = SolverCache::new();
        let record = score_lower_certificate(&g, &cache).unwrap();
        prop_assert!(record.validate(&g).is_ok());
        prop_assert_eq!(record.total_score, value(&g));
    }

    #[test]
    fn optimal_response_is_maximal_independent(g in graph(8), m in any::<u64>()) {
        let m = VertexSet(m) & g.vertices();
        prop_assume!(!m.is_empty());
        let c = optimal_painter_response(&g, m, &SolverCache::new()).unwrap();
        prop_assert!(!c.is_empty() && c.is_subset(m) && g.is_independent(c));
        for v in m.iter().filter(|&v| !c.contains(v)) {
            prop_assert!(!(g.neighbors(v) & c).is_empty(), "{v} could be added to {c}");
        }
    }

    #[test]
    fn cache_round_trips(g in graph(7)) {
        let cache = SolverCache::new();
        let v = solve(&g, &cache).unwrap().value;
        let mut bytes = Vec::new();
        cache.write_to(&mut bytes).unwrap();
        let back = SolverCache::read_from(bytes.as_slice()).unwrap();
        prop_assert_eq!(back.entries(), cache.entries());
        let again = solve(&g, &back).unwrap();
        prop_assert_eq!(again.value, v);
        prop_assert_eq!(again.node_count, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sum_paintability_lies_between_value_and_size(g in graph(5)) {
        let sp = sum_paintability(&g).unwrap();
        prop_assert!(value(&g) <= sp);
        prop_assert!(sp <= (g.n() + g.edge_count()) as u64);
    }

    #[test]
    fn fixed_strategies_bracket_the_value(g in graph(6)) {
        let v = value(&g);
        prop_assert!(painter_guarantee(&g, &PainterGreedy).unwrap() >= v);
        prop_assert!(lister_guarantee(&g, &ListerMarkAll).unwrap() <= v);
    }
}
