//! Property tests for the matchers and the graph substrate.

use std::collections::BTreeSet;

use proptest::prelude::*;

use dbgmatch::*;

#[derive(Clone, Debug)]
struct SmallCase {
    sigma: u8,
    labels: Vec<u8>,
    edges: Vec<(usize, usize)>,
    pattern: Vec<u8>,
}

fn small_case() -> impl Strategy<Value = SmallCase> {
    (1u8..=4, 1usize..=5).prop_flat_map(|(sigma, n)| {
        let labels = proptest::collection::vec(0..sigma, n);
        let edges = proptest::collection::btree_set((0..n, 0..n), 0..=n * n)
            .prop_map(|s| s.into_iter().collect::<Vec<_>>());
        let pattern = proptest::collection::vec(0..sigma, 1..=6);
        (Just(sigma), labels, edges, pattern).prop_map(|(sigma, labels, edges, pattern)| {
            SmallCase {
                sigma,
                labels,
                edges,
                pattern,
            }
        })
    })
}

fn build(case: &SmallCase) -> (LabeledDigraph, Pattern) {
    let mut g = LabeledDigraph::new(case.sigma);
    for &l in &case.labels {
        g.add_vertex(Symbol(l)).unwrap();
    }
    for &(u, v) in &case.edges {
        g.add_edge(VertexId(u), VertexId(v)).unwrap();
    }
    (g, Pattern::from_values(&case.pattern).unwrap())
}

proptest! {
    #[test]
    fn dp_agrees_with_walk_enumeration(case in small_case()) {
        let (g, p) = build(&case);
        let (oracle_pattern, oracle_graph) =
            walk_enumeration_oracle(&g, &p, DEFAULT_WALK_CAP).unwrap();
        let dp = min_pattern_substitutions(&g, &p).unwrap();
        prop_assert_eq!(dp.cost, oracle_pattern);
        let dfs = min_graph_substitutions(&g, &p, p.len() as u64).unwrap();
        prop_assert_eq!(dfs.cost, oracle_graph);
    }

    #[test]
    fn exact_iff_zero_cost_iff_zero_budget(case in small_case()) {
        let (g, p) = build(&case);
        let exact = match_exact(&g, &p).unwrap().feasible;
        let dp_zero = min_pattern_substitutions(&g, &p).unwrap().cost == Cost::ZERO;
        let dfs_zero = min_graph_substitutions(&g, &p, 0).unwrap().feasible;
        prop_assert_eq!(exact, dp_zero);
        prop_assert_eq!(exact, dfs_zero);
    }

    #[test]
    fn budget_feasibility_is_monotone(case in small_case(), delta in 0u64..4) {
        let (g, p) = build(&case);
        let at = min_graph_substitutions(&g, &p, delta).unwrap().feasible;
        let above = min_graph_substitutions(&g, &p, delta + 1).unwrap().feasible;
        prop_assert!(!at || above, "feasible at {} but not at {}", delta, delta + 1);
    }

    #[test]
    fn witnesses_replay_exactly(case in small_case()) {
        let (g, p) = build(&case);
        for result in [
            match_exact(&g, &p).unwrap(),
            min_pattern_substitutions(&g, &p).unwrap(),
            min_graph_substitutions(&g, &p, p.len() as u64).unwrap(),
        ] {
            if result.feasible {
                prop_assert!(check_witness(&g, &p, &result).is_ok());
            }
        }
    }

    #[test]
    fn constrained_dp_dominates_unconstrained(case in small_case(), mask in 0u8..64) {
        let (g, p) = build(&case);
        let forbidden: BTreeSet<usize> = (1..=p.len()).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let constrained = constrained_pattern_dp(&g, &p, &forbidden).unwrap();
        let unconstrained = min_pattern_substitutions(&g, &p).unwrap();
        prop_assert!(constrained.cost >= unconstrained.cost);
        if forbidden.is_empty() {
            prop_assert_eq!(constrained.cost, unconstrained.cost);
        }
    }

    #[test]
    fn merges_keep_the_graph_simple(case in small_case(), picks in proptest::collection::vec((0usize..8, 0usize..8), 0..4)) {
        let (mut g, _) = build(&case);
        for (a, b) in picks {
            let live: Vec<VertexId> = g.vertices().collect();
            if live.len() < 2 {
                break;
            }
            let u = live[a % live.len()];
            let v = live[b % live.len()];
            if u != v && g.label(u) == g.label(v) {
                g.merge_vertices(u, v).unwrap();
            }
        }
        // all endpoints live, no duplicate edges by construction
        let edges: Vec<(VertexId, VertexId)> = g.edges().collect();
        let set: BTreeSet<(VertexId, VertexId)> = edges.iter().copied().collect();
        prop_assert_eq!(edges.len(), set.len());
        prop_assert_eq!(edges.len(), g.edge_count());
        for (u, v) in edges {
            prop_assert!(g.contains(u) && g.contains(v));
        }
    }
}
