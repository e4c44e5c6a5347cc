//! Structural invariants of the generated instances beyond the acceptance
//! criteria: parameter scaling, marked-vertex anatomy, and section facts.

use std::collections::BTreeSet;

use dbgmatch::gen::{random_ham_instance, random_ov_instance};
use dbgmatch::*;

fn directed_cycle(n: usize) -> HamInstance {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    HamInstance::from_edges(n, &edges).unwrap()
}

#[test]
fn order_tracks_log_squared_of_output_size() {
    // k should scale like log^2 |V'|: the ratio k / log^2 |V'| stays within
    // a narrow band as n grows
    let mut ratios = Vec::new();
    for n in 3..=8usize {
        let bundle = build_npc_instance_direct(&directed_cycle(n)).unwrap();
        assert_eq!(bundle.params.k, 3 * bundle.params.w);
        let v = bundle.graph.base().vertex_count() as f64;
        let log2 = v.log2();
        ratios.push(bundle.params.k as f64 / (log2 * log2));
    }
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0f64, f64::max);
    assert!(hi / lo < 4.0, "k / log^2|V'| drifts too much: {ratios:?}");
}

#[test]
fn every_marked_vertex_sits_on_a_branchless_window() {
    // walking backward W-1 steps and forward 2W-l steps from a marked vertex
    // never meets a branch, and the backward walk is unique
    for seed in [1u64, 7, 23] {
        let inst = random_ham_instance(4, 2, seed).unwrap();
        let bundle = build_npc_instance_direct(&inst).unwrap();
        let g = bundle.graph.base();
        let w = bundle.params.w;
        let ell = bundle.params.ell as usize;
        for (&orig, &m) in &bundle.marked {
            let mut cur = m;
            for step in 0..w - 1 {
                let preds: Vec<VertexId> = g.in_neighbors(cur).collect();
                assert_eq!(
                    preds.len(),
                    1,
                    "orig {orig}: branch {step} steps behind {m}"
                );
                cur = preds[0];
                assert_eq!(g.out_degree(cur), 1);
            }
            let mut cur = m;
            for step in 0..2 * w - ell {
                let succs: Vec<VertexId> = g.out_neighbors(cur).collect();
                assert_eq!(succs.len(), 1, "orig {orig}: branch {step} steps after {m}");
                cur = succs[0];
                if step + 1 < 2 * w - ell {
                    assert_eq!(g.in_degree(cur), 1);
                }
            }
        }
    }
}

#[test]
fn marked_vertices_carry_their_defining_labels() {
    let bundle = build_npc_instance_direct(&directed_cycle(4)).unwrap();
    let w = bundle.params.w;
    for (&orig, &m) in &bundle.marked {
        let label = bundle.graph.implicit(m).unwrap();
        let e: Vec<Symbol> = enc(orig.index() as u64, bundle.params.ell)
            .unwrap()
            .into_iter()
            .map(|b| Symbol(2 + b))
            .collect();
        assert_eq!(&label[..w], e.as_slice());
        assert!(label[w..2 * w].iter().all(|&s| s == Symbol(0)));
        assert_eq!(&label[2 * w..], e.as_slice());
    }
}

#[test]
fn gadget_output_feeds_the_direct_builder() {
    // eliminate_two_cycles output always satisfies the direct builder's
    // 2-cycle-free precondition
    for seed in 0..10u64 {
        let inst = random_ham_instance(4, 3, seed).unwrap();
        let split = eliminate_two_cycles(&inst);
        assert!(split.first_two_cycle().is_none());
        assert_eq!(split.n(), 3 * inst.n());
        assert_eq!(
            split.graph().edge_count(),
            inst.graph().edge_count() + 2 * inst.n()
        );
    }
}

#[test]
fn gadget_preserves_hamiltonicity() {
    for seed in 0..15u64 {
        let inst = random_ham_instance(4, seed as usize % 4, 300 + seed).unwrap();
        let (before, _) = hamiltonian_oracle(&inst, 12).unwrap();
        let (after, _) = hamiltonian_oracle(&eliminate_two_cycles(&inst), 12).unwrap();
        assert_eq!(before, after, "seed {seed}");
    }
}

#[test]
fn ham_oracle_is_permutation_invariant() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(99);
    for seed in 0..20u64 {
        let inst = random_ham_instance(5, (seed % 3) as usize, 700 + seed).unwrap();
        let (expected, _) = hamiltonian_oracle(&inst, 12).unwrap();
        let mut perm: Vec<usize> = (0..5).collect();
        perm.shuffle(&mut rng);
        let edges: Vec<(usize, usize)> = inst
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u.index()], perm[v.index()]))
            .collect();
        let permuted = HamInstance::from_edges(5, &edges).unwrap();
        let (got, _) = hamiltonian_oracle(&permuted, 12).unwrap();
        assert_eq!(expected, got, "seed {seed} perm {perm:?}");
    }
}

#[test]
fn seth_sections_partition_the_graph() {
    let ov = random_ov_instance(4, 4, 11).unwrap();
    let bundle = build_seth_instance(&ov).unwrap();
    let g = bundle.graph.base();
    let tagged: BTreeSet<VertexId> = bundle.sections.keys().copied().collect();
    let all: BTreeSet<VertexId> = g.vertices().collect();
    assert_eq!(tagged, all);

    let loop_count = bundle
        .sections
        .values()
        .filter(|s| **s == Section::SyncLoop)
        .count();
    assert_eq!(loop_count, bundle.params.k);
    let threes = g
        .vertices()
        .filter(|&v| g.label(v) == Ok(Symbol(3)))
        .count();
    assert_eq!(threes, 1);
}

#[test]
fn seth_implicit_labels_are_pairwise_distinct() {
    let ov = random_ov_instance(4, 3, 13).unwrap();
    let bundle = build_seth_instance(&ov).unwrap();
    let mut seen = BTreeSet::new();
    for v in bundle.graph.base().vertices() {
        let label = bundle.graph.implicit(v).unwrap().to_vec();
        assert!(seen.insert(label), "duplicate implicit label at {v}");
    }
}

#[test]
fn seth_edge_count_stays_linear_in_dn() {
    for (n, d) in [(2usize, 2usize), (4, 3), (4, 5), (8, 4)] {
        let ov = random_ov_instance(n, d, (10 * n + d) as u64).unwrap();
        let bundle = build_seth_instance(&ov).unwrap();
        let e = bundle.graph.base().edge_count();
        assert!(e <= 8 * (d + 2) * (n + 2), "N={n} d={d}: {e} edges");
    }
}

#[test]
fn npc_bundles_recompute_their_implicit_labels() {
    for seed in [5u64, 17] {
        let inst = random_ham_instance(3, 1, seed).unwrap();
        let bundle = build_npc_instance_direct(&inst).unwrap();
        let recomputed = compute_implicit_labels(bundle.graph.base(), bundle.params.k).unwrap();
        assert_eq!(recomputed.implicit_labels(), bundle.graph.implicit_labels());
    }
}

#[test]
fn seth_bundles_recompute_their_implicit_labels() {
    let ov = random_ov_instance(2, 3, 21).unwrap();
    let bundle = build_seth_instance(&ov).unwrap();
    let recomputed = compute_implicit_labels(bundle.graph.base(), bundle.params.k).unwrap();
    assert_eq!(recomputed.implicit_labels(), bundle.graph.implicit_labels());
}

#[test]
fn queries_run_concurrently_over_a_shared_graph() {
    let ov = random_ov_instance(2, 2, 33).unwrap();
    let bundle = build_seth_instance(&ov).unwrap();
    let expected = min_pattern_substitutions(bundle.graph.base(), &bundle.pattern)
        .unwrap()
        .cost;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let graph = &bundle.graph;
                let pattern = &bundle.pattern;
                scope.spawn(move || {
                    assert!(validate_de_bruijn(graph).is_clean());
                    min_pattern_substitutions(graph.base(), pattern)
                        .unwrap()
                        .cost
                })
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), expected);
        }
    });
}

#[test]
fn gadgeted_pipeline_agrees_on_two_cycle_inputs() {
    use dbgmatch::verify::verify_npc;
    // inputs that exercise the 2-cycle gadget for real, both verdicts
    let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
        (2, vec![(0, 1), (1, 0)]),
        (3, vec![(0, 1), (1, 2), (2, 0), (1, 0)]),
        (4, vec![(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]),
    ];
    let mut verdicts = Vec::new();
    for (n, edges) in cases {
        let inst = HamInstance::from_edges(n, &edges).unwrap();
        let record = verify_npc(&inst, false, 12, DEFAULT_EXPANSION_CAP).unwrap();
        assert!(record.passed(), "n={n}: {record}");
        verdicts.push(record.oracle_verdict.unwrap());
    }
    assert_eq!(verdicts, vec![true, true, false]);
}
