//! Round-trip harness over a generated fixture corpus: writing a parsed
//! canonical file reproduces it byte for byte.

use dbgmatch::gen::{random_labeled_digraph, random_ov_instance, random_pattern};
use dbgmatch::io::{
    parse_graph, parse_meta, parse_ov, parse_pattern, write_debruijn, write_graph, write_npc_meta,
    write_ov, write_pattern,
};
use dbgmatch::*;

#[test]
fn graph_fixtures_roundtrip() {
    let mut fixtures: Vec<String> = Vec::new();
    for seed in 0..14u64 {
        let g = random_labeled_digraph(6, 1 + (seed % 4) as u8, seed);
        fixtures.push(write_graph(&g, 0));
    }
    for (sigma, k) in [(2u8, 2usize), (2, 3), (3, 2), (4, 1), (2, 4), (3, 3)] {
        let d = full_de_bruijn(sigma, k, DEFAULT_VERTEX_CAP).unwrap();
        fixtures.push(write_debruijn(&d));
    }
    assert_eq!(fixtures.len(), 20);
    for (i, text) in fixtures.iter().enumerate() {
        let parsed = parse_graph(text).unwrap();
        let rewritten = match parsed.clone().into_debruijn().unwrap() {
            Some(d) => write_debruijn(&d),
            None => write_graph(&parsed.graph, parsed.k),
        };
        assert_eq!(&rewritten, text, "fixture {i}");
    }
}

#[test]
fn sparse_ids_from_merges_survive_the_roundtrip() {
    let mut g = LabeledDigraph::new(2);
    let a = g.add_vertex(Symbol(0)).unwrap();
    let b = g.add_vertex(Symbol(1)).unwrap();
    let c = g.add_vertex(Symbol(1)).unwrap();
    g.add_edge(a, b).unwrap();
    g.add_edge(a, c).unwrap();
    g.merge_vertices(b, c).unwrap();
    let text = write_graph(&g, 0);
    let parsed = parse_graph(&text).unwrap();
    assert_eq!(write_graph(&parsed.graph, 0), text);
    assert_eq!(parsed.graph.vertex_count(), 2);
    assert!(parsed.graph.contains(VertexId(3)));
}

#[test]
fn pattern_and_ov_fixtures_roundtrip() {
    for seed in 0..10u64 {
        let p = random_pattern(12, 4, seed);
        let text = write_pattern(&p);
        assert_eq!(write_pattern(&parse_pattern(&text).unwrap()), text);
    }
    for seed in 0..10u64 {
        let ov = random_ov_instance(4, 3 + (seed % 2) as usize, seed).unwrap();
        let text = write_ov(&ov);
        assert_eq!(write_ov(&parse_ov(&text).unwrap()), text);
    }
}

#[test]
fn npc_meta_carries_the_parameter_block() {
    let inst = HamInstance::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let bundle = build_npc_instance_direct(&inst).unwrap();
    let meta = parse_meta(&write_npc_meta(&bundle)).unwrap();
    assert_eq!(meta.kind, "npc");
    assert_eq!(meta.fields["ell"], 2);
    assert_eq!(meta.fields["w"], 22);
    assert_eq!(meta.fields["k"], 66);
    assert_eq!(meta.fields["delta"], 8);
    assert_eq!(meta.marked.len(), 3);
    for (orig, marked) in meta.marked {
        assert_eq!(bundle.marked[&orig], marked);
    }
}
