//! Turning a directed Hamiltonian-cycle instance into a de Bruijn matching
//! instance with a vertex-relabeling budget.
//!
//! Each vertex of the input receives an integer label i whose padded binary
//! encoding enc(i) = (0^{2l} 1)^{2l} bin(i) has length W; the order of the
//! output graph is k = 3W. Each input edge (u, v) becomes a path spelling
//! `#^W enc(i) $^W enc(i)` (i = L(v)) hung between the marked anchors of u
//! and v, and vertices with equal implicit labels are shared eagerly through
//! the builder's label ledger. The pattern asks for the blocks enc(0),
//! enc(1), ..., enc(n-1), enc(0) in order, and the budget 2l(n-1) is exactly
//! what rewriting the bin() fields of n-1 blocks can need. A Hamiltonian
//! cycle exists iff the pattern fits within the budget.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::debruijn::DeBruijnGraph;
use crate::graph::{LabeledDigraph, Symbol, VertexId};
use crate::matcher::Pattern;
use crate::reduce::{ceil_log2, LabelLedger, ReduceError};

/// `$` in the classical rendering of the output alphabet.
pub const SYM_DOLLAR: Symbol = Symbol(0);
/// `#`.
pub const SYM_HASH: Symbol = Symbol(1);
/// Binary `0`.
pub const SYM_ZERO: Symbol = Symbol(2);
/// Binary `1`.
pub const SYM_ONE: Symbol = Symbol(3);

pub const NPC_SIGMA: u8 = 4;

/// Input edge count must stay within `DEFAULT_EDGE_RATIO * n`.
pub const DEFAULT_EDGE_RATIO: usize = 4;

/// A directed graph suitable for the reduction: no self-loops, every vertex
/// has an incoming and an outgoing edge, ids are dense, and the edge count
/// is linear in the vertex count. Labels on the underlying digraph are
/// unused (all zero).
#[derive(Clone, Debug)]
pub struct HamInstance {
    graph: LabeledDigraph,
}

impl HamInstance {
    pub fn from_graph(graph: LabeledDigraph) -> Result<Self, ReduceError> {
        let n = graph.vertex_count();
        if n < 2 {
            return Err(ReduceError::TooSmall { min: 2, found: n });
        }
        if graph.id_bound() != n {
            return Err(ReduceError::SparseVertexIds);
        }
        for v in graph.vertices() {
            if graph.has_edge(v, v) {
                return Err(ReduceError::SelfLoop(v));
            }
            if graph.out_degree(v) == 0 {
                return Err(ReduceError::DegreeZero {
                    v,
                    direction: "out",
                });
            }
            if graph.in_degree(v) == 0 {
                return Err(ReduceError::DegreeZero { v, direction: "in" });
            }
        }
        let max = DEFAULT_EDGE_RATIO * n;
        if graph.edge_count() > max {
            return Err(ReduceError::TooManyEdges {
                edges: graph.edge_count(),
                max,
            });
        }
        Ok(HamInstance { graph })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, ReduceError> {
        let mut g = LabeledDigraph::new(1);
        for _ in 0..n {
            g.add_vertex(Symbol(0))?;
        }
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        HamInstance::from_graph(g)
    }

    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn graph(&self) -> &LabeledDigraph {
        &self.graph
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.graph.edges().collect()
    }

    pub fn first_two_cycle(&self) -> Option<(VertexId, VertexId)> {
        self.graph
            .edges()
            .find(|&(u, v)| u < v && self.graph.has_edge(v, u))
    }
}

/// Parameters derived from the (preprocessed) vertex count.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct NpcParams {
    pub n: usize,
    pub ell: u32,
    pub w: usize,
    pub k: usize,
    pub delta: u64,
}

impl NpcParams {
    pub fn for_n(n: usize) -> Self {
        let ell = ceil_log2(n);
        let w = enc_len(ell);
        NpcParams {
            n,
            ell,
            w,
            k: 3 * w,
            delta: 2 * ell as u64 * (n as u64 - 1),
        }
    }
}

/// Length of enc(i): 2l(2l+1) + l.
pub fn enc_len(ell: u32) -> usize {
    let l = ell as usize;
    2 * l * (2 * l + 1) + l
}

/// The padded binary encoding (0^{2l} 1)^{2l} bin(i), as raw bits.
/// bin(i) is MSB-first, zero-padded to l bits.
pub fn enc(i: u64, ell: u32) -> Result<Vec<u8>, ReduceError> {
    if ell == 0 || i >= 1u64 << ell {
        return Err(ReduceError::EncRange { i, ell });
    }
    let mut out = Vec::with_capacity(enc_len(ell));
    for _ in 0..2 * ell {
        out.extend(std::iter::repeat_n(0, 2 * ell as usize));
        out.push(1);
    }
    for b in (0..ell).rev() {
        out.push(((i >> b) & 1) as u8);
    }
    Ok(out)
}

fn enc_symbols(i: u64, ell: u32) -> Result<Vec<Symbol>, ReduceError> {
    Ok(enc(i, ell)?.into_iter().map(|b| Symbol(2 + b)).collect())
}

/// Removes all 2-cycles by splitting every vertex v into an in/mid/out
/// chain: v_in -> v_mid -> v_out, with each original edge (u, v) becoming
/// (u_out, v_in). Hamiltonicity is preserved exactly, the output has 3n
/// vertices and |E| + 2n edges, and no 2-cycle survives.
pub fn eliminate_two_cycles(g: &HamInstance) -> HamInstance {
    let n = g.n();
    let mut out = LabeledDigraph::new(1);
    for _ in 0..3 * n {
        out.add_vertex(Symbol(0)).expect("sigma 1 label 0");
    }
    let v_in = |v: VertexId| VertexId(3 * v.0);
    let v_mid = |v: VertexId| VertexId(3 * v.0 + 1);
    let v_out = |v: VertexId| VertexId(3 * v.0 + 2);
    for v in g.graph().vertices() {
        out.add_edge(v_in(v), v_mid(v)).unwrap();
        out.add_edge(v_mid(v), v_out(v)).unwrap();
    }
    for (u, v) in g.graph().edges() {
        out.add_edge(v_out(u), v_in(v)).unwrap();
    }
    HamInstance::from_graph(out).expect("gadget preserves the instance invariants")
}

/// A transformed edge: the anchor phi(u) the path hangs from and the 4W
/// path vertices ending at phi(v). `created` counts how many of the path
/// vertices were fresh rather than shared through the label ledger.
#[derive(Clone, Debug)]
pub struct PathHandle {
    pub anchor: VertexId,
    pub anchor_created: bool,
    pub vertices: Vec<VertexId>,
    pub created: usize,
}

impl PathHandle {
    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }
}

/// Incremental builder for the output graph. Marked anchors are created on
/// demand; every new vertex registers its implicit label in the ledger and
/// label collisions share the existing vertex, which is what merges the
/// overlapping parts of paths.
pub struct NpcBuilder {
    params: NpcParams,
    graph: LabeledDigraph,
    ledger: LabelLedger,
    marked: BTreeMap<VertexId, VertexId>,
}

impl NpcBuilder {
    pub fn new(params: NpcParams) -> Self {
        NpcBuilder {
            params,
            graph: LabeledDigraph::new(NPC_SIGMA),
            ledger: LabelLedger::new(),
            marked: BTreeMap::new(),
        }
    }

    pub fn params(&self) -> &NpcParams {
        &self.params
    }

    fn marked_label(&self, label: u64) -> Result<Vec<Symbol>, ReduceError> {
        let w = self.params.w;
        let e = enc_symbols(label, self.params.ell)?;
        let mut out = Vec::with_capacity(3 * w);
        out.extend_from_slice(&e);
        out.extend(std::iter::repeat_n(SYM_DOLLAR, w));
        out.extend_from_slice(&e);
        Ok(out)
    }

    fn ensure_anchor(&mut self, u: VertexId) -> Result<(VertexId, bool), ReduceError> {
        let label = self.marked_label(u.0 as u64)?;
        let (anchor, created) = self.ledger.intern(&mut self.graph, &label)?;
        self.marked.insert(u, anchor);
        Ok((anchor, created))
    }

    /// Transforms edge (u, v) into its path. Vertex labels along the path
    /// spell `#^W enc(L(v)) $^W enc(L(v))`; the implicit label of the j-th
    /// path vertex is the length-3W window ending at position j of the
    /// anchor's implicit label followed by the path string.
    pub fn transform_edge(&mut self, u: VertexId, v: VertexId) -> Result<PathHandle, ReduceError> {
        let w = self.params.w;
        let (anchor, anchor_created) = self.ensure_anchor(u)?;

        let enc_head = enc_symbols(v.0 as u64, self.params.ell)?;
        // full context: anchor implicit label (3W) + path string (4W)
        let mut full = self.marked_label(u.0 as u64)?;
        full.extend(std::iter::repeat_n(SYM_HASH, w));
        full.extend_from_slice(&enc_head);
        full.extend(std::iter::repeat_n(SYM_DOLLAR, w));
        full.extend_from_slice(&enc_head);

        let mut vertices = Vec::with_capacity(4 * w);
        let mut created = 0;
        let mut prev = anchor;
        for j in 1..=4 * w {
            let window = &full[j..j + 3 * w];
            let (cur, fresh) = self.ledger.intern(&mut self.graph, window)?;
            created += usize::from(fresh);
            self.graph.add_edge(prev, cur)?;
            vertices.push(cur);
            prev = cur;
        }
        self.marked.insert(v, prev);

        Ok(PathHandle {
            anchor,
            anchor_created,
            vertices,
            created,
        })
    }

    pub fn finish(self) -> Result<(DeBruijnGraph, BTreeMap<VertexId, VertexId>), ReduceError> {
        let NpcBuilder {
            params,
            graph,
            ledger,
            marked,
        } = self;
        Ok((ledger.into_debruijn(graph, params.k)?, marked))
    }
}

/// A generated instance: the graph, the pattern, the budget, the map from
/// preprocessed input vertices to their marked vertices, and the
/// preprocessed input itself (what the structural checks compare against).
#[derive(Clone, Debug)]
pub struct NpcBundle {
    pub graph: DeBruijnGraph,
    pub pattern: Pattern,
    pub delta: u64,
    pub params: NpcParams,
    pub marked: BTreeMap<VertexId, VertexId>,
    pub source: HamInstance,
}

/// The pattern `#^W enc(0) $^W enc(0) ... #^W enc(n-1) $^W enc(n-1)`
/// followed by one more enc(0) block; 4W(n+1) symbols.
pub fn npc_pattern(params: &NpcParams) -> Result<Pattern, ReduceError> {
    let w = params.w;
    let mut symbols = Vec::with_capacity(4 * w * (params.n + 1));
    let mut push_block = |i: u64| -> Result<(), ReduceError> {
        let e = enc_symbols(i, params.ell)?;
        symbols.extend(std::iter::repeat_n(SYM_HASH, w));
        symbols.extend_from_slice(&e);
        symbols.extend(std::iter::repeat_n(SYM_DOLLAR, w));
        symbols.extend_from_slice(&e);
        Ok(())
    };
    for i in 0..params.n as u64 {
        push_block(i)?;
    }
    push_block(0)?;
    Ok(Pattern::new(symbols)?)
}

/// Runs the 2-cycle gadget unconditionally, then builds the instance.
pub fn build_npc_instance(g: &HamInstance) -> Result<NpcBundle, ReduceError> {
    build_from_preprocessed(eliminate_two_cycles(g))
}

/// Test hook: skips the gadget. The input must already be 2-cycle-free.
pub fn build_npc_instance_direct(g: &HamInstance) -> Result<NpcBundle, ReduceError> {
    if let Some((u, v)) = g.first_two_cycle() {
        return Err(ReduceError::TwoCyclePresent { u, v });
    }
    build_from_preprocessed(g.clone())
}

fn build_from_preprocessed(pre: HamInstance) -> Result<NpcBundle, ReduceError> {
    let params = NpcParams::for_n(pre.n());
    let mut builder = NpcBuilder::new(params);
    // process edges grouped by head label, ascending
    let mut edges = pre.edges();
    edges.sort_by_key(|&(u, v)| (v, u));
    for (u, v) in edges {
        builder.transform_edge(u, v)?;
    }
    let pattern = npc_pattern(&params)?;
    let (graph, marked) = builder.finish()?;
    Ok(NpcBundle {
        graph,
        pattern,
        delta: params.delta,
        params,
        marked,
        source: pre,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NpcStructureViolation {
    /// A walk between marked vertices with unmarked interior whose length
    /// differs from 4W.
    InterMarkedWalkLength {
        from: VertexId,
        to: VertexId,
        length: usize,
    },
    /// An unmarked vertex reachable from marked vertices at two different
    /// distances, which already breaks the unique-distance structure.
    DepthConflict {
        vertex: VertexId,
        first: usize,
        second: usize,
    },
    /// Edge present in the preprocessed input but no inter-marked path found.
    MissingAdjacency { u: VertexId, v: VertexId },
    /// Inter-marked path found without a corresponding input edge.
    ExtraAdjacency { u: VertexId, v: VertexId },
    /// A maximal run of `$`s or `#`s whose vertex count differs from W.
    RunLength {
        start: VertexId,
        symbol: Symbol,
        length: usize,
    },
    /// A cycle consisting purely of `$`s or `#`s.
    RunCycle { vertex: VertexId, symbol: Symbol },
}

impl fmt::Display for NpcStructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NpcStructureViolation::InterMarkedWalkLength { from, to, length } => {
                write!(
                    f,
                    "walk from marked {from} to marked {to} has length {length}, not 4W"
                )
            }
            NpcStructureViolation::DepthConflict {
                vertex,
                first,
                second,
            } => {
                write!(
                    f,
                    "vertex {vertex} sits at distances {first} and {second} from marked vertices"
                )
            }
            NpcStructureViolation::MissingAdjacency { u, v } => {
                write!(f, "input edge ({u},{v}) has no inter-marked path")
            }
            NpcStructureViolation::ExtraAdjacency { u, v } => {
                write!(f, "inter-marked path ({u},{v}) has no input edge")
            }
            NpcStructureViolation::RunLength {
                start,
                symbol,
                length,
            } => {
                write!(f, "maximal run of symbol {symbol} starting at {start} has {length} vertices, not W")
            }
            NpcStructureViolation::RunCycle { vertex, symbol } => {
                write!(f, "cycle of symbol {symbol} through {vertex}")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct NpcStructureReport {
    pub violations: Vec<NpcStructureViolation>,
}

impl NpcStructureReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for NpcStructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "structure: zero violations");
        }
        for v in &self.violations {
            writeln!(f, "structure violation: {v}")?;
        }
        Ok(())
    }
}

/// Checks the three structural facts the correctness argument rests on:
/// (a) every walk between marked vertices with unmarked interior has length
/// exactly 4W (equivalently, every vertex has one well-defined distance from
/// the marked set and marked vertices are only reached at distance 4W);
/// (b) the marked-adjacency relation read off the output equals the
/// preprocessed input's edge set; (c) every maximal `$`-run and `#`-run has
/// exactly W vertices.
pub fn check_npc_structure(bundle: &NpcBundle) -> NpcStructureReport {
    let mut violations = Vec::new();
    let g = bundle.graph.base();
    let w = bundle.params.w;
    let marked_set: BTreeSet<VertexId> = bundle.marked.values().copied().collect();
    let inverse: HashMap<VertexId, VertexId> =
        bundle.marked.iter().map(|(&orig, &m)| (m, orig)).collect();

    // (a) + (b): BFS forward from each marked vertex without expanding
    // through marked vertices.
    let mut global_depth: HashMap<VertexId, usize> = HashMap::new();
    let mut recovered: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for (&orig, &source) in &bundle.marked {
        let mut local: HashMap<VertexId, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        queue.push_back((source, 0usize));
        while let Some((x, d)) = queue.pop_front() {
            if d >= 8 * w {
                break; // safety bound, twice the expected diameter
            }
            for y in g.out_neighbors(x) {
                let nd = d + 1;
                if marked_set.contains(&y) {
                    if nd != 4 * w {
                        violations.push(NpcStructureViolation::InterMarkedWalkLength {
                            from: source,
                            to: y,
                            length: nd,
                        });
                    }
                    if let Some(&head) = inverse.get(&y) {
                        recovered.insert((orig, head));
                    }
                    continue;
                }
                match local.get(&y) {
                    Some(&seen) => {
                        if seen != nd {
                            violations.push(NpcStructureViolation::DepthConflict {
                                vertex: y,
                                first: seen,
                                second: nd,
                            });
                        }
                    }
                    None => {
                        local.insert(y, nd);
                        match global_depth.get(&y) {
                            Some(&seen) if seen != nd => {
                                violations.push(NpcStructureViolation::DepthConflict {
                                    vertex: y,
                                    first: seen,
                                    second: nd,
                                });
                            }
                            _ => {
                                global_depth.insert(y, nd);
                            }
                        }
                        queue.push_back((y, nd));
                    }
                }
            }
        }
    }
    let expected: BTreeSet<(VertexId, VertexId)> = bundle.source.edges().into_iter().collect();
    for &(u, v) in expected.difference(&recovered) {
        violations.push(NpcStructureViolation::MissingAdjacency { u, v });
    }
    for &(u, v) in recovered.difference(&expected) {
        violations.push(NpcStructureViolation::ExtraAdjacency { u, v });
    }

    // (c) maximal monochromatic runs of $ and #.
    for sym in [SYM_DOLLAR, SYM_HASH] {
        let mut on_any_run: BTreeSet<VertexId> = BTreeSet::new();
        let starts: Vec<VertexId> = g
            .vertices()
            .filter(|&v| g.label(v) == Ok(sym))
            .filter(|&v| g.in_neighbors(v).all(|p| g.label(p) != Ok(sym)))
            .collect();
        for start in starts {
            // walk forward along sym-labeled successors; record every
            // maximal extension's vertex count
            let mut stack = vec![(start, 1usize, vec![start])];
            while let Some((x, len, path)) = stack.pop() {
                on_any_run.insert(x);
                let nexts: Vec<VertexId> = g
                    .out_neighbors(x)
                    .filter(|&y| g.label(y) == Ok(sym))
                    .collect();
                if nexts.is_empty() {
                    if len != w {
                        violations.push(NpcStructureViolation::RunLength {
                            start,
                            symbol: sym,
                            length: len,
                        });
                    }
                } else {
                    for y in nexts {
                        if path.contains(&y) {
                            violations.push(NpcStructureViolation::RunCycle {
                                vertex: y,
                                symbol: sym,
                            });
                        } else {
                            let mut np = path.clone();
                            np.push(y);
                            stack.push((y, len + 1, np));
                        }
                    }
                }
            }
        }
        for v in g.vertices() {
            if g.label(v) == Ok(sym) && !on_any_run.contains(&v) {
                violations.push(NpcStructureViolation::RunCycle {
                    vertex: v,
                    symbol: sym,
                });
            }
        }
    }

    NpcStructureReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::debruijn::{compute_implicit_labels, validate_de_bruijn};

    fn triangle() -> HamInstance {
        HamInstance::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn enc_matches_the_formula() {
        assert_eq!(
            enc(3, 2).unwrap(),
            vec![0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1]
        );
        assert_eq!(enc(3, 2).unwrap().len(), 22);
        let e0 = enc(0, 2).unwrap();
        assert_eq!(&e0[20..], &[0, 0]);
        assert_eq!(
            enc(2, 1).unwrap_err(),
            ReduceError::EncRange { i: 2, ell: 1 }
        );
    }

    #[test]
    fn params_match_the_formulas() {
        let p = NpcParams::for_n(3);
        assert_eq!((p.ell, p.w, p.k, p.delta), (2, 22, 66, 8));
        let p = NpcParams::for_n(9);
        assert_eq!((p.ell, p.w, p.k, p.delta), (4, 76, 228, 64));
    }

    #[test]
    fn gadget_on_triangle() {
        let g = triangle();
        let split = eliminate_two_cycles(&g);
        assert_eq!(split.n(), 9);
        assert_eq!(split.graph().edge_count(), 9);
        assert!(split.first_two_cycle().is_none());
    }

    #[test]
    fn gadget_preserves_hamiltonicity_of_two_cycle() {
        let g = HamInstance::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let split = eliminate_two_cycles(&g);
        assert_eq!(split.n(), 6);
        assert!(split.first_two_cycle().is_none());
        let (yes, _) = crate::oracle::hamiltonian_oracle(&split, 12).unwrap();
        assert!(yes);
    }

    #[test]
    fn ham_instance_rejects_self_loops() {
        assert_eq!(
            HamInstance::from_edges(2, &[(0, 0), (0, 1), (1, 0)]).unwrap_err(),
            ReduceError::SelfLoop(VertexId(0))
        );
    }

    #[test]
    fn first_transform_creates_exactly_4w_path_vertices() {
        let params = NpcParams::for_n(3);
        let mut b = NpcBuilder::new(params);
        let h = b.transform_edge(VertexId(0), VertexId(1)).unwrap();
        assert!(h.anchor_created);
        assert_eq!(h.vertices.len(), 4 * params.w);
        assert_eq!(h.created, 4 * params.w);
    }

    #[test]
    fn fan_out_edges_share_their_prefix() {
        // needs n >= 3 distinct labels; edges (0,1) and (0,2)
        let params = NpcParams::for_n(3);
        let mut b = NpcBuilder::new(params);
        let h1 = b.transform_edge(VertexId(0), VertexId(1)).unwrap();
        let h2 = b.transform_edge(VertexId(0), VertexId(2)).unwrap();
        assert_eq!(h1.anchor, h2.anchor);
        assert!(h2.created < 4 * params.w);
        let shared = h1
            .vertices
            .iter()
            .filter(|v| h2.vertices.contains(v))
            .count();
        // the #-run and the long enc prefix are shared
        assert!(shared >= params.w, "shared only {shared}");
        let total = h1.created + h2.created;
        assert!(total < 8 * params.w);
    }

    #[test]
    fn disjoint_edges_make_disjoint_paths() {
        // two vertex-disjoint edges inside a valid 4-vertex instance
        let g = HamInstance::from_edges(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        let pre = eliminate_two_cycles(&g);
        let params = NpcParams::for_n(pre.n());
        let mut b = NpcBuilder::new(params);
        let h1 = b.transform_edge(VertexId(2), VertexId(3)).unwrap();
        let h2 = b.transform_edge(VertexId(6), VertexId(7)).unwrap();
        assert!(h1.vertices.iter().all(|v| !h2.vertices.contains(v)));
    }

    #[test]
    fn triangle_bundle_has_the_documented_shape() {
        let bundle = build_npc_instance_direct(&triangle()).unwrap();
        assert_eq!(bundle.params.w, 22);
        assert_eq!(bundle.delta, 8);
        assert_eq!(bundle.pattern.len(), 352);
        // around a cycle every anchor is also some path's end vertex, so the
        // count is exactly 4W per edge
        assert_eq!(bundle.graph.base().vertex_count(), 3 * 4 * 22);
        assert!(validate_de_bruijn(&bundle.graph).is_clean());
    }

    #[test]
    fn triangle_bundle_passes_recomputation() {
        let bundle = build_npc_instance_direct(&triangle()).unwrap();
        let r = compute_implicit_labels(bundle.graph.base(), bundle.params.k).unwrap();
        assert_eq!(r.implicit_labels(), bundle.graph.implicit_labels());
    }

    #[test]
    fn gadgeted_triangle_formulas() {
        let bundle = build_npc_instance(&triangle()).unwrap();
        assert_eq!(bundle.params.n, 9);
        assert_eq!(bundle.params.w, 76);
        assert_eq!(bundle.params.k, 228);
        assert_eq!(bundle.delta, 64);
        assert_eq!(bundle.pattern.len(), 4 * 76 * 10);
    }

    #[test]
    fn triangle_structure_is_clean() {
        let bundle = build_npc_instance_direct(&triangle()).unwrap();
        let report = check_npc_structure(&bundle);
        assert!(report.is_clean(), "{report}");
    }

    #[test]
    fn injected_edge_breaks_structure() {
        let mut bundle = build_npc_instance_direct(&triangle()).unwrap();
        // splice a shortcut between two interior path vertices
        let marked: BTreeSet<VertexId> = bundle.marked.values().copied().collect();
        let interior: Vec<VertexId> = bundle
            .graph
            .base()
            .vertices()
            .filter(|v| !marked.contains(v))
            .collect();
        let a = interior[5];
        let b = interior[interior.len() - 5];
        bundle.graph.base_mut().add_edge(a, b).unwrap();
        let report = check_npc_structure(&bundle);
        assert!(!report.is_clean());
    }

    #[test]
    fn relabeled_dollar_breaks_run_lengths() {
        let mut bundle = build_npc_instance_direct(&triangle()).unwrap();
        let victim = bundle
            .graph
            .base()
            .vertices()
            .find(|&v| {
                bundle.graph.base().label(v) == Ok(SYM_DOLLAR)
                    && bundle
                        .graph
                        .base()
                        .in_neighbors(v)
                        .all(|p| bundle.graph.base().label(p) == Ok(SYM_DOLLAR))
            })
            .unwrap();
        bundle
            .graph
            .base_mut()
            .relabel_vertex(victim, SYM_HASH)
            .unwrap();
        let report = check_npc_structure(&bundle);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, NpcStructureViolation::RunLength { .. })));
    }

    #[test]
    fn marked_map_is_injective_and_total() {
        let bundle = build_npc_instance_direct(&triangle()).unwrap();
        assert_eq!(bundle.marked.len(), 3);
        let values: BTreeSet<VertexId> = bundle.marked.values().copied().collect();
        assert_eq!(values.len(), 3);
    }
}
