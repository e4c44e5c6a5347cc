//! Turning an Orthogonal Vectors instance into a pattern-substitution
//! matching instance on a de Bruijn graph over the alphabet {0,1,2,3}.
//!
//! The graph has four sections. A Synchronization loop of k vertices (one
//! labeled 3, the rest 2) acts as a clock: pattern blocks of the form
//! (2^l 3)^t spin around it for free. The Selection fan-in is a complete
//! binary selector of c = ceil(log(N+1)) bit-labeled levels hanging off the
//! 3-vertex; a root-to-leaf descent spells c bits and so distinguishes the
//! N+1 Selection paths. Each Selection path spells the vector gadget
//! f_A(a_i[1])...f_A(a_i[d]) f_A(0) (the (N+1)-th spells f_A(0)^d f_A(1)),
//! and feeds a 2-labeled path of l = k-1 vertices; merging equal implicit
//! labels to a fixpoint turns those into the converging Post-selection merge
//! section, whose ending vertices close the loop back at the 3-vertex.
//!
//! Every round trip from the 3-vertex through a Selection path back to the
//! 3-vertex takes exactly 2k edges, matching the 2k-symbol block tail
//! `2^c gadget 2^l 3` of the pattern, so the only substitutions an aligned
//! walk pays are the c twos crossing the fan-in and the block-wise Hamming
//! distance between the f_B gadget and the chosen f_A gadget. That distance
//! is 2(d+1) exactly when the vectors are orthogonal and at least 2d+4
//! otherwise, which is what the budget separates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::debruijn::DeBruijnGraph;
use crate::graph::{LabeledDigraph, Symbol, VertexId};
use crate::matcher::{constrained_pattern_cost, pattern_substitution_cost, Cost, Pattern};
use crate::reduce::{ceil_log2, LabelLedger, ReduceError};

pub const OV_SIGMA: u8 = 4;

const TWO: Symbol = Symbol(2);
const THREE: Symbol = Symbol(3);

/// The mapping applied to graph-side vector bits: f_A(0) = 1100,
/// f_A(1) = 1111.
pub fn f_a(bit: u8) -> [u8; 4] {
    if bit == 0 {
        [1, 1, 0, 0]
    } else {
        [1, 1, 1, 1]
    }
}

/// The mapping applied to pattern-side vector bits: f_B(0) = 0110,
/// f_B(1) = 0000.
pub fn f_b(bit: u8) -> [u8; 4] {
    if bit == 0 {
        [0, 1, 1, 0]
    } else {
        [0, 0, 0, 0]
    }
}

/// An Orthogonal Vectors instance: two sets of N binary d-vectors, N a
/// power of two and d > log2(N).
#[derive(Clone, Debug)]
pub struct OvInstance {
    a: Vec<Vec<u8>>,
    b: Vec<Vec<u8>>,
    d: usize,
}

impl OvInstance {
    pub fn new(a: Vec<Vec<u8>>, b: Vec<Vec<u8>>) -> Result<Self, ReduceError> {
        if a.is_empty() || a.len() != b.len() {
            return Err(ReduceError::BadSetSizes);
        }
        let n = a.len();
        if !n.is_power_of_two() {
            return Err(ReduceError::NotPowerOfTwo(n));
        }
        let d = a[0].len();
        if d == 0 || a.iter().chain(&b).any(|v| v.len() != d) {
            return Err(ReduceError::RaggedVectors);
        }
        if a.iter().chain(&b).flatten().any(|&x| x > 1) {
            return Err(ReduceError::BadBit);
        }
        let log_n = ceil_log2(n);
        if d as u32 <= log_n {
            return Err(ReduceError::DimensionTooSmall { d, log_n });
        }
        Ok(OvInstance { a, b, d })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &[Vec<u8>] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<u8>] {
        &self.b
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct OvParams {
    pub n: usize,
    pub d: usize,
    /// Fan-in depth: smallest c with 2^c >= N+1, which equals ceil(log(N+1)).
    pub c: u32,
    pub k: usize,
    pub ell: usize,
    pub t: usize,
    pub delta: u64,
}

impl OvParams {
    pub fn for_instance(ov: &OvInstance) -> Self {
        Self::for_sizes(ov.n(), ov.d())
    }

    pub fn for_sizes(n: usize, d: usize) -> Self {
        let c = ceil_log2(n + 1);
        // N a power of two makes ceil(log(N+1)) = log N + 1; asserted, not
        // assumed.
        assert_eq!(c, ceil_log2(n) + 1, "N must be a power of two");
        let log_np1 = c as usize;
        let k = log_np1 + 4 * (d + 1);
        OvParams {
            n,
            d,
            c,
            k,
            ell: k - 1,
            t: 5 * d + log_np1,
            delta: (n as u64) * log_np1 as u64
                + 2 * (d as u64 + 1)
                + (2 * d as u64 + 4) * (n as u64 - 1),
        }
    }
}

/// Which of the four graph sections a vertex belongs to. Selection carries
/// the 1-based path index.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Section {
    FanIn,
    Selection(usize),
    PostMerge,
    SyncLoop,
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Section::FanIn => write!(f, "fan-in"),
            Section::Selection(i) => write!(f, "selection-{i}"),
            Section::PostMerge => write!(f, "post-merge"),
            Section::SyncLoop => write!(f, "sync-loop"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SethBundle {
    pub graph: DeBruijnGraph,
    pub pattern: Pattern,
    pub delta: u64,
    pub params: OvParams,
    pub sections: BTreeMap<VertexId, Section>,
    pub source: OvInstance,
}

/// The gadget string a Selection path spells: f_A over the vector's bits
/// followed by f_A(0), or f_A(0)^d f_A(1) for the extra (N+1)-th path.
fn selection_string(a: &[Vec<u8>], path: usize, d: usize) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(4 * (d + 1));
    if path <= a.len() {
        for &bit in &a[path - 1] {
            out.extend(f_a(bit).iter().map(|&x| Symbol(x)));
        }
        out.extend(f_a(0).iter().map(|&x| Symbol(x)));
    } else {
        for _ in 0..d {
            out.extend(f_a(0).iter().map(|&x| Symbol(x)));
        }
        out.extend(f_a(1).iter().map(|&x| Symbol(x)));
    }
    out
}

/// Last k symbols of `2^k ++ tail`: the implicit label of a vertex whose
/// backward context is the synchronization loop followed by `tail`.
fn loop_padded(k: usize, tail: &[Symbol]) -> Vec<Symbol> {
    if tail.len() >= k {
        tail[tail.len() - k..].to_vec()
    } else {
        let mut out = Vec::with_capacity(k);
        out.extend(std::iter::repeat_n(TWO, k - tail.len()));
        out.extend_from_slice(tail);
        out
    }
}

/// Builds the graph from the A-side vectors. Returns the graph and the
/// section map.
pub fn build_ov_graph(
    a: &[Vec<u8>],
    params: &OvParams,
) -> Result<(DeBruijnGraph, BTreeMap<VertexId, Section>), ReduceError> {
    let k = params.k;
    let ell = params.ell;
    let c = params.c as usize;
    let n = params.n;
    let d = params.d;

    let mut g = LabeledDigraph::new(OV_SIGMA);
    let mut ledger = LabelLedger::new();
    let mut sections: BTreeMap<VertexId, Section> = BTreeMap::new();

    // Synchronization loop: k vertices, one labeled 3, the rest 2.
    // Implicit labels: the 3-vertex is 2^{k-1} 3; the 2-vertex i steps after
    // it is 2^{k-1-i} 3 2^i.
    let (three_v, _) = ledger.intern(&mut g, &loop_padded(k, &[THREE]))?;
    sections.insert(three_v, Section::SyncLoop);
    let mut prev = three_v;
    for i in 1..k {
        let mut label = vec![TWO; k];
        label[k - 1 - i] = THREE;
        let (v, _) = ledger.intern(&mut g, &label)?;
        sections.insert(v, Section::SyncLoop);
        g.add_edge(prev, v)?;
        prev = v;
    }
    g.add_edge(prev, three_v)?;

    // Selection fan-in: a complete binary selector of c bit-labeled levels
    // below the 3-vertex; the node reached by descending bits x1..xj has
    // implicit label 2^{k-1-j} 3 x1..xj. Its two children append one bit.
    // Leaves are the level-c nodes in binary-counter order.
    let mut level: Vec<(VertexId, Vec<Symbol>)> = Vec::new();
    for bit in 0..2u8 {
        let tail = vec![THREE, Symbol(bit)];
        let (v, _) = ledger.intern(&mut g, &loop_padded(k, &tail))?;
        sections.insert(v, Section::FanIn);
        g.add_edge(three_v, v)?;
        level.push((v, vec![Symbol(bit)]));
    }
    for _ in 2..=c {
        let mut next_level = Vec::with_capacity(level.len() * 2);
        for (parent, bits) in &level {
            for bit in 0..2u8 {
                let mut nb = bits.clone();
                nb.push(Symbol(bit));
                let mut tail = vec![THREE];
                tail.extend_from_slice(&nb);
                let (v, _) = ledger.intern(&mut g, &loop_padded(k, &tail))?;
                sections.insert(v, Section::FanIn);
                g.add_edge(*parent, v)?;
                next_level.push((v, nb));
            }
        }
        level = next_level;
    }
    let leaves = level; // 2^c leaves, binary-counter order

    // Selection section: path i hangs off leaf i-1 and spells its gadget
    // string. The backward context of the q-th path vertex is the loop, the
    // 3, the leaf bits, and the first q gadget symbols.
    let mut path_ends: Vec<(VertexId, Vec<Symbol>)> = Vec::new();
    for path in 1..=n + 1 {
        let (leaf, leaf_bits) = &leaves[path - 1];
        let gadget = selection_string(a, path, d);
        let mut context = vec![THREE];
        context.extend_from_slice(leaf_bits);
        let mut prev = *leaf;
        for q in 1..=4 * (d + 1) {
            context.push(gadget[q - 1]);
            let (v, _) = ledger.intern(&mut g, &loop_padded(k, &context))?;
            sections.insert(v, Section::Selection(path));
            g.add_edge(prev, v)?;
            prev = v;
        }
        path_ends.push((prev, context));
    }

    // Post-selection merge: one 2^l path of l vertices per Selection path,
    // built fresh and then merged by implicit label until all labels in the
    // section are unique.
    let mut merge_paths: Vec<Vec<VertexId>> = Vec::new();
    for (end, context) in &mut path_ends {
        let mut ids = Vec::with_capacity(ell);
        let mut prev = *end;
        for _ in 0..ell {
            context.push(TWO);
            let v = ledger.fresh(&mut g, loop_padded(k, context))?;
            sections.insert(v, Section::PostMerge);
            g.add_edge(prev, v)?;
            ids.push(v);
            prev = v;
        }
        merge_paths.push(ids);
    }

    // merge two vertices whenever they share an implicit label; repeat
    // until every label in the section is unique
    loop {
        let mut groups: HashMap<Vec<Symbol>, Vec<VertexId>> = HashMap::new();
        for ids in &merge_paths {
            for &v in ids {
                let label = ledger
                    .label_of(v)
                    .expect("merge vertex has a label")
                    .to_vec();
                let slot = groups.entry(label).or_default();
                if !slot.contains(&v) {
                    slot.push(v);
                }
            }
        }
        let mut dup_groups: Vec<(Vec<Symbol>, Vec<VertexId>)> =
            groups.into_iter().filter(|(_, vs)| vs.len() > 1).collect();
        if dup_groups.is_empty() {
            break;
        }
        dup_groups.sort_by(|(a, _), (b, _)| a.cmp(b));
        for (_, mut vs) in dup_groups {
            vs.sort_unstable();
            let mut canonical = vs[0];
            for &other in &vs[1..] {
                let w = g.merge_vertices(canonical, other)?;
                ledger.record_merge(canonical, other, w);
                sections.remove(&canonical);
                sections.remove(&other);
                sections.insert(w, Section::PostMerge);
                for ids in merge_paths.iter_mut() {
                    for slot in ids.iter_mut() {
                        if *slot == canonical || *slot == other {
                            *slot = w;
                        }
                    }
                }
                canonical = w;
            }
        }
    }

    // Ending vertices of the merge section close the clock loop.
    let mut ends: Vec<VertexId> = merge_paths.iter().map(|ids| *ids.last().unwrap()).collect();
    ends.sort_unstable();
    ends.dedup();
    for end in ends {
        g.add_edge(end, three_v)?;
    }

    Ok((ledger.into_debruijn(g, k)?, sections))
}

/// The pattern built from the B-side vectors: for each b_i the block
/// `(2^l 3)^t 2^c f_B(b_i[1]) ... f_B(b_i[d]) f_B(1)`.
pub fn build_ov_pattern(b: &[Vec<u8>], params: &OvParams) -> Pattern {
    let mut symbols = Vec::with_capacity(
        b.len() * (params.t * (params.ell + 1) + params.c as usize + 4 * (params.d + 1)),
    );
    for vec in b {
        for _ in 0..params.t {
            symbols.extend(std::iter::repeat_n(TWO, params.ell));
            symbols.push(THREE);
        }
        symbols.extend(std::iter::repeat_n(TWO, params.c as usize));
        for &bit in vec {
            symbols.extend(f_b(bit).iter().map(|&x| Symbol(x)));
        }
        symbols.extend(f_b(1).iter().map(|&x| Symbol(x)));
    }
    Pattern::new(symbols).expect("pattern is never empty")
}

pub fn build_seth_instance(ov: &OvInstance) -> Result<SethBundle, ReduceError> {
    let params = OvParams::for_instance(ov);
    let (graph, sections) = build_ov_graph(ov.a(), &params)?;
    let pattern = build_ov_pattern(ov.b(), &params);
    Ok(SethBundle {
        graph,
        pattern,
        delta: params.delta,
        params,
        sections,
        source: ov.clone(),
    })
}

/// Result of the optimality probe: the unconstrained substitution minimum
/// against the minimum when substitutions at the pattern's 3-positions are
/// forbidden. Equality certifies that an optimal alignment matching 3s to
/// 3s exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvProbeReport {
    pub unconstrained: Cost,
    pub constrained: Cost,
}

impl OvProbeReport {
    pub fn equal(&self) -> bool {
        self.unconstrained == self.constrained
    }
}

pub fn check_ov_optimality_probes(bundle: &SethBundle) -> Result<OvProbeReport, ReduceError> {
    let forbidden = bundle
        .pattern
        .symbols()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == THREE)
        .map(|(idx, _)| idx + 1)
        .collect();
    let unconstrained = pattern_substitution_cost(bundle.graph.base(), &bundle.pattern)?;
    let constrained = constrained_pattern_cost(bundle.graph.base(), &bundle.pattern, &forbidden)?;
    Ok(OvProbeReport {
        unconstrained,
        constrained,
    })
}
