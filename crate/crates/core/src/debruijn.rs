//! De Bruijn graphs: implicit-label bookkeeping, from-scratch implicit-label
//! recomputation, the full order-k graph, and the three-property validator.
//!
//! A vertex's implicit label is the length-k string spelled by any walk of
//! k-1 edges ending at it, followed by nothing: the walk's own labels already
//! include the vertex. A graph is a de Bruijn graph when implicit labels are
//! (i) unique, (ii) edge-complete (whenever one label's suffix overlaps
//! another's prefix the edge exists), and (iii) well-defined (every incoming
//! walk spells the same string).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::{GraphError, LabeledDigraph, Symbol, VertexId};

pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeBruijnError {
    #[error("order k must be at least 1")]
    InvalidOrder,
    #[error("vertex {0} has no incoming walk of length k-1")]
    NoIncomingWalk(VertexId),
    #[error("vertex {v} has two incoming walks that disagree {steps} steps back")]
    AmbiguousImplicitLabel { v: VertexId, steps: usize },
    #[error("sigma^k = {requested} vertices exceeds the cap of {cap}")]
    SizeCap { requested: usize, cap: usize },
    #[error("implicit label of {v} is malformed: {reason}")]
    BadImplicitLabel { v: VertexId, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A [`LabeledDigraph`] together with its order `k` and one implicit label
/// (a length-`k` symbol sequence) per vertex.
///
/// Constructors check only the cheap shape invariants: label length `k` and
/// final symbol agreeing with the vertex label. Uniqueness, edge-completeness
/// and well-definedness are [`validate_de_bruijn`]'s job.
#[derive(Clone, Debug)]
pub struct DeBruijnGraph {
    base: LabeledDigraph,
    k: usize,
    implicit: BTreeMap<VertexId, Vec<Symbol>>,
}

impl DeBruijnGraph {
    pub fn from_parts(
        base: LabeledDigraph,
        k: usize,
        implicit: BTreeMap<VertexId, Vec<Symbol>>,
    ) -> Result<Self, DeBruijnError> {
        if k == 0 {
            return Err(DeBruijnError::InvalidOrder);
        }
        for v in base.vertices() {
            let label = implicit.get(&v).ok_or(DeBruijnError::BadImplicitLabel {
                v,
                reason: "missing".into(),
            })?;
            if label.len() != k {
                return Err(DeBruijnError::BadImplicitLabel {
                    v,
                    reason: format!("length {} instead of {}", label.len(), k),
                });
            }
            if label[k - 1] != base.label(v)? {
                return Err(DeBruijnError::BadImplicitLabel {
                    v,
                    reason: "does not end with the vertex's own label".into(),
                });
            }
        }
        Ok(DeBruijnGraph { base, k, implicit })
    }

    pub fn base(&self) -> &LabeledDigraph {
        &self.base
    }

    /// Mutable access to the underlying digraph, for counterexample
    /// experiments (edge deletion, relabeling). Queries over a shared graph
    /// stay read-only.
    pub fn base_mut(&mut self) -> &mut LabeledDigraph {
        &mut self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn implicit(&self, v: VertexId) -> Option<&[Symbol]> {
        self.implicit.get(&v).map(Vec::as_slice)
    }

    pub fn implicit_labels(&self) -> &BTreeMap<VertexId, Vec<Symbol>> {
        &self.implicit
    }

    /// Overwrites one implicit label without any checks. Exposed so tests can
    /// force property-(i) violations.
    pub fn override_implicit_label(&mut self, v: VertexId, label: Vec<Symbol>) {
        self.implicit.insert(v, label);
    }
}

/// Recomputes every implicit label from scratch by walking backward k-1
/// steps from each vertex, breadth-first over frontier sets.
///
/// Fails on the first vertex with no length-(k-1) incoming walk, or whose
/// incoming walks disagree at some depth.
pub fn compute_implicit_labels(
    g: &LabeledDigraph,
    k: usize,
) -> Result<DeBruijnGraph, DeBruijnError> {
    if k == 0 {
        return Err(DeBruijnError::InvalidOrder);
    }
    let mut implicit = BTreeMap::new();
    for v in g.vertices() {
        let mut label = vec![Symbol(0); k];
        label[k - 1] = g.label(v)?;
        // frontier holds all vertices reachable by walking exactly `depth`
        // edges backwards; all of them must agree on their label.
        let mut frontier: Vec<VertexId> = vec![v];
        for depth in 1..k {
            let mut next: Vec<VertexId> =
                frontier.iter().flat_map(|&x| g.in_neighbors(x)).collect();
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                return Err(DeBruijnError::NoIncomingWalk(v));
            }
            let first = g.label(next[0])?;
            if next.iter().any(|&x| g.label(x) != Ok(first)) {
                return Err(DeBruijnError::AmbiguousImplicitLabel { v, steps: depth });
            }
            label[k - 1 - depth] = first;
            frontier = next;
        }
        implicit.insert(v, label);
    }
    DeBruijnGraph::from_parts(g.clone(), k, implicit)
}

/// Builds the full order-`k` de Bruijn graph over an alphabet of size
/// `sigma`: one vertex per k-mer, labeled with the k-mer's last symbol, and
/// an edge from every k-mer to each of its `sigma` successors.
pub fn full_de_bruijn(sigma: u8, k: usize, cap: usize) -> Result<DeBruijnGraph, DeBruijnError> {
    if k == 0 {
        return Err(DeBruijnError::InvalidOrder);
    }
    let n = (sigma as usize)
        .checked_pow(k as u32)
        .ok_or(DeBruijnError::SizeCap {
            requested: usize::MAX,
            cap,
        })?;
    if n > cap {
        return Err(DeBruijnError::SizeCap { requested: n, cap });
    }

    let kmer = |mut idx: usize| -> Vec<Symbol> {
        let mut s = vec![Symbol(0); k];
        for pos in (0..k).rev() {
            s[pos] = Symbol((idx % sigma as usize) as u8);
            idx /= sigma as usize;
        }
        s
    };

    let mut g = LabeledDigraph::new(sigma);
    let mut implicit = BTreeMap::new();
    for idx in 0..n {
        let s = kmer(idx);
        let v = g.add_vertex(s[k - 1])?;
        implicit.insert(v, s);
    }
    for idx in 0..n {
        // successor k-mers share the length-(k-1) suffix of idx as a prefix
        let shifted = (idx * sigma as usize) % n;
        for a in 0..sigma as usize {
            g.add_edge(VertexId(idx), VertexId(shifted + a))?;
        }
    }
    DeBruijnGraph::from_parts(g, k, implicit)
}

/// One violation found by [`validate_de_bruijn`]. The variants correspond to
/// the three defining properties, plus a shape check for labels that are not
/// length-k strings ending in the vertex's own label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Property (i): two vertices share an implicit label.
    DuplicateImplicitLabel {
        label: Vec<Symbol>,
        first: VertexId,
        second: VertexId,
    },
    /// Property (ii): `tail`'s label overlaps `head`'s but the edge is absent.
    MissingEdge {
        tail: VertexId,
        head: VertexId,
    },
    /// Property (iii): a length-(k-1) walk into `vertex` disagrees with its
    /// implicit label `steps` edges back; `offender` is the walk vertex whose
    /// label `found` differs from the `expected` symbol.
    IllDefinedLabel {
        vertex: VertexId,
        steps: usize,
        offender: VertexId,
        expected: Symbol,
        found: Symbol,
    },
    MalformedLabel {
        vertex: VertexId,
        reason: String,
    },
}

impl Violation {
    pub fn property(&self) -> &'static str {
        match self {
            Violation::DuplicateImplicitLabel { .. } => "uniqueness",
            Violation::MissingEdge { .. } => "edge-completeness",
            Violation::IllDefinedLabel { .. } => "well-definedness",
            Violation::MalformedLabel { .. } => "shape",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateImplicitLabel { label, first, second } => {
                let s: Vec<String> = label.iter().map(|x| x.to_string()).collect();
                write!(
                    f,
                    "uniqueness: vertices {first} and {second} both carry implicit label {}",
                    s.join("")
                )
            }
            Violation::MissingEdge { tail, head } => write!(
                f,
                "edge-completeness: labels of {tail} and {head} overlap but edge ({tail},{head}) is missing"
            ),
            Violation::IllDefinedLabel {
                vertex,
                steps,
                offender,
                expected,
                found,
            } => write!(
                f,
                "well-definedness: a walk into {vertex} passes {offender} (label {found}) {steps} steps back where the implicit label expects {expected}"
            ),
            Violation::MalformedLabel { vertex, reason } => {
                write!(f, "shape: implicit label of {vertex} is malformed: {reason}")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count_property(&self, property: &str) -> usize {
        self.violations
            .iter()
            .filter(|v| v.property() == property)
            .count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid: zero violations");
        }
        for v in &self.violations {
            writeln!(f, "violation [{}]: {}", v.property(), v)?;
        }
        Ok(())
    }
}

/// Checks the three de Bruijn properties and reports every violation found.
/// Violations are data, not errors: callers decide what a dirty report means.
pub fn validate_de_bruijn(g: &DeBruijnGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let k = g.k();
    let base = g.base();

    // Shape: length k, last symbol = own label.
    for v in base.vertices() {
        match g.implicit(v) {
            None => violations.push(Violation::MalformedLabel {
                vertex: v,
                reason: "missing".into(),
            }),
            Some(label) => {
                if label.len() != k {
                    violations.push(Violation::MalformedLabel {
                        vertex: v,
                        reason: format!("length {} instead of {}", label.len(), k),
                    });
                } else if Ok(label[k - 1]) != base.label(v) {
                    violations.push(Violation::MalformedLabel {
                        vertex: v,
                        reason: "does not end with the vertex's own label".into(),
                    });
                }
            }
        }
    }

    // Property (i): uniqueness.
    let mut seen: HashMap<&[Symbol], VertexId> = HashMap::new();
    for v in base.vertices() {
        if let Some(label) = g.implicit(v) {
            if let Some(&first) = seen.get(label) {
                violations.push(Violation::DuplicateImplicitLabel {
                    label: label.to_vec(),
                    first,
                    second: v,
                });
            } else {
                seen.insert(label, v);
            }
        }
    }

    // Property (ii): no missing edges. Index heads by their label's
    // length-(k-1) prefix and look every tail's suffix up.
    let mut by_prefix: HashMap<&[Symbol], Vec<VertexId>> = HashMap::new();
    for v in base.vertices() {
        if let Some(label) = g.implicit(v) {
            if label.len() == k {
                by_prefix.entry(&label[..k - 1]).or_default().push(v);
            }
        }
    }
    for x in base.vertices() {
        if let Some(label) = g.implicit(x) {
            if label.len() != k {
                continue;
            }
            if let Some(heads) = by_prefix.get(&label[1..]) {
                for &y in heads {
                    if !base.has_edge(x, y) {
                        violations.push(Violation::MissingEdge { tail: x, head: y });
                    }
                }
            }
        }
    }

    // Property (iii): every length-(k-1) walk ending at v spells v's
    // implicit label. Walk backward breadth-first carrying the partial
    // context; each frontier member's label must equal the implicit label's
    // symbol at that depth. Vacuous for vertices with no incoming walks.
    for v in base.vertices() {
        let label = match g.implicit(v) {
            Some(l) if l.len() == k => l,
            _ => continue,
        };
        let mut frontier: Vec<VertexId> = vec![v];
        'depths: for depth in 1..k {
            let mut next: Vec<VertexId> = frontier
                .iter()
                .flat_map(|&x| base.in_neighbors(x))
                .collect();
            next.sort_unstable();
            next.dedup();
            if next.is_empty() {
                break;
            }
            let expected = label[k - 1 - depth];
            for &x in &next {
                let found = base.label(x).unwrap_or(Symbol(u8::MAX));
                if found != expected {
                    violations.push(Violation::IllDefinedLabel {
                        vertex: v,
                        steps: depth,
                        offender: x,
                        expected,
                        found,
                    });
                    break 'depths; // fail fast per vertex
                }
            }
            frontier = next;
        }
    }

    ValidationReport { violations }
}
