//! Vertex-labeled directed graphs.
//!
//! [`LabeledDigraph`] is the substrate shared by every other module: a simple
//! digraph (no parallel edges) where each vertex carries one alphabet symbol.
//! Vertex ids are dense integers handed out sequentially and never reused;
//! [`LabeledDigraph::merge_vertices`] always allocates a fresh id so that
//! provenance traces through a construction stay stable.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// One alphabet symbol. Valid values are `0..sigma` for the owning graph.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u8);

impl Symbol {
    pub fn value(self) -> u8 {
        self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identifier of a vertex inside one [`LabeledDigraph`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("symbol {label} is outside the alphabet 0..{sigma}")]
    AlphabetRange { label: u8, sigma: u8 },
    #[error("vertex {0} is not declared in this graph")]
    UnknownVertex(VertexId),
    #[error("vertex id {0} is already in use")]
    DuplicateVertexId(VertexId),
    #[error("cannot merge vertex {0} with itself")]
    MergeSelf(VertexId),
    #[error("cannot merge {u} (label {lu}) with {v} (label {lv}): labels differ")]
    MergeLabelMismatch {
        u: VertexId,
        lu: Symbol,
        v: VertexId,
        lv: Symbol,
    },
}

/// A simple directed graph with one [`Symbol`] per vertex.
///
/// The edge set is kept duplicate-free by representation: inserting an
/// existing edge is a no-op. Removed vertices leave a hole; their ids are
/// never reassigned.
#[derive(Clone, Debug)]
pub struct LabeledDigraph {
    sigma: u8,
    labels: Vec<Option<Symbol>>,
    out: Vec<BTreeSet<VertexId>>,
    inc: Vec<BTreeSet<VertexId>>,
    live: usize,
    edge_count: usize,
}

impl LabeledDigraph {
    pub fn new(sigma: u8) -> Self {
        LabeledDigraph {
            sigma,
            labels: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
            live: 0,
            edge_count: 0,
        }
    }

    pub fn sigma(&self) -> u8 {
        self.sigma
    }

    /// Number of live vertices.
    pub fn vertex_count(&self) -> usize {
        self.live
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// All ids ever allocated, live or not. Live ids are `< id_bound()`.
    pub fn id_bound(&self) -> usize {
        self.labels.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.labels.get(v.0).is_some_and(Option::is_some)
    }

    pub fn label(&self, v: VertexId) -> Result<Symbol, GraphError> {
        self.labels
            .get(v.0)
            .copied()
            .flatten()
            .ok_or(GraphError::UnknownVertex(v))
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    fn check_symbol(&self, label: Symbol) -> Result<(), GraphError> {
        if label.0 < self.sigma {
            Ok(())
        } else {
            Err(GraphError::AlphabetRange {
                label: label.0,
                sigma: self.sigma,
            })
        }
    }

    /// Adds a vertex and returns its fresh id (sequential from 0).
    pub fn add_vertex(&mut self, label: Symbol) -> Result<VertexId, GraphError> {
        self.check_symbol(label)?;
        let id = VertexId(self.labels.len());
        self.labels.push(Some(label));
        self.out.push(BTreeSet::new());
        self.inc.push(BTreeSet::new());
        self.live += 1;
        Ok(id)
    }

    /// Adds a vertex under an explicit id, growing the id space as needed.
    /// Intermediate ids stay vacant. Used by the text-format parser, which
    /// must reproduce graphs whose ids have holes left by merging.
    pub fn add_vertex_with_id(&mut self, id: VertexId, label: Symbol) -> Result<(), GraphError> {
        self.check_symbol(label)?;
        if self.contains(id) {
            return Err(GraphError::DuplicateVertexId(id));
        }
        if id.0 >= self.labels.len() {
            self.labels.resize(id.0 + 1, None);
            self.out.resize(id.0 + 1, BTreeSet::new());
            self.inc.resize(id.0 + 1, BTreeSet::new());
        }
        self.labels[id.0] = Some(label);
        self.live += 1;
        Ok(())
    }

    /// Inserts edge `(u, v)`. Re-inserting an existing edge is a no-op, so
    /// the graph stays simple. Self-loops are legal at this layer.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.out[u.0].insert(v) {
            self.inc[v.0].insert(u);
            self.edge_count += 1;
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.out[u.0].remove(&v) {
            self.inc[v.0].remove(&u);
            self.edge_count -= 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out.get(u.0).is_some_and(|s| s.contains(&v))
    }

    /// Overwrites the label of an existing vertex. Exposed for validation
    /// counterexample experiments.
    pub fn relabel_vertex(&mut self, v: VertexId, label: Symbol) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        self.check_symbol(label)?;
        self.labels[v.0] = Some(label);
        Ok(())
    }

    /// Live vertex ids in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.map(|_| VertexId(i)))
    }

    /// All edges, ordered by (tail, head).
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |u| self.out[u.0].iter().map(move |&v| (u, v)))
    }

    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out.get(v.0).into_iter().flatten().copied()
    }

    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.inc.get(v.0).into_iter().flatten().copied()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out.get(v.0).map_or(0, BTreeSet::len)
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.inc.get(v.0).map_or(0, BTreeSet::len)
    }

    /// Merges `u` and `v` into a fresh vertex `w` and returns `w`'s id.
    ///
    /// Every edge with head `u` or `v` is redirected to head `w`, every edge
    /// with tail `u` or `v` to tail `w`. Edges `(u,v)` and `(v,u)` collapse
    /// into one self-loop on `w`; duplicates disappear because the edge set
    /// is a set. `u` and `v` must carry the same label.
    pub fn merge_vertices(&mut self, u: VertexId, v: VertexId) -> Result<VertexId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::MergeSelf(u));
        }
        let lu = self.label(u)?;
        let lv = self.label(v)?;
        if lu != lv {
            return Err(GraphError::MergeLabelMismatch { u, lu, v, lv });
        }

        let remap = |x: VertexId, w: VertexId| if x == u || x == v { w } else { x };

        let mut in_set: BTreeSet<VertexId> = BTreeSet::new();
        let mut out_set: BTreeSet<VertexId> = BTreeSet::new();
        for &p in self.inc[u.0].iter().chain(self.inc[v.0].iter()) {
            in_set.insert(p);
        }
        for &s in self.out[u.0].iter().chain(self.out[v.0].iter()) {
            out_set.insert(s);
        }

        // Detach u and v entirely before re-attaching through w.
        for x in [u, v] {
            let outs: Vec<VertexId> = self.out[x.0].iter().copied().collect();
            for s in outs {
                self.remove_edge(x, s)?;
            }
            let ins: Vec<VertexId> = self.inc[x.0].iter().copied().collect();
            for p in ins {
                self.remove_edge(p, x)?;
            }
        }

        let w = self.add_vertex(lu)?;
        for p in in_set {
            self.add_edge(remap(p, w), w)?;
        }
        for s in out_set {
            self.add_edge(w, remap(s, w))?;
        }

        self.labels[u.0] = None;
        self.labels[v.0] = None;
        self.live -= 2;
        Ok(w)
    }
}

/// A walk: an ordered vertex sequence in which repetition is allowed and
/// every consecutive pair must be an edge of the owning graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub vertices: Vec<VertexId>,
}

impl Walk {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        Walk { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True when every consecutive pair is an edge of `g`.
    pub fn is_valid(&self, g: &LabeledDigraph) -> bool {
        self.vertices.iter().all(|&v| g.contains(v))
            && self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    /// The symbol sequence spelled by the walk's vertex labels.
    pub fn spell(&self, g: &LabeledDigraph) -> Result<Vec<Symbol>, GraphError> {
        self.vertices.iter().map(|&v| g.label(v)).collect()
    }
}
