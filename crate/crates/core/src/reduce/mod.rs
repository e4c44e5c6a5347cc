//! Instance generators that turn classical hard problems into matching
//! instances on de Bruijn graphs, plus structural checkers for the
//! constructions.

pub mod ham;
pub mod ov;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::debruijn::{DeBruijnError, DeBruijnGraph};
use crate::graph::{GraphError, LabeledDigraph, Symbol, VertexId};
use crate::matcher::MatchError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("vertex {0} has a self-loop")]
    SelfLoop(VertexId),
    #[error("vertex {v} has {direction}-degree zero")]
    DegreeZero {
        v: VertexId,
        direction: &'static str,
    },
    #[error("{edges} edges exceed the configured linear bound of {max}")]
    TooManyEdges { edges: usize, max: usize },
    #[error("vertex ids must be dense 0..n with no holes")]
    SparseVertexIds,
    #[error("graph contains the 2-cycle {u} <-> {v}; eliminate it first")]
    TwoCyclePresent { u: VertexId, v: VertexId },
    #[error("graph must have at least {min} vertices, found {found}")]
    TooSmall { min: usize, found: usize },
    #[error("encoding index {i} does not fit in {ell} bits")]
    EncRange { i: u64, ell: u32 },
    #[error("set size {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("vector dimension {d} must exceed log2(N) = {log_n}")]
    DimensionTooSmall { d: usize, log_n: u32 },
    #[error("A and B must both contain the same positive number of vectors")]
    BadSetSizes,
    #[error("all vectors must have the same positive dimension")]
    RaggedVectors,
    #[error("vectors must contain only bits 0 and 1")]
    BadBit,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    DeBruijn(#[from] DeBruijnError),
    #[error(transparent)]
    Match(#[from] MatchError),
}

pub(crate) fn ceil_log2(n: usize) -> u32 {
    assert!(n >= 1);
    if n == 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Implicit-label bookkeeping used while a reduction constructs its graph.
///
/// Every vertex's implicit label is registered the moment the vertex is
/// created, keyed both ways. `intern` consults the index so that a label
/// that already exists reuses its vertex: that is how eager merging during
/// path creation is realized. `fresh` skips the index for sections that are
/// intentionally built with duplicates and merged to a fixpoint afterwards.
pub(crate) struct LabelLedger {
    by_label: HashMap<Vec<Symbol>, VertexId>,
    of_vertex: HashMap<VertexId, Vec<Symbol>>,
}

impl LabelLedger {
    pub fn new() -> Self {
        LabelLedger {
            by_label: HashMap::new(),
            of_vertex: HashMap::new(),
        }
    }

    pub fn label_of(&self, v: VertexId) -> Option<&[Symbol]> {
        self.of_vertex.get(&v).map(Vec::as_slice)
    }

    /// Returns the vertex carrying `label`, creating it when absent.
    /// The created vertex's own symbol is the label's last symbol.
    pub fn intern(
        &mut self,
        g: &mut LabeledDigraph,
        label: &[Symbol],
    ) -> Result<(VertexId, bool), ReduceError> {
        if let Some(v) = self.by_label.get(label) {
            return Ok((*v, false));
        }
        let v = g.add_vertex(*label.last().expect("empty implicit label"))?;
        self.by_label.insert(label.to_vec(), v);
        self.of_vertex.insert(v, label.to_vec());
        Ok((v, true))
    }

    /// Creates a vertex without consulting the index; duplicates allowed.
    pub fn fresh(
        &mut self,
        g: &mut LabeledDigraph,
        label: Vec<Symbol>,
    ) -> Result<VertexId, ReduceError> {
        let v = g.add_vertex(*label.last().expect("empty implicit label"))?;
        self.of_vertex.insert(v, label);
        Ok(v)
    }

    /// Records that `u` and `v` were merged into `w`; the shared label moves
    /// onto `w`.
    pub fn record_merge(&mut self, u: VertexId, v: VertexId, w: VertexId) {
        let label = self
            .of_vertex
            .remove(&u)
            .expect("merged vertex had no label");
        self.of_vertex.remove(&v);
        if let Some(slot) = self.by_label.get_mut(&label) {
            *slot = w;
        } else {
            self.by_label.insert(label.clone(), w);
        }
        self.of_vertex.insert(w, label);
    }

    pub fn into_debruijn(self, g: LabeledDigraph, k: usize) -> Result<DeBruijnGraph, ReduceError> {
        let implicit: BTreeMap<VertexId, Vec<Symbol>> = self.of_vertex.into_iter().collect();
        Ok(DeBruijnGraph::from_parts(g, k, implicit)?)
    }
}
