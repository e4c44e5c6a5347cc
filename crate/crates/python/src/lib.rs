//! Python bindings: the graph types, the three matchers, both instance
//! generators, the validators and the brute-force oracles.
//!
//! Costs cross the boundary as `int | None`, with `None` standing for the
//! infinite sentinel. Pattern positions stay 1-based, as in the Rust API.

use std::collections::BTreeSet;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dbgmatch::gen as dgen;
use dbgmatch::io::DisplayMap;
use dbgmatch::verify as dverify;
use dbgmatch::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn to_pattern(values: Vec<u8>) -> PyResult<Pattern> {
    Pattern::from_values(&values).map_err(value_err)
}

/// A vertex-labeled directed graph.
#[pyclass(name = "Graph", skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: LabeledDigraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(sigma: u8) -> Self {
        PyGraph {
            inner: LabeledDigraph::new(sigma),
        }
    }

    fn add_vertex(&mut self, label: u8) -> PyResult<usize> {
        Ok(self
            .inner
            .add_vertex(Symbol(label))
            .map_err(value_err)?
            .index())
    }

    fn add_edge(&mut self, tail: usize, head: usize) -> PyResult<()> {
        self.inner
            .add_edge(VertexId(tail), VertexId(head))
            .map_err(value_err)
    }

    fn remove_edge(&mut self, tail: usize, head: usize) -> PyResult<bool> {
        self.inner
            .remove_edge(VertexId(tail), VertexId(head))
            .map_err(value_err)
    }

    fn merge_vertices(&mut self, u: usize, v: usize) -> PyResult<usize> {
        Ok(self
            .inner
            .merge_vertices(VertexId(u), VertexId(v))
            .map_err(value_err)?
            .index())
    }

    fn relabel_vertex(&mut self, v: usize, label: u8) -> PyResult<()> {
        self.inner
            .relabel_vertex(VertexId(v), Symbol(label))
            .map_err(value_err)
    }

    fn label(&self, v: usize) -> PyResult<u8> {
        Ok(self.inner.label(VertexId(v)).map_err(value_err)?.value())
    }

    fn has_edge(&self, tail: usize, head: usize) -> bool {
        self.inner.has_edge(VertexId(tail), VertexId(head))
    }

    fn vertices(&self) -> Vec<usize> {
        self.inner.vertices().map(VertexId::index).collect()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner
            .edges()
            .map(|(u, v)| (u.index(), v.index()))
            .collect()
    }

    fn out_neighbors(&self, v: usize) -> Vec<usize> {
        self.inner
            .out_neighbors(VertexId(v))
            .map(VertexId::index)
            .collect()
    }

    fn in_neighbors(&self, v: usize) -> Vec<usize> {
        self.inner
            .in_neighbors(VertexId(v))
            .map(VertexId::index)
            .collect()
    }

    #[getter]
    fn sigma(&self) -> u8 {
        self.inner.sigma()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(sigma={}, vertices={}, edges={})",
            self.inner.sigma(),
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// A graph together with its order k and per-vertex implicit labels.
#[pyclass(name = "DeBruijnGraph", skip_from_py_object)]
#[derive(Clone)]
struct PyDeBruijn {
    inner: DeBruijnGraph,
}

#[pymethods]
impl PyDeBruijn {
    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.base().clone(),
        }
    }

    fn implicit_label(&self, v: usize) -> PyResult<Vec<u32>> {
        self.inner
            .implicit(VertexId(v))
            .map(|l| l.iter().map(|s| s.value() as u32).collect())
            .ok_or_else(|| value_err(format!("vertex {v} has no implicit label")))
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.base().vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.base().edge_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "DeBruijnGraph(k={}, vertices={}, edges={})",
            self.inner.k(),
            self.inner.base().vertex_count(),
            self.inner.base().edge_count()
        )
    }
}

/// Outcome of a matcher run.
#[pyclass(name = "MatchResult")]
struct PyMatchResult {
    #[pyo3(get)]
    feasible: bool,
    /// Substitution count; None encodes infinity.
    #[pyo3(get)]
    cost: Option<u64>,
    #[pyo3(get)]
    walk: Option<Vec<usize>>,
    /// 1-based substituted pattern positions, for the pattern-side matchers.
    #[pyo3(get)]
    pattern_edits: Option<Vec<usize>>,
    /// (vertex, new label) pairs, for the graph-side matcher.
    #[pyo3(get)]
    graph_edits: Option<Vec<(usize, u8)>>,
}

#[pymethods]
impl PyMatchResult {
    fn __repr__(&self) -> String {
        format!(
            "MatchResult(feasible={}, cost={:?})",
            self.feasible, self.cost
        )
    }
}

fn convert_result(r: MatchResult) -> PyMatchResult {
    let (pattern_edits, graph_edits) = match &r.edits {
        Edits::Pattern(p) => (Some(p.clone()), None),
        Edits::Graph(g) => (
            None,
            Some(g.iter().map(|(v, s)| (v.index(), s.value())).collect()),
        ),
    };
    PyMatchResult {
        feasible: r.feasible,
        cost: r.cost.value(),
        walk: r
            .walk
            .map(|w| w.vertices.into_iter().map(VertexId::index).collect()),
        pattern_edits,
        graph_edits,
    }
}

/// A generated Hamiltonian-reduction instance.
#[pyclass(name = "NpcBundle")]
struct PyNpcBundle {
    inner: NpcBundle,
}

#[pymethods]
impl PyNpcBundle {
    #[getter]
    fn graph(&self) -> PyDeBruijn {
        PyDeBruijn {
            inner: self.inner.graph.clone(),
        }
    }

    #[getter]
    fn pattern(&self) -> Vec<u32> {
        self.inner
            .pattern
            .symbols()
            .iter()
            .map(|s| s.value() as u32)
            .collect()
    }

    #[getter]
    fn delta(&self) -> u64 {
        self.inner.delta
    }

    /// Parameter block: n, ell, w, k, delta.
    #[getter]
    fn params(&self) -> std::collections::HashMap<String, u64> {
        let p = &self.inner.params;
        [
            ("n", p.n as u64),
            ("ell", p.ell as u64),
            ("w", p.w as u64),
            ("k", p.k as u64),
            ("delta", p.delta),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }

    /// Preprocessed-input vertex -> marked vertex.
    #[getter]
    fn marked(&self) -> std::collections::HashMap<usize, usize> {
        self.inner
            .marked
            .iter()
            .map(|(o, m)| (o.index(), m.index()))
            .collect()
    }

    /// Edges of the preprocessed (post-gadget) input.
    #[getter]
    fn source_edges(&self) -> Vec<(usize, usize)> {
        self.inner
            .source
            .edges()
            .into_iter()
            .map(|(u, v)| (u.index(), v.index()))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "NpcBundle(n={}, k={}, delta={}, pattern_len={})",
            self.inner.params.n,
            self.inner.params.k,
            self.inner.delta,
            self.inner.pattern.len()
        )
    }
}

/// A generated OV-reduction instance.
#[pyclass(name = "SethBundle")]
struct PySethBundle {
    inner: SethBundle,
}

#[pymethods]
impl PySethBundle {
    #[getter]
    fn graph(&self) -> PyDeBruijn {
        PyDeBruijn {
            inner: self.inner.graph.clone(),
        }
    }

    #[getter]
    fn pattern(&self) -> Vec<u32> {
        self.inner
            .pattern
            .symbols()
            .iter()
            .map(|s| s.value() as u32)
            .collect()
    }

    #[getter]
    fn delta(&self) -> u64 {
        self.inner.delta
    }

    /// Parameter block: n, d, c, k, ell, t, delta.
    #[getter]
    fn params(&self) -> std::collections::HashMap<String, u64> {
        let p = &self.inner.params;
        [
            ("n", p.n as u64),
            ("d", p.d as u64),
            ("c", p.c as u64),
            ("k", p.k as u64),
            ("ell", p.ell as u64),
            ("t", p.t as u64),
            ("delta", p.delta),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }

    /// vertex -> section name ("fan-in", "selection-i", "post-merge",
    /// "sync-loop").
    #[getter]
    fn sections(&self) -> std::collections::HashMap<usize, String> {
        self.inner
            .sections
            .iter()
            .map(|(v, s)| (v.index(), s.to_string()))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "SethBundle(N={}, d={}, k={}, delta={}, pattern_len={})",
            self.inner.params.n,
            self.inner.params.d,
            self.inner.params.k,
            self.inner.delta,
            self.inner.pattern.len()
        )
    }
}

#[pyfunction]
#[pyo3(name = "full_de_bruijn")]
#[pyo3(signature = (sigma, k, cap=None))]
fn py_full_de_bruijn(sigma: u8, k: usize, cap: Option<usize>) -> PyResult<PyDeBruijn> {
    full_de_bruijn(sigma, k, cap.unwrap_or(DEFAULT_VERTEX_CAP))
        .map(|inner| PyDeBruijn { inner })
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(name = "compute_implicit_labels")]
fn py_compute_implicit_labels(g: &PyGraph, k: usize) -> PyResult<PyDeBruijn> {
    compute_implicit_labels(&g.inner, k)
        .map(|inner| PyDeBruijn { inner })
        .map_err(value_err)
}

/// Violation descriptions; an empty list means the graph is a de Bruijn
/// graph.
#[pyfunction]
#[pyo3(name = "validate_de_bruijn")]
fn py_validate_de_bruijn(d: &PyDeBruijn) -> Vec<String> {
    validate_de_bruijn(&d.inner)
        .violations
        .iter()
        .map(|v| format!("[{}] {v}", v.property()))
        .collect()
}

#[pyfunction]
#[pyo3(name = "match_exact")]
fn py_match_exact(g: &PyGraph, pattern: Vec<u8>) -> PyResult<PyMatchResult> {
    let p = to_pattern(pattern)?;
    match_exact(&g.inner, &p)
        .map(convert_result)
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(name = "min_pattern_substitutions")]
fn py_min_pattern_substitutions(g: &PyGraph, pattern: Vec<u8>) -> PyResult<PyMatchResult> {
    let p = to_pattern(pattern)?;
    min_pattern_substitutions(&g.inner, &p)
        .map(convert_result)
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(name = "constrained_pattern_dp")]
fn py_constrained_pattern_dp(
    g: &PyGraph,
    pattern: Vec<u8>,
    forbidden: Vec<usize>,
) -> PyResult<PyMatchResult> {
    let p = to_pattern(pattern)?;
    let forbidden: BTreeSet<usize> = forbidden.into_iter().collect();
    constrained_pattern_dp(&g.inner, &p, &forbidden)
        .map(convert_result)
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(name = "min_graph_substitutions")]
#[pyo3(signature = (g, pattern, delta, cap=None))]
fn py_min_graph_substitutions(
    g: &PyGraph,
    pattern: Vec<u8>,
    delta: u64,
    cap: Option<u64>,
) -> PyResult<PyMatchResult> {
    let p = to_pattern(pattern)?;
    match min_graph_substitutions_capped(&g.inner, &p, delta, cap.unwrap_or(DEFAULT_EXPANSION_CAP))
    {
        Ok(r) => Ok(convert_result(r)),
        Err(e @ MatchError::Indeterminate { .. }) => Err(runtime_err(e)),
        Err(e) => Err(value_err(e)),
    }
}

#[pyfunction]
#[pyo3(name = "enc")]
fn py_enc(i: u64, ell: u32) -> PyResult<Vec<u32>> {
    Ok(enc(i, ell)
        .map_err(value_err)?
        .into_iter()
        .map(u32::from)
        .collect())
}

#[pyfunction]
#[pyo3(name = "f_a")]
fn py_f_a(bit: u8) -> Vec<u32> {
    f_a(bit).iter().map(|&x| u32::from(x)).collect()
}

#[pyfunction]
#[pyo3(name = "f_b")]
fn py_f_b(bit: u8) -> Vec<u32> {
    f_b(bit).iter().map(|&x| u32::from(x)).collect()
}

#[pyfunction]
#[pyo3(name = "build_npc_instance")]
#[pyo3(signature = (n, edges, skip_gadget=false))]
fn py_build_npc_instance(
    n: usize,
    edges: Vec<(usize, usize)>,
    skip_gadget: bool,
) -> PyResult<PyNpcBundle> {
    let inst = HamInstance::from_edges(n, &edges).map_err(value_err)?;
    let bundle = if skip_gadget {
        build_npc_instance_direct(&inst)
    } else {
        build_npc_instance(&inst)
    }
    .map_err(value_err)?;
    Ok(PyNpcBundle { inner: bundle })
}

#[pyfunction]
#[pyo3(name = "check_npc_structure")]
fn py_check_npc_structure(bundle: &PyNpcBundle) -> Vec<String> {
    check_npc_structure(&bundle.inner)
        .violations
        .iter()
        .map(|v| v.to_string())
        .collect()
}

#[pyfunction]
#[pyo3(name = "build_seth_instance")]
fn py_build_seth_instance(a: Vec<Vec<u8>>, b: Vec<Vec<u8>>) -> PyResult<PySethBundle> {
    let ov = OvInstance::new(a, b).map_err(value_err)?;
    let bundle = build_seth_instance(&ov).map_err(value_err)?;
    Ok(PySethBundle { inner: bundle })
}

/// (unconstrained cost, cost with substitutions forbidden at 3-positions).
#[pyfunction]
#[pyo3(name = "check_ov_probes")]
fn py_check_ov_probes(bundle: &PySethBundle) -> PyResult<(Option<u64>, Option<u64>)> {
    let probe = check_ov_optimality_probes(&bundle.inner).map_err(value_err)?;
    Ok((probe.unconstrained.value(), probe.constrained.value()))
}

#[pyfunction]
#[pyo3(name = "hamiltonian_oracle")]
#[pyo3(signature = (n, edges, cap=None))]
fn py_hamiltonian_oracle(
    n: usize,
    edges: Vec<(usize, usize)>,
    cap: Option<usize>,
) -> PyResult<(bool, Option<Vec<usize>>)> {
    let inst = HamInstance::from_edges(n, &edges).map_err(value_err)?;
    match hamiltonian_oracle(&inst, cap.unwrap_or(DEFAULT_HAM_CAP)) {
        Ok((yes, witness)) => Ok((
            yes,
            witness.map(|w| w.into_iter().map(VertexId::index).collect()),
        )),
        Err(e) => Err(runtime_err(e)),
    }
}

#[pyfunction]
#[pyo3(name = "ov_oracle")]
fn py_ov_oracle(a: Vec<Vec<u8>>, b: Vec<Vec<u8>>) -> PyResult<(bool, Option<(usize, usize)>)> {
    let ov = OvInstance::new(a, b).map_err(value_err)?;
    Ok(ov_oracle(&ov))
}

#[pyfunction]
#[pyo3(name = "walk_enumeration_oracle")]
#[pyo3(signature = (g, pattern, cap=None))]
fn py_walk_enumeration_oracle(
    g: &PyGraph,
    pattern: Vec<u8>,
    cap: Option<u64>,
) -> PyResult<(Option<u64>, Option<u64>)> {
    let p = to_pattern(pattern)?;
    match walk_enumeration_oracle(&g.inner, &p, cap.unwrap_or(DEFAULT_WALK_CAP)) {
        Ok((a, b)) => Ok((a.value(), b.value())),
        Err(e @ OracleError::CapExceeded { .. }) => Err(runtime_err(e)),
        Err(e) => Err(value_err(e)),
    }
}

/// Full verification pipeline for a Hamiltonian input; returns a dict-like
/// summary string plus the pass flag.
#[pyfunction]
#[pyo3(name = "verify_npc")]
#[pyo3(signature = (n, edges, skip_gadget=true))]
fn py_verify_npc(
    n: usize,
    edges: Vec<(usize, usize)>,
    skip_gadget: bool,
) -> PyResult<(bool, String)> {
    let inst = HamInstance::from_edges(n, &edges).map_err(value_err)?;
    let record = dverify::verify_npc(&inst, skip_gadget, DEFAULT_HAM_CAP, DEFAULT_EXPANSION_CAP)
        .map_err(value_err)?;
    Ok((record.passed(), record.to_string()))
}

#[pyfunction]
#[pyo3(name = "verify_seth")]
fn py_verify_seth(a: Vec<Vec<u8>>, b: Vec<Vec<u8>>) -> PyResult<(bool, String)> {
    let ov = OvInstance::new(a, b).map_err(value_err)?;
    let record = dverify::verify_seth(&ov).map_err(value_err)?;
    Ok((record.passed(), record.to_string()))
}

#[pyfunction]
#[pyo3(name = "random_ham_edges")]
#[pyo3(signature = (n, extra, seed))]
fn py_random_ham_edges(n: usize, extra: usize, seed: u64) -> PyResult<Vec<(usize, usize)>> {
    let inst = dgen::random_ham_instance(n, extra, seed).map_err(value_err)?;
    Ok(inst
        .edges()
        .into_iter()
        .map(|(u, v)| (u.index(), v.index()))
        .collect())
}

/// Render symbols through a named display map ("npc" or "digits").
#[pyfunction]
#[pyo3(name = "render")]
fn py_render(symbols: Vec<u8>, map: &str) -> PyResult<String> {
    let dm = match map {
        "npc" => DisplayMap::npc(),
        "digits" => DisplayMap::digits(4),
        other => return Err(value_err(format!("unknown display map `{other}`"))),
    };
    let syms: Vec<Symbol> = symbols.into_iter().map(Symbol).collect();
    dm.render_all(&syms)
        .ok_or_else(|| value_err("symbol outside the display map"))
}

#[pymodule]
fn dbgmatch_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyDeBruijn>()?;
    m.add_class::<PyMatchResult>()?;
    m.add_class::<PyNpcBundle>()?;
    m.add_class::<PySethBundle>()?;
    m.add_function(wrap_pyfunction!(py_full_de_bruijn, m)?)?;
    m.add_function(wrap_pyfunction!(py_compute_implicit_labels, m)?)?;
    m.add_function(wrap_pyfunction!(py_validate_de_bruijn, m)?)?;
    m.add_function(wrap_pyfunction!(py_match_exact, m)?)?;
    m.add_function(wrap_pyfunction!(py_min_pattern_substitutions, m)?)?;
    m.add_function(wrap_pyfunction!(py_constrained_pattern_dp, m)?)?;
    m.add_function(wrap_pyfunction!(py_min_graph_substitutions, m)?)?;
    m.add_function(wrap_pyfunction!(py_enc, m)?)?;
    m.add_function(wrap_pyfunction!(py_f_a, m)?)?;
    m.add_function(wrap_pyfunction!(py_f_b, m)?)?;
    m.add_function(wrap_pyfunction!(py_build_npc_instance, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_npc_structure, m)?)?;
    m.add_function(wrap_pyfunction!(py_build_seth_instance, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_ov_probes, m)?)?;
    m.add_function(wrap_pyfunction!(py_hamiltonian_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(py_ov_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(py_walk_enumeration_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify_npc, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify_seth, m)?)?;
    m.add_function(wrap_pyfunction!(py_random_ham_edges, m)?)?;
    m.add_function(wrap_pyfunction!(py_render, m)?)?;
    Ok(())
}
