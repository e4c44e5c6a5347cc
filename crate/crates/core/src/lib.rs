//! Pattern matching on vertex-labeled de Bruijn graphs.
//!
//! The crate has three layers:
//!
//! * graph substrate: [`graph::LabeledDigraph`], [`debruijn::DeBruijnGraph`]
//!   with implicit-label bookkeeping, the full order-k graph, and the
//!   three-property validator;
//! * matchers: exact walk matching, the O(|E|m) pattern-substitution DP
//!   (optionally with pinned positions), and an exhaustive solver for
//!   persistent vertex-label substitutions;
//! * instance machinery: generators that compile Hamiltonian-cycle and
//!   Orthogonal-Vectors instances into matching instances
//!   ([`reduce::ham`], [`reduce::ov`]), brute-force oracles ([`oracle`]),
//!   structural checkers, text formats ([`io`]), seeded random inputs
//!   ([`gen`]) and the end-to-end verification drivers ([`verify`]).
//!
//! Graphs are built single-threaded, then immutable; every query (matching,
//! validation, label lookup) is a pure function and safe to call from any
//! number of threads over a shared graph.

pub mod debruijn;
pub mod gen;
pub mod graph;
pub mod io;
pub mod matcher;
pub mod oracle;
pub mod reduce;
pub mod verify;

pub use debruijn::{
    compute_implicit_labels, full_de_bruijn, validate_de_bruijn, DeBruijnError, DeBruijnGraph,
    ValidationReport, Violation, DEFAULT_VERTEX_CAP,
};
pub use graph::{GraphError, LabeledDigraph, Symbol, VertexId, Walk};
pub use matcher::{
    check_witness, constrained_pattern_dp, match_exact, min_graph_substitutions,
    min_graph_substitutions_capped, min_pattern_substitutions, pattern_substitution_cost, Cost,
    Edits, MatchError, MatchResult, Pattern, DEFAULT_EXPANSION_CAP,
};
pub use oracle::{
    hamiltonian_oracle, ov_oracle, walk_enumeration_oracle, OracleError, DEFAULT_HAM_CAP,
    DEFAULT_WALK_CAP,
};
pub use reduce::ham::{
    build_npc_instance, build_npc_instance_direct, check_npc_structure, eliminate_two_cycles, enc,
    enc_len, npc_pattern, HamInstance, NpcBundle, NpcParams, NpcStructureReport,
};
pub use reduce::ov::{
    build_ov_graph, build_ov_pattern, build_seth_instance, check_ov_optimality_probes, f_a, f_b,
    OvInstance, OvParams, OvProbeReport, Section, SethBundle,
};
pub use reduce::ReduceError;
