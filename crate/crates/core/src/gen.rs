//! Seeded random instance generators. Deterministic: one `StdRng` seeded
//! from the caller's value drives everything, so identical arguments give
//! identical instances.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::graph::{LabeledDigraph, Symbol, VertexId};
use crate::matcher::Pattern;
use crate::reduce::ham::{HamInstance, DEFAULT_EDGE_RATIO};
use crate::reduce::ov::OvInstance;
use crate::reduce::ReduceError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("could not satisfy the degree and simplicity constraints (n={n}, edges={edges})")]
    Infeasible { n: usize, edges: usize },
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

/// A random instance with `extra` edges beyond the out-degree floor,
/// satisfying all instance invariants (no self-loops, in/out-degree >= 1,
/// |E| <= 4n). Not biased toward Hamiltonicity: vertices get one random
/// out-edge each, in-degree holes are patched, then `extra` edges are
/// sprinkled.
pub fn random_ham_instance(n: usize, extra: usize, seed: u64) -> Result<HamInstance, GenError> {
    if n < 3 {
        return Err(GenError::Infeasible { n, edges: extra });
    }
    let mut rng = StdRng::seed_from_u64(seed);
    'attempt: for _ in 0..200 {
        let mut g = LabeledDigraph::new(1);
        for _ in 0..n {
            g.add_vertex(Symbol(0)).expect("label 0 fits sigma 1");
        }
        let legal = |g: &LabeledDigraph, u: usize, v: usize| {
            u != v && !g.has_edge(VertexId(u), VertexId(v)) && !g.has_edge(VertexId(v), VertexId(u))
        };
        // out-degree floor
        for u in 0..n {
            let mut placed = false;
            for _ in 0..8 * n {
                let v = rng.gen_range(0..n);
                if legal(&g, u, v) {
                    g.add_edge(VertexId(u), VertexId(v)).unwrap();
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'attempt;
            }
        }
        // in-degree holes
        for v in 0..n {
            if g.in_degree(VertexId(v)) > 0 {
                continue;
            }
            let mut placed = false;
            for _ in 0..8 * n {
                let u = rng.gen_range(0..n);
                if legal(&g, u, v) {
                    g.add_edge(VertexId(u), VertexId(v)).unwrap();
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'attempt;
            }
        }
        // extra density
        let budget = (DEFAULT_EDGE_RATIO * n).min(g.edge_count() + extra);
        let mut stuck = 0;
        while g.edge_count() < budget && stuck < 16 * n {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if legal(&g, u, v) {
                g.add_edge(VertexId(u), VertexId(v)).unwrap();
            } else {
                stuck += 1;
            }
        }
        match HamInstance::from_graph(g) {
            Ok(inst) => return Ok(inst),
            Err(_) => continue 'attempt,
        }
    }
    Err(GenError::Infeasible { n, edges: extra })
}

/// Random OV instance with uniform bits. `n` must be a power of two and
/// `d > log2 n`, checked by [`OvInstance::new`].
pub fn random_ov_instance(n: usize, d: usize, seed: u64) -> Result<OvInstance, GenError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let row = |rng: &mut StdRng| -> Vec<u8> { (0..d).map(|_| rng.gen_range(0..2u8)).collect() };
    let a: Vec<Vec<u8>> = (0..n).map(|_| row(&mut rng)).collect();
    let b: Vec<Vec<u8>> = (0..n).map(|_| row(&mut rng)).collect();
    Ok(OvInstance::new(a, b)?)
}

/// Random labeled digraph for matcher cross-validation: up to `max_vertices`
/// vertices over an alphabet of `sigma`, each possible edge (self-loops
/// included) present with probability ~1/3.
pub fn random_labeled_digraph(max_vertices: usize, sigma: u8, seed: u64) -> LabeledDigraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_vertices);
    let mut g = LabeledDigraph::new(sigma);
    for _ in 0..n {
        let s = rng.gen_range(0..sigma);
        g.add_vertex(Symbol(s)).expect("random label < sigma");
    }
    for u in 0..n {
        for v in 0..n {
            if rng.gen_range(0..3) == 0 {
                g.add_edge(VertexId(u), VertexId(v)).unwrap();
            }
        }
    }
    g
}

/// Random pattern of length 1..=max_len over the alphabet.
pub fn random_pattern(max_len: usize, sigma: u8, seed: u64) -> Pattern {
    let mut rng = StdRng::seed_from_u64(seed);
    let m = rng.gen_range(1..=max_len);
    let values: Vec<u8> = (0..m).map(|_| rng.gen_range(0..sigma)).collect();
    Pattern::from_values(&values).expect("m >= 1")
}
