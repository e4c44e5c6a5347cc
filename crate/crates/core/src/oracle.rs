//! Brute-force deciders used as ground truth in equivalence tests.
//!
//! Nothing here shares logic with the matchers or the reduction builders;
//! these stay obviously correct. Every oracle takes an explicit cap and
//! refuses to answer past it instead of truncating the search.

use thiserror::Error;

use crate::graph::{LabeledDigraph, Symbol, VertexId};
use crate::matcher::{Cost, MatchError, Pattern};
use crate::reduce::ham::HamInstance;
use crate::reduce::ov::OvInstance;

pub const DEFAULT_HAM_CAP: usize = 12;
pub const DEFAULT_WALK_CAP: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance size {size} exceeds the oracle cap of {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error(transparent)]
    Match(#[from] MatchError),
}

/// Decides Hamiltonicity by depth-first search over vertex orders with
/// adjacency pruning. Returns a witness cycle (the n distinct vertices in
/// visiting order; the closing edge back to the first is implied).
pub fn hamiltonian_oracle(
    g: &HamInstance,
    cap: usize,
) -> Result<(bool, Option<Vec<VertexId>>), OracleError> {
    let n = g.n();
    if n > cap {
        return Err(OracleError::CapExceeded {
            size: n as u64,
            cap: cap as u64,
        });
    }

    fn extend(g: &HamInstance, path: &mut Vec<VertexId>, visited: &mut Vec<bool>) -> bool {
        let n = g.n();
        let last = *path.last().unwrap();
        if path.len() == n {
            return g.graph().has_edge(last, path[0]);
        }
        let succ: Vec<VertexId> = g.graph().out_neighbors(last).collect();
        for w in succ {
            if !visited[w.0] {
                visited[w.0] = true;
                path.push(w);
                if extend(g, path, visited) {
                    return true;
                }
                path.pop();
                visited[w.0] = false;
            }
        }
        false
    }

    if n == 0 {
        return Ok((false, None));
    }
    // cycles can be rotated, so fixing the start loses nothing
    let start = VertexId(0);
    let mut path = vec![start];
    let mut visited = vec![false; n];
    visited[0] = true;
    if extend(g, &mut path, &mut visited) {
        Ok((true, Some(path)))
    } else {
        Ok((false, None))
    }
}

/// Scans all N^2 pairs for one with inner product zero. Returns the witness
/// pair of 0-based indices into A and B.
pub fn ov_oracle(ov: &OvInstance) -> (bool, Option<(usize, usize)>) {
    for (i, a) in ov.a().iter().enumerate() {
        for (j, b) in ov.b().iter().enumerate() {
            let dot: u32 = a.iter().zip(b).map(|(&x, &y)| (x & y) as u32).sum();
            if dot == 0 {
                return (true, Some((i, j)));
            }
        }
    }
    (false, None)
}

/// Enumerates every walk of m vertices and reports the minimum substitution
/// costs for both problems: substitutions in the pattern (per-walk Hamming
/// distance) and substitutions to vertex labels (per-walk consistent
/// assignment cost, where a vertex demanded at two different symbols makes
/// the walk ineligible).
pub fn walk_enumeration_oracle(
    g: &LabeledDigraph,
    p: &Pattern,
    cap: u64,
) -> Result<(Cost, Cost), OracleError> {
    for (idx, s) in p.symbols().iter().enumerate() {
        if s.0 >= g.sigma() {
            return Err(OracleError::Match(MatchError::SymbolOutOfRange {
                position: idx + 1,
                symbol: s.0,
                sigma: g.sigma(),
            }));
        }
    }

    let m = p.len();
    let total = count_walks(g, m);
    if total > cap as u128 {
        return Err(OracleError::CapExceeded {
            size: total.min(u64::MAX as u128) as u64,
            cap,
        });
    }

    struct Enumerate<'a> {
        g: &'a LabeledDigraph,
        p: &'a Pattern,
        demanded: Vec<(VertexId, Symbol)>,
        best_pattern: Cost,
        best_graph: Cost,
    }

    impl Enumerate<'_> {
        fn go(
            &mut self,
            v: VertexId,
            pos: usize,
            mismatches: u64,
            relabels: u64,
            conflicted: bool,
        ) {
            let want = self.p.at(pos);
            let label = self.g.label(v).unwrap();
            let mismatches = mismatches + u64::from(label != want);

            let mut conflicted = conflicted;
            let mut pushed = false;
            let mut relabels = relabels;
            if !conflicted {
                match self.demanded.iter().find(|(x, _)| *x == v) {
                    Some(&(_, s)) if s != want => conflicted = true,
                    Some(_) => {}
                    None => {
                        self.demanded.push((v, want));
                        pushed = true;
                        if label != want {
                            relabels += 1;
                        }
                    }
                }
            }

            if pos == self.p.len() {
                self.best_pattern = self.best_pattern.min(Cost::finite(mismatches));
                if !conflicted {
                    self.best_graph = self.best_graph.min(Cost::finite(relabels));
                }
            } else {
                let succ: Vec<VertexId> = self.g.out_neighbors(v).collect();
                for w in succ {
                    self.go(w, pos + 1, mismatches, relabels, conflicted);
                }
            }

            if pushed {
                self.demanded.pop();
            }
        }
    }

    let mut e = Enumerate {
        g,
        p,
        demanded: Vec::new(),
        best_pattern: Cost::INFINITE,
        best_graph: Cost::INFINITE,
    };
    let starts: Vec<VertexId> = g.vertices().collect();
    for v in starts {
        e.go(v, 1, 0, 0, false);
    }
    Ok((e.best_pattern, e.best_graph))
}

/// Number of walks with exactly m vertices, computed by a counting DP.
fn count_walks(g: &LabeledDigraph, m: usize) -> u128 {
    let bound = g.id_bound();
    let mut row = vec![0u128; bound];
    for v in g.vertices() {
        row[v.0] = 1;
    }
    for _ in 1..m {
        let mut next = vec![0u128; bound];
        for v in g.vertices() {
            for u in g.in_neighbors(v) {
                next[v.0] = next[v.0].saturating_add(row[u.0]);
            }
        }
        row = next;
    }
    row.iter().fold(0u128, |acc, &x| acc.saturating_add(x))
}
