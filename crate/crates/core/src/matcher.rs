//! The three matching problems on vertex-labeled graphs.
//!
//! * [`match_exact`]: does some walk of m vertices spell the pattern?
//! * [`min_pattern_substitutions`]: fewest symbol substitutions in the
//!   pattern so that some walk matches; O(|E|·m) dynamic program.
//! * [`min_graph_substitutions`]: fewest vertex relabelings in the graph so
//!   that some walk matches. Relabelings are persistent: a walk may cross a
//!   relabeled vertex many times for a single unit of cost. Solved by an
//!   exhaustive budgeted search, oracle-grade and desk scale only.
//!
//! Pattern positions are 1-indexed everywhere in this API: edit lists and
//! forbidden-index sets both speak 1-based positions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::{LabeledDigraph, Symbol, VertexId, Walk};

/// Default node-expansion cap for the exhaustive graph-substitution search.
pub const DEFAULT_EXPANSION_CAP: u64 = 100_000_000;

/// Substitution count with a dedicated infinity whose arithmetic saturates.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(u64);

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const INFINITE: Cost = Cost(u64::MAX);

    pub fn finite(v: u64) -> Cost {
        assert!(v < u64::MAX, "finite cost overflow");
        Cost(v)
    }

    pub fn is_finite(self) -> bool {
        self != Cost::INFINITE
    }

    pub fn value(self) -> Option<u64> {
        self.is_finite().then_some(self.0)
    }

    pub fn saturating_add(self, rhs: u64) -> Cost {
        if self.is_finite() {
            match self.0.checked_add(rhs) {
                Some(v) if v < u64::MAX => Cost(v),
                _ => Cost::INFINITE,
            }
        } else {
            Cost::INFINITE
        }
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "inf")
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchError {
    #[error("empty patterns are rejected; m must be at least 1")]
    EmptyPattern,
    #[error("pattern symbol {symbol} at position {position} is outside the alphabet 0..{sigma}")]
    SymbolOutOfRange {
        position: usize,
        symbol: u8,
        sigma: u8,
    },
    #[error("forbidden index {0} is outside 1..=m")]
    BadForbiddenIndex(usize),
    #[error("search hit the expansion cap of {cap}; result indeterminate")]
    Indeterminate { cap: u64 },
}

/// A pattern: a non-empty symbol sequence, 1-indexed in this API.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    symbols: Vec<Symbol>,
}

impl Pattern {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, MatchError> {
        if symbols.is_empty() {
            return Err(MatchError::EmptyPattern);
        }
        Ok(Pattern { symbols })
    }

    pub fn from_values(values: &[u8]) -> Result<Self, MatchError> {
        Pattern::new(values.iter().map(|&v| Symbol(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> Symbol {
        self.symbols[i - 1]
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    fn check_alphabet(&self, g: &LabeledDigraph) -> Result<(), MatchError> {
        for (idx, s) in self.symbols.iter().enumerate() {
            if s.0 >= g.sigma() {
                return Err(MatchError::SymbolOutOfRange {
                    position: idx + 1,
                    symbol: s.0,
                    sigma: g.sigma(),
                });
            }
        }
        Ok(())
    }
}

/// The edits a matcher is allowed to report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Edits {
    /// 1-based pattern positions that were substituted.
    Pattern(Vec<usize>),
    /// Vertices relabeled to a new symbol, sorted by vertex id.
    Graph(Vec<(VertexId, Symbol)>),
}

impl Edits {
    pub fn len(&self) -> usize {
        match self {
            Edits::Pattern(v) => v.len(),
            Edits::Graph(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Outcome of one matcher run. `walk` is present iff `cost` is finite, and
/// replaying `edits` against the walk must reproduce the pattern exactly
/// (see [`check_witness`]).
#[derive(Clone, Debug)]
pub struct MatchResult {
    pub feasible: bool,
    pub cost: Cost,
    pub walk: Option<Walk>,
    pub edits: Edits,
}

impl MatchResult {
    fn infeasible_pattern() -> Self {
        MatchResult {
            feasible: false,
            cost: Cost::INFINITE,
            walk: None,
            edits: Edits::Pattern(Vec::new()),
        }
    }

    fn infeasible_graph() -> Self {
        MatchResult {
            feasible: false,
            cost: Cost::INFINITE,
            walk: None,
            edits: Edits::Graph(Vec::new()),
        }
    }
}

/// Exact matching: feasible iff some walk of m vertices spells the pattern.
/// This is the zero-budget specialization of the substitution DP.
pub fn match_exact(g: &LabeledDigraph, p: &Pattern) -> Result<MatchResult, MatchError> {
    let all: BTreeSet<usize> = (1..=p.len()).collect();
    let mut r = dp_match(g, p, &all, true)?;
    r.feasible = r.cost == Cost::ZERO;
    Ok(r)
}

/// Minimum substitutions to the pattern so that some walk matches.
/// `feasible` is set iff the cost is finite (no budget is imposed here).
pub fn min_pattern_substitutions(
    g: &LabeledDigraph,
    p: &Pattern,
) -> Result<MatchResult, MatchError> {
    dp_match(g, p, &BTreeSet::new(), true)
}

/// Witness-free variant: cost only, two rolling DP rows, no backpointers.
pub fn pattern_substitution_cost(g: &LabeledDigraph, p: &Pattern) -> Result<Cost, MatchError> {
    Ok(dp_match(g, p, &BTreeSet::new(), false)?.cost)
}

/// The pattern-substitution DP with substitutions forbidden at the given
/// 1-based positions: mismatching there costs infinity.
pub fn constrained_pattern_dp(
    g: &LabeledDigraph,
    p: &Pattern,
    forbidden: &BTreeSet<usize>,
) -> Result<MatchResult, MatchError> {
    dp_match(g, p, forbidden, true)
}

/// Witness-free constrained DP.
pub fn constrained_pattern_cost(
    g: &LabeledDigraph,
    p: &Pattern,
    forbidden: &BTreeSet<usize>,
) -> Result<Cost, MatchError> {
    Ok(dp_match(g, p, forbidden, false)?.cost)
}

const NO_PRED: u32 = u32::MAX;

/// Shared DP core.
///
/// Recurrence over 1-based positions: cost[1][v] = miss(1, v);
/// cost[i][v] = min over edges (u,v) of cost[i-1][u] + miss(i, v), where
/// miss(i, v) is 0 on a label match, 1 on a substitutable mismatch and
/// infinity on a forbidden one. Answer: min over v of cost[m][v]. Witness
/// traceback breaks ties toward the smallest predecessor id.
fn dp_match(
    g: &LabeledDigraph,
    p: &Pattern,
    forbidden: &BTreeSet<usize>,
    witness: bool,
) -> Result<MatchResult, MatchError> {
    p.check_alphabet(g)?;
    if let Some(&bad) = forbidden.iter().find(|&&i| i == 0 || i > p.len()) {
        return Err(MatchError::BadForbiddenIndex(bad));
    }

    let m = p.len();
    let bound = g.id_bound();
    let miss = |i: usize, v: VertexId| -> Cost {
        if g.label(v) == Ok(p.at(i)) {
            Cost::ZERO
        } else if forbidden.contains(&i) {
            Cost::INFINITE
        } else {
            Cost::finite(1)
        }
    };

    let mut row: Vec<Cost> = vec![Cost::INFINITE; bound];
    for v in g.vertices() {
        row[v.0] = miss(1, v);
    }
    let mut back: Vec<Vec<u32>> = Vec::new();
    if witness && m > 1 {
        back.reserve(m - 1);
    }

    for i in 2..=m {
        let mut next: Vec<Cost> = vec![Cost::INFINITE; bound];
        let mut preds: Vec<u32> = if witness {
            vec![NO_PRED; bound]
        } else {
            Vec::new()
        };
        for v in g.vertices() {
            let penalty = miss(i, v);
            if penalty == Cost::INFINITE {
                continue;
            }
            let mut best = Cost::INFINITE;
            let mut best_pred = NO_PRED;
            for u in g.in_neighbors(v) {
                // strict improvement keeps the smallest predecessor on ties
                if row[u.0] < best {
                    best = row[u.0];
                    best_pred = u.0 as u32;
                }
            }
            if best.is_finite() {
                next[v.0] = best.saturating_add(penalty.value().unwrap_or(0));
                if witness {
                    preds[v.0] = best_pred;
                }
            }
        }
        row = next;
        if witness {
            back.push(preds);
        }
    }

    let mut best = Cost::INFINITE;
    let mut best_v: Option<VertexId> = None;
    for v in g.vertices() {
        if row[v.0] < best {
            best = row[v.0];
            best_v = Some(v);
        }
    }

    if !best.is_finite() {
        return Ok(MatchResult::infeasible_pattern());
    }

    if !witness {
        return Ok(MatchResult {
            feasible: true,
            cost: best,
            walk: None,
            edits: Edits::Pattern(Vec::new()),
        });
    }

    let mut vertices = vec![best_v.unwrap(); m];
    for i in (0..m - 1).rev() {
        let next_v = vertices[i + 1];
        vertices[i] = VertexId(back[i][next_v.0] as usize);
    }
    let walk = Walk::new(vertices);
    let edits: Vec<usize> = (1..=m)
        .filter(|&i| g.label(walk.vertices[i - 1]) != Ok(p.at(i)))
        .collect();
    debug_assert_eq!(edits.len() as u64, best.value().unwrap());

    Ok(MatchResult {
        feasible: true,
        cost: best,
        walk: Some(walk),
        edits: Edits::Pattern(edits),
    })
}

/// Minimum persistent vertex relabelings so that some walk matches, searched
/// exhaustively within a budget.
///
/// Depth-first over walks carrying a partial vertex-to-symbol assignment:
/// visiting v at position i requires assignment[v] = p[i] if already
/// assigned (prune otherwise), else records it and pays 1 iff p[i] differs
/// from v's original label. Branches whose cost exceeds the budget (or the
/// best solution found) are cut. Start vertices and out-edges are explored
/// in ascending id order, so results are deterministic.
///
/// Exceeding `cap` node expansions aborts with
/// [`MatchError::Indeterminate`] rather than returning a possibly wrong
/// answer.
pub fn min_graph_substitutions(
    g: &LabeledDigraph,
    p: &Pattern,
    delta: u64,
) -> Result<MatchResult, MatchError> {
    min_graph_substitutions_capped(g, p, delta, DEFAULT_EXPANSION_CAP)
}

pub fn min_graph_substitutions_capped(
    g: &LabeledDigraph,
    p: &Pattern,
    delta: u64,
    cap: u64,
) -> Result<MatchResult, MatchError> {
    p.check_alphabet(g)?;

    struct Best {
        cost: u64,
        walk: Vec<VertexId>,
        edits: Vec<(VertexId, Symbol)>,
    }

    struct Search<'a> {
        g: &'a LabeledDigraph,
        p: &'a Pattern,
        delta: u64,
        cap: u64,
        expansions: u64,
        assignment: HashMap<VertexId, Symbol>,
        path: Vec<VertexId>,
        cost: u64,
        best: Option<Best>,
    }

    impl Search<'_> {
        fn bound(&self) -> u64 {
            match &self.best {
                // a strictly better solution is still useful; equal is not
                Some(b) if b.cost > 0 => (b.cost - 1).min(self.delta),
                Some(_) => 0,
                None => self.delta,
            }
        }

        fn visit(&mut self, v: VertexId, pos: usize) -> Result<(), MatchError> {
            self.expansions += 1;
            if self.expansions > self.cap {
                return Err(MatchError::Indeterminate { cap: self.cap });
            }
            let want = self.p.at(pos);
            let assigned = self.assignment.get(&v).copied();
            if let Some(s) = assigned {
                if s != want {
                    return Ok(());
                }
            }
            let fresh = assigned.is_none();
            if fresh {
                self.assignment.insert(v, want);
                if self.g.label(v) != Ok(want) {
                    self.cost += 1;
                }
            }
            if self.cost <= self.bound() {
                self.path.push(v);
                if pos == self.p.len() {
                    let edits: Vec<(VertexId, Symbol)> = self
                        .assignment
                        .iter()
                        .filter(|(&x, &s)| self.g.label(x) != Ok(s))
                        .map(|(&x, &s)| (x, s))
                        .collect();
                    let mut edits = edits;
                    edits.sort_unstable();
                    self.best = Some(Best {
                        cost: self.cost,
                        walk: self.path.clone(),
                        edits,
                    });
                } else {
                    let succ: Vec<VertexId> = self.g.out_neighbors(v).collect();
                    for w in succ {
                        self.visit(w, pos + 1)?;
                    }
                }
                self.path.pop();
            }
            if fresh {
                self.assignment.remove(&v);
                if self.g.label(v) != Ok(want) {
                    self.cost -= 1;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        g,
        p,
        delta,
        cap,
        expansions: 0,
        assignment: HashMap::new(),
        path: Vec::new(),
        cost: 0,
        best: None,
    };

    let starts: Vec<VertexId> = g.vertices().collect();
    for v in starts {
        search.visit(v, 1)?;
        if matches!(&search.best, Some(b) if b.cost == 0) {
            break; // zero-cost witnesses cannot be improved
        }
    }

    Ok(match search.best {
        Some(b) => MatchResult {
            feasible: true,
            cost: Cost::finite(b.cost),
            walk: Some(Walk::new(b.walk)),
            edits: Edits::Graph(b.edits),
        },
        None => MatchResult::infeasible_graph(),
    })
}

/// Replays a result's edits against its walk and checks every MatchResult
/// invariant: the witness must be self-verifying.
pub fn check_witness(g: &LabeledDigraph, p: &Pattern, r: &MatchResult) -> Result<(), String> {
    if !r.feasible {
        if r.walk.is_some() {
            return Err("infeasible result carries a walk".into());
        }
        return Ok(());
    }
    let cost = r
        .cost
        .value()
        .ok_or_else(|| "feasible result with infinite cost".to_string())?;
    let walk = r
        .walk
        .as_ref()
        .ok_or_else(|| "feasible result without a walk".to_string())?;
    if walk.len() != p.len() {
        return Err(format!(
            "walk has {} vertices, pattern has {}",
            walk.len(),
            p.len()
        ));
    }
    if !walk.is_valid(g) {
        return Err("walk uses a missing edge or vertex".into());
    }
    match &r.edits {
        Edits::Pattern(positions) => {
            if positions.len() as u64 != cost {
                return Err(format!("{} edits but cost {}", positions.len(), cost));
            }
            for i in 1..=p.len() {
                let label = g.label(walk.vertices[i - 1]).map_err(|e| e.to_string())?;
                let edited = positions.contains(&i);
                if edited && label == p.at(i) {
                    return Err(format!("edit at position {i} substitutes an equal symbol"));
                }
                if !edited && label != p.at(i) {
                    return Err(format!("position {i} mismatches but is not edited"));
                }
            }
        }
        Edits::Graph(relabels) => {
            if relabels.len() as u64 != cost {
                return Err(format!("{} relabels but cost {}", relabels.len(), cost));
            }
            let map: HashMap<VertexId, Symbol> = relabels.iter().copied().collect();
            for (&v, &s) in &map {
                if g.label(v) == Ok(s) {
                    return Err(format!("relabel of {v} to {s} changes nothing"));
                }
            }
            for i in 1..=p.len() {
                let v = walk.vertices[i - 1];
                let effective = map
                    .get(&v)
                    .copied()
                    .unwrap_or(g.label(v).map_err(|e| e.to_string())?);
                if effective != p.at(i) {
                    return Err(format!(
                        "position {i} spells {effective} after edits, wants {}",
                        p.at(i)
                    ));
                }
            }
        }
    }
    Ok(())
}
