//! Text formats and symbol display maps.
//!
//! Graph files: a `dbg k=<int> sigma=<int>` header (k=0 when the file is a
//! plain labeled digraph), `v <id> <symbol>` lines, `e <tail> <head>` lines
//! and optional `il <id> <sym>*k` implicit-label lines. `#` starts a
//! comment. Writers emit the canonical form: header, vertices ascending,
//! edges sorted, labels ascending, single spaces, trailing newline.
//!
//! Pattern files: one line of whitespace-separated symbol integers.
//! OV files: an `ov N=<int> d=<int>` header, then the N A-rows and N B-rows
//! of space-separated bits. Meta files: `key=value` lines plus
//! `m <orig> <marked>` lines for the marked-vertex map.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::debruijn::DeBruijnGraph;
use crate::graph::{LabeledDigraph, Symbol, VertexId};
use crate::matcher::{MatchError, Pattern};
use crate::reduce::ham::NpcBundle;
use crate::reduce::ov::{OvInstance, SethBundle};
use crate::reduce::ReduceError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Match(#[from] MatchError),
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Parse {
        line,
        message: message.into(),
    })
}

/// A bijection between symbols and printable characters.
#[derive(Clone, Debug)]
pub struct DisplayMap {
    chars: Vec<char>,
}

impl DisplayMap {
    /// The classical rendering of the Hamiltonian-reduction alphabet:
    /// 0 -> '$', 1 -> '#', 2 -> '0', 3 -> '1'.
    pub fn npc() -> Self {
        DisplayMap {
            chars: vec!['$', '#', '0', '1'],
        }
    }

    /// Literal digits 0..sigma.
    pub fn digits(sigma: u8) -> Self {
        DisplayMap {
            chars: (0..sigma).map(|i| (b'0' + i) as char).collect(),
        }
    }

    pub fn render(&self, s: Symbol) -> Option<char> {
        self.chars.get(s.0 as usize).copied()
    }

    pub fn parse(&self, ch: char) -> Option<Symbol> {
        self.chars
            .iter()
            .position(|&c| c == ch)
            .map(|i| Symbol(i as u8))
    }

    pub fn render_all(&self, symbols: &[Symbol]) -> Option<String> {
        symbols.iter().map(|&s| self.render(s)).collect()
    }
}

/// A parsed graph file: the digraph, the declared order (0 = none), and the
/// implicit labels when `il` lines were present.
#[derive(Clone, Debug)]
pub struct GraphFile {
    pub graph: LabeledDigraph,
    pub k: usize,
    pub implicit: Option<BTreeMap<VertexId, Vec<Symbol>>>,
}

impl GraphFile {
    pub fn into_debruijn(self) -> Result<Option<DeBruijnGraph>, IoError> {
        match (self.k, self.implicit) {
            (0, _) | (_, None) => Ok(None),
            (k, Some(implicit)) => Ok(Some(
                DeBruijnGraph::from_parts(self.graph, k, implicit).map_err(ReduceError::from)?,
            )),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_graph(text: &str) -> Result<GraphFile, IoError> {
    let mut lines = content_lines(text);
    let (hline, header) = match lines.next() {
        Some(x) => x,
        None => return parse_err(0, "empty graph file"),
    };
    let mut k = None;
    let mut sigma = None;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("dbg") {
        return parse_err(hline, "expected header `dbg k=<int> sigma=<int>`");
    }
    for field in fields {
        if let Some(v) = field.strip_prefix("k=") {
            k = v.parse::<usize>().ok();
            if k.is_none() {
                return parse_err(hline, format!("bad k value `{v}`"));
            }
        } else if let Some(v) = field.strip_prefix("sigma=") {
            sigma = v.parse::<u8>().ok();
            if sigma.is_none() {
                return parse_err(hline, format!("bad sigma value `{v}`"));
            }
        } else {
            return parse_err(hline, format!("unknown header field `{field}`"));
        }
    }
    let k = match k {
        Some(k) => k,
        None => return parse_err(hline, "header is missing k="),
    };
    let sigma = match sigma {
        Some(s) if s > 0 => s,
        _ => return parse_err(hline, "header is missing a positive sigma="),
    };

    let mut graph = LabeledDigraph::new(sigma);
    let mut edges: Vec<(usize, VertexId, VertexId)> = Vec::new();
    let mut implicit: BTreeMap<VertexId, Vec<Symbol>> = BTreeMap::new();
    for (lno, line) in lines {
        let mut parts = line.split_whitespace();
        let kind = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();
        match kind {
            "v" => {
                if rest.len() != 2 {
                    return parse_err(lno, "vertex line needs `v <id> <symbol>`");
                }
                let id: usize = match rest[0].parse() {
                    Ok(x) => x,
                    Err(_) => return parse_err(lno, format!("bad vertex id `{}`", rest[0])),
                };
                let sym: u8 = match rest[1].parse() {
                    Ok(x) => x,
                    Err(_) => return parse_err(lno, format!("bad symbol `{}`", rest[1])),
                };
                if let Err(e) = graph.add_vertex_with_id(VertexId(id), Symbol(sym)) {
                    return parse_err(lno, e.to_string());
                }
            }
            "e" => {
                if rest.len() != 2 {
                    return parse_err(lno, "edge line needs `e <tail> <head>`");
                }
                let t: usize = match rest[0].parse() {
                    Ok(x) => x,
                    Err(_) => return parse_err(lno, format!("bad tail id `{}`", rest[0])),
                };
                let h: usize = match rest[1].parse() {
                    Ok(x) => x,
                    Err(_) => return parse_err(lno, format!("bad head id `{}`", rest[1])),
                };
                edges.push((lno, VertexId(t), VertexId(h)));
            }
            "il" => {
                if rest.len() < 2 {
                    return parse_err(lno, "label line needs `il <id> <symbol>...`");
                }
                let id: usize = match rest[0].parse() {
                    Ok(x) => x,
                    Err(_) => return parse_err(lno, format!("bad vertex id `{}`", rest[0])),
                };
                let mut label = Vec::with_capacity(rest.len() - 1);
                for tok in &rest[1..] {
                    match tok.parse::<u8>() {
                        Ok(x) => label.push(Symbol(x)),
                        Err(_) => return parse_err(lno, format!("bad symbol `{tok}`")),
                    }
                }
                if k > 0 && label.len() != k {
                    return parse_err(
                        lno,
                        format!("implicit label has {} symbols, k is {k}", label.len()),
                    );
                }
                implicit.insert(VertexId(id), label);
            }
            other => return parse_err(lno, format!("unknown record `{other}`")),
        }
    }
    for (lno, t, h) in edges {
        if let Err(e) = graph.add_edge(t, h) {
            return parse_err(lno, e.to_string());
        }
    }
    if !implicit.is_empty() {
        for v in graph.vertices() {
            if !implicit.contains_key(&v) {
                return parse_err(0, format!("il lines present but vertex {v} has none"));
            }
        }
    }
    Ok(GraphFile {
        graph,
        k,
        implicit: (!implicit.is_empty()).then_some(implicit),
    })
}

pub fn write_graph(g: &LabeledDigraph, k: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dbg k={} sigma={}", k, g.sigma());
    for v in g.vertices() {
        let _ = writeln!(out, "v {} {}", v, g.label(v).unwrap());
    }
    for (t, h) in g.edges() {
        let _ = writeln!(out, "e {t} {h}");
    }
    out
}

pub fn write_debruijn(d: &DeBruijnGraph) -> String {
    let mut out = write_graph(d.base(), d.k());
    for v in d.base().vertices() {
        let label = d.implicit(v).unwrap();
        let rendered: Vec<String> = label.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "il {} {}", v, rendered.join(" "));
    }
    out
}

pub fn parse_pattern(text: &str) -> Result<Pattern, IoError> {
    let mut values = Vec::new();
    let mut any_line = false;
    for (lno, line) in content_lines(text) {
        if any_line {
            return parse_err(lno, "pattern files contain a single line of symbols");
        }
        any_line = true;
        for tok in line.split_whitespace() {
            match tok.parse::<u8>() {
                Ok(x) => values.push(x),
                Err(_) => return parse_err(lno, format!("bad symbol `{tok}`")),
            }
        }
    }
    if !any_line {
        return parse_err(0, "empty pattern file");
    }
    Ok(Pattern::from_values(&values)?)
}

pub fn write_pattern(p: &Pattern) -> String {
    let toks: Vec<String> = p.symbols().iter().map(|s| s.to_string()).collect();
    format!("{}\n", toks.join(" "))
}

pub fn parse_ov(text: &str) -> Result<OvInstance, IoError> {
    let mut lines = content_lines(text);
    let (hline, header) = match lines.next() {
        Some(x) => x,
        None => return parse_err(0, "empty ov file"),
    };
    let mut fields = header.split_whitespace();
    if fields.next() != Some("ov") {
        return parse_err(hline, "expected header `ov N=<int> d=<int>`");
    }
    let mut n = None;
    let mut d = None;
    for field in fields {
        if let Some(v) = field.strip_prefix("N=") {
            n = v.parse::<usize>().ok();
        } else if let Some(v) = field.strip_prefix("d=") {
            d = v.parse::<usize>().ok();
        } else {
            return parse_err(hline, format!("unknown header field `{field}`"));
        }
    }
    let (n, d) = match (n, d) {
        (Some(n), Some(d)) if n > 0 && d > 0 => (n, d),
        _ => return parse_err(hline, "header needs positive N= and d="),
    };

    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(2 * n);
    for (lno, line) in lines {
        let mut row = Vec::with_capacity(d);
        for tok in line.split_whitespace() {
            match tok.parse::<u8>() {
                Ok(x) if x <= 1 => row.push(x),
                _ => return parse_err(lno, format!("bad bit `{tok}`")),
            }
        }
        if row.len() != d {
            return parse_err(lno, format!("row has {} bits, d is {d}", row.len()));
        }
        rows.push(row);
        if rows.len() > 2 * n {
            return parse_err(lno, format!("more than {} vector rows", 2 * n));
        }
    }
    if rows.len() != 2 * n {
        return parse_err(
            0,
            format!("expected {} vector rows, found {}", 2 * n, rows.len()),
        );
    }
    let b = rows.split_off(n);
    Ok(OvInstance::new(rows, b)?)
}

pub fn write_ov(ov: &OvInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ov N={} d={}", ov.n(), ov.d());
    for row in ov.a().iter().chain(ov.b()) {
        let toks: Vec<String> = row.iter().map(|b| b.to_string()).collect();
        let _ = writeln!(out, "{}", toks.join(" "));
    }
    out
}

/// Parameter block and marked map, as written next to generated instances.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Meta {
    pub fields: BTreeMap<String, u64>,
    pub kind: String,
    pub marked: BTreeMap<VertexId, VertexId>,
}

pub fn write_npc_meta(bundle: &NpcBundle) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind=npc");
    let _ = writeln!(out, "n={}", bundle.params.n);
    let _ = writeln!(out, "ell={}", bundle.params.ell);
    let _ = writeln!(out, "w={}", bundle.params.w);
    let _ = writeln!(out, "k={}", bundle.params.k);
    let _ = writeln!(out, "delta={}", bundle.delta);
    let _ = writeln!(out, "sigma=4");
    for (orig, marked) in &bundle.marked {
        let _ = writeln!(out, "m {orig} {marked}");
    }
    out
}

pub fn write_seth_meta(bundle: &SethBundle) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind=seth");
    let _ = writeln!(out, "n={}", bundle.params.n);
    let _ = writeln!(out, "d={}", bundle.params.d);
    let _ = writeln!(out, "c={}", bundle.params.c);
    let _ = writeln!(out, "k={}", bundle.params.k);
    let _ = writeln!(out, "ell={}", bundle.params.ell);
    let _ = writeln!(out, "t={}", bundle.params.t);
    let _ = writeln!(out, "delta={}", bundle.delta);
    let _ = writeln!(out, "sigma=4");
    out
}

pub fn parse_meta(text: &str) -> Result<Meta, IoError> {
    let mut meta = Meta::default();
    for (lno, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("m ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return parse_err(lno, "marked line needs `m <orig> <marked>`");
            }
            match (parts[0].parse::<usize>(), parts[1].parse::<usize>()) {
                (Ok(a), Ok(b)) => {
                    meta.marked.insert(VertexId(a), VertexId(b));
                }
                _ => return parse_err(lno, "bad marked ids"),
            }
        } else if let Some((key, value)) = line.split_once('=') {
            if key == "kind" {
                meta.kind = value.to_string();
            } else {
                match value.parse::<u64>() {
                    Ok(v) => {
                        meta.fields.insert(key.to_string(), v);
                    }
                    Err(_) => return parse_err(lno, format!("bad value for `{key}`")),
                }
            }
        } else {
            return parse_err(lno, format!("unrecognized meta line `{line}`"));
        }
    }
    Ok(meta)
}
