//! Command-line surface for the dbgmatch toolkit.
//!
//! Exit codes: 0 success, 1 disagreement or violation, 2 usage or input
//! error, 3 a cap was hit and the result is indeterminate.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dbgmatch::gen::{random_ham_instance, random_ov_instance};
use dbgmatch::io::{
    parse_graph, parse_ov, parse_pattern, write_debruijn, write_graph, write_npc_meta, write_ov,
    write_pattern, write_seth_meta, DisplayMap,
};
use dbgmatch::verify::{verify_npc, verify_seth};
use dbgmatch::*;

#[derive(Parser)]
#[command(
    name = "dbgmatch",
    version,
    about = "Pattern matching on vertex-labeled de Bruijn graphs: matchers, instance generators, oracles and verifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum DisplayMode {
    /// Raw symbol integers.
    Int,
    /// The `$ # 0 1` rendering used by the Hamiltonian reduction.
    Npc,
    /// Literal digits.
    Digits,
}

#[derive(Args)]
struct MatchArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Pattern file.
    #[arg(long)]
    pattern: PathBuf,
    /// Symbol rendering for reported witnesses.
    #[arg(long, value_enum, default_value = "int")]
    display: DisplayMode,
}

#[derive(Subcommand)]
enum Command {
    /// Build a vertex-substitution instance from a directed graph.
    GenNpc {
        /// Input graph file (labels ignored).
        #[arg(long = "in")]
        input: PathBuf,
        /// Prefix for the .graph/.pattern/.meta outputs.
        #[arg(long)]
        out_prefix: String,
        /// Skip the 2-cycle elimination gadget (input must be 2-cycle-free).
        #[arg(long)]
        skip_gadget: bool,
    },
    /// Build a pattern-substitution instance from an OV input.
    GenSeth {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_prefix: String,
    },
    /// Generate random inputs.
    GenRandom {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Recompute implicit labels and run the de Bruijn validator.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Order override when the file header carries k=0.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact walk matching.
    MatchExact(MatchArgs),
    /// Minimum substitutions in the pattern (dynamic program).
    MatchPatternSubs {
        #[command(flatten)]
        common: MatchArgs,
        /// Feasibility threshold to report against.
        #[arg(long)]
        delta: Option<u64>,
        /// Recover and print a witness walk.
        #[arg(long)]
        witness: bool,
    },
    /// Minimum substitutions to vertex labels (exhaustive search).
    MatchGraphSubs {
        #[command(flatten)]
        common: MatchArgs,
        #[arg(long)]
        delta: u64,
        /// Node-expansion cap.
        #[arg(long, default_value_t = DEFAULT_EXPANSION_CAP)]
        cap: u64,
    },
    /// Brute-force ground-truth deciders.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
    /// Generate an instance, run oracle and matcher, compare verdicts.
    VerifyReduction {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Time the substitution DP on generated instances of growing size.
    Bench {
        /// Largest N (set sizes double from 2).
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        /// Vector dimension floor (raised when log N demands it).
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Random Hamiltonian-cycle input satisfying the instance invariants.
    Ham {
        #[arg(long)]
        n: usize,
        /// Extra edges beyond the out-degree floor.
        #[arg(long, default_value_t = 2)]
        extra: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random OV input (N a power of two, d > log2 N).
    Ov {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleKind {
    /// Hamiltonian cycle decision by exhaustive search.
    Ham {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_HAM_CAP)]
        cap: usize,
    },
    /// Orthogonal-pair scan.
    Ov {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Walk enumeration: minimal pattern-subs and graph-subs costs.
    Walks {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WALK_CAP)]
        cap: u64,
    },
}

#[derive(Subcommand)]
enum VerifyKind {
    Npc {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        skip_gadget: bool,
        #[arg(long, default_value_t = DEFAULT_EXPANSION_CAP)]
        cap: u64,
        #[arg(long, default_value_t = DEFAULT_HAM_CAP)]
        ham_cap: usize,
    },
    Seth {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INDETERMINATE: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn indeterminate(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INDETERMINATE,
            message: message.into(),
        }
    }

    fn violation(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_VIOLATION,
            message: message.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<dbgmatch::io::GraphFile, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_pattern(path: &Path) -> Result<Pattern, Failure> {
    parse_pattern(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_ham(path: &Path) -> Result<HamInstance, Failure> {
    let file = load_graph(path)?;
    HamInstance::from_graph(file.graph)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_ov(path: &Path) -> Result<OvInstance, Failure> {
    parse_ov(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn render_symbols(symbols: &[Symbol], mode: DisplayMode, sigma: u8) -> String {
    let map = match mode {
        DisplayMode::Int => None,
        DisplayMode::Npc => Some(DisplayMap::npc()),
        DisplayMode::Digits => Some(DisplayMap::digits(sigma)),
    };
    match map.and_then(|m| m.render_all(symbols)) {
        Some(s) => s,
        None => symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn report_match(
    g: &LabeledDigraph,
    p: &Pattern,
    result: &MatchResult,
    mode: DisplayMode,
) -> Result<(), Failure> {
    println!("feasible={} cost={}", result.feasible, result.cost);
    if let Some(walk) = &result.walk {
        check_witness(g, p, result)
            .map_err(|e| Failure::violation(format!("witness replay failed: {e}")))?;
        let ids: Vec<String> = walk.vertices.iter().map(|v| v.to_string()).collect();
        println!("walk {}", ids.join(" "));
        let spelled = walk
            .spell(g)
            .map_err(|e| Failure::violation(e.to_string()))?;
        println!("spells {}", render_symbols(&spelled, mode, g.sigma()));
    }
    match &result.edits {
        Edits::Pattern(positions) if !positions.is_empty() => {
            let toks: Vec<String> = positions.iter().map(|i| i.to_string()).collect();
            println!("pattern-edits {}", toks.join(" "));
        }
        Edits::Graph(relabels) if !relabels.is_empty() => {
            let toks: Vec<String> = relabels
                .iter()
                .map(|(v, s)| format!("{v}->{}", render_symbols(&[*s], mode, g.sigma())))
                .collect();
            println!("graph-edits {}", toks.join(" "));
        }
        _ => {}
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::GenNpc {
            input,
            out_prefix,
            skip_gadget,
        } => {
            let inst = load_ham(&input)?;
            let bundle = if skip_gadget {
                build_npc_instance_direct(&inst)
            } else {
                build_npc_instance(&inst)
            }
            .map_err(|e| Failure::usage(e.to_string()))?;
            write_file(
                Path::new(&format!("{out_prefix}.graph")),
                &write_debruijn(&bundle.graph),
            )?;
            write_file(
                Path::new(&format!("{out_prefix}.pattern")),
                &write_pattern(&bundle.pattern),
            )?;
            write_file(
                Path::new(&format!("{out_prefix}.meta")),
                &write_npc_meta(&bundle),
            )?;
            println!(
                "npc instance: n={} |V'|={} |E'|={} k={} delta={} |P|={}",
                bundle.params.n,
                bundle.graph.base().vertex_count(),
                bundle.graph.base().edge_count(),
                bundle.params.k,
                bundle.delta,
                bundle.pattern.len()
            );
            Ok(EXIT_OK)
        }
        Command::GenSeth { input, out_prefix } => {
            let ov = load_ov(&input)?;
            let bundle = build_seth_instance(&ov).map_err(|e| Failure::usage(e.to_string()))?;
            write_file(
                Path::new(&format!("{out_prefix}.graph")),
                &write_debruijn(&bundle.graph),
            )?;
            write_file(
                Path::new(&format!("{out_prefix}.pattern")),
                &write_pattern(&bundle.pattern),
            )?;
            write_file(
                Path::new(&format!("{out_prefix}.meta")),
                &write_seth_meta(&bundle),
            )?;
            println!(
                "seth instance: N={} d={} |V|={} |E|={} k={} delta={} |P|={}",
                bundle.params.n,
                bundle.params.d,
                bundle.graph.base().vertex_count(),
                bundle.graph.base().edge_count(),
                bundle.params.k,
                bundle.delta,
                bundle.pattern.len()
            );
            Ok(EXIT_OK)
        }
        Command::GenRandom { kind } => match kind {
            GenKind::Ham {
                n,
                extra,
                seed,
                out,
            } => {
                let inst = random_ham_instance(n, extra, seed)
                    .map_err(|e| Failure::usage(e.to_string()))?;
                let mut text = format!("# random ham instance: n={n} extra={extra} seed={seed}\n");
                text.push_str(&write_graph(inst.graph(), 0));
                write_file(&out, &text)?;
                println!(
                    "wrote {} ({} edges)",
                    out.display(),
                    inst.graph().edge_count()
                );
                Ok(EXIT_OK)
            }
            GenKind::Ov { n, d, seed, out } => {
                let ov =
                    random_ov_instance(n, d, seed).map_err(|e| Failure::usage(e.to_string()))?;
                let mut text = format!("# random ov instance: N={n} d={d} seed={seed}\n");
                text.push_str(&write_ov(&ov));
                write_file(&out, &text)?;
                println!("wrote {}", out.display());
                Ok(EXIT_OK)
            }
        },
        Command::Validate { input, k } => {
            let file = load_graph(&input)?;
            let order = match (k, file.k) {
                (Some(k), _) => k,
                (None, 0) => return Err(Failure::usage("file declares k=0; pass --k")),
                (None, k) => k,
            };
            let graph = file.graph.clone();
            let dbg = match file.implicit {
                Some(implicit) => DeBruijnGraph::from_parts(graph, order, implicit)
                    .map_err(|e| Failure::usage(e.to_string()))?,
                None => compute_implicit_labels(&graph, order)
                    .map_err(|e| Failure::violation(format!("implicit labels: {e}")))?,
            };
            let report = validate_de_bruijn(&dbg);
            print!("{report}");
            if report.is_clean() {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_VIOLATION)
            }
        }
        Command::MatchExact(args) => {
            let g = load_graph(&args.graph)?.graph;
            let p = load_pattern(&args.pattern)?;
            let result = match_exact(&g, &p).map_err(|e| Failure::usage(e.to_string()))?;
            report_match(&g, &p, &result, args.display)?;
            Ok(EXIT_OK)
        }
        Command::MatchPatternSubs {
            common,
            delta,
            witness,
        } => {
            let g = load_graph(&common.graph)?.graph;
            let p = load_pattern(&common.pattern)?;
            if witness {
                let mut result =
                    min_pattern_substitutions(&g, &p).map_err(|e| Failure::usage(e.to_string()))?;
                if let (Some(d), Some(c)) = (delta, result.cost.value()) {
                    result.feasible = c <= d;
                }
                report_match(&g, &p, &result, common.display)?;
            } else {
                let cost =
                    pattern_substitution_cost(&g, &p).map_err(|e| Failure::usage(e.to_string()))?;
                let feasible = match (delta, cost.value()) {
                    (Some(d), Some(c)) => c <= d,
                    (None, c) => c.is_some(),
                    _ => false,
                };
                println!("feasible={feasible} cost={cost}");
            }
            Ok(EXIT_OK)
        }
        Command::MatchGraphSubs { common, delta, cap } => {
            let g = load_graph(&common.graph)?.graph;
            let p = load_pattern(&common.pattern)?;
            match min_graph_substitutions_capped(&g, &p, delta, cap) {
                Ok(result) => {
                    report_match(&g, &p, &result, common.display)?;
                    Ok(EXIT_OK)
                }
                Err(MatchError::Indeterminate { cap }) => {
                    Err(Failure::indeterminate(format!("expansion cap {cap} hit")))
                }
                Err(e) => Err(Failure::usage(e.to_string())),
            }
        }
        Command::Oracle { kind } => match kind {
            OracleKind::Ham { input, cap } => {
                let inst = load_ham(&input)?;
                match hamiltonian_oracle(&inst, cap) {
                    Ok((yes, witness)) => {
                        println!("hamiltonian={yes}");
                        if let Some(cycle) = witness {
                            let ids: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
                            println!("cycle {}", ids.join(" "));
                        }
                        Ok(EXIT_OK)
                    }
                    Err(e) => Err(Failure::indeterminate(e.to_string())),
                }
            }
            OracleKind::Ov { input } => {
                let ov = load_ov(&input)?;
                let (yes, witness) = ov_oracle(&ov);
                println!("orthogonal-pair={yes}");
                if let Some((i, j)) = witness {
                    println!("witness a[{i}] b[{j}]");
                }
                Ok(EXIT_OK)
            }
            OracleKind::Walks {
                graph,
                pattern,
                cap,
            } => {
                let g = load_graph(&graph)?.graph;
                let p = load_pattern(&pattern)?;
                match walk_enumeration_oracle(&g, &p, cap) {
                    Ok((pattern_min, graph_min)) => {
                        println!("pattern-subs-min={pattern_min} graph-subs-min={graph_min}");
                        Ok(EXIT_OK)
                    }
                    Err(OracleError::CapExceeded { size, cap }) => Err(Failure::indeterminate(
                        format!("{size} walks exceed the cap of {cap}"),
                    )),
                    Err(e) => Err(Failure::usage(e.to_string())),
                }
            }
        },
        Command::VerifyReduction { kind } => {
            let record = match kind {
                VerifyKind::Npc {
                    input,
                    skip_gadget,
                    cap,
                    ham_cap,
                } => {
                    let inst = load_ham(&input)?;
                    verify_npc(&inst, skip_gadget, ham_cap, cap)
                        .map_err(|e| Failure::usage(e.to_string()))?
                }
                VerifyKind::Seth { input } => {
                    let ov = load_ov(&input)?;
                    verify_seth(&ov).map_err(|e| Failure::usage(e.to_string()))?
                }
            };
            println!("{record}");
            if record.indeterminate() {
                Ok(EXIT_INDETERMINATE)
            } else if record.passed() {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_VIOLATION)
            }
        }
        Command::Bench { n_max, d, seed } => {
            println!(
                "{:>6} {:>4} {:>7} {:>7} {:>9} {:>10}",
                "N", "d", "|V|", "|E|", "|P|", "dp_ms"
            );
            let mut n = 2;
            while n <= n_max {
                let dim = d.max(ceil_log2_pub(n) as usize + 1);
                let ov =
                    random_ov_instance(n, dim, seed).map_err(|e| Failure::usage(e.to_string()))?;
                let bundle = build_seth_instance(&ov).map_err(|e| Failure::usage(e.to_string()))?;
                let t = Instant::now();
                let cost = pattern_substitution_cost(bundle.graph.base(), &bundle.pattern)
                    .map_err(|e| Failure::usage(e.to_string()))?;
                let ms = t.elapsed().as_secs_f64() * 1e3;
                println!(
                    "{:>6} {:>4} {:>7} {:>7} {:>9} {:>10.2}  cost={} delta={}",
                    n,
                    dim,
                    bundle.graph.base().vertex_count(),
                    bundle.graph.base().edge_count(),
                    bundle.pattern.len(),
                    ms,
                    cost,
                    bundle.delta
                );
                n *= 2;
            }
            Ok(EXIT_OK)
        }
    }
}

fn ceil_log2_pub(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
