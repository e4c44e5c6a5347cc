//! End-to-end runs of the binary over temp files: generation, validation,
//! matching, oracles and reduction verification, including exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> PathBuf {
    let mut path = PathBuf::from(env!("CARGO_BIN_EXE_dbgmatch"));
    assert!(path.exists(), "binary missing at {}", path.display());
    path = path.canonicalize().unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("binary runs")
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dbgmatch-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TRIANGLE: &str = "dbg k=0 sigma=1\nv 0 0\nv 1 0\nv 2 0\ne 0 1\ne 1 2\ne 2 0\n";

#[test]
fn gen_npc_validate_and_verify() {
    let dir = workdir("npc");
    let input = dir.join("triangle.graph");
    fs::write(&input, TRIANGLE).unwrap();
    let prefix = dir.join("inst");

    let out = run(&[
        "gen-npc",
        "--in",
        path_str(&input),
        "--out-prefix",
        path_str(&prefix),
        "--skip-gadget",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let graph_file = dir.join("inst.graph");
    let meta = fs::read_to_string(dir.join("inst.meta")).unwrap();
    assert!(meta.contains("delta=8"), "{meta}");
    assert!(meta.contains("k=66"));

    let out = run(&["validate", "--in", path_str(&graph_file)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );

    let out = run(&[
        "verify-reduction",
        "npc",
        "--in",
        path_str(&input),
        "--skip-gadget",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("agree=yes"), "{text}");

    // tiny cap makes the matcher indeterminate: exit code 3
    let out = run(&[
        "verify-reduction",
        "npc",
        "--in",
        path_str(&input),
        "--skip-gadget",
        "--cap",
        "5",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn validate_flags_a_broken_graph() {
    let dir = workdir("broken");
    // order-2 binary full graph with one edge removed
    let text = "dbg k=2 sigma=2\nv 0 0\nv 1 1\nv 2 0\nv 3 1\n\
        e 0 0\ne 0 1\ne 1 2\ne 2 0\ne 2 1\ne 3 2\ne 3 3\n\
        il 0 0 0\nil 1 0 1\nil 2 1 0\nil 3 1 1\n";
    let input = dir.join("gap.graph");
    fs::write(&input, text).unwrap();
    let out = run(&["validate", "--in", path_str(&input)]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("edge-completeness"), "{stdout}");
}

#[test]
fn gen_seth_and_match_pipeline() {
    let dir = workdir("seth");
    let input = dir.join("ov.txt");
    fs::write(&input, "ov N=2 d=2\n1 0\n0 1\n0 1\n1 1\n").unwrap();
    let prefix = dir.join("seth");

    let out = run(&[
        "gen-seth",
        "--in",
        path_str(&input),
        "--out-prefix",
        path_str(&prefix),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let meta = fs::read_to_string(dir.join("seth.meta")).unwrap();
    assert!(meta.contains("delta=18"), "{meta}");

    let out = run(&[
        "match-pattern-subs",
        "--graph",
        path_str(&dir.join("seth.graph")),
        "--pattern",
        path_str(&dir.join("seth.pattern")),
        "--delta",
        "18",
        "--witness",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("feasible=true"), "{text}");

    let out = run(&["verify-reduction", "seth", "--in", path_str(&input)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );

    let out = run(&["oracle", "ov", "--in", path_str(&input)]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("orthogonal-pair=true"));
}

#[test]
fn gen_random_is_deterministic() {
    let dir = workdir("rand");
    let a = dir.join("a.graph");
    let b = dir.join("b.graph");
    for out in [&a, &b] {
        let r = run(&[
            "gen-random",
            "ham",
            "--n",
            "5",
            "--seed",
            "1",
            "--out",
            path_str(out),
        ]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    // d <= log2 N is rejected as a usage error
    let r = run(&[
        "gen-random",
        "ov",
        "--n",
        "4",
        "--d",
        "2",
        "--seed",
        "1",
        "--out",
        path_str(&dir.join("ov.txt")),
    ]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn matchers_and_walk_oracle_agree_through_files() {
    let dir = workdir("match");
    let graph = dir.join("g.graph");
    let pattern = dir.join("p.txt");
    // path 0 -> 1 -> 2 labeled 0 1 0
    fs::write(
        &graph,
        "dbg k=0 sigma=2\nv 0 0\nv 1 1\nv 2 0\ne 0 1\ne 1 2\n",
    )
    .unwrap();
    fs::write(&pattern, "0 0 0\n").unwrap();

    let out = run(&[
        "match-exact",
        "--graph",
        path_str(&graph),
        "--pattern",
        path_str(&pattern),
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("feasible=false"));

    let out = run(&[
        "match-pattern-subs",
        "--graph",
        path_str(&graph),
        "--pattern",
        path_str(&pattern),
        "--witness",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("cost=1"), "{text}");
    assert!(text.contains("pattern-edits 2"), "{text}");

    let out = run(&[
        "match-graph-subs",
        "--graph",
        path_str(&graph),
        "--pattern",
        path_str(&pattern),
        "--delta",
        "1",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("feasible=true cost=1"), "{text}");

    let out = run(&[
        "oracle",
        "walks",
        "--graph",
        path_str(&graph),
        "--pattern",
        path_str(&pattern),
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("pattern-subs-min=1 graph-subs-min=1"),
        "{text}"
    );
}

#[test]
fn usage_errors_exit_with_two() {
    let out = run(&["validate", "--in", "/nonexistent/file.graph"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["definitely-not-a-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}
