#!/usr/bin/env python3
"""Smoke test for the dbgmatch_py extension module.

Builds the bindings crate with cargo, loads the resulting shared library,
and drives the main types and operations end to end: graph construction,
the validator, all three matchers, both instance generators, the oracles
and the verification pipelines.

Usage: python3 python/smoke_test.py [--release]
"""

import argparse
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_module(release: bool) -> Path:
    cmd = ["cargo", "build", "-p", "dbgmatch-python"]
    profile = "debug"
    if release:
        cmd.append("--release")
        profile = "release"
    subprocess.run(cmd, cwd=ROOT, check=True)
    lib = ROOT / "target" / profile / "libdbgmatch_py.so"
    if not lib.exists():  # macOS fallback
        lib = ROOT / "target" / profile / "libdbgmatch_py.dylib"
    if not lib.exists():
        sys.exit(f"built library not found next to {lib}")
    stage = Path(tempfile.mkdtemp(prefix="dbgmatch-py-"))
    target = stage / "dbgmatch_py.so"
    shutil.copyfile(lib, target)
    return stage


def check(condition: bool, message: str) -> None:
    if not condition:
        sys.exit(f"FAIL: {message}")
    print(f"ok: {message}")


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--release", action="store_true")
    args = parser.parse_args()

    sys.path.insert(0, str(build_module(args.release)))
    import dbgmatch_py as dm

    # graph substrate
    g = dm.Graph(3)
    a, b, c = g.add_vertex(0), g.add_vertex(1), g.add_vertex(2)
    g.add_edge(a, b)
    g.add_edge(b, c)
    g.add_edge(c, a)
    check(g.vertex_count == 3 and g.edge_count == 3, "three-cycle built")

    d = dm.compute_implicit_labels(g, 3)
    check(d.implicit_label(a) == [1, 2, 0], "implicit labels recompute")

    full = dm.full_de_bruijn(2, 3)
    check(full.vertex_count == 8 and full.edge_count == 16, "full graph sizes")
    check(dm.validate_de_bruijn(full) == [], "full graph validates")

    broken = full.graph()
    broken.remove_edge(1, 3)
    redone = dm.compute_implicit_labels(broken, 3)  # labels still derivable
    violations = dm.validate_de_bruijn(redone)
    check(any("edge-completeness" in v for v in violations), "validator spots a deleted edge")

    # matchers
    r = dm.match_exact(g, [0, 1, 2, 0, 1])
    check(r.feasible and r.walk is not None, "exact match wraps the cycle")

    path = dm.Graph(2)
    p0, p1, p2 = path.add_vertex(0), path.add_vertex(1), path.add_vertex(0)
    path.add_edge(p0, p1)
    path.add_edge(p1, p2)
    r = dm.min_pattern_substitutions(path, [0, 0, 0])
    check(r.cost == 1 and r.pattern_edits == [2], "pattern DP finds the single edit")
    r = dm.constrained_pattern_dp(path, [0, 0, 0], [2])
    check(r.cost is None, "pinning position 2 kills the match")

    loop = dm.Graph(2)
    v = loop.add_vertex(0)
    loop.add_edge(v, v)
    r = dm.min_graph_substitutions(loop, [1, 1, 1], 1)
    check(r.feasible and r.cost == 1 and r.graph_edits == [(v, 1)], "persistent relabel")
    check(dm.walk_enumeration_oracle(loop, [1, 1, 1]) == (3, 1), "walk oracle persistence")

    # Hamiltonian reduction
    triangle = [(0, 1), (1, 2), (2, 0)]
    bundle = dm.build_npc_instance(3, triangle, skip_gadget=True)
    check(bundle.params["w"] == 22 and bundle.delta == 8, "npc parameter block")
    check(len(bundle.pattern) == 352, "npc pattern length")
    check(dm.validate_de_bruijn(bundle.graph) == [], "npc output is a de Bruijn graph")
    check(dm.check_npc_structure(bundle) == [], "npc structural checks")

    ok, record = dm.verify_npc(3, triangle, skip_gadget=True)
    check(ok, f"npc verification agrees: {record}")

    non_ham = [(0, 1), (1, 2), (2, 0), (1, 3), (3, 0)]
    yes, _ = dm.hamiltonian_oracle(4, non_ham)
    ok, record = dm.verify_npc(4, non_ham, skip_gadget=True)
    check(not yes and ok, f"non-hamiltonian side agrees: {record}")

    # OV reduction
    a_set = [[1, 0], [0, 1]]
    b_yes = [[0, 1], [1, 1]]
    b_no = [[1, 1], [1, 1]]
    seth = dm.build_seth_instance(a_set, b_yes)
    check(seth.delta == 18 and len(seth.pattern) == 364, "seth parameter block")
    check(dm.validate_de_bruijn(seth.graph) == [], "seth output is a de Bruijn graph")
    unconstrained, constrained = dm.check_ov_probes(seth)
    check(unconstrained == constrained, "3-pinning probe is cost-neutral")

    ok, record = dm.verify_seth(a_set, b_yes)
    check(ok, f"orthogonal instance agrees: {record}")
    ok, record = dm.verify_seth([[1, 1], [1, 1]], b_no)
    check(ok and "oracle=no" in record, f"non-orthogonal instance agrees: {record}")

    check(dm.enc(3, 2) == [0, 0, 0, 0, 1] * 4 + [1, 1], "enc formula")
    check(dm.f_a(0) == [1, 1, 0, 0] and dm.f_b(1) == [0, 0, 0, 0], "vector mappings")
    check(dm.render([1, 2, 3, 0], "npc") == "#01$", "display map rendering")

    edges = dm.random_ham_edges(5, 2, 7)
    check(len(edges) >= 5, "seeded random instance")

    print("smoke test passed")


if __name__ == "__main__":
    main()
