"""Command-line entry points.

Exit codes: 0 success, 2 usage error, 1 domain error (bad input data,
exceeded search bounds, illegal configurations).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import clopen, hypergraph, ideals, katetov, strategies, tree
from .engine import WindowPolicy, evaluate, play, save_transcript
from .ideals import resolve_ideal


def _env(name: str, default=None):
    return os.environ.get(f"IDEALGAMES_{name}", default)


# ---------------------------------------------------------------------------
# Finite-set file formats: one element per line.  Naturals are decimal,
# pairs/edges "a b", rationals "p/q", clopen sets comma-joined generators.

def parse_element(text: str, tag: str):
    text = text.strip()
    if tag == ideals.NATURALS:
        return int(text)
    if tag in (ideals.PAIRS, ideals.LOWER_TRIANGLE):
        a, b = text.split()
        return (int(a), int(b))
    if tag == ideals.EDGE_SET:
        a, b = map(int, text.split())
        if not a < b:
            raise ValueError(f"edge must be written 'a b' with a < b: {text}")
        return frozenset((a, b))
    if tag == ideals.RATIONALS_01:
        return Fraction(text)
    if tag == ideals.CLOPEN:
        return clopen.ClopenSet.parse(text)
    raise ValueError(f"no element format for ground {tag!r}")


def read_finite_set(path: str, tag: str) -> list:
    with open(path) as fh:
        return [parse_element(line, tag) for line in fh if line.strip()]


def _parse_params(text: str | None) -> dict:
    """Comma-separated k=v pairs; values as int, fraction, or string."""
    params = {}
    for item in (text or "").split(","):
        if not item.strip():
            continue
        key, _, value = item.partition("=")
        value = value.strip()
        if value.lstrip("-").isdigit():
            params[key.strip()] = int(value)
        elif "/" in value:
            params[key.strip()] = Fraction(value)
        else:
            params[key.strip()] = value
    return params


# ---------------------------------------------------------------------------
# Subcommands

def cmd_ideal_eval(args) -> int:
    descriptor = resolve_ideal(args.ideal, **_parse_params(args.params))
    elements = read_finite_set(args.set, descriptor.tag)
    print(descriptor.phi(elements))
    return 0


def cmd_tree(args) -> int:
    if args.tree_cmd == "branch":
        print(" ".join(map(str, tree.branch(args.x, args.depth))))
    elif args.tree_cmd == "separation":
        print(tree.separation_level(args.a, args.b))
    elif args.tree_cmd == "trace":
        elements = read_finite_set(args.set, ideals.NATURALS)
        for node in sorted(tree.trace_tree(elements, args.depth)):
            print("." if not node else " ".join(map(str, node)))
    return 0


def cmd_clopen(args) -> int:
    if args.clopen_cmd == "measure":
        print(clopen.ClopenSet.parse(args.set).measure())
    elif args.clopen_cmd == "tilde":
        print(clopen.tilde(clopen.ClopenSet.parse(args.set),
                           args.n).serialize())
    elif args.clopen_cmd == "xu":
        print(clopen.x_u(clopen.ClopenSet.parse(args.set), args.depth))
    elif args.clopen_cmd == "yu":
        print(clopen.y_u(clopen.ClopenSet.parse(args.set)))
    elif args.clopen_cmd == "phisn":
        family = read_finite_set(args.family, ideals.CLOPEN)
        print(clopen.phi_sn(args.n, family))
    return 0


def _run_cell(cell: dict) -> tuple:
    descriptor = resolve_ideal(cell["ideal"], **cell.get("ideal_params", {}))
    s_i = strategies.make_strategy(cell["i"], **cell.get("i_params", {}))
    s_ii = strategies.make_strategy(cell["ii"], **cell.get("ii_params", {}))
    policy = WindowPolicy(cell.get("window_initial", 64),
                          cell.get("window_cap", 1 << 20))
    t = play(cell["game"], descriptor, s_i, s_ii, cell["rounds"], policy,
             cell["seed_i"], cell["seed_ii"])
    trajectory = []
    for r in range(t.completed_rounds):
        try:
            trajectory.append(descriptor.phi(t.outcome_after(r + 1)))
        except ideals.SearchBoundExceeded:
            trajectory.append(None)
    return t, trajectory


def cmd_game_play(args) -> int:
    cell = {"game": args.game, "ideal": args.ideal,
            "ideal_params": _parse_params(args.params),
            "i": args.i, "ii": args.ii, "rounds": args.rounds,
            "seed_i": args.seed_i if args.seed_i is not None else args.seed,
            "seed_ii": args.seed_ii if args.seed_ii is not None else args.seed}
    t, trajectory = _run_cell(cell)
    if args.out:
        save_transcript(t, args.out)
    print(json.dumps({"result": t.result, "rounds": t.completed_rounds,
                      "trajectory": trajectory}, sort_keys=True))
    return 0


def cmd_game_batch(args) -> int:
    with open(args.manifest) as fh:
        manifest = json.load(fh)
    out_dir = manifest.get("output_dir", ".")
    os.makedirs(out_dir, exist_ok=True)
    experiment = manifest.get("experiment", "batch")
    summary = []
    for idx, cell in enumerate(manifest.get("cells", [])):
        entry = {"cell": idx, "spec": cell}
        try:
            t, trajectory = _run_cell(cell)
            path = os.path.join(out_dir, f"{experiment}-{idx}.jsonl")
            save_transcript(t, path)
            entry.update(result=t.result, trajectory=trajectory,
                         transcript=path)
        except Exception as exc:  # per-cell failure; the run continues
            entry.update(error=f"{type(exc).__name__}: {exc}")
        summary.append(entry)
        print(json.dumps(entry, sort_keys=True))
    failures = sum(1 for e in summary if "error" in e)
    print(json.dumps({"experiment": experiment, "cells": len(summary),
                      "errors": failures}, sort_keys=True))
    return 0


def cmd_rado(args) -> int:
    if args.rado_cmd == "build":
        t = hypergraph.build_rado(args.n, args.k, args.stages)
        with open(args.out, "w") as fh:
            json.dump(hypergraph.table_to_json(t), fh, sort_keys=True)
        print(f"{t.vertex_count} vertices, stages {t.stage_sizes}")
        return 0
    with open(args.table) as fh:
        t = hypergraph.table_from_json(json.load(fh))
    if args.rado_cmd == "check":
        missing = hypergraph.star_check_exhaustive(t, args.cap)
        for fam in missing:
            print(json.dumps([sorted(sorted(e) for e in members)
                              for members in fam.families]))
        print(f"{len(missing)} missing witnesses")
        return 0 if not missing else 1
    if args.rado_cmd == "embed":
        c = hypergraph.read_coloring(args.coloring)
        f = hypergraph.embed_coloring(c, t, extend=not args.frozen)
        ok = hypergraph.verify_embedding(c, t, f)
        print(json.dumps({"map": {str(k): v for k, v in sorted(f.items())},
                          "verified": ok}, sort_keys=True))
        return 0 if ok else 1
    return 2


def cmd_ramsey(args) -> int:
    c = hypergraph.read_coloring(args.coloring)
    if args.verify_ramsey:
        import itertools
        edges = list(itertools.combinations(range(6), 2))
        for bits in range(1 << len(edges)):
            table = {frozenset(e): (bits >> i) & 1
                     for i, e in enumerate(edges)}
            if hypergraph.find_homogeneous(
                    hypergraph.Coloring(2, 2, 6, table), 3, 1) is None:
                print("ramsey bound 6 refuted (impossible)")
                return 1
        print("ramsey bound 6 verified by brute force")
    found = hypergraph.find_homogeneous(c, args.size, args.l)
    print("NONE" if found is None else " ".join(map(str, found)))
    return 0


def _reduction_by_name(name: str, source: str, target: str):
    if name == "conv-to-somega":
        return katetov.conv_to_somega()
    if name == "identity":
        if source != target:
            raise ValueError("identity map needs --from and --to equal")
        d = resolve_ideal(source)
        return katetov.ReductionSpec("identity", d, d, lambda x: x)
    raise KeyError(f"unknown map {name!r}")


def cmd_katetov(args) -> int:
    windows = [int(w) for w in args.windows.split(",")]
    spec = _reduction_by_name(args.map, getattr(args, "from"), args.to)
    generators = spec.source.sampler(args.seed, max(windows))
    report = katetov.check_reduction(spec, generators, windows)
    for g in report.generators:
        print(json.dumps(g.to_json(), sort_keys=True))
    print(json.dumps({"name": report.name, "windows": report.windows,
                      "note": report.note}, sort_keys=True))
    return 0


def cmd_serve(args) -> int:  # pragma: no cover
    from .service import serve
    serve(port=args.port)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="idealgames")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("ideal").add_subparsers(dest="ideal_cmd", required=True)
    q = p.add_parser("eval")
    q.add_argument("--ideal", required=True)
    q.add_argument("--params", default="")
    q.add_argument("--set", required=True)
    q.set_defaults(func=cmd_ideal_eval)

    p = sub.add_parser("tree").add_subparsers(dest="tree_cmd", required=True)
    q = p.add_parser("branch")
    q.add_argument("--x", type=int, required=True)
    q.add_argument("--depth", type=int, required=True)
    q.set_defaults(func=cmd_tree)
    q = p.add_parser("separation")
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.set_defaults(func=cmd_tree)
    q = p.add_parser("trace")
    q.add_argument("--set", required=True)
    q.add_argument("--depth", type=int, required=True)
    q.set_defaults(func=cmd_tree)

    p = sub.add_parser("clopen").add_subparsers(dest="clopen_cmd",
                                                required=True)
    for name in ("measure", "tilde", "xu", "yu"):
        q = p.add_parser(name)
        q.add_argument("--set", required=True)
        if name == "tilde":
            q.add_argument("--n", type=int, required=True)
        if name == "xu":
            q.add_argument("--depth", type=int, required=True)
        q.set_defaults(func=cmd_clopen)
    q = p.add_parser("phisn")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--family", required=True)
    q.set_defaults(func=cmd_clopen)

    p = sub.add_parser("game").add_subparsers(dest="game_cmd", required=True)
    q = p.add_parser("play")
    q.add_argument("--game", required=True, choices=("g1", "gfin", "g3"))
    q.add_argument("--ideal", required=True)
    q.add_argument("--params", default="")
    q.add_argument("--i", required=True)
    q.add_argument("--ii", required=True)
    q.add_argument("--rounds", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--seed-i", type=int, default=None)
    q.add_argument("--seed-ii", type=int, default=None)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_game_play)
    q = p.add_parser("batch")
    q.add_argument("--manifest", required=True)
    q.set_defaults(func=cmd_game_batch)

    p = sub.add_parser("rado").add_subparsers(dest="rado_cmd", required=True)
    q = p.add_parser("build")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--stages", type=int, required=True)
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_rado)
    q = p.add_parser("check")
    q.add_argument("--table", required=True)
    q.add_argument("--cap", type=int, default=2)
    q.set_defaults(func=cmd_rado)
    q = p.add_parser("embed")
    q.add_argument("--table", required=True)
    q.add_argument("--coloring", required=True)
    q.add_argument("--frozen", action="store_true")
    q.set_defaults(func=cmd_rado)

    q = sub.add_parser("ramsey").add_subparsers(dest="ramsey_cmd",
                                                required=True).add_parser(
                                                    "search")
    q.add_argument("--coloring", required=True)
    q.add_argument("--size", type=int, required=True)
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--verify-ramsey", action="store_true")
    q.set_defaults(func=cmd_ramsey)

    q = sub.add_parser("katetov").add_subparsers(dest="katetov_cmd",
                                                 required=True).add_parser(
                                                     "check")
    q.add_argument("--from", required=True)
    q.add_argument("--to", required=True)
    q.add_argument("--map", required=True)
    q.add_argument("--windows", default=_env("WINDOWS", "64,128,256"))
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_katetov)

    q = sub.add_parser("serve")
    q.add_argument("--port", type=int, default=int(_env("PORT", "8000")))
    q.add_argument("--data-dir", default=_env("DATA_DIR", "."))
    q.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
