"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .classify import classify_strata, ct_normal_form_check
from .core import GraphMap, load_graph_map
from .decompose import build_delta, export_delta, parse_delta, unbranched
from .errors import FreeByCyclicError, InternalInconsistencyError, ValidationError
from .fixtures import FIXTURES, fixture_path
from .folding import validate_pi1_bijectivity
from .nielsen import (fix_rank, linear_edges, nielsen_cycle_classes, oracle_fix_generators,
                      oracle_fix_rank, rewrite_cycle, vertex_spaces)
from .verdict import decide, restrict_linear

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_NOT_HHG = 3


def resolve_input(name: str) -> Path:
    path = Path(name)
    if not path.exists() and name in FIXTURES:
        return fixture_path(name)
    return path


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _load(args) -> GraphMap:
    f = load_graph_map(resolve_input(args.file))
    if args.power > 1:
        f = f.power(args.power)
    return f


def _require_valid(f: GraphMap):
    report = ct_normal_form_check(f)
    if not report.ok:
        raise ValidationError("input is not in the supported normal form",
                              [str(d) for d in report.violations])
    return report


def cmd_validate(args, out) -> int:
    f = _load(args)
    report = ct_normal_form_check(f)
    pi1 = validate_pi1_bijectivity(f)
    if args.json:
        out.write(_dump({
            "ok": report.ok and pi1.passed,
            "diagnostics": [{"axiom": d.axiom, "message": d.message, "hard": d.hard}
                            for d in report.diagnostics],
            "pi1": {"passed": pi1.passed, "message": pi1.message},
        }) + "\n")
    else:
        for d in report.diagnostics:
            out.write(str(d) + "\n")
        out.write(f"pi_1: {pi1.message}\n")
        out.write("valid\n" if report.ok and pi1.passed else "invalid\n")
    return EXIT_OK if report.ok and pi1.passed else EXIT_INPUT


def cmd_classify(args, out) -> int:
    f = _load(args)
    growth = classify_strata(f)
    if args.json:
        out.write(_dump(growth.to_json(f)) + "\n")
        return EXIT_OK
    g = f.graph
    width = max(len(n) for n in g.edges)
    for e, name in enumerate(g.edges):
        out.write(f"{name.ljust(width)}  {growth.degrees[e]}\n")
    out.write(f"overall: {growth.overall}\n")
    eg = ["{" + ", ".join(g.edges[e] for e in s) + "}" for s in growth.eg_strata]
    out.write(f"EG strata: {', '.join(eg) if eg else 'none'}\n")
    return EXIT_OK


def cmd_nielsen(args, out) -> int:
    f = _load(args)
    _require_valid(f)
    g = f.graph
    records = linear_edges(f)
    spaces = vertex_spaces(f)
    classes = nielsen_cycle_classes(f)
    oracle = None
    if args.oracle:
        oracle = {g.vertices[v]: oracle_fix_rank(f, v, args.max_len)
                  for v in range(len(g.vertices))}
    data = {
        "linear_edges": [{"edge": g.edges[r.edge], "root": g.format_word(r.root),
                          "exponent": r.exponent} for r in records],
        "vertex_spaces": [{"vertices": [g.vertices[v] for v in s.vertices],
                           "fixed_edges": [g.edges[e] for e in s.fixed_edges],
                           "new_loops": ["mu_" + g.edges[e] for e in s.new_loops],
                           "rank": s.rank} for s in spaces],
        "fix_rank": {g.vertices[v]: fix_rank(f, v) for v in range(len(g.vertices))},
        "classes": [{"axis": g.format_word(c.axis.representative),
                     "E": [g.edges[e] for e in c.supported_edges],
                     "T": [g.vertices[v] for v in c.high_rank_vertices],
                     "central": rewrite_cycle(f, c.axis).format(f)} for c in classes],
    }
    if oracle is not None:
        data["oracle"] = {"max_len": args.max_len, "fix_rank": oracle,
                          "agrees": oracle == data["fix_rank"]}
    if args.json:
        out.write(_dump(data) + "\n")
    else:
        out.write("linear edges:\n")
        for r in data["linear_edges"]:
            out.write(f"  {r['edge']}: root {r['root']}, exponent {r['exponent']}\n")
        out.write("vertex spaces:\n")
        for s in data["vertex_spaces"]:
            out.write(f"  {{{', '.join(s['vertices'])}}} fixed {s['fixed_edges']} "
                      f"loops {s['new_loops']} rank {s['rank']}\n")
        out.write("classes:\n")
        for c in data["classes"]:
            out.write(f"  axis {c['axis']}: E={c['E']} T={c['T']} central cycle {c['central']}\n")
        if oracle is not None:
            verdict = "agrees" if data["oracle"]["agrees"] else "DISAGREES"
            out.write(f"oracle (length <= {args.max_len}) {verdict}: {oracle}\n")
    if oracle is not None and not data["oracle"]["agrees"]:
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_delta(args, out) -> int:
    if args.from_delta:
        text = resolve_input(args.from_delta).read_text(encoding="utf-8")
        deltas = [parse_delta(text, no_prune=args.no_prune)]
    else:
        if args.file is None:
            raise SystemExit("delta: give FILE or --from-delta FILE")
        f = _load(args)
        _require_valid(f)
        deltas = [build_delta(sub, no_prune=args.no_prune) for _, sub in restrict_linear(f)]
    for i, d in enumerate(deltas):
        if args.dot:
            path = Path(args.dot)
            if len(deltas) > 1:
                path = path.with_name(f"{path.stem}-{i + 1}{path.suffix}")
            path.write_text(export_delta(d, "dot"), encoding="utf-8")
        if args.json:
            out.write(export_delta(d, "json"))
        else:
            out.write(f"black {len(d.blacks)}, white {len(d.whites)}, edges {len(d.edges)}, "
                      f"pruned {len(d.pruned)}, unbranched: {'yes' if unbranched(d) else 'no'}\n")
            for e in d.edges:
                out.write(f"  {e.black} -- {e.white}  {e.via}:{e.k}\n")
        for w in d.warnings:
            sys.stderr.write(f"warning: {w}\n")
    return EXIT_OK


def cmd_decide(args, out) -> int:
    f = _load(args)
    v = decide(f, rank_shortcut=not args.no_rank_shortcut)
    if args.json:
        out.write(_dump(v.to_json(all_witnesses=args.all)) + "\n")
    else:
        out.write(v.summary() + "\n")
        witnesses = v.all_witnesses if args.all else ([v.excessive] if v.excessive else [])
        for w in witnesses:
            data = w.to_json()
            out.write(f"excessive linearity: axis {data['axis']}, E={data['E']}, "
                      f"T={data['T']}\n")
        for c in v.caveats:
            out.write(f"caveat: {c}\n")
    if args.exit_verdict:
        return EXIT_OK if v.hhg else EXIT_NOT_HHG
    return EXIT_OK


def cmd_witness(args, out) -> int:
    f = _load(args)
    v = decide(f)
    if v.witness is None:
        out.write("no branching witness: the mapping torus is unbranched\n")
        return EXIT_OK
    w = v.witness
    if args.json:
        out.write(_dump(w.to_json()) + "\n")
        return EXIT_OK
    g = w.f.graph
    out.write(f"basepoint {g.vertices[w.basepoint]}, axis {g.format_word(w.axis_word)}\n")
    for b in w.blocks:
        free = ", ".join(x.format(g) for x in b.free_part)
        out.write(f"block {b.source}: <{free}> x <{b.center.format(g)}>\n")
    p, q = w.triple_intersection
    out.write(f"triple intersection contains <{p.format(g)}, {q.format(g)}> = Z^2\n")
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    f = _load(args)
    _require_valid(f)
    g = f.graph
    vs = [g.vertex(args.vertex)] if args.vertex else range(len(g.vertices))
    rows = []
    for v in vs:
        loops = oracle_fix_generators(f, v, args.max_len)
        rows.append({"vertex": g.vertices[v], "fix_rank": fix_rank(f, v),
                     "oracle_rank": oracle_fix_rank(f, v, args.max_len),
                     "loops": [p.format(g) for p in loops]})
    agree = all(r["fix_rank"] == r["oracle_rank"] for r in rows)
    if args.json:
        out.write(_dump({"max_len": args.max_len, "vertices": rows, "agrees": agree}) + "\n")
    else:
        for r in rows:
            out.write(f"{r['vertex']}: fix_rank {r['fix_rank']}, oracle {r['oracle_rank']} "
                      f"({len(r['loops'])} loops)\n")
        out.write("agree\n" if agree else "DISAGREE\n")
    return EXIT_OK if agree else EXIT_INTERNAL


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freebycyclic",
        description="Decide whether the mapping torus of a normal-form graph map is an HHG.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help, file_required=True):
        p = sub.add_parser(name, help=help)
        if file_required:
            p.add_argument("file", help="map file (.tt) or a bundled fixture name")
        else:
            p.add_argument("file", nargs="?", help="map file (.tt) or a bundled fixture name")
        p.add_argument("--power", type=_positive, default=1, metavar="M",
                       help="analyse the M-fold composite of the map")
        p.add_argument("--json", action="store_true", help="print JSON")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "check the normal-form axioms and pi_1 bijectivity")
    add("classify", cmd_classify, "per-edge growth degrees and EG strata")
    p = add("nielsen", cmd_nielsen, "linear edges, vertex spaces, Nielsen classes")
    p.add_argument("--max-len", type=_positive, default=12)
    p.add_argument("--oracle", action="store_true", help="cross-check Fix ranks by search")
    p = add("delta", cmd_delta, "build or read the graph of groups Delta", file_required=False)
    p.add_argument("--dot", metavar="PATH", help="write Graphviz DOT to PATH")
    p.add_argument("--no-prune", action="store_true", help="keep black vertices of valence <= 1")
    p.add_argument("--from-delta", metavar="FILE", help="read Delta directly")
    p = add("decide", cmd_decide, "HHG verdict")
    p.add_argument("--all", action="store_true", help="report every excessive class")
    p.add_argument("--exit-verdict", action="store_true",
                   help="exit 0 if HHG and 3 if not")
    p.add_argument("--no-rank-shortcut", action="store_true",
                   help="run the full analysis in rank <= 2 as well")
    add("witness", cmd_witness, "branching witness for a non-HHG verdict")
    p = add("oracle", cmd_oracle, "exhaustive Nielsen loop search")
    p.add_argument("--max-len", type=_positive, default=12)
    p.add_argument("--vertex", help="only this vertex")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InternalInconsistencyError as exc:
        sys.stderr.write(f"internal inconsistency: {exc}\n")
        for k, v in exc.details.items():
            sys.stderr.write(f"  {k}: {v}\n")
        return EXIT_INTERNAL
    except FreeByCyclicError as exc:
        sys.stderr.write(f"error: {exc}\n")
        for d in getattr(exc, "diagnostics", []):
            sys.stderr.write(f"  {d}\n")
        return EXIT_INPUT
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
