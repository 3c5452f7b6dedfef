"""The bipartite graph of groups Delta of a linear-growth mapping torus.

Black vertices are Z^2 cylinder groups, one per axis; white vertices are the
(free of rank >= 2) x Z groups of vertex spaces. Each linear edge E on an axis
contributes a leaf edge to the vertex space at init(E) with twist d_E; the
vertex space that carries the axis itself is joined by a CENTRAL edge when its
rank exceeds 1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .classify import EXPONENTIAL, classify_strata
from .core import CyclicWord, EdgePath, GraphMap
from .errors import ParseError, UnsupportedInputError
from .nielsen import (RewrittenCycle, linear_edges, nielsen_cycle_classes, rewrite_cycle,
                      vertex_space_generators, vertex_spaces)

CENTRAL = "CENTRAL"


@dataclass(frozen=True)
class BlackVertex:
    id: str
    axis: tuple[str, ...]

    @property
    def group_label(self) -> str:
        return f"<{'.'.join(self.axis)}> x <t>"


@dataclass(frozen=True)
class WhiteVertex:
    id: str
    rank: int
    component: int | None = None
    generators: tuple[str, ...] = ()


@dataclass(frozen=True)
class DeltaEdge:
    black: str
    white: str
    via: str
    k: int


@dataclass(frozen=True)
class DeltaGraph:
    blacks: tuple[BlackVertex, ...] = ()
    whites: tuple[WhiteVertex, ...] = ()
    edges: tuple[DeltaEdge, ...] = ()
    pruned: tuple[str, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def valence(self, black_id: str) -> int:
        return sum(1 for e in self.edges if e.black == black_id)

    def edges_at(self, black_id: str) -> list[DeltaEdge]:
        return [e for e in self.edges if e.black == black_id]

    @property
    def max_black_valence(self) -> int:
        return max((self.valence(b.id) for b in self.blacks), default=0)


def dt_stratify(f: GraphMap) -> list[list[int]]:
    """Layers S_1, S_2, ... of linear edges.

    S_1 holds linear edges whose root runs in the fixed subgraph; S_k those
    whose root runs in the fixed subgraph plus S_1..S_{k-1} and crosses S_{k-1}.
    """
    g = f.graph
    records = linear_edges(f)
    allowed = {e for e in range(len(g.edges)) if f.is_fixed_edge(e)}
    remaining = {r.edge: {d >> 1 for d in r.root} for r in records}
    layers: list[list[int]] = []
    previous: set[int] | None = None
    while remaining:
        layer = sorted(e for e, used in remaining.items()
                       if used <= allowed and (previous is None or used & previous))
        if not layer:
            names = ", ".join(g.edges[e] for e in sorted(remaining))
            raise UnsupportedInputError(f"linear edges {names} fit no layer of the stratification")
        layers.append(layer)
        for e in layer:
            del remaining[e]
        previous = set(layer)
        allowed |= previous
    return layers


def rewrite_to_vertex_space(f: GraphMap, u) -> RewrittenCycle:
    """Rewrite a Nielsen cycle given as a CyclicWord, EdgePath or dart sequence."""
    if isinstance(u, EdgePath):
        u = u.darts
    if not isinstance(u, CyclicWord):
        u = CyclicWord.from_loop(f.graph, u)
    return rewrite_cycle(f, u)


def _require_linear(f: GraphMap) -> None:
    growth = classify_strata(f)
    if growth.overall == EXPONENTIAL or growth.overall > 1:
        raise UnsupportedInputError("Delta is only built for at most linear growth; "
                                    "restrict to the linear part first")


def build_delta(f: GraphMap, no_prune: bool = False) -> DeltaGraph:
    _require_linear(f)
    g = f.graph
    spaces = vertex_spaces(f)
    owner = {v: s for s in spaces for v in s.vertices}
    whites = []
    white_id = {}
    for s in spaces:
        if s.rank >= 2:
            wid = "X_" + g.vertices[s.vertices[0]]
            white_id[s.component_id] = wid
            base = s.vertices[0]
            gens = tuple(g.format_word(w, ".") for w in vertex_space_generators(f, s, base))
            whites.append(WhiteVertex(wid, s.rank, s.component_id, gens))
    blacks, edges, pruned, warnings = [], [], [], []
    for i, cls in enumerate(nielsen_cycle_classes(f)):
        bid = f"B{i + 1}"
        axis_word = tuple(g.dart_name(d) for d in cls.axis.rotation_class)
        mine = []
        for rec in cls.records:
            s = owner[g.init(rec.dart)]
            if s.rank < 2:
                warnings.append(f"leaf edge {g.edges[rec.edge]} of {bid} meets a rank-{s.rank} "
                                f"vertex space and carries no white vertex")
                continue
            mine.append(DeltaEdge(bid, white_id[s.component_id], g.edges[rec.edge],
                                  rec.exponent))
        central = spaces[cls.central_component]
        if central.rank > 1:
            mine.append(DeltaEdge(bid, white_id[central.component_id], CENTRAL, 0))
        if len(mine) <= 1 and not no_prune:
            pruned.append(bid)
            warnings.append(f"black vertex {bid} (axis {'.'.join(axis_word)}) has valence "
                            f"{len(mine)} and was pruned")
            continue
        blacks.append(BlackVertex(bid, axis_word))
        edges.extend(mine)
    return DeltaGraph(tuple(blacks), tuple(whites), tuple(edges), tuple(pruned), tuple(warnings))


def unbranched(d: DeltaGraph) -> bool:
    return all(d.valence(b.id) == 2 for b in d.blacks)


# ---------------------------------------------------------------------------
# text / JSON / DOT


def _parse_fields(parts, lineno):
    out = {}
    for p in parts:
        if "=" not in p:
            raise ParseError(f"expected KEY=VALUE, got {p!r}", lineno)
        k, v = p.split("=", 1)
        out[k] = v
    return out


def parse_delta(text: str, no_prune: bool = False) -> DeltaGraph:
    """Read Delta from its line format or from JSON produced by export_delta."""
    if text.lstrip().startswith("{"):
        return _delta_from_json(json.loads(text), no_prune)
    blacks, whites, edges = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "black":
            if len(parts) < 2:
                raise ParseError("expected 'black ID axis=WORD'", lineno)
            kv = _parse_fields(parts[2:], lineno)
            axis = tuple(t for t in kv.get("axis", "").split(".") if t)
            blacks.append((BlackVertex(parts[1], axis), lineno))
        elif kind == "white":
            if len(parts) < 2:
                raise ParseError("expected 'white ID rank=N'", lineno)
            kv = _parse_fields(parts[2:], lineno)
            try:
                rank = int(kv["rank"])
            except (KeyError, ValueError):
                raise ParseError("white vertex needs an integer rank=N", lineno) from None
            whites.append((WhiteVertex(parts[1], rank), lineno))
        elif kind == "deltaedge":
            if len(parts) < 3:
                raise ParseError("expected 'deltaedge BLACK WHITE via=NAME k=INT'", lineno)
            kv = _parse_fields(parts[3:], lineno)
            try:
                k = int(kv.get("k", "0"))
            except ValueError:
                raise ParseError("k must be an integer", lineno) from None
            edges.append((DeltaEdge(parts[1], parts[2], kv.get("via", ""), k), lineno))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    return _validate([b for b, _ in blacks], [w for w, _ in whites], edges, (), (), no_prune)


def _delta_from_json(obj, no_prune):
    blacks = [BlackVertex(b["id"], tuple(b["axis"])) for b in obj.get("black", [])]
    whites = [WhiteVertex(w["id"], int(w["rank"]), w.get("component"),
                          tuple(w.get("generators", []))) for w in obj.get("white", [])]
    edges = [(DeltaEdge(e["black"], e["white"], e["via"], int(e["k"])), None)
             for e in obj.get("edges", [])]
    return _validate(blacks, whites, edges, tuple(obj.get("pruned", [])),
                     tuple(obj.get("warnings", [])), no_prune)


def _validate(blacks, whites, edges, pruned, warnings, no_prune):
    black_ids = [b.id for b in blacks]
    white_ids = [w.id for w in whites]
    ids = black_ids + white_ids
    dup = {x for x in ids if ids.count(x) > 1}
    if dup:
        raise ParseError(f"duplicate vertex id {sorted(dup)[0]}")
    for w in whites:
        if w.rank < 2 and not no_prune:
            raise ParseError(f"white vertex {w.id} has rank {w.rank} < 2")
    for e, lineno in edges:
        for end, expected, other in ((e.black, black_ids, white_ids),
                                     (e.white, white_ids, black_ids)):
            if end in expected:
                continue
            if end in other:
                raise ParseError(f"edge {e.black} -- {e.white} is not black-to-white", lineno)
            raise ParseError(f"edge {e.black} -- {e.white} uses missing vertex {end}", lineno)
    edge_list = [e for e, _ in edges]
    warnings = list(warnings)
    kept = []
    pruned = list(pruned)
    for b in blacks:
        val = sum(1 for e in edge_list if e.black == b.id)
        if val <= 1 and not no_prune:
            pruned.append(b.id)
            warnings.append(f"black vertex {b.id} has valence {val} and was pruned")
        else:
            kept.append(b)
    kept_ids = {b.id for b in kept}
    edge_list = [e for e in edge_list if e.black in kept_ids]
    return DeltaGraph(tuple(kept), tuple(whites), tuple(edge_list), tuple(pruned),
                      tuple(warnings))


def delta_to_json(d: DeltaGraph) -> dict:
    return {
        "black": [{"id": b.id, "axis": list(b.axis), "group": b.group_label} for b in d.blacks],
        "white": [{"id": w.id, "rank": w.rank, "component": w.component,
                   "generators": list(w.generators)} for w in d.whites],
        "edges": [{"black": e.black, "white": e.white, "via": e.via, "k": e.k}
                  for e in d.edges],
        "pruned": list(d.pruned),
        "warnings": list(d.warnings),
    }


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_delta(d: DeltaGraph, fmt: str = "json") -> str:
    fmt = fmt.lower()
    if fmt == "json":
        return json.dumps(delta_to_json(d), indent=2, ensure_ascii=False) + "\n"
    if fmt != "dot":
        raise ValueError(f"unknown format {fmt!r}")
    lines = ["graph delta {"]
    for b in d.blacks:
        lines.append(f"  {_dot_quote(b.id)} [shape=circle, style=filled, fillcolor=black, "
                     f"fontcolor=white, label={_dot_quote(b.group_label)}];")
    for w in d.whites:
        lines.append(f"  {_dot_quote(w.id)} [shape=circle, "
                     f"label={_dot_quote(f'{w.id} rank {w.rank}')}];")
    for e in d.edges:
        lines.append(f"  {_dot_quote(e.black)} -- {_dot_quote(e.white)} "
                     f"[label={_dot_quote(f'{e.via}:{e.k}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_delta_text(d: DeltaGraph) -> str:
    lines = [f"black {b.id} axis={'.'.join(b.axis)}" for b in d.blacks]
    lines += [f"white {w.id} rank={w.rank}" for w in d.whites]
    lines += [f"deltaedge {e.black} {e.white} via={e.via} k={e.k}" for e in d.edges]
    return "\n".join(lines) + "\n"
