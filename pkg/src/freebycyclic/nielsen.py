"""Nielsen paths, linear edges and their axes, vertex spaces and Fix ranks.

A vertex space is a component of the fixed subgraph (all vertices plus fixed
edges) with one extra loop mu_E at init(E) for every linear edge E. The loop
mu_E stands for the closed Nielsen path E·w·~E, so the rank of a vertex space
is the rank of Fix_v(f) for any vertex v in it.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .classify import classify_strata, parse_pieces
from .core import CyclicWord, EdgePath, GraphMap, free_reduce, inverse_word, map_path
from .errors import UnsupportedInputError
from .folding import FoldedGraph, stallings_fold

__all__ = [
    "LinearEdgeRecord", "VertexSpace", "NielsenClass", "RewrittenCycle",
    "is_nielsen_path", "linear_edges", "fixed_components", "vertex_spaces",
    "component_of", "fix_rank", "vertex_space_generators", "nielsen_cycle_classes",
    "rewrite_cycle", "oracle_fix_generators", "oracle_fix_rank", "stallings_fold",
    "FoldedGraph",
]


@dataclass(frozen=True)
class LinearEdgeRecord:
    """f(E) = E·w^n for the preferred dart E, with w root-free and Nielsen.

    ``exponent`` is n signed by whether w runs along the canonical orientation
    of its axis.
    """

    edge: int
    dart: int
    root: tuple[int, ...]
    power: int

    @property
    def axis(self) -> CyclicWord:
        return CyclicWord(self.root)

    @property
    def exponent(self) -> int:
        return self.power * self.axis.canonical_orientation


@dataclass(frozen=True)
class VertexSpace:
    component_id: int
    vertices: tuple[int, ...]
    fixed_edges: tuple[int, ...]
    new_loops: tuple[int, ...]  # linear edge ids whose mu loop attaches here

    @property
    def rank(self) -> int:
        return len(self.fixed_edges) + len(self.new_loops) - len(self.vertices) + 1


@dataclass(frozen=True)
class NielsenClass:
    axis: CyclicWord  # representative is the root word of the first record
    records: tuple[LinearEdgeRecord, ...]
    traversed: tuple[int, ...]
    high_rank_vertices: tuple[int, ...]
    central_component: int

    @property
    def supported_edges(self) -> tuple[int, ...]:
        return tuple(r.edge for r in self.records)

    @property
    def count(self) -> int:
        return len(self.records) + len(self.high_rank_vertices)


@dataclass(frozen=True)
class RewrittenCycle:
    """A Nielsen cycle written in a vertex space: items are ``(dart,)`` for a
    fixed dart or ``(E, m)`` for mu_E^m."""

    component: int
    rotation: int
    items: tuple[tuple[int, ...], ...]

    def format(self, f: GraphMap) -> str:
        g = f.graph
        parts = []
        for item in self.items:
            if len(item) == 1:
                parts.append(g.dart_name(item[0]))
            else:
                e, m = item
                label = "mu_" + g.edges[e >> 1]
                parts.append(label if m == 1 else f"{label}^{m}")
        return " ".join(parts)


def is_nielsen_path(f: GraphMap, p: EdgePath) -> bool:
    return map_path(f, p) == EdgePath(tuple(p.darts), p.start)


@lru_cache(maxsize=256)
def _linear_edges(f: GraphMap) -> tuple[LinearEdgeRecord, ...]:
    g = f.graph
    growth = classify_strata(f)
    records = []
    for e, deg in enumerate(growth.degrees):
        if deg != 1:
            continue
        if e not in growth.roots:
            d = f.preferred_darts[e]
            raise UnsupportedInputError(
                f"linear edge {g.edges[e]}: suffix {g.format_word(f.suffix(d))} is not "
                f"an immersed closed cycle")
        d, root, power = growth.roots[e]
        if f.map_word(root) != root:
            raise UnsupportedInputError(
                f"linear edge {g.edges[e]}: root {g.format_word(root)} is not a Nielsen path")
        records.append(LinearEdgeRecord(e, d, root, power))
    return tuple(records)


def linear_edges(f: GraphMap) -> list[LinearEdgeRecord]:
    return list(_linear_edges(f))


def fixed_components(f: GraphMap) -> list[VertexSpace]:
    """Components of the fixed subgraph, ordered by their first vertex."""
    g = f.graph
    parent = list(range(len(g.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    fixed = [e for e in range(len(g.edges)) if f.is_fixed_edge(e)]
    for e in fixed:
        a, b = find(g.src[e]), find(g.dst[e])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(len(g.vertices)):
        groups.setdefault(find(v), []).append(v)
    spaces = []
    for cid, root in enumerate(sorted(groups)):
        vs = tuple(groups[root])
        es = tuple(e for e in fixed if find(g.src[e]) == root)
        spaces.append(VertexSpace(cid, vs, es, ()))
    return spaces


@lru_cache(maxsize=256)
def _vertex_spaces(f: GraphMap) -> tuple[VertexSpace, ...]:
    g = f.graph
    spaces = fixed_components(f)
    owner = {v: s.component_id for s in spaces for v in s.vertices}
    loops: dict[int, list[int]] = {s.component_id: [] for s in spaces}
    for rec in linear_edges(f):
        loops[owner[g.init(rec.dart)]].append(rec.edge)
    return tuple(VertexSpace(s.component_id, s.vertices, s.fixed_edges,
                             tuple(loops[s.component_id])) for s in spaces)


def vertex_spaces(f: GraphMap) -> list[VertexSpace]:
    return list(_vertex_spaces(f))


def component_of(f: GraphMap, v: int) -> VertexSpace:
    for s in _vertex_spaces(f):
        if v in s.vertices:
            return s
    raise KeyError(v)


def fix_rank(f: GraphMap, v) -> int:
    if isinstance(v, str):
        v = f.graph.vertex(v)
    return component_of(f, v).rank


def vertex_space_generators(f: GraphMap, space: VertexSpace, base: int) -> list[tuple[int, ...]]:
    """Closed Nielsen paths at ``base`` forming a free basis of its vertex group.

    Fixed edges outside a spanning tree of the component give one generator
    each; every new loop mu_E gives T·E·w·~E·T^-1 for the tree path T to init(E).
    """
    g = f.graph
    if base not in space.vertices:
        raise ValueError("basepoint outside the vertex space")
    tree = {base: ()}
    queue = [base]
    tree_edges = set()
    fixed = set(space.fixed_edges)
    for v in queue:
        for d in g.out_darts(v):
            if (d >> 1) in fixed and g.term(d) not in tree:
                tree[g.term(d)] = tree[v] + (d,)
                tree_edges.add(d >> 1)
                queue.append(g.term(d))
    gens = []
    for e in space.fixed_edges:
        if e in tree_edges:
            continue
        d = 2 * e
        gens.append(free_reduce(tree[g.init(d)] + (d,) + inverse_word(tree[g.term(d)])))
    records = {r.edge: r for r in linear_edges(f)}
    for e in space.new_loops:
        r = records[e]
        t = tree[g.init(r.dart)]
        gens.append(free_reduce(t + (r.dart,) + r.root + (r.dart ^ 1,) + inverse_word(t)))
    return gens


def rewrite_cycle(f: GraphMap, u: CyclicWord) -> RewrittenCycle:
    """Express a Nielsen cycle through fixed edges and new loops of one vertex space.

    Maximal pieces E·w_E^m·~E become mu_E^m. Every rotation of u is tried so
    that pieces wrapping around the chosen starting point are still found.
    """
    g = f.graph
    records = linear_edges(f)
    roots = {r.dart: r.root for r in records}
    owner = {v: s.component_id for s in _vertex_spaces(f) for v in s.vertices}
    word = u.representative
    for rot in range(len(word)):
        w = word[rot:] + word[:rot]
        items = parse_pieces(w, roots)
        comps = set()
        ok = True
        for item in items:
            d = item[0]
            if len(item) == 1:
                if not f.is_fixed_edge(d >> 1):
                    ok = False
                    break
            comps.add(owner[g.init(d)])
        if ok and len(comps) == 1:
            return RewrittenCycle(comps.pop(), rot, tuple(items))
    raise UnsupportedInputError(
        f"Nielsen cycle {g.format_word(word)} does not rewrite into a single vertex space")


@lru_cache(maxsize=256)
def _classes(f: GraphMap) -> tuple[NielsenClass, ...]:
    g = f.graph
    groups: dict[tuple[int, ...], list[LinearEdgeRecord]] = {}
    for rec in linear_edges(f):
        groups.setdefault(rec.axis.rotation_class, []).append(rec)
    classes = []
    for key in sorted(groups):
        recs = tuple(groups[key])
        u = recs[0].axis
        traversed = tuple(sorted({g.init(d) for d in u.representative}))
        high = tuple(v for v in traversed if fix_rank(f, v) > 1)
        central = rewrite_cycle(f, u).component
        classes.append(NielsenClass(u, recs, traversed, high, central))
    return tuple(classes)


def nielsen_cycle_classes(f: GraphMap) -> list[NielsenClass]:
    """Linear edges grouped by axis, ordered by canonical axis word."""
    return list(_classes(f))


def oracle_fix_generators(f: GraphMap, v, max_len: int = 12,
                          complete: bool = False) -> list[EdgePath]:
    """Exhaustive search for reduced closed Nielsen paths at v of length <= max_len.

    By default the search does not extend a path past a closed Nielsen prefix
    p: if p·q is Nielsen then so is q, and q is found on its own, so the
    result still generates every Nielsen loop up to the length bound. Cost is
    exponential in ``max_len``.
    """
    g = f.graph
    if isinstance(v, str):
        v = g.vertex(v)
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    img_flat, img_off, term, out_off, out_darts = f.kernel_arrays
    cap_words, cap_darts = 1024, 16384
    while True:
        rec = np.empty(cap_darts, np.int64)
        rec_len = np.empty(cap_words, np.int64)
        found, used, _ = kernels.nielsen_loops(v, max_len, not complete, out_off, out_darts,
                                               term, img_flat, img_off, rec, rec_len)
        if found <= cap_words and used <= cap_darts:
            break
        cap_words, cap_darts = max(found, cap_words) + 1, max(used, cap_darts) + 1
    loops = []
    pos = 0
    for i in range(found):
        n = int(rec_len[i])
        loops.append(EdgePath(tuple(int(x) for x in rec[pos:pos + n]), v))
        pos += n
    return loops


def oracle_fix_rank(f: GraphMap, v, max_len: int = 12) -> int:
    if isinstance(v, str):
        v = f.graph.vertex(v)
    loops = oracle_fix_generators(f, v, max_len)
    return stallings_fold([p.darts for p in loops], f.graph, v).rank
