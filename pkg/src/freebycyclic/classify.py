"""Filtrations, stratum growth, per-edge polynomial degree and normal-form checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx
import numpy as np

from .core import GraphMap, cyclic_reduce, inverse_word
from .errors import UnsupportedInputError

EXPONENTIAL = "exp"


def degree_max(values) -> int | str:
    values = list(values)
    if EXPONENTIAL in values:
        return EXPONENTIAL
    return max(values, default=0)


@dataclass(frozen=True)
class Filtration:
    """Strata in an order where every edge occurring in an image comes first."""

    strata: tuple[tuple[int, ...], ...]

    @property
    def subgraphs(self) -> list[frozenset[int]]:
        out, acc = [], set()
        for stratum in self.strata:
            acc |= set(stratum)
            out.append(frozenset(acc))
        return out

    def stratum_of(self, e: int) -> int:
        for i, stratum in enumerate(self.strata):
            if e in stratum:
                return i
        raise KeyError(e)


def compute_filtration(f: GraphMap) -> Filtration:
    occurs = nx.DiGraph()
    occurs.add_nodes_from(range(len(f.graph.edges)))
    for e, img in enumerate(f.images):
        for d in img:
            occurs.add_edge(d >> 1, e)
    cond = nx.condensation(occurs)
    members = {c: tuple(sorted(cond.nodes[c]["members"])) for c in cond.nodes}
    order = nx.lexicographical_topological_sort(cond, key=lambda c: members[c][0])
    return Filtration(tuple(members[c] for c in order))


def transition_matrix(f: GraphMap, stratum) -> np.ndarray:
    stratum = list(stratum)
    index = {e: i for i, e in enumerate(stratum)}
    m = np.zeros((len(stratum), len(stratum)), dtype=np.int64)
    for j, e in enumerate(stratum):
        for d in f.images[e]:
            i = index.get(d >> 1)
            if i is not None:
                m[i, j] += 1
    return m


def is_exponential_stratum(m: np.ndarray) -> bool:
    """Spectral radius > 1 for an irreducible nonnegative integer matrix.

    The Perron root lies between the smallest and largest column sum and equals
    them only when all column sums agree. Columns of an irreducible matrix of
    size > 1 are nonzero, so the root exceeds 1 exactly when some column sum
    is at least 2.
    """
    if m.shape[0] == 1:
        return int(m[0, 0]) > 1
    return bool((m.sum(axis=0) > 1).any())


@dataclass(frozen=True)
class GrowthReport:
    degrees: tuple  # per edge: int or EXPONENTIAL
    overall: int | str
    eg_strata: tuple[tuple[int, ...], ...]
    filtration: Filtration
    roots: dict = field(default_factory=dict)  # degree-1 edge -> (dart, root word, power)

    def degree(self, e: int):
        return self.degrees[e]

    def to_json(self, f: GraphMap) -> dict:
        names = f.graph.edges
        return {
            "edges": {names[e]: d for e, d in enumerate(self.degrees)},
            "overall": self.overall,
            "eg_strata": [[names[e] for e in s] for s in self.eg_strata],
        }


def word_root(w: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Shortest r with w = r^n, and n."""
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p], n // p
    raise ValueError("empty word has no root")


def parse_pieces(u, roots, i: int = 0):
    """Split u[i:] into fixed-or-other darts and pieces E·w^m·~E.

    ``roots`` maps a preferred linear dart E to its root word w. Returns a list
    of items ``(dart,)`` or ``(E, m)``, taking the longest piece at each position.
    """
    out = []
    while i < len(u):
        d = u[i]
        piece = _piece_at(u, i, d, roots.get(d)) if d in roots else None
        if piece is None:
            out.append((d,))
            i += 1
        else:
            m, j = piece
            out.append((d, m))
            i = j
    return out


def _piece_at(u, i, d, w):
    """Longest E·w^m·~E starting at u[i] (m != 0): returns (m, end index)."""
    if w is None:
        return None
    best = None
    for sign, x in ((1, w), (-1, inverse_word(w))):
        r = len(x)
        m = 0
        j = i + 1
        while u[j:j + r] == x:
            m += 1
            j += r
        while m > 0:
            end = i + 1 + m * r
            if end < len(u) and u[end] == d ^ 1:
                if best is None or end + 1 > best[1]:
                    best = (sign * m, end + 1)
                break
            m -= 1
    return best


@lru_cache(maxsize=256)
def classify_strata(f: GraphMap) -> GrowthReport:
    g = f.graph
    filt = compute_filtration(f)
    degrees: dict[int, int | str] = {}
    eg: list[tuple[int, ...]] = []
    roots: dict[int, tuple[int, tuple[int, ...], int]] = {}
    linear_root_by_dart: dict[int, tuple[int, ...]] = {}
    iterations = 2 * max(g.rank, 1)
    for stratum in filt.strata:
        m = transition_matrix(f, stratum)
        if is_exponential_stratum(m):
            eg.append(stratum)
            for e in stratum:
                degrees[e] = EXPONENTIAL
            continue
        if len(stratum) > 1:
            names = ", ".join(g.edges[e] for e in stratum)
            raise UnsupportedInputError(
                f"periodic stratum {{{names}}}: edges permuted rather than fixed")
        e = stratum[0]
        if f.is_fixed_edge(e):
            degrees[e] = 0
            continue
        d = f.preferred_darts[e]
        if d is None:
            raise UnsupportedInputError(
                f"edge {g.edges[e]}: image is neither {g.edges[e]}·u nor u·{g.edges[e]}")
        u = f.suffix(d)
        if any(degrees[x >> 1] == EXPONENTIAL for x in u):
            degrees[e] = EXPONENTIAL
            continue
        parts = parse_pieces(u, linear_root_by_dart)
        deg = 1 + max((degrees[p[0] >> 1] for p in parts if len(p) == 1), default=0)
        _check_splitting(f, d, u, iterations)
        degrees[e] = deg
        if deg == 1:
            if g.term(u[-1]) == g.term(d) and cyclic_reduce(u) == u:
                root, power = word_root(u)
                roots[e] = (d, root, power)
                linear_root_by_dart[d] = root
    deg_tuple = tuple(degrees[e] for e in range(len(g.edges)))
    return GrowthReport(deg_tuple, degree_max(deg_tuple), tuple(eg), filt, roots)


def _check_splitting(f: GraphMap, d: int, u: tuple[int, ...], k: int) -> None:
    """E·u·[f(u)]···[f^{k-1}(u)] must be reduced as written."""
    prev = d
    cur = u
    for _ in range(k):
        if not cur:
            raise UnsupportedInputError(
                f"edge {f.graph.dart_name(d)}: suffix iterate tightens to a trivial path")
        if cur[0] == prev ^ 1:
            raise UnsupportedInputError(
                f"edge {f.graph.dart_name(d)}: cancellation while iterating its suffix "
                f"(not completely split)")
        prev = cur[-1]
        cur = f.map_word(cur)


def edge_lengths(f: GraphMap, d: int, k: int) -> list[int]:
    """|[f^j(E)]| for j = 1..k."""
    out = []
    w: tuple[int, ...] = (d,)
    for _ in range(k):
        w = f.map_word(w)
        out.append(len(w))
    return out


def no_cancellation_lengths(f: GraphMap, d: int, k: int) -> list[int]:
    """1 + sum_{j<i} |[f^j(u)]| for i = 1..k, where f(E) = E·u."""
    u = f.suffix(d)
    out = []
    total = 1
    for _ in range(k):
        total += len(u)
        out.append(total)
        u = f.map_word(u)
    return out


@dataclass(frozen=True)
class Diagnostic:
    axiom: str
    message: str
    hard: bool = True

    def __str__(self):
        kind = "violation" if self.hard else "note"
        return f"[{self.axiom}] {kind}: {self.message}"


@dataclass(frozen=True)
class CTReport:
    diagnostics: tuple[Diagnostic, ...]
    growth: GrowthReport | None
    linear: tuple = ()
    eg_present: bool = False

    @property
    def ok(self) -> bool:
        return not any(d.hard for d in self.diagnostics)

    @property
    def notes(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if not d.hard]

    @property
    def violations(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.hard]


def ct_normal_form_check(f: GraphMap) -> CTReport:
    """Check the normal-form axioms the decision pipeline relies on."""
    from .nielsen import linear_edges

    g = f.graph
    diags: list[Diagnostic] = []
    moved = [g.vertices[v] for v, w in enumerate(f.vertex_image) if v != w]
    if moved:
        diags.append(Diagnostic("periodicity", f"vertices not fixed: {', '.join(moved)}"))
        return CTReport(tuple(diags), None)
    try:
        growth = classify_strata(f)
    except UnsupportedInputError as exc:
        diags.append(Diagnostic("complete splitting", str(exc)))
        return CTReport(tuple(diags), None)
    eg_present = bool(growth.eg_strata)
    if eg_present:
        diags.append(Diagnostic(
            "EG strata", "exponential strata present; only the NEG part is checked", hard=False))
    for e, deg in enumerate(growth.degrees):
        if deg in (0, EXPONENTIAL):
            continue
        d = f.preferred_darts[e]
        u = f.suffix(d)
        if g.term(u[-1]) != g.term(d):
            diags.append(Diagnostic("NEG edges", f"suffix of {g.dart_name(d)} is not closed"))
    try:
        records = linear_edges(f)
    except UnsupportedInputError as exc:
        diags.append(Diagnostic("linear edges", str(exc)))
        return CTReport(tuple(diags), growth, (), eg_present)
    by_axis: dict[tuple[int, ...], list] = {}
    for rec in records:
        by_axis.setdefault(rec.axis.rotation_class, []).append(rec)
    for recs in by_axis.values():
        first = recs[0]
        for rec in recs[1:]:
            if rec.root != first.root:
                diags.append(Diagnostic(
                    "linear edges",
                    f"roots of {g.dart_name(first.dart)} and {g.dart_name(rec.dart)} share an "
                    f"axis but differ as words ({g.format_word(first.root)} vs "
                    f"{g.format_word(rec.root)}); normalised by rotation", hard=False))
        seen: dict[int, int] = {}
        for rec in recs:
            if rec.exponent in seen:
                other = g.edges[seen[rec.exponent]]
                diags.append(Diagnostic(
                    "linear edges",
                    f"linear edges {other} and {g.edges[rec.edge]} have the same axis and "
                    f"the same exponent {rec.exponent}"))
            seen[rec.exponent] = rec.edge
    return CTReport(tuple(diags), growth, tuple(records), eg_present)

