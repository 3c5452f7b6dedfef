"""Stallings folding of finitely many loops in a graph.

Labels are darts of an ambient marked graph; a labeled edge ``u --d--> w``
is stored at ``u`` under ``d`` and at ``w`` under ``d ^ 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import GraphMap, MarkedGraph, free_reduce


class FoldedGraph:
    """Immersed labeled graph with a basepoint, built by folding petals."""

    def __init__(self, base_vertex: int = 0):
        self._parent: list[int] = [0]
        self._out: list[dict[int, int]] = [{}]
        self._where: list[int] = [base_vertex]
        self._pending: list[tuple[int, int]] = []
        self.base = 0

    def _new_vertex(self, where: int) -> int:
        self._parent.append(len(self._parent))
        self._out.append({})
        self._where.append(where)
        return len(self._parent) - 1

    def find(self, x: int) -> int:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def _attach(self, u: int, label: int, w: int) -> None:
        out = self._out[u]
        if label in out:
            self._pending.append((out[label], w))
        else:
            out[label] = w

    def add_edge(self, u: int, label: int, w: int) -> None:
        u, w = self.find(u), self.find(w)
        self._attach(u, label, w)
        self._attach(w, label ^ 1, u)
        self._fold()

    def _fold(self) -> None:
        while self._pending:
            a, b = self._pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if len(self._out[a]) < len(self._out[b]):
                a, b = b, a
            self._parent[b] = a
            if b == self.base:
                self.base = a
            moved, self._out[b] = self._out[b], {}
            for label, target in moved.items():
                self._attach(a, label, self.find(target))

    def add_loop(self, darts: Sequence[int], ambient: MarkedGraph | None = None) -> None:
        """Wedge a closed word onto the basepoint and fold."""
        darts = free_reduce(darts)
        if not darts:
            return
        cur = self.find(self.base)
        for i, d in enumerate(darts):
            if i == len(darts) - 1:
                nxt = self.find(self.base)
            else:
                target = self._out[self.find(cur)].get(d)
                if target is not None:
                    cur = self.find(target)
                    continue
                where = ambient.term(d) if ambient is not None else 0
                nxt = self._new_vertex(where)
            self.add_edge(cur, d, nxt)
            cur = self.find(nxt)

    def vertices(self) -> list[int]:
        return [v for v in range(len(self._parent)) if self._parent[v] == v]

    def edges(self) -> list[tuple[int, int, int]]:
        """Undirected edges as (u, even label, w)."""
        out = []
        for u in self.vertices():
            for label, w in self._out[u].items():
                if label & 1 == 0:
                    out.append((u, label, self.find(w)))
        return out

    def star(self, v: int) -> dict[int, int]:
        return {label: self.find(w) for label, w in self._out[self.find(v)].items()}

    def ambient_vertex(self, v: int) -> int:
        return self._where[self.find(v)]

    @property
    def rank(self) -> int:
        return len(self.edges()) - len(self.vertices()) + 1

    def contains(self, darts: Sequence[int]) -> bool:
        """Membership of a closed word in the folded subgroup."""
        cur = self.find(self.base)
        for d in free_reduce(darts):
            nxt = self._out[cur].get(d)
            if nxt is None:
                return False
            cur = self.find(nxt)
        return cur == self.find(self.base)


def stallings_fold(words: Iterable[Sequence[int]], ambient: MarkedGraph | None = None,
                   base: int = 0) -> FoldedGraph:
    """Fold the wedge of the given closed words; ``rank`` and ``contains`` answer
    rank and membership questions for the subgroup they generate."""
    folded = FoldedGraph(base)
    for w in words:
        if isinstance(w, tuple) or isinstance(w, list):
            folded.add_loop(w, ambient)
        else:
            folded.add_loop(w.darts, ambient)
    return folded


@dataclass(frozen=True)
class Pi1Report:
    passed: bool
    image_rank: int
    expected_rank: int
    message: str


def validate_pi1_bijectivity(f: GraphMap, base: int = 0) -> Pi1Report:
    """Check that f_* is onto pi_1 by folding the images of a free basis.

    The images generate everything exactly when the folded graph is a copy of
    the ambient graph: one folded vertex over each vertex, each with a full star.
    Surjectivity of an endomorphism of a finitely generated free group implies
    it is an isomorphism, so this also certifies a homotopy equivalence.
    """
    g = f.graph
    image_base = f.vertex_image[base]
    images = [f.map_word(loop) for loop in g.free_basis(base)]
    folded = stallings_fold(images, g, image_base)
    expected = g.rank
    over: dict[int, int] = {}
    ok = True
    for v in folded.vertices():
        w = folded.ambient_vertex(v)
        if w in over:
            ok = False
            break
        over[w] = v
        if set(folded.star(v)) != set(g.out_darts(w)):
            ok = False
            break
    ok = ok and len(over) == len(g.vertices)
    rank = folded.rank
    if ok:
        message = "images of a free basis generate pi_1"
    elif rank < expected:
        message = f"image has rank {rank} < {expected}; not a homotopy equivalence"
    else:
        message = "images of a free basis generate a proper subgroup"
    return Pi1Report(ok, rank, expected, message)
