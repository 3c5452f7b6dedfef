"""Marked graphs, edge paths, graph self-maps and the mapping torus.

Darts are integers: edge ``i`` contributes dart ``2*i`` (declared direction)
and ``2*i + 1`` (its reverse, written ``~NAME``). The total order on darts used
for canonical forms is integer order, i.e. declaration order with each edge
immediately followed by its reverse.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import MalformedPathError, ParseError, UnsupportedInputError


def inv(d: int) -> int:
    return d ^ 1


def inverse_word(darts: Sequence[int]) -> tuple[int, ...]:
    return tuple(d ^ 1 for d in reversed(darts))


def free_reduce(darts: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for d in darts:
        if out and out[-1] == d ^ 1:
            out.pop()
        else:
            out.append(d)
    return tuple(out)


def cyclic_reduce(darts: Sequence[int]) -> tuple[int, ...]:
    w = free_reduce(darts)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == w[j - 1] ^ 1:
        i += 1
        j -= 1
    return w[i:j]


@dataclass(frozen=True)
class MarkedGraph:
    """A finite connected graph with named vertices and oriented edges."""

    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    src: tuple[int, ...]
    dst: tuple[int, ...]

    def __post_init__(self):
        if len(self.edges) != len(self.src) or len(self.edges) != len(self.dst):
            raise ValueError("edge endpoint tuples must match the edge list")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex name")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edge name")
        nv = len(self.vertices)
        if nv == 0:
            raise ValueError("graph has no vertices")
        for s, t in zip(self.src, self.dst):
            if not (0 <= s < nv and 0 <= t < nv):
                raise ValueError("edge endpoint out of range")
        touched = set(self.src) | set(self.dst)
        if nv > 1 and len(touched) != nv:
            isolated = [self.vertices[v] for v in range(nv) if v not in touched]
            raise ValueError(f"isolated vertices: {', '.join(isolated)}")
        if not self._connected():
            raise ValueError("graph is not connected")

    def _connected(self) -> bool:
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for d in self.out_darts(v):
                w = self.term(d)
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    @property
    def n_darts(self) -> int:
        return 2 * len(self.edges)

    @property
    def rank(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def init(self, d: int) -> int:
        return self.dst[d >> 1] if d & 1 else self.src[d >> 1]

    def term(self, d: int) -> int:
        return self.src[d >> 1] if d & 1 else self.dst[d >> 1]

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for d in range(self.n_darts):
            out[self.init(d)].append(d)
        return tuple(tuple(x) for x in out)

    def out_darts(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    @cached_property
    def _vertex_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.vertices)}

    @cached_property
    def _dart_index(self) -> dict[str, int]:
        index = {}
        for i, name in enumerate(self.edges):
            index[name] = 2 * i
            index["~" + name] = 2 * i + 1
        return index

    def vertex(self, name: str) -> int:
        try:
            return self._vertex_index[name]
        except KeyError:
            raise KeyError(f"unknown vertex {name!r}") from None

    def dart(self, token: str) -> int:
        try:
            return self._dart_index[token]
        except KeyError:
            raise KeyError(f"unknown dart {token!r}") from None

    def dart_name(self, d: int) -> str:
        name = self.edges[d >> 1]
        return "~" + name if d & 1 else name

    def format_word(self, darts: Sequence[int], sep: str = " ") -> str:
        return sep.join(self.dart_name(d) for d in darts)

    def parse_word(self, text: str) -> tuple[int, ...]:
        tokens = text.replace(".", " ").replace("·", " ").split()
        return tuple(self.dart(tok) for tok in tokens)

    def path(self, spec, start: int | str | None = None) -> "EdgePath":
        """Build an EdgePath from a string like ``"B A ~B"`` or a dart sequence."""
        darts = self.parse_word(spec) if isinstance(spec, str) else tuple(int(d) for d in spec)
        if isinstance(start, str):
            start = self.vertex(start)
        if start is None:
            if not darts:
                raise MalformedPathError("empty path needs an explicit start vertex")
            start = self.init(darts[0])
        p = EdgePath(darts, start)
        p.check(self)
        return p

    def subgraph(self, edge_ids: Iterable[int]) -> tuple["MarkedGraph", list[int], list[int]]:
        """Subgraph on the given edges, with the vertex and edge index maps back."""
        edge_ids = sorted(set(edge_ids))
        vs = sorted({self.src[e] for e in edge_ids} | {self.dst[e] for e in edge_ids})
        vmap = {v: i for i, v in enumerate(vs)}
        sub = MarkedGraph(
            vertices=tuple(self.vertices[v] for v in vs),
            edges=tuple(self.edges[e] for e in edge_ids),
            src=tuple(vmap[self.src[e]] for e in edge_ids),
            dst=tuple(vmap[self.dst[e]] for e in edge_ids),
        )
        return sub, vs, edge_ids

    def spanning_tree_paths(self, root: int) -> dict[int, tuple[int, ...]]:
        """Tree paths from ``root`` to every vertex (BFS, lowest dart first)."""
        paths = {root: ()}
        queue = [root]
        for v in queue:
            for d in self.out_darts(v):
                w = self.term(d)
                if w not in paths:
                    paths[w] = paths[v] + (d,)
                    queue.append(w)
        return paths

    def free_basis(self, root: int) -> list[tuple[int, ...]]:
        """A free basis of pi_1(G, root): one loop per non-tree edge."""
        tree = self.spanning_tree_paths(root)
        tree_edges = {d >> 1 for p in tree.values() for d in p}
        basis = []
        for e in range(len(self.edges)):
            if e in tree_edges:
                continue
            d = 2 * e
            loop = tree[self.init(d)] + (d,) + inverse_word(tree[self.term(d)])
            basis.append(free_reduce(loop))
        return basis


@dataclass(frozen=True)
class EdgePath:
    """A dart sequence together with its start vertex (needed when empty)."""

    darts: tuple[int, ...]
    start: int

    def __len__(self):
        return len(self.darts)

    def check(self, g: MarkedGraph) -> None:
        v = self.start
        for i, d in enumerate(self.darts):
            if not 0 <= d < g.n_darts:
                raise MalformedPathError(f"dart {d} out of range")
            if g.init(d) != v:
                raise MalformedPathError(
                    f"dart {g.dart_name(d)} at position {i} starts at "
                    f"{g.vertices[g.init(d)]}, expected {g.vertices[v]}")
            v = g.term(d)

    def end(self, g: MarkedGraph) -> int:
        return g.term(self.darts[-1]) if self.darts else self.start

    @property
    def reduced(self) -> bool:
        return all(a != b ^ 1 for a, b in zip(self.darts, self.darts[1:]))

    def is_closed(self, g: MarkedGraph) -> bool:
        return self.end(g) == self.start

    def reverse(self, g: MarkedGraph) -> "EdgePath":
        return EdgePath(inverse_word(self.darts), self.end(g))

    def format(self, g: MarkedGraph) -> str:
        return g.format_word(self.darts) if self.darts else f"<{g.vertices[self.start]}>"


def tighten(g: MarkedGraph, p: EdgePath) -> EdgePath:
    p.check(g)
    return EdgePath(free_reduce(p.darts), p.start)


def concat(g: MarkedGraph, p: EdgePath, q: EdgePath) -> EdgePath:
    if p.end(g) != q.start:
        raise MalformedPathError("paths do not compose")
    return EdgePath(p.darts + q.darts, p.start)


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced nonempty closed path, up to rotation."""

    representative: tuple[int, ...]

    def __post_init__(self):
        w = self.representative
        if not w:
            raise ValueError("cyclic word must be nonempty")
        if cyclic_reduce(w) != tuple(w):
            raise ValueError("cyclic word must be cyclically reduced")

    @classmethod
    def from_loop(cls, g: MarkedGraph, darts: Sequence[int]) -> "CyclicWord":
        darts = tuple(darts)
        if not darts or g.term(darts[-1]) != g.init(darts[0]):
            raise MalformedPathError("cyclic word needs a nonempty closed path")
        return cls(cyclic_reduce(darts))

    def rotations(self) -> list[tuple[int, ...]]:
        w = self.representative
        return [w[i:] + w[:i] for i in range(len(w))]

    @cached_property
    def rotation_class(self) -> tuple[int, ...]:
        """Least rotation of the word or of its inverse (axis canonical form)."""
        inverse = CyclicWord(inverse_word(self.representative))
        return min(self.rotations() + inverse.rotations())

    @cached_property
    def oriented_class(self) -> tuple[int, ...]:
        """Least rotation of the word itself (orientation kept)."""
        return min(self.rotations())

    @property
    def canonical_orientation(self) -> int:
        """+1 if the canonical axis runs along this word, -1 if against it."""
        return 1 if self.oriented_class == self.rotation_class else -1

    def same_axis(self, other: "CyclicWord") -> bool:
        return self.rotation_class == other.rotation_class

    @cached_property
    def _root(self) -> tuple["CyclicWord", int]:
        w = self.representative
        n = len(w)
        for p in range(1, n + 1):
            if n % p == 0 and w[:p] * (n // p) == w:
                return CyclicWord(w[:p]), n // p
        raise AssertionError("unreachable")

    @property
    def primitive_root(self) -> "CyclicWord":
        return self._root[0]

    @property
    def exponent(self) -> int:
        return self._root[1]

    def __len__(self):
        return len(self.representative)


def primitive_root(c: CyclicWord) -> tuple[CyclicWord, int]:
    if not c.representative:
        raise ValueError("empty word has no root")
    return c.primitive_root, c.exponent


@dataclass(frozen=True, eq=False)
class GraphMap:
    """A self-map of a marked graph sending vertices to vertices and edges to
    reduced edge paths. ``images[i]`` is the image of dart ``2*i``."""

    graph: MarkedGraph
    images: tuple[tuple[int, ...], ...]
    vertex_image: tuple[int, ...] = field(default=())

    def __post_init__(self):
        g = self.graph
        if len(self.images) != len(g.edges):
            raise ValueError("one image per edge required")
        images = tuple(free_reduce(img) for img in self.images)
        object.__setattr__(self, "images", images)
        vimg: dict[int, int] = {}
        for i, img in enumerate(images):
            name = g.edges[i]
            if not img:
                raise ValueError(f"image of edge {name} tightens to the empty path")
            EdgePath(img, g.init(img[0])).check(g)
            for v, w in ((g.src[i], g.init(img[0])), (g.dst[i], g.term(img[-1]))):
                if vimg.setdefault(v, w) != w:
                    raise ValueError(
                        f"edge {name}: vertex {g.vertices[v]} would map to both "
                        f"{g.vertices[vimg[v]]} and {g.vertices[w]}")
        derived = tuple(vimg.get(v, v) for v in range(len(g.vertices)))
        if self.vertex_image and tuple(self.vertex_image) != derived:
            raise ValueError("vertex_image inconsistent with edge images")
        object.__setattr__(self, "vertex_image", derived)

    def __eq__(self, other):
        if not isinstance(other, GraphMap):
            return NotImplemented
        return self.graph == other.graph and self.images == other.images

    def __hash__(self):
        return hash((self.graph, self.images))

    @classmethod
    def from_words(cls, graph: MarkedGraph, words: dict[str, str]) -> "GraphMap":
        images = tuple(graph.parse_word(words[name]) for name in graph.edges)
        return cls(graph, images)

    @cached_property
    def dart_images(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for img in self.images:
            out.append(img)
            out.append(inverse_word(img))
        return tuple(out)

    def image(self, d: int) -> tuple[int, ...]:
        return self.dart_images[d]

    @property
    def fixes_vertices(self) -> bool:
        return all(w == v for v, w in enumerate(self.vertex_image))

    def is_fixed_edge(self, e: int) -> bool:
        return self.images[e] == (2 * e,)

    @cached_property
    def kernel_arrays(self):
        """CSR image table, dart terminal vertices and vertex stars for kernels."""
        g = self.graph
        lens = [len(img) for img in self.dart_images]
        img_off = np.zeros(g.n_darts + 1, np.int64)
        img_off[1:] = np.cumsum(lens)
        img_flat = np.fromiter((d for img in self.dart_images for d in img), np.int64,
                               count=int(img_off[-1]))
        term = np.array([g.term(d) for d in range(g.n_darts)], np.int64)
        out_off = np.zeros(len(g.vertices) + 1, np.int64)
        out_off[1:] = np.cumsum([len(g.out_darts(v)) for v in range(len(g.vertices))])
        out_darts = np.fromiter((d for v in range(len(g.vertices)) for d in g.out_darts(v)),
                                np.int64, count=int(out_off[-1]))
        return img_flat, img_off, term, out_off, out_darts

    def map_word(self, darts: Sequence[int]) -> tuple[int, ...]:
        out: list[int] = []
        for d in darts:
            for e in self.dart_images[d]:
                if out and out[-1] == e ^ 1:
                    out.pop()
                else:
                    out.append(e)
        return tuple(out)

    def map_word_raw(self, darts: Sequence[int]) -> tuple[int, ...]:
        return tuple(e for d in darts for e in self.dart_images[d])

    def map_power(self, darts: Sequence[int], k: int) -> tuple[int, ...]:
        """[f^k(p)]; negative k uses the inverse map (NEG normal form only)."""
        if k < 0:
            return self.inverse.map_power(darts, -k)
        w = free_reduce(darts)
        for _ in range(k):
            w = self.map_word(w)
        return w

    def compose(self, other: "GraphMap") -> "GraphMap":
        """self ∘ other."""
        if self.graph != other.graph:
            raise ValueError("maps live on different graphs")
        return GraphMap(self.graph, tuple(self.map_word(img) for img in other.images))

    def power(self, m: int) -> "GraphMap":
        if m < 1:
            raise ValueError("power must be >= 1")
        result = self
        for _ in range(m - 1):
            result = self.compose(result)
        return result

    def relabel(self, vertex_names: Sequence[str], edge_names: Sequence[str],
                flip: Sequence[bool] = ()) -> "GraphMap":
        """Rename vertices/edges and optionally reverse edge orientations."""
        g = self.graph
        flip = tuple(flip) or (False,) * len(g.edges)
        src = tuple(g.dst[i] if flip[i] else g.src[i] for i in range(len(g.edges)))
        dst = tuple(g.src[i] if flip[i] else g.dst[i] for i in range(len(g.edges)))
        h = MarkedGraph(tuple(vertex_names), tuple(edge_names), src, dst)

        def conv(d):
            return d ^ 1 if flip[d >> 1] else d

        images = tuple(tuple(conv(d) for d in self.image(conv(2 * i)))
                       for i in range(len(g.edges)))
        return GraphMap(h, images)

    def restrict(self, edge_ids: Iterable[int]) -> tuple["GraphMap", list[int], list[int]]:
        """Restriction to an invariant subgraph; returns (map, vertex map, edge map)."""
        sub, vs, es = self.graph.subgraph(edge_ids)
        emap = {e: i for i, e in enumerate(es)}
        images = []
        for e in es:
            img = []
            for d in self.images[e]:
                if (d >> 1) not in emap:
                    raise ValueError(f"subgraph not invariant: image of {self.graph.edges[e]} "
                                     f"leaves it")
                img.append(2 * emap[d >> 1] + (d & 1))
            images.append(tuple(img))
        return GraphMap(sub, tuple(images)), vs, es

    @cached_property
    def preferred_darts(self) -> tuple[int | None, ...]:
        """Per edge, the dart d whose image has the form d·u (None if neither)."""
        out = []
        for e in range(len(self.graph.edges)):
            d = 2 * e
            if self.image(d)[0] == d:
                out.append(d)
            elif self.image(d ^ 1)[0] == d ^ 1:
                out.append(d ^ 1)
            else:
                out.append(None)
        return tuple(out)

    def suffix(self, d: int) -> tuple[int, ...]:
        img = self.image(d)
        if not img or img[0] != d:
            raise UnsupportedInputError(
                f"image of {self.graph.dart_name(d)} does not begin with "
                f"{self.graph.dart_name(d)}")
        return img[1:]

    @cached_property
    def inverse(self) -> "GraphMap":
        """Homotopy inverse for an upper-triangular (NEG normal form) map.

        With f(E) = E·u and u in lower strata, g(E) = E·[g(u)]^-1 satisfies
        f∘g ≃ id edge by edge.
        """
        from .classify import compute_filtration

        g = self.graph
        if not self.fixes_vertices:
            raise UnsupportedInputError("inverse requires a vertex-fixing map")
        inverse_images: dict[int, tuple[int, ...]] = {}

        def apply(darts):
            out: list[int] = []
            for d in darts:
                img = inverse_images[d >> 1]
                for x in (img if not d & 1 else inverse_word(img)):
                    if out and out[-1] == x ^ 1:
                        out.pop()
                    else:
                        out.append(x)
            return tuple(out)

        for stratum in compute_filtration(self).strata:
            if len(stratum) != 1:
                raise UnsupportedInputError(
                    "inverse needs single-edge strata (NEG normal form)")
            e = stratum[0]
            d = self.preferred_darts[e]
            if d is None:
                raise UnsupportedInputError(
                    f"edge {g.edges[e]} is not of the form E·u; cannot invert")
            u = self.suffix(d)
            img_d = free_reduce((d,) + inverse_word(apply(u)))
            inverse_images[e] = img_d if d == 2 * e else inverse_word(img_d)
        return GraphMap(g, tuple(inverse_images[e] for e in range(len(g.edges))))

    def to_text(self) -> str:
        g = self.graph
        lines = [f"vertex {v}" for v in g.vertices]
        lines += [f"edge {name} {g.vertices[g.src[i]]} {g.vertices[g.dst[i]]}"
                  for i, name in enumerate(g.edges)]
        lines += [f"map {name} = {g.format_word(self.images[i])}"
                  for i, name in enumerate(g.edges)]
        return "\n".join(lines) + "\n"


def map_path(f: GraphMap, p: EdgePath) -> EdgePath:
    """f#(p): the tightened image of a path."""
    p.check(f.graph)
    return EdgePath(f.map_word(p.darts), f.vertex_image[p.start])


def iterate_edge(f: GraphMap, d: int, k: int) -> EdgePath:
    """[f^k(E)] for a dart E."""
    if k < 1:
        raise ValueError("k must be positive")
    img_flat, img_off, *_ = f.kernel_arrays
    w = np.array([d], np.int64)
    for _ in range(k):
        w = kernels.map_tight(w, img_flat, img_off)
    start = f.graph.init(d)
    for _ in range(k):
        start = f.vertex_image[start]
    return EdgePath(tuple(int(x) for x in w), start)


# ---------------------------------------------------------------------------
# text format


def _check_name(name: str, lineno: int) -> None:
    if not name or name.startswith("~") or "=" in name or "." in name:
        raise ParseError(f"invalid name {name!r}", lineno)


def parse_graph_map(text: str) -> GraphMap:
    vertices: list[str] = []
    edges: list[tuple[str, str, str, int]] = []
    maps: dict[str, tuple[list[str], int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 2:
                raise ParseError("expected 'vertex NAME'", lineno)
            _check_name(parts[1], lineno)
            if parts[1] in vertices:
                raise ParseError(f"vertex {parts[1]} declared twice", lineno)
            vertices.append(parts[1])
        elif kind == "edge":
            if len(parts) != 4:
                raise ParseError("expected 'edge NAME SRC DST'", lineno)
            name, s, t = parts[1:]
            _check_name(name, lineno)
            for v in (s, t):
                if v not in vertices:
                    raise ParseError(f"edge {name}: vertex {v} not declared before use", lineno)
            if any(e[0] == name for e in edges):
                raise ParseError(f"edge {name} declared twice", lineno)
            edges.append((name, s, t, lineno))
        elif kind == "map":
            if len(parts) < 3 or parts[2] != "=":
                raise ParseError("expected 'map NAME = TOK ...'", lineno)
            if len(parts) == 3:
                raise ParseError(f"empty image for {parts[1]}", lineno)
            if parts[1] in maps:
                raise ParseError(f"edge {parts[1]} mapped twice", lineno)
            maps[parts[1]] = (parts[3:], lineno)
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if not vertices:
        raise ParseError("no vertices declared")
    names = [e[0] for e in edges]
    for name, (_, lineno) in maps.items():
        if name not in names:
            raise ParseError(f"map for undeclared edge {name}", lineno)
    for name, _, _, lineno in edges:
        if name not in maps:
            raise ParseError(f"edge {name} has no map line", lineno)
    try:
        graph = MarkedGraph(
            vertices=tuple(vertices),
            edges=tuple(names),
            src=tuple(vertices.index(e[1]) for e in edges),
            dst=tuple(vertices.index(e[2]) for e in edges),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    images = []
    for name, _, _, _ in edges:
        tokens, lineno = maps[name]
        try:
            darts = tuple(graph.dart(tok) for tok in tokens)
            EdgePath(darts, graph.init(darts[0])).check(graph)
        except (KeyError, MalformedPathError) as exc:
            raise ParseError(f"image of {name}: {exc.args[0]}", lineno) from None
        images.append(darts)
    try:
        return GraphMap(graph, tuple(images))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_graph_map(path) -> GraphMap:
    return parse_graph_map(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# mapping torus F ⋊ Z in normal form u·t^k


@dataclass(frozen=True)
class TorusElement:
    """The element ``word · t^t_exp`` of the mapping torus, with ``word`` a
    reduced loop at vertex ``base``. Conjugation by t acts as f#."""

    word: tuple[int, ...]
    t_exp: int
    base: int

    def format(self, g: MarkedGraph) -> str:
        parts = [g.format_word(self.word)] if self.word else []
        if self.t_exp:
            parts.append("t" if self.t_exp == 1 else f"t^{self.t_exp}")
        return " · ".join(parts) or "1"

    def to_json(self, g: MarkedGraph) -> dict:
        return {"word": g.format_word(self.word), "t": self.t_exp}


def torus_element(f: GraphMap, word, t_exp: int = 0, base=None) -> TorusElement:
    g = f.graph
    darts = g.parse_word(word) if isinstance(word, str) else tuple(word)
    if base is None:
        base = g.init(darts[0]) if darts else 0
    elif isinstance(base, str):
        base = g.vertex(base)
    p = EdgePath(darts, base)
    p.check(g)
    if not p.is_closed(g):
        raise MalformedPathError("torus element word must be a closed path")
    return TorusElement(free_reduce(darts), t_exp, base)


def torus_identity(base: int = 0) -> TorusElement:
    return TorusElement((), 0, base)


def torus_mul(x: TorusElement, y: TorusElement, f: GraphMap) -> TorusElement:
    if x.base != y.base:
        raise ValueError("torus elements have different basepoints")
    if f.vertex_image[x.base] != x.base:
        raise UnsupportedInputError("basepoint is not fixed by the map")
    moved = f.map_power(y.word, x.t_exp)
    return TorusElement(free_reduce(x.word + moved), x.t_exp + y.t_exp, x.base)


def torus_inv(x: TorusElement, f: GraphMap) -> TorusElement:
    return TorusElement(f.map_power(inverse_word(x.word), -x.t_exp), -x.t_exp, x.base)


def torus_pow(x: TorusElement, n: int, f: GraphMap) -> TorusElement:
    if n < 0:
        return torus_pow(torus_inv(x, f), -n, f)
    result = torus_identity(x.base)
    for _ in range(n):
        result = torus_mul(result, x, f)
    return result


def torus_commute(x: TorusElement, y: TorusElement, f: GraphMap) -> bool:
    return torus_mul(x, y, f) == torus_mul(y, x, f)


def lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        if v:
            out = out * abs(v) // math.gcd(out, abs(v))
    return out
