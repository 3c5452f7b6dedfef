"""Random normal-form maps for property tests.

All generators take a ``random.Random`` so runs are reproducible from a seed.
"""
from __future__ import annotations

import random

from .core import CyclicWord, GraphMap, MarkedGraph, cyclic_reduce, free_reduce, inverse_word


def _relabel_randomly(f: GraphMap, rng: random.Random) -> GraphMap:
    g = f.graph
    vnames = [f"v{i}" for i in range(len(g.vertices))]
    enames = [f"e{i}" for i in range(len(g.edges))]
    rng.shuffle(vnames)
    rng.shuffle(enames)
    flip = [rng.random() < 0.5 for _ in g.edges]
    return f.relabel(vnames, enames, flip)


def random_rank2_map(rng: random.Random, shapes=("rose", "barbell")) -> GraphMap:
    """A random normal-form map on a rank-2 graph (rose or barbell)."""
    shape = rng.choice(list(shapes))
    k = rng.choice([0, 0] + [s * m for s in (1, -1) for m in range(1, 5)])
    if shape == "rose":
        g = MarkedGraph(("x",), ("a", "b"), (0, 0), (0, 0))
        u = (0,) * k if k > 0 else (1,) * -k
        if rng.random() < 0.5:
            images = ((0,), (2,) + u)
        else:
            images = ((0,), u + (2,))
    else:
        g = MarkedGraph(("x", "y"), ("A", "B", "C"), (0, 1, 0), (0, 1, 1))
        if rng.random() < 0.5:
            u = (2,) * k if k > 0 else (3,) * -k
            images = ((0,), (2,), (4,) + u)
        else:
            u = (0,) * k if k > 0 else (1,) * -k
            images = ((0,), (2,), u + (4,))
    return _relabel_randomly(GraphMap(g, images), rng)


def _random_cycle(rng, loops_at, v, max_len=3):
    """A root-free cyclically reduced word in the fixed loops at v, or None."""
    loops = loops_at.get(v)
    if not loops:
        return None
    for _ in range(20):
        word = []
        for _ in range(rng.randint(1, max_len)):
            loop = rng.choice(loops)
            word.extend(loop if rng.random() < 0.6 else inverse_word(loop))
        w = free_reduce(word)
        if w and cyclic_reduce(w) == w and CyclicWord(w).exponent == 1:
            return w
    return None


def random_linear_map(rng: random.Random, max_rank: int = 5) -> GraphMap:
    """A random at-most-linear map in normal form on a core graph of rank <= max_rank.

    Fixed loops sit at each vertex; linear edges carry roots that are
    root-free words in fixed loops (first layer) or contain a piece E·w^m·~E
    of a first-layer edge E (second layer). Exponents on a common axis are
    distinct.
    """
    for _ in range(1000):
        f = _attempt_linear(rng, max_rank)
        if f is not None:
            return _relabel_randomly(f, rng)
    raise RuntimeError("could not generate a random linear map")


def _attempt_linear(rng, max_rank):
    nv = rng.randint(1, 3)
    src, dst, images = [], [], []
    loops_at: dict[int, list[tuple[int, ...]]] = {}

    def add_edge(s, t, image_suffix=None):
        e = len(src)
        src.append(s)
        dst.append(t)
        images.append((2 * e,) + (image_suffix or ()))
        return e

    for v in range(nv):
        for _ in range(rng.choice([0, 1, 1, 2]) if v else rng.choice([1, 1, 2])):
            e = add_edge(v, v)
            loops_at.setdefault(v, []).append((2 * e,))
    # exponents used per axis
    used: dict[tuple[int, ...], set[int]] = {}

    def linear_suffix(root):
        axis = CyclicWord(root)
        taken = used.setdefault(axis.rotation_class, set())
        choices = [d for d in (1, -1, 2, -2, 3, -3) if d * axis.canonical_orientation not in taken]
        if not choices:
            return None
        d = rng.choice(choices)
        taken.add(d * axis.canonical_orientation)
        return root * d if d > 0 else inverse_word(root) * -d

    axes_at: dict[int, list[tuple[int, ...]]] = {}
    first_layer = []
    n_linear = rng.randint(1, 4)
    for _ in range(n_linear):
        q = rng.choice([v for v in range(nv) if loops_at.get(v)])
        pool = axes_at.setdefault(q, [])
        if pool and rng.random() < 0.6:
            root = rng.choice(pool)
        else:
            root = _random_cycle(rng, loops_at, q)
            if root is None:
                continue
            pool.append(root)
        suffix = linear_suffix(root)
        if suffix is None:
            continue
        p = rng.randrange(nv)
        e = add_edge(p, q, suffix)
        first_layer.append((e, root))
    if first_layer and rng.random() < 0.4:
        e1, w1 = rng.choice(first_layer)
        p1 = src[e1]
        m = rng.choice([1, -1, 2])
        piece = (2 * e1,) + (w1 * m if m > 0 else inverse_word(w1) * -m) + (2 * e1 + 1,)
        tail = rng.choice(loops_at[p1]) if loops_at.get(p1) else None
        if tail is not None:
            root = piece + tail
            suffix = linear_suffix(root)
            if suffix is not None:
                add_edge(rng.randrange(nv), p1, suffix)
    g = _core_graph(nv, src, dst)
    if g is None or not (1 <= g.rank <= max_rank):
        return None
    return GraphMap(g, tuple(images))


def _core_graph(nv, src, dst):
    valence = [0] * nv
    for s, t in zip(src, dst):
        valence[s] += 1
        valence[t] += 1
    if min(valence) < 2:
        return None
    try:
        return MarkedGraph(tuple(f"v{i}" for i in range(nv)),
                           tuple(f"e{i}" for i in range(len(src))), tuple(src), tuple(dst))
    except ValueError:
        return None
