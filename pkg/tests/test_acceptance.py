"""End-to-end acceptance checks, each with its time budget.

Every check prints one PASS/FAIL line. Caches are cleared before each timed
region; numba compilation happens once in a warm-up fixture and is not
charged to any budget.
"""
import math
import random
import time

import pytest

from oracles import image
from freebycyclic import load_fixture, parse_delta
from freebycyclic.core import torus_commute
from freebycyclic.classify import (EXPONENTIAL, classify_strata, edge_lengths,
                                   no_cancellation_lengths)
from freebycyclic.decompose import build_delta, unbranched
from freebycyclic.fixtures import MAP_FIXTURES, fixture_path
from freebycyclic.nielsen import (_classes, _linear_edges, _vertex_spaces, fix_rank,
                                  oracle_fix_rank)
from freebycyclic.random_maps import random_linear_map, random_rank2_map
from freebycyclic.verdict import _axis_coords, decide, excessive_linearity, restrict_linear

LINEAR_FIXTURES = ["gersten.tt", "notrich1.tt", "notrich2.tt", "rank2.tt", "nested.tt"]


def clear_caches():
    for fn in (classify_strata, _linear_edges, _vertex_spaces, _classes):
        fn.cache_clear()


@pytest.fixture(scope="module", autouse=True)
def warm_up():
    f = load_fixture("gersten.tt")
    decide(f)
    oracle_fix_rank(f, 0, 2)
    edge_lengths(f, 2, 2)


class Check:
    """Collects failures without stopping, then prints and asserts."""

    def __init__(self, capsys, number, title, budget):
        self.capsys = capsys
        self.number, self.title, self.budget = number, title, budget
        self.failures = []

    def expect(self, ok, message):
        if not ok:
            self.failures.append(message)

    def __enter__(self):
        clear_caches()
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if self.elapsed >= self.budget:
            self.failures.append(f"took {self.elapsed:.2f} s, budget {self.budget} s")
        status = "FAIL" if self.failures else "PASS"
        line = f"[{status}] criterion {self.number}: {self.title} ({self.elapsed:.2f} s " \
               f"/ {self.budget} s)"
        if self.failures:
            line += " -- " + "; ".join(self.failures[:3])
        with self.capsys.disabled():
            print("\n" + line)
        return False

    def finish(self):
        assert not self.failures, self.failures


@pytest.fixture
def check(capsys):
    return lambda number, title, budget: Check(capsys, number, title, budget)


def test_criterion_01_gersten_excessive(check):
    with check(1, "Gersten map has an excessive class and is not HHG", 1.0) as c:
        f = load_fixture("gersten.tt")
        v = decide(f)
        w = v.excessive
        c.expect(w is not None, "no excessive witness")
        if w is not None:
            c.expect(w.to_json() == {"axis": "a", "E": ["b", "c"], "T": ["x"]}, w.to_json())
            c.expect(w.count == 3, f"count {w.count}")
        c.expect(v.unbranched is False and v.hhg is False, "verdict")
    c.finish()


def test_criterion_02_quad(check):
    with check(2, "quadratic map: degrees (0,1,2), linear part {a,b}, HHG", 1.0) as c:
        f = load_fixture("quad.tt")
        c.expect(classify_strata(f).degrees == (0, 1, 2), classify_strata(f).degrees)
        parts = [[f.graph.edges[e] for e in es] for es, _ in restrict_linear(f)]
        c.expect(parts == [["a", "b"]], parts)
        c.expect(excessive_linearity(f) is None, "unexpected excessive class")
        c.expect(decide(f).hhg, "not HHG")
    c.finish()


def test_criterion_03_notrich1(check):
    with check(3, "not-rich v1: Delta has 1 black, 2 white, 2 edges; HHG", 1.0) as c:
        f = load_fixture("notrich1.tt")
        d = build_delta(f)
        shape = (len(d.blacks), len(d.whites), len(d.edges))
        c.expect(shape == (1, 2, 2), shape)
        c.expect(decide(f).hhg, "not HHG")
    c.finish()


def test_criterion_04_notrich2(check):
    with check(4, "not-rich v2: one more white vertex, black valence 3; not HHG", 1.0) as c:
        d1 = build_delta(load_fixture("notrich1.tt"))
        f = load_fixture("notrich2.tt")
        d2 = build_delta(f)
        c.expect(len(d2.whites) == len(d1.whites) + 1, (len(d1.whites), len(d2.whites)))
        c.expect([d2.valence(b.id) for b in d2.blacks] == [3], "black valence")
        c.expect(not decide(f).hhg, "HHG")
    c.finish()


def test_criterion_05_rank_two(check):
    with check(5, "100 random rank-2 rose maps are all HHG", 10.0) as c:
        rng = random.Random(20)
        for i in range(100):
            f = random_rank2_map(rng, shapes=("rose",))
            c.expect(decide(f).hhg, f"map {i} with shortcut")
            c.expect(decide(f, rank_shortcut=False).hhg, f"map {i} full analysis:\n{f.to_text()}")
    c.finish()


def test_criterion_06_oracle(check):
    with check(6, "Fix ranks equal folded ranks of all Nielsen loops of length <= 12", 60.0) as c:
        for name in MAP_FIXTURES:
            f = load_fixture(name)
            for v in range(len(f.graph.vertices)):
                expected, got = fix_rank(f, v), oracle_fix_rank(f, v, 12)
                c.expect(expected == got, f"{name} {f.graph.vertices[v]}: {expected} vs {got}")
    c.finish()


def test_criterion_07_two_paths(check):
    with check(7, "excessive linearity absent iff every black vertex has valence 2", 60.0) as c:
        maps = [(name, load_fixture(name)) for name in LINEAR_FIXTURES]
        rng = random.Random(70)
        maps += [(f"random {i}", random_linear_map(rng, max_rank=5)) for i in range(50)]
        for label, f in maps:
            for _, sub in restrict_linear(f):
                absent = excessive_linearity(sub) is None
                c.expect(absent == unbranched(build_delta(sub)), label)
    c.finish()


def test_criterion_08_power_invariance(check):
    with check(8, "decide(f) = decide(f^2) = decide(f^3) on every fixture", 10.0) as c:
        for name in MAP_FIXTURES:
            f = load_fixture(name)
            keys = [decide(f.power(m)).key() for m in (1, 2, 3)]
            c.expect(keys[0] == keys[1] == keys[2], f"{name}: {keys}")
    c.finish()


def test_criterion_09_gersten_witness(check):
    with check(9, "Gersten witness blocks commute; <a, t a^2> is a Z^2 in all three", 1.0) as c:
        f = load_fixture("gersten.tt")
        w = decide(f).witness
        c.expect(len(w.blocks) == 3, "block count")
        for b in w.blocks:
            for x in b.free_part:
                c.expect(torus_commute(b.center, x, f), f"block {b.source}")
        p, q = w.triple_intersection
        c.expect(torus_commute(p, q, f), "pair does not commute")
        c.expect(_axis_coords(p, w.axis_word) == (1, 0), "first element is not a")
        c.expect(_axis_coords(q, w.axis_word) == (2, 1), "second element is not t a^2")
        for b in w.blocks:
            c.expect(b.contains(p, f) and b.contains(q, f), f"block {b.source} misses the pair")
    c.finish()


def test_criterion_10_delta_direct(check):
    with check(10, "cat(0) non-HHG Delta encoding is branched", 1.0) as c:
        d = parse_delta(fixture_path("cat0nonhhg.delta").read_text(encoding="utf-8"))
        c.expect(unbranched(d) is False, "reported unbranched")
    c.finish()


def _degree_bounds_hold(lengths, d):
    """n_k / k^d stays within fixed positive bounds and n_12 / n_6 is close to 2^d."""
    ratios = [n / k ** d for k, n in enumerate(lengths, 1)]
    if min(ratios) <= 0 or max(ratios) / min(ratios) > 2 * (d + 1) ** 2:
        return False
    return abs(math.log2(lengths[11] / lengths[5]) - d) < 0.5


def test_criterion_11_growth(check):
    with check(11, "no-cancellation identity and Theta(k^d) growth up to k = 12", 5.0) as c:
        for name in MAP_FIXTURES:
            f = load_fixture(name)
            g = f.graph
            images = {g.edges[e]: g.format_word(f.images[e]).split() for e in range(len(g.edges))}
            growth = classify_strata(f)
            eg_edges = {e for s in growth.eg_strata for e in s}
            for e, d in enumerate(growth.degrees):
                if e in eg_edges or d == EXPONENTIAL:
                    continue
                dart = f.preferred_darts[e]
                lengths = edge_lengths(f, dart, 12)
                c.expect(lengths == no_cancellation_lengths(f, dart, 12), f"{name} {g.edges[e]}")
                reference = [len(image(images, [g.dart_name(dart)], k)) for k in range(1, 13)]
                c.expect(lengths == reference, f"{name} {g.edges[e]}: reference lengths")
                c.expect(_degree_bounds_hold(lengths, d), f"{name} {g.edges[e]}: {lengths}")
    c.finish()
