import random

import numpy as np
import pytest

from conftest import rose
from oracles import image
from freebycyclic import (EXPONENTIAL, UnsupportedInputError, classify_strata,
                          compute_filtration, ct_normal_form_check, load_fixture,
                          parse_graph_map, transition_matrix)
from freebycyclic.classify import edge_lengths, is_exponential_stratum, no_cancellation_lengths
from freebycyclic.fixtures import MAP_FIXTURES
from freebycyclic.random_maps import random_linear_map

FIB = {"a": "a b", "b": "a"}


def degrees_by_name(f):
    g = f.graph
    return {g.edges[e]: d for e, d in enumerate(classify_strata(f).degrees)}


def strata_by_name(f):
    g = f.graph
    return [{g.edges[e] for e in s} for s in compute_filtration(f).strata]


def test_filtration_quad(quad):
    assert strata_by_name(quad) == [{"a"}, {"b"}, {"c"}]


def test_filtration_identity():
    f = rose({"a": "a", "b": "b", "c": "c"})
    assert sorted(map(tuple, strata_by_name(f))) == [("a",), ("b",), ("c",)]


def test_filtration_fibonacci_single_stratum():
    assert strata_by_name(rose(FIB)) == [{"a", "b"}]


@pytest.mark.parametrize("name", MAP_FIXTURES)
def test_filtration_is_invariant(name):
    f = load_fixture(name)
    filt = compute_filtration(f)
    for stratum, sub in zip(filt.strata, filt.subgraphs):
        for e in stratum:
            assert {d >> 1 for d in f.images[e]} <= sub


def test_transition_matrices():
    f = rose({"a": "a", "b": "b"})
    assert transition_matrix(f, [0]).tolist() == [[1]]
    fib = rose(FIB)
    assert transition_matrix(fib, [0, 1]).tolist() == [[1, 1], [1, 0]]
    g = load_fixture("gersten.tt")
    assert transition_matrix(g, [2]).tolist() == [[1]]


def test_fibonacci_is_exponential():
    f = rose(FIB)
    report = classify_strata(f)
    assert report.degrees == (EXPONENTIAL, EXPONENTIAL)
    assert report.overall == EXPONENTIAL
    m = transition_matrix(f, [0, 1]).astype(float)
    assert max(abs(np.linalg.eigvals(m))) == pytest.approx((1 + 5 ** 0.5) / 2)


def test_exponential_criterion_against_eigenvalues():
    rng = np.random.default_rng(0)
    for _ in range(300):
        n = int(rng.integers(1, 5))
        m = rng.integers(0, 3, size=(n, n))
        # make it irreducible by adding a cyclic permutation
        m = m + np.roll(np.eye(n, dtype=int), 1, axis=1)
        radius = max(abs(np.linalg.eigvals(m.astype(float))))
        assert is_exponential_stratum(m) == (radius > 1 + 1e-9)


def test_degrees_quad(quad):
    assert degrees_by_name(quad) == {"a": 0, "b": 1, "c": 2}
    assert classify_strata(quad).overall == 2


def test_degrees_gersten(gersten):
    assert degrees_by_name(gersten) == {"a": 0, "b": 1, "c": 1}
    assert classify_strata(gersten).overall == 1


def test_degrees_nested_piece_suffix(nested):
    assert degrees_by_name(nested) == {"a": 0, "b": 1, "d": 1}


def test_degrees_suffix_of_linear_edge():
    f = rose({"z": "z", "a": "a z", "b": "b a"})
    assert degrees_by_name(f) == {"z": 0, "a": 1, "b": 2}
    report = ct_normal_form_check(f)
    assert report.ok
    assert [f.graph.edges[r.edge] for r in report.linear] == ["a"]


def test_degrees_cubic():
    f = rose({"a": "a", "b": "b a", "c": "c b", "d": "d c"})
    assert degrees_by_name(f) == {"a": 0, "b": 1, "c": 2, "d": 3}


def test_eg_fixture(eg):
    report = classify_strata(eg)
    assert degrees_by_name(eg) == {"a": EXPONENTIAL, "b": EXPONENTIAL, "z": 0, "m": 1}
    assert [{eg.graph.edges[e] for e in s} for s in report.eg_strata] == [{"a", "b"}]


def test_cancellation_is_rejected():
    # suffix c a ~c is not cyclically reduced: its iterates cancel at the junction
    f = rose({"a": "a", "c": "c", "b": "b c a ~c"})
    with pytest.raises(UnsupportedInputError, match="cancellation"):
        classify_strata(f)


def test_repeated_edge_in_own_image_is_exponential():
    f = rose({"a": "a", "b": "b a ~b"})
    assert degrees_by_name(f) == {"a": 0, "b": EXPONENTIAL}


def test_permuted_edges_unsupported():
    f = rose({"a": "b", "b": "a"})
    with pytest.raises(UnsupportedInputError):
        classify_strata(f)


def test_ct_check_gersten(gersten):
    report = ct_normal_form_check(gersten)
    assert report.ok and not report.diagnostics
    got = [(gersten.graph.edges[r.edge], gersten.graph.format_word(r.root), r.exponent)
           for r in report.linear]
    assert got == [("b", "a", 1), ("c", "a", 2)]


def test_ct_check_identity():
    report = ct_normal_form_check(rose({"a": "a", "b": "b"}))
    assert report.ok and report.linear == ()


def test_ct_check_moved_vertex():
    text = "vertex x\nvertex y\nedge a x x\nedge e x y\nedge f y x\n" \
           "map a = a\nmap e = a\nmap f = ~a\n"
    report = ct_normal_form_check(parse_graph_map(text))
    assert not report.ok
    assert report.violations[0].axiom == "periodicity"


def test_ct_check_linear_suffix_not_a_cycle():
    f = rose({"a": "a", "c": "c", "b": "b c a ~c"})
    report = ct_normal_form_check(f)
    assert not report.ok
    assert report.violations[0].axiom == "complete splitting"


def test_ct_check_edge_between_vertices():
    text = "vertex x\nvertex y\nedge a x x\nedge z y y\nedge e x y\n" \
           "map a = a\nmap z = z\nmap e = e z\n"
    assert ct_normal_form_check(parse_graph_map(text)).ok


def test_ct_check_equal_exponents_is_violation():
    f = rose({"a": "a", "b": "b a", "c": "c a"})
    report = ct_normal_form_check(f)
    assert not report.ok
    assert "same exponent" in report.violations[0].message


def test_ct_check_rotated_roots_note():
    f = rose({"a": "a", "b": "b", "c": "c a b", "d": "d b a b a"})
    report = ct_normal_form_check(f)
    assert report.ok
    assert any("normalised" in n.message for n in report.notes)


def test_ct_check_eg_flagged(eg):
    report = ct_normal_form_check(eg)
    assert report.ok and report.eg_present
    assert report.notes


# --- growth empirics ----------------------------------------------------------

@pytest.mark.parametrize("name", [n for n in MAP_FIXTURES if n != "eg.tt"])
def test_no_cancellation_identity(name):
    f = load_fixture(name)
    for e, deg in enumerate(classify_strata(f).degrees):
        if deg == 0:
            continue
        d = f.preferred_darts[e]
        assert edge_lengths(f, d, 12) == no_cancellation_lengths(f, d, 12)


def test_growth_matches_oracle_lengths(quad):
    images = {"a": ["a"], "b": ["b", "a"], "c": ["c", "b"]}
    got = edge_lengths(quad, quad.graph.dart("c"), 8)
    assert got == [len(image(images, ["c"], k)) for k in range(1, 9)]


def test_exponential_stratum_doubles():
    for f in (rose(FIB), load_fixture("eg.tt")):
        report = classify_strata(f)
        for stratum in report.eg_strata:
            start = sum(len(f.images[e]) for e in stratum)
            total = start
            words = [f.images[e] for e in stratum]
            for _ in range(4 * max(f.graph.rank, 1)):
                words = [f.map_word(w) for w in words]
                total = sum(len(w) for w in words)
            assert total >= 2 * start


# --- invariance -----------------------------------------------------------------

@pytest.mark.parametrize("name", MAP_FIXTURES)
def test_degrees_invariant_under_relabel_and_flip(name):
    f = load_fixture(name)
    rng = random.Random(name)
    base = degrees_by_name(f)
    for _ in range(5):
        vnames = [v + "_" for v in f.graph.vertices]
        order = list(f.graph.edges)
        flips = [rng.random() < 0.5 for _ in order]
        renamed = {n: "E" + n for n in order}
        h = f.relabel(vnames, [renamed[n] for n in order], flips)
        got = degrees_by_name(h)
        assert {n: got[renamed[n]] for n in order} == base


def test_random_linear_maps_are_linear():
    rng = random.Random(5)
    for _ in range(30):
        f = random_linear_map(rng)
        assert ct_normal_form_check(f).ok
        assert classify_strata(f).overall in (0, 1)
