import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import image, reduce_tokens
from freebycyclic import kernels, load_fixture
from freebycyclic._accel import python_version
from freebycyclic.fixtures import MAP_FIXTURES


def search(kernel, f, v, max_len, prune=True):
    img_flat, img_off, term, out_off, out_darts = f.kernel_arrays
    rec = np.empty(1 << 16, np.int64)
    rec_len = np.empty(1 << 12, np.int64)
    found, used, nodes = kernel(v, max_len, prune, out_off, out_darts, term, img_flat, img_off,
                                rec, rec_len)
    return found, used, nodes, rec[:used].tolist(), rec_len[:found].tolist()


@pytest.mark.parametrize("name", MAP_FIXTURES)
def test_search_compiled_matches_interpreted(name):
    f = load_fixture(name)
    slow = python_version(kernels.nielsen_loops)
    for v in range(len(f.graph.vertices)):
        for prune in (True, False):
            assert search(kernels.nielsen_loops, f, v, 5, prune) == search(slow, f, v, 5, prune)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=5), max_size=30))
def test_tighten_matches_reference(darts):
    arr = np.array(darts, np.int64)
    got = kernels.tighten_darts(arr).tolist()
    assert got == python_version(kernels.tighten_darts)(arr).tolist()
    tokens = [("~" if d & 1 else "") + "abc"[d >> 1] for d in darts]
    expected = reduce_tokens(tokens)
    assert [("~" if d & 1 else "") + "abc"[d >> 1] for d in got] == expected


@pytest.mark.parametrize("name", ["quad.tt", "gersten.tt", "eg.tt"])
def test_map_tight_matches_reference(name):
    f = load_fixture(name)
    g = f.graph
    img_flat, img_off, *_ = f.kernel_arrays
    images = {g.edges[e]: g.format_word(f.images[e]).split() for e in range(len(g.edges))}
    for e in range(len(g.edges)):
        word = np.array([2 * e], np.int64)
        for k in range(1, 5):
            word = kernels.map_tight(word, img_flat, img_off)
            assert g.format_word(tuple(word.tolist())).split() == image(images, [g.edges[e]], k)


def test_iterate_lengths_compiled_matches_interpreted(quad):
    img_flat, img_off, *_ = quad.kernel_arrays
    start = np.array([4], np.int64)
    fast = kernels.iterate_lengths(start, 20, img_flat, img_off).tolist()
    slow = python_version(kernels.iterate_lengths)(start, 20, img_flat, img_off).tolist()
    # c -> c b -> c b b a -> ...: lengths 1 + k + k(k-1)/2
    assert fast == slow == [1 + k + k * (k - 1) // 2 for k in range(1, 21)]


def test_pure_python_fallback_runs():
    env = dict(os.environ, FREEBYCYCLIC_DISABLE_NUMBA="1")
    code = ("from freebycyclic._accel import USING_NUMBA\n"
            "from freebycyclic import load_fixture, decide, oracle_fix_rank\n"
            "assert not USING_NUMBA\n"
            "f = load_fixture('gersten.tt')\n"
            "print(decide(f).summary(), oracle_fix_rank(f, 'x', 6))\n")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "HHG: no (linear growth) 3"
