#!/usr/bin/env python3
"""Time the Nielsen-loop search and edge iteration, compiled vs interpreted.

The interpreted timings call the same kernel source through ``py_func`` and
use shorter search lengths, since they are several hundred times slower.
Prints a JSON report.
"""
import argparse
import json
import time

import numpy as np

from freebycyclic import kernels, load_fixture
from freebycyclic._accel import USING_NUMBA, python_version


def best_of(fn, runs):
    times = []
    result = None
    for _ in range(runs):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def search(kernel, f, max_len):
    img_flat, img_off, term, out_off, out_darts = f.kernel_arrays
    rec = np.empty(1 << 16, np.int64)
    rec_len = np.empty(1 << 12, np.int64)
    return kernel(0, max_len, True, out_off, out_darts, term, img_flat, img_off, rec, rec_len)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fixture", default="gersten.tt")
    parser.add_argument("--lengths", type=int, nargs="+", default=[6, 7, 8])
    parser.add_argument("--runs", type=int, default=3)
    parser.add_argument("--iterations", type=int, default=200)
    args = parser.parse_args()

    f = load_fixture(args.fixture)
    report = {"fixture": args.fixture, "numba": USING_NUMBA, "search": [], "iterate": {}}
    compiled = kernels.nielsen_loops
    interpreted = python_version(kernels.nielsen_loops)
    search(compiled, f, 2)  # compile outside the timed region
    for n in args.lengths:
        t_fast, (found, _, nodes) = best_of(lambda: search(compiled, f, n), args.runs)
        t_slow, (found_slow, _, nodes_slow) = best_of(lambda: search(interpreted, f, n), 1)
        assert (found, nodes) == (found_slow, nodes_slow)
        report["search"].append({"max_len": n, "nodes": int(nodes), "loops": int(found),
                                 "compiled_s": t_fast, "interpreted_s": t_slow,
                                 "speedup": t_slow / t_fast if t_fast else None})

    img_flat, img_off, *_ = f.kernel_arrays
    start = np.array([2 * (len(f.graph.edges) - 1)], np.int64)
    kernels.iterate_lengths(start, 2, img_flat, img_off)
    t_fast, a = best_of(lambda: kernels.iterate_lengths(start, args.iterations, img_flat, img_off),
                        args.runs)
    slow = python_version(kernels.iterate_lengths)
    t_slow, b = best_of(lambda: slow(start, args.iterations, img_flat, img_off), 1)
    assert (a == b).all()
    report["iterate"] = {"iterations": args.iterations, "final_length": int(a[-1]),
                         "compiled_s": t_fast, "interpreted_s": t_slow}
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
