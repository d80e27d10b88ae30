"""Time the compiled kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--n 4] [--repeat 3]
"""
import argparse
import time

import numpy as np

from motzkin import _pykernels
from motzkin._backend import compiled
from motzkin.cells import gram_matrix
from motzkin.diagram import monoid_table


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        print("compiled kernels are not built; nothing to compare")
        return
    t = monoid_table(args.n)
    g = gram_matrix(min(args.n + 2, 7), 1).matrix.to_array()
    cases = [
        ("product_table", lambda k: k.product_table(t.links, t.links, t.n, t.code_index, t.offsets, t.sizes)),
        ("idempotent_mask", lambda k: k.idempotent_mask(t.links, t.n)),
        ("rank_mod_p", lambda k: k.rank_mod_p(g, 3)),
    ]
    print(f"n={args.n}, |Mo_n|={len(t.elements)}, gram {g.shape[0]}x{g.shape[1]}")
    print(f"{'kernel':<16} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in cases:
        tp, a = best_of(lambda: fn(_pykernels), args.repeat)
        tc, b = best_of(lambda: fn(compiled), args.repeat)
        assert np.array_equal(np.asarray(a), np.asarray(b)), name
        print(f"{name:<16} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
