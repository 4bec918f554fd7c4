"""Compare the numba and numpy paths of the two hot kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Facet scan: all n-subsets of a random point cloud (n = 3, 4).
Staircase: colength of I^m for a few corpus-style ideals.
"""

import argparse
import os
import random
import time

import numpy as np

from toriclct import _facets, oracle
from toriclct.newton import SingularityInput


def best_of(fn, repeat):
    fn()  # warm-up (numba compiles here)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def facet_case(n, count, seed):
    rng = random.Random(seed)
    pts = {tuple(rng.randint(0, 12) for _ in range(n)) for _ in range(count)}
    pts |= {tuple(20 if k == j else 0 for k in range(n)) for j in range(n)}
    return np.array(sorted(pts), dtype=np.int64)


def run(repeat):
    rows = []
    for n, count in [(3, 40), (3, 80), (4, 30)]:
        P = facet_case(n, count, seed=n * count)
        a = best_of(lambda: _facets.compact_facets_numpy(P), repeat)
        b = best_of(lambda: _facets.compact_facets_numba(P), repeat)
        assert np.array_equal(_facets.compact_facets_numpy(P), _facets.compact_facets_numba(P))
        rows.append((f"facets n={n} pts={len(P)}", a, b))

    ideals = [SingularityInput(2, ((5, 0), (2, 3), (0, 7))),
              SingularityInput(3, ((1, 0, 0), (0, 2, 0), (0, 0, 3))),
              SingularityInput(3, ((4, 0, 0), (1, 1, 1), (0, 3, 0), (0, 0, 5)))]
    for data in ideals:
        for m in (24, 48):
            timings = {}
            values = {}
            for name in ("numpy", "numba"):
                os.environ["TORICLCT_BACKEND"] = name
                timings[name] = best_of(lambda: oracle.colength(data, m), repeat)
                values[name] = oracle.colength(data, m)
            assert values["numpy"] == values["numba"]
            gens = " ".join("".join(map(str, g)) for g in data.generators)
            rows.append((f"staircase n={data.n} m={m} [{gens}]", timings["numpy"], timings["numba"]))
    os.environ.pop("TORICLCT_BACKEND", None)
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rows = run(args.repeat)
    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'numpy ms':>10}  {'numba ms':>10}  {'speedup':>8}")
    for name, a, b in rows:
        print(f"{name:<{width}}  {a * 1e3:10.3f}  {b * 1e3:10.3f}  {a / b:8.1f}x")


if __name__ == "__main__":
    main()
