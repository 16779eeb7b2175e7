#!/usr/bin/env python3
"""Benchmark the compiled modular-rank kernel against the numpy fallback.

The workload is the matrix family that dominates real runs: graded
multiplication maps of the partial derivatives of a 9-line arrangement
(the most expensive named example) at increasing degrees, plus a square
random matrix for scale.  Run after `pip install -e .`:

    python benchmarks/bench_kernels.py
"""

import random
import time

import numpy as np

from arrinv import _modular_py
from arrinv.graded import multiplication_rows, partials
from arrinv.lattice import NamedLattice, realize
from arrinv.ratlin import sample_primes

try:
    from arrinv import _speedups
except ImportError:
    _speedups = None


def time_backend(impl, base, p, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        a = (base % p).astype(np.int64)
        t0 = time.perf_counter()
        r = impl.modular_rank(a, p)
        best = min(best, time.perf_counter() - t0)
    return r, best


def main():
    p = sample_primes(1)[0]
    f = realize(NamedLattice("ziegler_A")).polynomial().primitive()
    fx, fy, fz = partials(f)

    cases = []
    for k in (14, 18, 23):
        rows, ncols = multiplication_rows([fx, fy, fz], k)
        cases.append((f"jacobian multiplication, degree {k} ({len(rows)}x{ncols})", rows))
    rng = random.Random(1)
    cases.append(
        ("random dense 400x400", [[rng.randrange(-999, 1000) for _ in range(400)] for _ in range(400)])
    )

    print(f"prime p = {p}")
    header = f"{'matrix':<48}{'python':>12}{'compiled':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, rows in cases:
        base = np.array(rows, dtype=np.int64)
        r_py, t_py = time_backend(_modular_py, base, p)
        if _speedups is None:
            print(f"{name:<48}{t_py * 1e3:>10.1f}ms{'n/a':>12}{'':>9}")
            continue
        r_c, t_c = time_backend(_speedups, base, p)
        assert r_py == r_c, (name, r_py, r_c)
        print(
            f"{name:<48}{t_py * 1e3:>10.1f}ms{t_c * 1e3:>10.1f}ms{t_py / t_c:>8.1f}x"
        )


if __name__ == "__main__":
    main()
