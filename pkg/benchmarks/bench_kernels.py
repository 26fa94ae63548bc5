"""Compare the compiled and pure-Python partial-sum kernels.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Each kernel
is timed on the same arguments in both backends and the results are
checked for agreement before the timings are reported.
"""
from __future__ import annotations

import argparse
import math
import sys
import timeit

from pkspecial import _pykernels

try:
    from pkspecial import _kernels
except ImportError:
    _kernels = None

CASES = (
    ("paired_partial", (1.0, 0.7, 1.5, 0, 100_000)),
    ("hurwitz_partial", (3.0, 0.7, 1.5, 0, 100_000)),
    ("digamma_partial", (0.7, 1.5, 1, 100_001)),
    ("weierstrass_log_partial", (0.7, 1, 100_001)),
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions")
    ns = parser.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'kernel':<26} {'python [ms]':>12} {'cython [ms]':>12} {'speedup':>8} {'rel diff':>10}")
    for name, args in CASES:
        py_fn, cy_fn = getattr(_pykernels, name), getattr(_kernels, name)
        py_val, cy_val = py_fn(*args), cy_fn(*args)
        diff = abs(py_val - cy_val) / max(abs(cy_val), 1e-300)
        if not (math.isfinite(diff) and diff < 1e-12):
            print(f"{name}: backends disagree ({py_val!r} vs {cy_val!r})", file=sys.stderr)
            return 1
        t_py = min(timeit.repeat(lambda: py_fn(*args), number=1, repeat=ns.repeat))
        t_cy = min(timeit.repeat(lambda: cy_fn(*args), number=1, repeat=ns.repeat))
        print(f"{name:<26} {1e3 * t_py:>12.3f} {1e3 * t_cy:>12.3f} "
              f"{t_py / t_cy:>7.1f}x {diff:>10.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
