"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``."""
from __future__ import annotations

import math


def _neumaier_sum(terms) -> float:
    acc = 0.0
    comp = 0.0
    for term in terms:
        t = acc + term
        if abs(acc) >= abs(term):
            comp += (acc - t) + term
        else:
            comp += (term - t) + acc
        acc = t
    return acc + comp


def paired_partial(s: float, x: float, k: float, start: int, stop: int) -> float:
    """Sum of (2mk+x)^-s - (2mk+x+k)^-s over start <= m < stop."""
    def terms():
        for m in range(start, stop):
            a = 2.0 * m * k + x
            yield math.pow(a, -s) * (-math.expm1(-s * math.log1p(k / a)))
    return _neumaier_sum(terms())


def hurwitz_partial(s: float, x: float, k: float, start: int, stop: int) -> float:
    """Sum of (mk+x)^-s over start <= m < stop."""
    return _neumaier_sum(math.pow(m * k + x, -s) for m in range(start, stop))


def digamma_partial(x: float, k: float, start: int, stop: int) -> float:
    """Sum of x / (nk (nk+x)) over start <= n < stop, start >= 1."""
    def terms():
        for n in range(start, stop):
            nk = n * k
            yield x / (nk * (nk + x))
    return _neumaier_sum(terms())


def weierstrass_log_partial(s: float, start: int, stop: int) -> float:
    """Sum of log1p(s/n) - s/n over start <= n < stop, start >= 1."""
    def terms():
        for n in range(start, stop):
            u = s / n
            yield math.log1p(u) - u
    return _neumaier_sum(terms())
