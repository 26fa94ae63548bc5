"""Default parameter lists shared by the checks."""
from __future__ import annotations

import itertools
import math

from .core import CheckContext

X_VALUES = (0.3, 0.7, 1.0, 2.0, 5.0)
PK_VALUES = (0.5, 1.0, 2.0, 3.0)
C_VALUES = (0.5, 1.0, 2.0, 3.0)
ORDERS = (0, 1, 2, 3)
FRACTIONS = (0.25, 0.5, 0.75)
REPRESENTATION_X = (0.2, 0.5, 1.0, 2.0, 5.0)


def pk_pairs(ctx: CheckContext) -> list[tuple[float, float]]:
    return list(itertools.product(ctx.grid.get("p", PK_VALUES), ctx.grid.get("k", PK_VALUES)))


def cz_triples(ctx: CheckContext, c_default=C_VALUES) -> list[tuple[float, float, float]]:
    return list(itertools.product(ctx.grid.get("c", c_default),
                                  ctx.grid.get("p", PK_VALUES), ctx.grid.get("k", PK_VALUES)))


def ordered_pairs(values) -> list[tuple[float, float]]:
    """All ``(x, y)`` with ``x <= y`` drawn from ``values``."""
    vals = sorted(values)
    return [(vals[i], vals[j]) for i in range(len(vals)) for j in range(i, len(vals))]


def ordered_triples(values) -> list[tuple[float, float, float]]:
    """All strictly increasing triples drawn from ``values``."""
    return list(itertools.combinations(sorted(set(values)), 3))


def loglog_chord_gap(xs, hs) -> float:
    """Gap of the middle log-value below the chord through the outer two
    (in ``log x`` coordinates); non-negative exactly when the 3x3
    determinant is non-negative."""
    l1, l2, l3 = (math.log(x) for x in xs)
    h1, h2, h3 = hs
    return ((l2 - l1) * (h3 - h1) - (l3 - l1) * (h2 - h1)) / (l3 - l1)


MAJORIZATION_FAMILIES = (
    ((4.0, 2.0, 1.0), (3.0, 2.5, 16.0 / 15.0)),
    ((5.0, 2.0, 1.0), (4.0, 2.5, 1.0)),
    ((2.0, 1.0, 0.5), (1.6, 1.25, 0.5)),
    ((3.0, 1.0, 0.3), (2.0, 1.5, 0.3)),
)


def majorizes(xs, ys) -> bool:
    """Multiplicative weak majorization of decreasing families: every partial
    product of ``xs`` dominates the matching partial product of ``ys``."""
    if list(xs) != sorted(xs, reverse=True) or list(ys) != sorted(ys, reverse=True):
        return False
    px = py = 1.0
    for a, b in zip(xs, ys):
        px *= a
        py *= b
        if px < py * (1 - 1e-15):
            return False
    return True
