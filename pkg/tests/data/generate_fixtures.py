"""Regenerate ``fixtures.json`` from mpmath oracles.

Every value comes from a route independent of the package: digamma and
Hurwitz zeta for the beta and polygamma families, the modified Bessel
function ``K`` for the regularized gammas (``integral t**(x-1) exp(-t - c/t)
dt = 2 c**(x/2) K_x(2 sqrt c)``), and mpmath quadrature for the integral
definitions.  Run ``python3 tests/data/generate_fixtures.py`` to rewrite
the file; the tests only read it.
"""
from __future__ import annotations

import itertools
import json
import pathlib

import mpmath as mp

mp.mp.dps = 40


def pk_gamma_integral(x, p, k):
    return mp.quad(lambda t: t ** (x - 1) * mp.exp(-t ** k / p), [0, 1, mp.inf])


def pk_digamma(x, p, k):
    return mp.log(p) / k + mp.digamma(x / k) / k


def pk_polygamma(n, x, p, k):
    return (-1) ** (n + 1) * mp.factorial(n) * k ** -(n + 1) * mp.zeta(n + 1, x / k)


def pk_beta_deriv(n, x, p, k):
    y = mp.mpf(x) / k
    classic = (mp.psi(n, (y + 1) / 2) - mp.psi(n, y / 2)) / 2 ** (n + 1)
    return p / k * classic / mp.mpf(k) ** n


def cz(x, c):
    if c == 0:
        return mp.gamma(x)
    return 2 * mp.mpf(c) ** (x / 2) * mp.besselk(x, 2 * mp.sqrt(c))


def ext_cz(x, c, p, k):
    return mp.mpf(p) ** (x / k) / k * cz(x / k, c)


def v_ext(z, b, v):
    return mp.mpf(v) ** (z / v - 1) * cz(z / v, mp.mpf(b) ** v / v ** 2)


def deriv(f, x, n):
    return mp.diff(f, mp.mpf(x), n) if n else f(mp.mpf(x))


def main() -> None:
    out: dict[str, list] = {}
    out["pk_gamma"] = [[x, p, k, float(pk_gamma_integral(mp.mpf(x), p, k))]
                       for x, p, k in [(2, 2, 1), (1, 1, 1), (2, 2, 2), (0.3, 0.5, 3),
                                       (2.5, 3, 0.5), (7, 2, 3), (1.7, 1.3, 2.2)]]
    out["pk_digamma"] = [[x, p, k, float(pk_digamma(mp.mpf(x), mp.mpf(p), k))]
                         for x, p, k in [(1, 1, 1), (1, float(mp.e), 1), (0.7, 1.5, 2),
                                         (3, 5, 2), (10, 0.5, 0.5)]]
    out["pk_polygamma"] = [[n, x, p, k, float(pk_polygamma(n, mp.mpf(x), p, k))]
                           for n, x, p, k in [(1, 1, 1, 1), (1, 1, 7, 1), (2, 1, 1, 1),
                                              (1, 0.3, 2, 0.5), (3, 2.5, 1, 3), (2, 5, 1, 1.5)]]
    out["pk_beta_deriv"] = [[n, x, p, k, float(pk_beta_deriv(n, x, p, k))]
                            for n, x, (p, k) in itertools.product(
                                (0, 1, 2, 3), (0.5, 1, 2.5),
                                ((1, 1), (2, 0.5), (0.5, 3), (2, 2)))]
    out["cz_gamma_deriv"] = [[n, x, c, float(deriv(lambda s: cz(s, c), x, n))]
                             for n, x, c in itertools.product((0, 1, 2), (0.5, 1.5, 3),
                                                              (0, 0.5, 2))]
    out["cz_gamma_negative"] = [[x, c, float(cz(mp.mpf(x), c))]
                                for x, c in [(-0.5, 1), (-1.5, 2), (-2, 0.5)]]
    ext_points = [(1, 1, 2, 2), (0.5, 0.5, 1.5, 0.7), (2.5, 2, 0.5, 2), (3, 1, 1, 1)]
    out["ext_cz_gamma_deriv"] = [[n, x, c, p, k,
                                  float(deriv(lambda s: ext_cz(s, c, p, k), x, n))]
                                 for n, (x, c, p, k) in itertools.product((0, 1, 2), ext_points)]
    v_points = [(4, 0, 1), (2, 0, 2), (0.5, 1, 1), (1.5, 0.5, 2), (3, 1, 0.5)]
    out["v_ext_cz_gamma_deriv"] = [[N, z, b, v, float(deriv(lambda s: v_ext(s, b, v), z, N))]
                                   for N, (z, b, v) in itertools.product((0, 1, 2), v_points)]
    path = pathlib.Path(__file__).with_name("fixtures.json")
    # one row per line keeps diffs readable
    blocks = [f' "{key}": [\n' + ",\n".join("  " + json.dumps(row) for row in rows) + "\n ]"
              for key, rows in out.items()]
    path.write_text("{\n" + ",\n".join(blocks) + "\n}\n")


if __name__ == "__main__":
    main()
