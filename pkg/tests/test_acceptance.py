"""Acceptance criteria 1-9, each at its stated tolerance.

Every test records its outcome in ``RESULTS``; ``conftest.py`` prints one
line per criterion at the end of the run.  Sub-claims that are false as
stated are kept at full strength and marked ``xfail(strict=True)`` so the
report shows FAIL for the criterion while an unexpected pass would break
the run.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from collections import defaultdict

import numpy as np
import pytest

from pkspecial import (
    BetaRepresentation,
    CZParams,
    MomentOracle,
    PKParams,
    QuadratureSettings,
    VExtParams,
    WeightedExponents,
    check_multinomial_2_2,
    ext_cz_gamma,
    ext_cz_gamma_deriv,
    holder_chain_integral,
    holder_chain_sum,
    pk_beta,
    pk_beta_deriv,
    pk_gamma,
    pk_gamma_quadrature,
    refined_amgm_chain,
    v_ext_cz_gamma,
    v_ext_cz_gamma_deriv,
)
from pkspecial.cli import main
from pkspecial.cz_gamma import check_recurrence_5_2, check_reflection_5_3
from pkspecial.nielsen_beta import delta_n, reflection_check
from pkspecial.numerics import finite_difference
from pkspecial.pk_gamma import check_identity_1_3, check_identity_1_5, check_identity_1_6
from pkspecial.verifier import GridSpec, run_check

RESULTS: dict[int, list[tuple[bool, str]]] = defaultdict(list)

X = (0.3, 0.7, 1.0, 2.0, 5.0)
PK = (0.5, 1.0, 2.0, 3.0)
C = (0.5, 1.0, 2.0, 3.0)
PK_PAIRS = list(itertools.product(PK, PK))
FLAGGED = ("eq_4_13_reflection_dual", "eq_4_37_scaling_probe", "thm_6_1_chain", "eq_5_26_minkowski")


def record(criterion: int, ok: bool, detail: str) -> None:
    RESULTS[criterion].append((bool(ok), detail))
    assert ok, detail


# ---------------------------------------------------------------------------
# shared full-registry runs (criteria 8 and 9)

@pytest.fixture(scope="module")
def full_reports(tmp_path_factory):
    base = tmp_path_factory.mktemp("verify")
    paths = [base / "run1.json", base / "run2.json", base / "loose.json"]
    codes = [main(["verify-all", "--seed", "42", "--format", "json", "--out", str(paths[0])]),
             main(["verify-all", "--seed", "42", "--format", "json", "--out", str(paths[1])]),
             main(["verify-all", "--seed", "42", "--tol", "1e-3", "--format", "json",
                   "--out", str(paths[2])])]
    raw = [p.read_bytes() for p in paths]
    return {"codes": codes, "raw": raw, "data": [json.loads(r) for r in raw]}


# ---------------------------------------------------------------------------
# 1. representation agreement

def test_c1_beta_representations():
    worst = 0.0
    for x, (p, k) in itertools.product((0.2, 0.5, 1.0, 2.0, 5.0), PK_PAIRS):
        values = [pk_beta(x, PKParams(p, k), rep) for rep in BetaRepresentation]
        worst = max(worst, max(values) - min(values))
    record(1, worst <= 1e-9, f"beta representations max abs gap {worst:.2e} (<= 1e-9)")


def test_c1_gamma_closed_form_vs_quadrature():
    worst = 0.0
    for x, (p, k) in itertools.product((0.3, 1.0, 2.5, 7.0), PK_PAIRS):
        closed = pk_gamma(x, PKParams(p, k))
        worst = max(worst, abs(pk_gamma_quadrature(x, PKParams(p, k)).value - closed) / closed)
    record(1, worst <= 1e-8, f"gamma closed form vs quadrature max rel {worst:.2e} (<= 1e-8)")


# ---------------------------------------------------------------------------
# 2. exact identity residuals

def test_c2_identity_residuals():
    r13 = max(check_identity_1_3(PKParams(p, k)) for p, k in PK_PAIRS)
    r15 = max(check_identity_1_5(f * k, PKParams(p, k))
              for (p, k), f in itertools.product(PK_PAIRS, (0.1, 0.25, 0.5, 0.75, 0.9)))
    r16 = max(check_identity_1_6(m, x, PKParams(p, k))
              for m, x, (p, k) in itertools.product((2, 3), X, PK_PAIRS))

    def functional(x, p, k):
        params = PKParams(p, k)
        return abs(pk_beta(x + k, params) + pk_beta(x, params) - p / x) / max(1.0, p / x)

    def recurrence(n, x, p, k):
        params = PKParams(p, k)
        rhs = (-1) ** n * math.factorial(n) * p / x ** (n + 1)
        lhs = pk_beta_deriv(n, x + k, params) + pk_beta_deriv(n, x, params)
        return abs(lhs - rhs) / max(1.0, abs(rhs))

    r412 = max(functional(x, p, k) for x, (p, k) in itertools.product(X, PK_PAIRS))
    r426 = max(recurrence(n, x, p, k) for n, x, (p, k) in itertools.product((1, 2, 3), X, PK_PAIRS))
    r52 = max(check_recurrence_5_2(x, c) for x, c in itertools.product((0.7, 1.0, 2.0, 5.0), C))
    r52 = max(r52, check_recurrence_5_2(2.0, 0.0))
    r53 = max(check_reflection_5_3(x, c) for x, c in itertools.product(X, C))
    limits = [("1.3", r13, 1e-10), ("1.5", r15, 1e-9), ("1.6", r16, 1e-7), ("4.12", r412, 1e-10),
              ("4.26", r426, 1e-9), ("5.2", r52, 1e-8), ("5.3", r53, 1e-8)]
    bad = [f"{name}: {val:.1e} >= {lim:.0e}" for name, val, lim in limits if not val < lim]
    record(2, not bad, "; ".join(bad) or
           "all residuals below limits, max " + ", ".join(f"{n}={v:.1e}" for n, v, _ in limits))


# ---------------------------------------------------------------------------
# 3. multinomial identity

def test_c3_multinomial_random():
    rng = random.Random(42)
    worst = 0.0
    for _ in range(100):
        n, m = rng.randint(2, 4), rng.randint(1, 5)
        nu = [rng.uniform(0.05, 1.0) for _ in range(n)]
        a = [rng.uniform(0.05, 10.0) for _ in range(n)]
        lhs = math.fsum(w * x for w, x in zip(nu, a)) ** m
        worst = max(worst, check_multinomial_2_2(n, m, nu, a) / lhs)
    record(3, worst <= 1e-12, f"100 random instances, max rel residual {worst:.1e} (<= 1e-12)")


# ---------------------------------------------------------------------------
# 4. refined AM-GM

def test_c4_amgm_ordering_and_monotone():
    rng = random.Random(42)
    worst_chain, worst_step = math.inf, math.inf
    for _ in range(200):
        n = rng.randint(2, 5)
        raw = [rng.uniform(0.05, 1.0) for _ in range(n)]
        nu = [w / math.fsum(raw) for w in raw]
        nu[-1] = 1.0 - math.fsum(nu[:-1])
        a = [rng.uniform(0.0, 20.0) for _ in range(n)]
        chain, u = refined_amgm_chain(a, nu, rng.randint(1, 12))
        worst_chain = min(worst_chain, chain.worst_margin)
        worst_step = min([worst_step] + [x - y for x, y in zip(u, u[1:])])
    ok = worst_chain >= -1e-12 and worst_step >= -1e-12
    record(4, ok, f"200 random chains, worst margin {worst_chain:.1e}, "
                  f"worst U step {worst_step:.1e} (>= -1e-12)")


def test_c4_hand_value():
    _, u = refined_amgm_chain([1.0, 4.0], [0.5, 0.5], 2)
    record(4, u[1] == 2.25, f"U_2 = {u[1]!r} (2.25 exactly)")


@pytest.mark.xfail(strict=True, reason="U_m approaches the geometric mean like O(1/m); "
                                       "U_50 - 2 is about 9.6e-3, so the 1e-4 band needs m near 5e3")
def test_c4_u50_near_geometric_mean():
    _, u = refined_amgm_chain([1.0, 4.0], [0.5, 0.5], 50)
    gap = abs(u[-1] - 2.0)
    record(4, gap <= 1e-4, f"U_50 = {u[-1]:.10f}, |U_50 - 2| = {gap:.2e} (claimed <= 1e-4)")


# ---------------------------------------------------------------------------
# 5. refinement chains

def _exponential_oracle(rates, shape):
    # xi_k = exp(-rate_k t), dmu = t**(shape-1) dt on (0, inf)
    def moment(e):
        return math.gamma(shape) / math.fsum(ek * r for ek, r in zip(e, rates)) ** shape \
            if any(e) else math.inf
    return MomentOracle(len(rates), moment, name="exponential")


def test_c5_random_chains():
    rng = np.random.default_rng(42)
    worst, worst_step, count = math.inf, math.inf, 0
    for n in (2, 3):
        for kind in ("sum", "integral"):
            for _ in range(50):
                weights = WeightedExponents.from_weights(rng.uniform(0.1, 1.0, n))
                if kind == "sum":
                    Q = rng.uniform(0.01, 5.0, (int(rng.integers(1, 20)), n))
                    build = lambda m: holder_chain_sum(weights, m, Q)  # noqa: E731
                else:
                    oracle = _exponential_oracle(rng.uniform(0.2, 4.0, n), rng.uniform(0.5, 3.0))
                    build = lambda m: holder_chain_integral(weights, m, oracle)  # noqa: E731
                middles = []
                for m in (2, 3, 4):
                    chain = build(m)
                    worst = min(worst, chain.worst_margin / max(1.0, chain.upper))
                    middles.append(chain.middle)
                    count += 1
                worst_step = min([worst_step] + [(a - b) / max(1.0, a)
                                                  for a, b in zip(middles, middles[1:])])
    ok = worst >= -1e-10 and worst_step >= -1e-10
    record(5, ok, f"{count} sum/integral chains, worst margin {worst:.1e}, "
                  f"worst middle step in m {worst_step:.1e} (>= -1e-10)")


def test_c5_quadrature_oracle_chain():
    oracle = MomentOracle.from_functions(
        [lambda t: 0.5 * np.log(t), np.log], log_density=lambda t: -np.log(t) - np.log1p(t),
        domain="unit", singular_exponent=lambda e: min(1.0, 0.5 * e[0] + e[1]))
    chains = [holder_chain_integral(WeightedExponents([2.0, 2.0]), m, oracle) for m in (2, 3, 4)]
    worst = min(c.worst_margin + c.tolerance for c in chains)
    steps = min(a.middle - b.middle for a, b in zip(chains, chains[1:]))
    record(5, worst >= -1e-10 and steps >= -1e-10,
           f"quadrature oracle chain worst margin {worst:.1e}, middle step {steps:.1e}")


@pytest.mark.parametrize("check_id", ["thm_6_1_chain", "thm_7_1_to_7_6_chains"])
def test_c5_oracle_vs_reduced_paths(check_id):
    report = run_check(check_id, tol=1e-10)
    ok = not report.violations
    record(5, ok, f"{check_id}: {report.samples} samples, oracle/reduced paths agree within "
                  f"1e-8, worst margin {report.worst_margin:.1e}, verdict {report.verdict.value}")


# ---------------------------------------------------------------------------
# 6. derivatives against central differences

# near the rounding floor; FD noise stays ~1e-6 relative at these steps
TIGHT = QuadratureSettings(1e-14, 5e-13, 4000)


def _rel(a, b):
    return abs(a - b) / abs(b)


def test_c6_beta_derivatives():
    worst = max(
        _rel(finite_difference(lambda s: pk_beta(s, PKParams(p, k)), x, n, 5e-4 * x),
             pk_beta_deriv(n, x, PKParams(p, k)))
        for n, x, (p, k) in itertools.product((1, 2), X, PK_PAIRS))
    record(6, worst <= 1e-5, f"beta series derivatives max rel {worst:.1e} (<= 1e-5)")


def test_c6_cz_derivatives():
    worst = 0.0
    for n, x, c, (p, k) in itertools.product((1, 2), X, (0.0,) + C, PK_PAIRS):
        params = CZParams(c, PKParams(p, k))
        fd = finite_difference(lambda s: ext_cz_gamma(s, params, TIGHT), x, n, 1e-3 * min(x, k),
                               domain=(0.0, math.inf) if c == 0 else (-math.inf, math.inf))
        worst = max(worst, _rel(fd, ext_cz_gamma_deriv(n, x, params, TIGHT)))
    record(6, worst <= 1e-5, f"CZ derivatives max rel {worst:.1e} (<= 1e-5)")


def test_c6_v_ext_derivatives():
    worst = 0.0
    for N, z, b, v in itertools.product((1, 2), X, (0.0, 0.5, 1.0, 2.0), (0.5, 1.0, 2.0, 3.0)):
        params = VExtParams(b, v)
        fd = finite_difference(lambda s: v_ext_cz_gamma(s, params, TIGHT), z, N, 1e-3 * min(z, v),
                               domain=(0.0, math.inf) if b == 0 else (-math.inf, math.inf))
        worst = max(worst, _rel(fd, v_ext_cz_gamma_deriv(N, z, params, TIGHT)))
    record(6, worst <= 1e-5, f"v-ext derivatives max rel {worst:.1e} (<= 1e-5)")


# ---------------------------------------------------------------------------
# 7. limits of Delta_n

def test_c7_delta_limits():
    worst_limit, worst_slope = 0.0, 0.0
    for n, p, k in itertools.product((1, 2), (0.5, 2.0), (0.5, 1.0, 2.0)):
        params = PKParams(p, k)
        d1, d2 = delta_n(n, 1e-3, params), delta_n(n, 2e-3, params)
        worst_limit = max(worst_limit, abs(d1 - p) / p)
        worst_slope = max(worst_slope, abs(d2 - d1) / 1e-3)
    record(7, worst_limit <= 0.01 and worst_slope <= 0.1,
           f"max |Delta_n(1e-3) - p|/p = {worst_limit:.1e} (<= 0.01), "
           f"max slope {worst_slope:.1e} (<= 0.1)")


# ---------------------------------------------------------------------------
# 8. inequality suite

@pytest.mark.xfail(strict=True, reason="three claims fail numerically; see the check notes")
def test_c8_no_failures(full_reports):
    checks = full_reports["data"][0]["checks"]
    failing = [f"{c['check_id']} ({c['violation_count']} violations, worst "
               f"{c['worst_margin']:.3g})" for c in checks if c["verdict"] == "FAIL"]
    record(8, not failing, f"{len(checks)} checks, FAIL: " + ", ".join(failing) if failing
           else f"{len(checks)} checks, none FAIL")


def test_c8_flagged_checks_noted(full_reports):
    by_id = {c["check_id"]: c for c in full_reports["data"][0]["checks"]}
    wrong = [cid for cid in FLAGGED
             if by_id[cid]["verdict"] != "PASS_WITH_NOTE" or not by_id[cid]["note"]]
    record(8, not wrong, "flagged checks PASS_WITH_NOTE with recorded factor" if not wrong
           else f"not noted: {wrong}")


def test_c8_reflection_dual_forms():
    worst_scaled, worst_factor = 0.0, 0.0
    for (p, k), f in itertools.product(PK_PAIRS, (0.1, 0.25, 0.5, 0.75)):
        lhs, displayed, scaled = reflection_check(f * k, PKParams(p, k))
        worst_scaled = max(worst_scaled, abs(lhs - scaled) / scaled)
        worst_factor = max(worst_factor, abs(displayed / lhs - p / k))
    record(8, worst_scaled <= 1e-8 and worst_factor <= 1e-8,
           f"reflection: scaled form rel gap {worst_scaled:.1e}, displayed/actual - p/k "
           f"{worst_factor:.1e}")


def test_c8_tolerance_robust(full_reports):
    strict, loose = full_reports["data"][0]["checks"], full_reports["data"][2]["checks"]
    changed = [a["check_id"] for a, b in zip(strict, loose) if a["verdict"] != b["verdict"]]
    record(8, not changed, "tol 1e-3 gives the same verdicts" if not changed
           else f"verdict changes at tol 1e-3: {changed}")


# ---------------------------------------------------------------------------
# 9. determinism and the exit-code table

def test_c9_byte_identical(full_reports):
    same = full_reports["raw"][0] == full_reports["raw"][1]
    record(9, same, "two seed-42 verify-all JSON reports byte-identical" if same
           else "verify-all JSON differs between runs")


def test_c9_exit_codes(full_reports, tmp_path, capsys):
    summary = full_reports["data"][0]["summary"]
    expected_fail = 1 if summary["FAIL"] else 0
    cases = [
        (["eval", "pk_beta", "x=1", "p=1", "k=1"], 0),
        (["check", "eq_4_12_functional"], 0),
        (["check", "eq_4_13_reflection_dual", "--grid", "p=1,2", "k=2"], 0),
        (["check", "eq_4_79_mult_convex_triple"], 1),
        (["check", "no_such_id"], 2),
        (["eval", "no_such_function", "x=1"], 2),
        (["sweep", "pk_beta", "x=1:1:2", "p=1", "k=1"], 2),
        (["eval", "pk_beta", "x=-1", "p=1", "k=1"], 3),
        (["verify-all", "--out", str(tmp_path / "missing" / "r.json")], 4),
    ]
    got = [(argv, main(argv)) for argv, _ in cases]
    capsys.readouterr()
    wrong = [f"{' '.join(a)} -> {g} (want {w})" for (a, g), (_, w) in zip(got, cases) if g != w]
    if full_reports["codes"][0] != expected_fail:
        wrong.append(f"verify-all exit {full_reports['codes'][0]} with {summary['FAIL']} FAIL")
    record(9, not wrong, "; ".join(wrong) or
           f"exit codes 0-4 as documented; verify-all exits {expected_fail} "
           f"with {summary['FAIL']} FAIL")
