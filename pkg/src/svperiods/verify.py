"""Ground-truth verification suite.

Each check pins one acceptance criterion: printed coefficient expansions,
the worked elliptic-curve example, two-route agreement, exact pairing and
Hecke identities, proportionality and rationality properties, and the
CM/non-CM rational-reconstruction contrast.  The CLI `verify` command and
tests/test_acceptance.py both execute this registry.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import catalog, periods, poincare, svp
from .qexp import (
    QSeries,
    bol,
    de_rham_pairing,
    delta_qexp,
    dual_form_level1,
    eisenstein,
    hecke_tp,
    j_invariant,
)

CHECKS = []

# Criteria that fail as stated for documented reasons (see the repo notes):
# the printed expansion of P_{-2,6,4} has -35 q^2 where both the series and
# an exact construction force -36.
KNOWN_ERRATA = {
    "c02_P_minus2_6_4": "printed a_2 = -35 is an erratum; exact construction gives -36",
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    lines: list = field(default_factory=list)
    seconds: float = 0.0


def is_documented_erratum(result):
    """True when the only failing lines are the known as-stated erratum."""
    if result.name not in KNOWN_ERRATA or result.passed:
        return False
    failing = [ln for ln in result.lines if ln.startswith("FAIL")]
    return bool(failing) and all("as stated" in ln for ln in failing)


def register(name, fast=True):
    def wrap(fn):
        CHECKS.append((name, fast, fn))
        return fn

    return wrap


def _line(ok, what, measured, expected, tol):
    return "%s %s: measured %s vs expected %s (tol %g)" % (
        "ok " if ok else "FAIL", what, measured, expected, tol)


def ap_from_point_count(model, level, p):
    """Brute-force a_p over F_p (smooth points only at bad primes)."""
    a1, a2, a3, a4, a6 = (a % p for a in model)
    count = 1
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y) % p != rhs:
                continue
            fy = (2 * y + a1 * x + a3) % p
            fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % p
            if fy == 0 and fx == 0:
                continue
            count += 1
    if level % p == 0:
        return p - count
    return p + 1 - count


# ---------------------------------------------------------------- checks


@register("c01_P_minus1_2_1_vs_bol_minus_j", fast=False)
def check_p_minus1_2_1(res):
    expected = {1: -196884, 2: -42987520, 3: -2592899910}
    exp = poincare.poincare_qexp(-1, 2, 1, 3, c_max=10**5)
    ok_all = True
    for n, target in expected.items():
        v = exp.coefficient(n).value
        ok = abs(v - target) <= 5e-3 * abs(target)
        ok_all &= ok
        res.lines.append(_line(ok, "series a_%d" % n, "%.3f" % v, target, 5e-3))
    dj = bol(-j_invariant(4), 0)
    for n, target in expected.items():
        ok = dj.coeff(n) == target
        ok_all &= ok
        res.lines.append(_line(ok, "bol(-j) a_%d" % n, dj.coeff(n), target, 0))
    return ok_all


@register("c02_P_minus2_6_4")
def check_p_minus2_6_4(res):
    """Criterion as stated expects a_2 = -35; the series and an exact
    weakly holomorphic construction both give -36 (documented erratum in
    the source text).  The as-stated comparison is kept and fails
    honestly; the oracle arbitration is printed alongside."""
    exp = poincare.poincare_qexp(-2, 6, 4, 6, c_max=10**4)
    stated = {2: -35.0, 4: 4096.0, 6: -97686.0}
    oracle = exact_p_minus2_6_4_even_coeffs()
    ok_all = True
    for n, target in stated.items():
        v = exp.coefficient(n).value
        ok = abs(v - target) <= 1e-4
        ok_all &= ok
        res.lines.append(_line(ok, "a_%d (as stated)" % n, "%.7f" % v, target, 1e-4))
        ok_oracle = abs(v - float(oracle[n])) <= 1e-4
        res.lines.append(_line(ok_oracle, "a_%d vs exact construction" % n,
                               "%.7f" % v, oracle[n], 1e-4))
        if not ok and ok_oracle:
            res.lines.append("     note: printed value %s disagrees with the exact"
                             " weakly holomorphic construction (%s); known erratum" % (target, oracle[n]))
    for n in (1, 3, 5):
        v = exp.coefficient(n).value
        ok = abs(v) <= 1e-4
        ok_all &= ok
        res.lines.append(_line(ok, "odd a_%d" % n, "%.2e" % v, 0, 1e-4))
    return ok_all


def exact_p_minus2_6_4_even_coeffs():
    """a_2, a_4, a_6 of the level-4 weight-6 form with principal part q^{-2},
    a_0 = 0, holomorphic away from infinity, by exact eta-quotient algebra.

    The form is unique modulo the cusp form eta(2t)^12, which has odd
    support, so the even coefficients are forced.  Independent of the
    Kloosterman-Bessel route.
    """
    from .qexp import eta_quotient

    T = 12
    t = eta_quotient([(1, 8), (4, -8)], T)  # hauptmodul, pole only at infinity
    f4 = eta_quotient([(2, 12)], T)
    c3, c2, c1 = f4 * t**3, f4 * t**2, f4 * t
    Tm = min(c.T for c in (c3, c2, c1))
    c3, c2, c1 = (c.truncate(Tm) for c in (c3, c2, c1))
    det = c2.coeff(-1) * c1.coeff(0) - c1.coeff(-1) * c2.coeff(0)
    alpha = (-c3.coeff(-1) * c1.coeff(0) + c1.coeff(-1) * c3.coeff(0)) / det
    beta = (-c2.coeff(-1) * c3.coeff(0) + c3.coeff(-1) * c2.coeff(0)) / det
    g = c3 + alpha * c2 + beta * c1
    assert g.coeff(-2) == 1 and g.coeff(-1) == 0 and g.coeff(0) == 0
    return {2: g.coeff(2), 4: g.coeff(4), 6: g.coeff(6)}


@register("c03_P_minus1_4_9_and_cm")
def check_p_minus1_4_9(res):
    exp = poincare.poincare_qexp(-1, 4, 9, 12, c_max=10**4)
    expected = {2: 2.0, 5: -49.0, 8: 48.0, 11: 771.0}
    ok_all = True
    for n, target in expected.items():
        v = exp.coefficient(n).value
        ok = abs(v - target) <= 1e-4
        ok_all &= ok
        res.lines.append(_line(ok, "a_%d" % n, "%.7f" % v, target, 1e-4))
    off = max(abs(exp.coefficient(n).value) for n in range(1, 13) if n not in expected)
    ok = off <= 1e-4
    ok_all &= ok
    res.lines.append(_line(ok, "off-support max", "%.2e" % off, 0, 1e-4))
    report = svp.cm_rationality_check(catalog.lookup_case(9, 4), n_max=12)
    ok_all &= report["verdict"]
    res.lines.append(_line(report["verdict"], "CM reconstruction verdict", report["verdict"], True, 0))
    return ok_all


@register("c04_example_0_1_periods")
def check_example_0_1(res):
    model = (0, -1, 1, -10, -20)
    P = periods.period_matrix(model)
    printed_P = {
        (0, 0): 1.269209, (0, 1): -2.214333,
        (1, 0): 0.634604 + 1.458816j, (1, 1): -1.107166 + 2.405338j,
    }
    ok_all = True
    for idx, target in printed_P.items():
        ok = abs(P[idx] - target) <= 5e-6
        ok_all &= ok
        res.lines.append(_line(ok, "P[%d,%d]" % idx, P[idx], target, 5e-6))
    det_res = abs(np.linalg.det(P) - 2j * math.pi)
    ok = det_res <= 1e-10
    ok_all &= ok
    res.lines.append(_line(ok, "det P - 2 pi i", "%.2e" % det_res, 0, 1e-10))
    S = periods.sv_matrix(P, weight=1)
    printed_S = {(0, 0): -0.028238, (0, 1): -1.695389, (1, 0): -0.589364, (1, 1): 0.028238}
    for idx, target in printed_S.items():
        ok = abs(S.entries[idx] - target) <= 5e-6
        ok_all &= ok
        res.lines.append(_line(ok, "S[%d,%d]" % idx, "%.7f" % S.entries[idx], target, 5e-6))
    rep = periods.check_block_relations(S)
    ok = rep["S2_minus_id"] <= 1e-9 and rep["trace"] <= 1e-9
    ok_all &= ok
    res.lines.append(_line(ok, "S^2=id, Tr S=0", "%.2e / %.2e" % (rep["S2_minus_id"], rep["trace"]), 0, 1e-9))
    return ok_all


@register("c05_example_0_3_two_routes", fast=False)
def check_example_0_3(res):
    model = catalog.curve_model(11)
    pred_pos, pred_neg = svp.predicted_coeffs_from_periods(model)
    ok_all = True
    ok = abs(pred_pos - 1.696742) <= 1e-5
    ok_all &= ok
    res.lines.append(_line(ok, "period route a_1(P_1)", "%.7f" % pred_pos, 1.696742, 1e-5))
    ok = abs(pred_neg - (-0.952086)) <= 1e-5
    ok_all &= ok
    res.lines.append(_line(ok, "period route a_1(P_-1)", "%.7f" % pred_neg, -0.952086, 1e-5))
    values, _ = poincare.series_values([(1, 2, 1), (-1, 2, 1)], 11, 10**6)
    for v, target, label in ((values[0], 1.696742, "series a_1(P_1)"),
                             (values[1], -0.952086, "series a_1(P_-1)")):
        ok = abs(v - target) <= 5e-3
        ok_all &= ok
        res.lines.append(_line(ok, label + " (c_max 1e6)", "%.7f" % v, target, 5e-3))
    return ok_all


@register("c06_rank2_proportionality", fast=False)
def check_proportionality(res):
    ok_all = True
    n_max = 8
    for case in catalog.rank_two_table():
        if catalog.recipe_kind(case) == "file":
            continue
        f = catalog.newform_qexp(case, n_max)
        c_max = 30_000 if case.weight == 2 else 5_000
        exp = poincare.poincare_qexp(1, case.weight, case.level, n_max, c_max=c_max)
        worst = 0.0
        ok = True
        for n in range(1, n_max + 1):
            for n2 in range(n + 1, n_max + 1):
                an, an2 = exp.coefficient(n), exp.coefficient(n2)
                fn, fn2 = float(f.coeff(n)), float(f.coeff(n2))
                lhs = an.value * fn2 - an2.value * fn
                budget = an.tail_estimate * abs(fn2) + an2.tail_estimate * abs(fn) + 1e-9
                worst = max(worst, abs(lhs) - budget)
                ok &= abs(lhs) <= budget
        ok_all &= ok
        res.lines.append(_line(ok, "N=%d w=%d cross-ratio excess" % (case.level, case.weight),
                               "%.2e" % worst, "<= 0", 0))
    return ok_all


@register("c07_block_relations_all_curves")
def check_block_relations(res):
    ok_all = True
    for N in catalog.weight2_levels():
        P = periods.period_matrix(catalog.curve_model(N))
        rep = periods.check_block_relations(periods.sv_matrix(P, weight=1))
        ok = rep["ok"]
        ok_all &= ok
        res.lines.append(_line(ok, "N=%d relations" % N,
                               "max residual %.2e" % max(rep["S2_minus_id"], rep["C_symmetric"],
                                                         rep["D_minus_sign_At"], rep["B_relation"],
                                                         rep["CA_relation"]),
                               "pass", 1e-8))
    return ok_all


@register("c08_exact_pairing_suite")
def check_exact_pairings(res):
    rng = random.Random(20201201)
    ok_all = True
    worst_pairs = True
    for _ in range(50):
        k = rng.choice([0, 2, 4, 10])
        f = _random_laurent(rng, zero_constant=True)
        g = _random_laurent(rng, zero_constant=True)
        try:
            lhs = de_rham_pairing(f, g, k)
            rhs = -de_rham_pairing(g, f, k)
        except ValueError:
            continue
        worst_pairs &= lhs == rhs
    ok_all &= worst_pairs
    res.lines.append(_line(worst_pairs, "antisymmetry on 50 random Laurent pairs", worst_pairs, True, 0))
    T = 8
    h = (eisenstein(4, T + 4) ** 2 * eisenstein(6, T + 4) / delta_qexp(T + 4) ** 2).truncate(T)
    val = de_rham_pairing(delta_qexp(T), bol(h, 10), 10)
    ok = val == 0
    ok_all &= ok
    res.lines.append(_line(ok, "<[Delta],[D^11(E4^2 E6/Delta^2)]>", val, 0, 0))
    g12 = dual_form_level1(12, 8)
    d = delta_qexp(8)
    pair = de_rham_pairing(d, g12, 10)
    ok = pair == 1 and g12.coeff(0) == 0 and g12.coeff(1) == 0
    ok_all &= ok
    res.lines.append(_line(ok, "<[Delta],[g12]>, a0(g12), a1(g12)",
                           (pair, g12.coeff(0), g12.coeff(1)), (1, 0, 0), 0))
    return ok_all


def _random_laurent(rng, zero_constant=False):
    d = {}
    for _ in range(rng.randint(2, 6)):
        n = rng.randint(-4, 8)
        if zero_constant and n == 0:
            continue
        d[n] = rng.randint(-9, 9)
    d[9] = d.get(9, 1)
    return QSeries.from_dict(d, 9)


@register("c09_hecke_eigenform_suite")
def check_hecke_eigenforms(res):
    ok_all = True
    T = 60
    for case in catalog.rank_two_table():
        f = catalog.newform_qexp(case, T)
        ok = True
        for p in (2, 3, 5, 7):
            if case.level % p == 0:
                continue
            lhs = hecke_tp(f, p, case.k)
            rhs = f.coeff(p) * f.truncate(T // p)
            ok &= lhs == rhs
        ok_all &= ok
        res.lines.append(_line(ok, "N=%d w=%d eigenform (T_2,3,5,7)" % (case.level, case.weight),
                               ok, True, 0))
    for N in catalog.weight2_levels():
        model = catalog.curve_model(N)
        f = catalog.newform_qexp(catalog.lookup_case(N, 2), 14)
        ok = True
        for p in (2, 3, 5, 7, 13):
            if N % p == 0:
                continue
            ok &= ap_from_point_count(model, N, p) == f.coeff(p)
        ok_all &= ok
        res.lines.append(_line(ok, "N=%d a_p vs point counts (p<=13)" % N, ok, True, 0))
    return ok_all


@register("c10_petersson_cross_check", fast=False)
def check_petersson(res):
    lhs, rhs = svp.pairing_vs_quadrature_check(c_max=2000)
    ok = abs(lhs - rhs) <= 1e-4 * abs(rhs)
    res.lines.append(_line(ok, "(4pi)^11 (Delta,Delta)_Pet vs -c", "%.8f" % lhs, "%.8f" % rhs, 1e-4))
    return ok


@register("c11_rational_relations_w24")
def check_rational_relations(res):
    out = svp.poincare_rational_relations(1, 24, 3, [1, 2], n_max=8, c_max=3000)
    ok_all = True
    for lam, r, dist in zip(out["lambdas"], out["reconstructed"], out["recon_distance"]):
        ok = dist <= 1e-4 and r.denominator <= 10**4
        ok_all &= ok
        res.lines.append(_line(ok, "lambda %.8f ~ %s" % (lam, r), "%.2e" % dist, "<= 1e-4", 1e-4))
    worst = max(abs(v) for v in out["residuals"].values())
    ok = worst <= 5e-4
    ok_all &= ok
    res.lines.append(_line(ok, "residuals n=3..8 max", "%.2e" % worst, 0, 5e-4))
    return ok_all


@register("c12_negative_control", fast=False)
def check_negative_control(res):
    ok_all = True
    for (N, w), should_pass in (((9, 4), True), ((27, 2), True), ((11, 2), False), ((1, 12), False)):
        c_max = 2 * 10**5 if w == 2 else 10**4
        report = svp.cm_rationality_check(catalog.lookup_case(N, w), n_max=8, c_max=c_max)
        ok = report["verdict"] == should_pass
        ok_all &= ok
        res.lines.append(_line(ok, "(%d,%d) reconstruction verdict" % (N, w),
                               report["verdict"], should_pass, svp.CM_TOL))
    return ok_all


# ---------------------------------------------------------------- driver


def run_suite(suite="all", echo=print):
    """Run the registered checks; returns the list of CheckResult."""
    results = []
    for name, fast, fn in CHECKS:
        if suite == "fast" and not fast:
            echo("SKIP %s (slow check, suite=fast)" % name)
            continue
        t0 = time.time()
        result = CheckResult(name=name, passed=False)
        try:
            result.passed = bool(fn(result))
        except Exception as exc:  # a crashed check is a failed check
            result.lines.append("FAIL exception: %r" % exc)
        result.seconds = time.time() - t0
        results.append(result)
        echo("%s %s (%.1f s)" % ("PASS" if result.passed else "FAIL", name, result.seconds))
        for line in result.lines:
            echo("    " + line)
    return results
