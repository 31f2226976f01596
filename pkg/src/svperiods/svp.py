"""Single-valued period data (c, rho) from Poincare series and from curve periods.

Route A (weight-2 cases with a curve model) reads c = s21 and rho = s11/s21
off the single-valued matrix of the curve.  Route B estimates c from

    a_n(P_m) = -k!/m^{k+1} * a_m(f) a_n(f) / c

and rho from a_1(P_{-1}) = k! (rho + a_1(g)) against a pinned dual form g:
at level 1 the exact g with a_1(g) = 0, for weight-2 curve levels the
pullback of x dz, whose exact q-expansion comes from composing the
Weierstrass wp-series with z(q) = sum a_n q^n / n.

Also here: the rational-relation solver among Poincare series, the
Hecke-split analogue for multiplicity-one spaces, CM rationality checks
with continued-fraction reconstruction, and a quadrature Petersson norm
used as an independent oracle against the series route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import integrate

from . import catalog, periods, poincare
from .qexp import QSeries, bol, de_rham_pairing, dual_form_level1, hecke_tp, level1_cusp_basis

# A float x counts as rational p/q when it is this close AND unreasonably
# closer than a generic real would be (q^2-weighted distance); calibrated
# against the weight-2 series precision.
CM_DEN_CAP = 64
CM_TOL = 1e-3


@dataclass
class SVRankTwoResult:
    level: int
    weight: int
    route: str
    c: float = math.nan
    rho: float = math.nan
    residuals: dict = field(default_factory=dict)
    tail: float = 0.0
    notes: str = ""


def rational_reconstruct(x, max_den=10**4):
    """Best rational with bounded denominator, and its distance to x."""
    r = Fraction(x).limit_denominator(max_den)
    return r, abs(x - float(r))


def looks_rational(x, max_den=CM_DEN_CAP, tol=CM_TOL):
    """Continued-fraction test: near a small rational, much nearer than generic."""
    r, dist = rational_reconstruct(x, max_den)
    return (dist <= tol and r.denominator**2 * dist <= tol), r, dist


# -- Route B: c from positive-index coefficients -------------------------


def rank2_c_from_poincare(case, pairs=((1, 1), (1, 2)), c_max=None, tol=None):
    """Estimate c = s21 from a_n(P_m) = -k!/m^{k+1} a_m(f) a_n(f) / c."""
    if isinstance(case, tuple):
        case = catalog.lookup_case(*case)
    k = case.k
    kfact = math.factorial(k)
    n_need = max(max(m, n) for m, n in pairs)
    f = catalog.newform_qexp(case, n_need + 1)
    usable = [(m, n) for m, n in pairs if f.coeff(m) * f.coeff(n) != 0]
    if not usable:
        raise ValueError("every requested pair has a_m(f) a_n(f) = 0; P_m vanishes identically")
    if c_max is None and tol is None:
        c_max = poincare.DEFAULT_C_MAX * (10 if case.weight == 2 else 1)
    estimates = {}
    tails = {}
    for m, n in usable:
        coeff = poincare.poincare_coeff(m, case.weight, case.level, n, c_max=c_max, tol=tol)
        am, an = float(f.coeff(m)), float(f.coeff(n))
        estimates[(m, n)] = -kfact * am * an / (m ** (k + 1) * coeff.value)
        tails[(m, n)] = coeff.tail_estimate / max(abs(coeff.value), 1e-300)
    best_pair = min(usable, key=lambda p: tails[p])
    best = estimates[best_pair]
    residuals = {p: est - best for p, est in estimates.items()}
    degenerate = {p: None for p in pairs if p not in usable}
    residuals.update(degenerate)
    return SVRankTwoResult(level=case.level, weight=case.weight, route="B",
                           c=best, residuals=residuals, tail=tails[best_pair],
                           notes="pair %s" % (best_pair,))


# -- dual forms ----------------------------------------------------------


def weierstrass_p_series(g2, g3, max_even_power):
    """Laurent coefficients c_j of wp(z) = z^{-2} + sum c_j z^{2j}, exact."""
    g2, g3 = Fraction(g2), Fraction(g3)
    cs = {1: g2 / 20, 2: g3 / 28}
    for j in range(3, max_even_power + 1):
        acc = sum(cs[m] * cs[j - 1 - m] for m in range(1, j - 1))
        cs[j] = acc * Fraction(3, (2 * j + 3) * (j - 2))
    return cs


def dual_form_weight2(case, T):
    """Exact expansion of the weight-2 dual form g = (wp(z(q)) - b2/12) f(q).

    This is the pullback of the second-kind differential x dz under the
    degree-one modular parametrization, with pole part q^{-1}, a_0 = 0, and
    <[f],[g]>_dR = 1; its a_1 fixes the offset between the curve-basis rho
    and the a_1(g)-normalized one.
    """
    if isinstance(case, tuple):
        case = catalog.lookup_case(*case)
    if case.weight != 2:
        raise ValueError("dual_form_weight2 needs a weight-2 case")
    model = catalog.curve_model(case.level)
    b2, c4, c6, _ = periods.curve_invariants(model)
    g2, g3 = c4 / 12, c6 / 216
    Ti = T + 6
    f = catalog.newform_qexp(case, Ti)
    z = QSeries(1, [f.coeff(n) / n for n in range(1, Ti + 1)], Ti)
    z2 = z * z
    wp = z2.invert()
    cs = weierstrass_p_series(g2, g3, Ti // 2 + 1)
    zpow = None
    for j in range(1, wp.T // 2 + 1):
        zpow = z2.truncate(wp.T) if j == 1 else (zpow * z2).truncate(wp.T)
        if zpow.v > wp.T:
            break
        wp = wp + cs[j] * zpow
    g = ((wp - b2 / 12) * f).truncate(T)
    assert g.coeff(-1) == 1 and g.coeff(0) == 0
    return g


# -- rho -----------------------------------------------------------------


def rank2_rho(case, g=None, route="auto", n_max=8, c_max=None, tol=None):
    """rho = s11/s21 for a rank-2 case, by curve periods or Poincare series.

    Route A needs a weight-2 curve model; route B needs the dual form g
    (constructed automatically at level 1 and for weight-2 curve levels).
    Residuals report a_n(P_{-1}) - k! (a_n(f) rho + a_n(g)) where g is
    available.
    """
    if isinstance(case, tuple):
        case = catalog.lookup_case(*case)
    k = case.k
    kfact = math.factorial(k)
    if route == "auto":
        route = "A" if case.weight == 2 else "B"
    if route == "A":
        if case.weight != 2:
            raise ValueError("route A (periods) only exists for weight-2 curve cases")
        P = periods.period_matrix(catalog.curve_model(case.level))
        S = periods.sv_matrix(P, weight=case.k + 1)
        res = SVRankTwoResult(level=case.level, weight=case.weight, route="A",
                              c=float(S.C[0, 0]), rho=float(S.A[0, 0] / S.C[0, 0]))
        res.residuals["det_P_minus_2pi_i"] = abs(np.linalg.det(P) - 2j * math.pi)
        return res
    # route B
    notes = ""
    if g is None:
        if case.level == 1:
            g = dual_form_level1(case.weight, n_max)
        elif case.weight == 2:
            g = dual_form_weight2(case, n_max)
        else:
            notes = "no dual form available: rho reported modulo the rational a_1(g)"
    exp = poincare.poincare_qexp(-1, case.weight, case.level, n_max, c_max=c_max, tol=tol)
    a1 = exp.coefficient(1)
    a1_g = float(g.coeff(1)) if g is not None else 0.0
    rho = a1.value / kfact - a1_g
    res = SVRankTwoResult(level=case.level, weight=case.weight, route="B",
                          rho=rho, tail=a1.tail_estimate, notes=notes)
    if g is not None:
        f = catalog.newform_qexp(case, n_max)
        for n in range(2, n_max + 1):
            pred = kfact * (float(f.coeff(n)) * rho + float(g.coeff(n)))
            res.residuals[n] = exp.coefficient(n).value - pred
    return res


def predicted_coeffs_from_periods(model):
    """Closed forms a_1(P_1) = -2 pi i/(w1 conj(w2) - conj(w1) w2) and
    a_1(P_{-1}) = (conj(w1) eta2 - conj(w2) eta1)/(w1 conj(w2) - conj(w1) w2) - 1."""
    P = periods.period_matrix(model)
    w1, e1 = P[0, 0], P[0, 1]
    w2, e2 = P[1, 0], P[1, 1]
    denom = w1 * np.conjugate(w2) - np.conjugate(w1) * w2
    pred_pos = -2j * math.pi / denom
    pred_neg = (np.conjugate(w1) * e2 - np.conjugate(w2) * e1) / denom - 1.0
    for value in (pred_pos, pred_neg):
        if abs(value.imag) > 1e-9:
            raise ValueError("period prediction came out non-real: %r" % value)
    return float(pred_pos.real), float(pred_neg.real)


# -- rational relations among Poincare series (Prop 9.1 checks) ----------


def _cusp_dim(level, weight):
    if level == 1:
        from .qexp import dim_cusp_forms_level1

        return dim_cusp_forms_level1(weight)
    try:
        catalog.lookup_case(level, weight)
        return 1
    except KeyError:
        raise ValueError("dim S_%d(Gamma_0(%d)) is not in the catalog" % (weight, level)) from None


def poincare_rational_relations(level, weight, m, basis, n_max=8, c_max=None, tol=None,
                                max_den=10**4):
    """Solve P_m = sum lambda_i P_{m_i} from leading coefficients; report
    rational reconstructions of the lambda_i and residuals at higher n."""
    d = _cusp_dim(level, weight)
    basis = list(basis)
    if len(basis) != d:
        raise ValueError("need exactly dim S = %d basis indices" % d)
    idx = sorted(set(basis + [m]))
    specs = [(mi, weight, n) for mi in idx for n in range(1, n_max + 1)]
    if c_max is None and tol is None:
        c_max = poincare.DEFAULT_C_MAX
    values, _ = poincare.series_values(specs, level, c_max)
    table = {}
    pos = 0
    for mi in idx:
        table[mi] = values[pos : pos + n_max]
        pos += n_max
    A = np.array([[table[mi][n - 1] for mi in basis] for n in range(1, d + 1)])
    b = np.array([table[m][n - 1] for n in range(1, d + 1)])
    if abs(np.linalg.det(A)) < 1e-12 * max(1.0, np.abs(A).max()) ** d:
        raise np.linalg.LinAlgError("singular coefficient matrix for basis %s" % (basis,))
    lams = np.linalg.solve(A, b)
    recon = [rational_reconstruct(x, max_den) for x in lams]
    residuals = {}
    for n in range(d + 1, n_max + 1):
        pred = sum(lam * table[mi][n - 1] for lam, mi in zip(lams, basis))
        residuals[n] = table[m][n - 1] - pred
    return {
        "lambdas": [float(x) for x in lams],
        "reconstructed": [r for r, _ in recon],
        "recon_distance": [dist for _, dist in recon],
        "residuals": residuals,
    }


# -- Hecke-split single-valued data (multiplicity-one spaces) -------------


def _eigenbasis_level1(weight, T):
    """Numerical coefficient rows (a_1..a_T) of the normalized eigenforms."""
    basis = level1_cusp_basis(weight, T)
    d = len(basis)
    k = weight - 2
    t2 = [hecke_tp(fb, 2, k) for fb in basis]
    M = np.array([[float(t2[j].coeff(n)) for j in range(d)] for n in range(1, d + 1)])
    B = np.array([[float(basis[j].coeff(n)) for j in range(d)] for n in range(1, d + 1)])
    mat = np.linalg.solve(B, M)  # matrix of T_2 in the echelon basis
    _, vecs = np.linalg.eig(mat)
    rows = np.array([[float(fb.coeff(n)) for n in range(1, T + 1)] for fb in basis])
    eigen = vecs.T @ rows
    return [row / row[0] for row in eigen]


def hecke_split_sv(level, weight, m_basis=None, n_max=8, c_max=None, tol=None):
    """(c_i, rho_i) per newform when S_{k+2} = S^new, via Theorems of the
    Hecke-split route; rho_i carries the unresolved rational a_1(h'_j) offset."""
    k = weight - 2
    kfact = math.factorial(k)
    if level == 1:
        eigen = _eigenbasis_level1(weight, max(n_max, 8))
    else:
        case = catalog.lookup_case(level, weight)
        f = catalog.newform_qexp(case, max(n_max, 8))
        eigen = [np.array([float(f.coeff(n)) for n in range(1, max(n_max, 8) + 1)])]
    d = len(eigen)
    if m_basis is None:
        m_basis = list(range(1, d + 1))
    if c_max is None and tol is None:
        c_max = poincare.DEFAULT_C_MAX
    specs = [(m, weight, n) for m in m_basis for n in range(1, n_max + 1)]
    specs += [(-m, weight, 1) for m in m_basis]
    values, _ = poincare.series_values(specs, level, c_max)
    pos_rows = {}
    pos = 0
    for m in m_basis:
        pos_rows[m] = values[pos : pos + n_max]
        pos += n_max
    neg_a1 = {m: values[pos + i] for i, m in enumerate(m_basis)}
    # c_i: least squares on a_n(P_m) = -k!/m^{k+1} sum_i a_m(f_i) a_n(f_i) u_i
    rows, rhs = [], []
    for m in m_basis:
        for n in range(1, n_max + 1):
            rows.append([-kfact / m ** (k + 1) * eigen[i][m - 1] * eigen[i][n - 1]
                         for i in range(d)])
            rhs.append(pos_rows[m][n - 1])
    u, lsq_res, _, _ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    cs = [1.0 / ui for ui in u]
    # rho_j from the inverted negative-index relation at the q^1 coefficient
    Q = np.array([[eigen[i][mj - 1] for i in range(d)] for mj in m_basis])
    r = np.linalg.inv(Q)  # r[i][j] of Theorem-style inversion
    rhos = []
    for jcol in range(d):
        s = sum(m_basis[i] ** (k + 1) * r[i, jcol] * neg_a1[m_basis[i]] for i in range(d))
        rhos.append(s / kfact)
    fit = float(np.sqrt(lsq_res[0])) if np.size(lsq_res) else 0.0
    return {"c": cs, "rho": rhos, "eigen_a2": [e[1] for e in eigen], "lsq_residual": fit}


# -- CM rationality -------------------------------------------------------


def cm_rationality_check(case, n_max=12, c_max=None, tol=None, max_den=CM_DEN_CAP,
                         accept_tol=CM_TOL):
    """Reconstruction report for a_n(P_{-1}); verdict 'pass' when every
    coefficient is (unreasonably) close to a small rational."""
    if isinstance(case, tuple):
        case = catalog.lookup_case(*case)
    if c_max is None and tol is None:
        c_max = poincare.DEFAULT_C_MAX * (20 if case.weight == 2 else 1)
    exp = poincare.poincare_qexp(-1, case.weight, case.level, n_max, c_max=c_max, tol=tol)
    rows = []
    verdict = True
    for coeff in exp.coefficients:
        ok, r, dist = looks_rational(coeff.value, max_den, accept_tol)
        verdict = verdict and ok
        rows.append({"n": coeff.n, "value": coeff.value, "rational": r,
                     "distance": dist, "ok": ok})
    return {"level": case.level, "weight": case.weight, "cm": case.cm,
            "verdict": verdict, "rows": rows}


# -- Petersson norm oracle ------------------------------------------------


def petersson_norm_numeric(f, weight, level=1, y_cut=12.0, terms=None):
    """(f, f)_Pet over the level-1 fundamental domain by adaptive quadrature.

    Independent oracle for the Hermitian-pairing route: no Kloosterman sums,
    just |f(x+iy)|^2 y^{weight} dx dy / y^2 over {|x| <= 1/2, |tau| >= 1},
    truncated at Im tau = y_cut (the integrand decays like e^{-4 pi y}).
    """
    if level != 1:
        raise ValueError("quadrature oracle is implemented for level 1 only")
    if terms is None:
        terms = f.T
    coeffs = [(n, float(c)) for n, c in f.items() if n <= terms]
    if any(n < 1 for n, _ in coeffs):
        raise ValueError("need a cusp-form expansion (valuation >= 1)")

    def f_abs2(x, y):
        q = np.exp(2j * math.pi * (x + 1j * y))
        val = 0.0 + 0.0j
        for n, c in coeffs:
            val += c * q**n
        return abs(val) ** 2

    def inner(x):
        lo = math.sqrt(max(1.0 - x * x, 0.0))
        val, _ = integrate.quad(lambda y: f_abs2(x, y) * y ** (weight - 2), lo, y_cut,
                                epsabs=1e-16, epsrel=1e-10, limit=200)
        return val

    total, err = integrate.quad(inner, -0.5, 0.5, epsabs=1e-16, epsrel=1e-9, limit=100)
    if err > 1e-6 * max(abs(total), 1e-300):
        raise ArithmeticError("quadrature failed to converge (err %g)" % err)
    return total


def pairing_vs_quadrature_check(c_max=2000):
    """(4 pi)^{k+1} (Delta, Delta)_Pet against -c from the series route."""
    from .qexp import delta_qexp

    weight = 12
    k = weight - 2
    f = delta_qexp(30)
    pet = petersson_norm_numeric(f, weight)
    lhs = (4.0 * math.pi) ** (k + 1) * pet
    res = rank2_c_from_poincare(catalog.lookup_case(1, 12), pairs=((1, 1),), c_max=c_max)
    return lhs, -res.c


# -- route agreement ------------------------------------------------------


def route_agreement(level=11, c_max=10**5):
    """Compare (c, rho) from curve periods against the Kloosterman series."""
    case = catalog.lookup_case(level, 2)
    a = rank2_rho(case, route="A")
    ca = rank2_c_from_poincare(case, pairs=((1, 1),), c_max=c_max)
    g = dual_form_weight2(case, 8)
    b = rank2_rho(case, g=g, route="B", c_max=c_max)
    return {
        "c_A": a.c, "c_B": ca.c, "c_diff": abs(a.c - ca.c),
        "rho_A": a.rho, "rho_B": b.rho, "rho_diff": abs(a.rho - b.rho),
        "residuals_B": b.residuals,
    }


def exactness_check_bol(f, h, k):
    """<[f], [D^{k+1} h]>_dR = -k! sum_{n>=1} a_n(f) a_{-n}(h), exact identity."""
    lhs = de_rham_pairing(f, bol(h, k), k)
    rhs = -math.factorial(k) * sum(
        f.coeff(n) * h.coeff(-n)
        for n in range(max(f.v, 1), min(f.T, -h.v) + 1)
    )
    return lhs, rhs
