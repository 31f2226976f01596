"""Fourier coefficients of Poincare series via Kloosterman-Bessel sums.

For m > 0 (weight k, level N, target n >= 1):

    a_n = delta_{m,n} + 2 pi (-1)^{k/2} (n/m)^{(k-1)/2}
          * sum_{c >= 1, N | c} K(m, n; c)/c * J_{k-1}(4 pi sqrt(mn)/c)

and for negative index the principal part is exactly q^{-m} while the
positive coefficients use K(-m, n; c) and the I-Bessel factor.  Weight 2
uses the same formulas (Hecke-trick definition); convergence there is only
~ c^{-3/2}, which drives the different default tolerances.

The c-sum runs over multiples of N in increasing order; per-modulus terms
come from the compiled kernel and are reduced with exact (compensated)
summation, so results do not depend on the worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, bessel
from .arith import divisor_count

_EULER_GAMMA = 0.5772156649015329

DEFAULT_C_MAX = 10_000
DEFAULT_TOL_CAP = 10**6  # tolerance mode stops ramping here unless overridden
HARD_C_CAP = _kernels.C_KERNEL_MAX

_SPF_CACHE = {"limit": 0, "table": None}
_COS_TABLE = None


@dataclass(frozen=True)
class PoincareParams:
    m: int
    weight: int
    level: int
    n: int

    def __post_init__(self):
        if self.m == 0:
            raise ValueError("m = 0 is the Eisenstein case and is not supported")
        if self.weight < 2 or self.weight % 2:
            raise ValueError("weight must be an even integer >= 2")
        if self.n < 1:
            raise ValueError("target index n must be >= 1")
        if self.level < 1:
            raise ValueError("level must be >= 1")


@dataclass
class PoincareCoefficient:
    n: int
    value: float
    c_max: int
    tail_estimate: float
    terms_summed: int
    tolerance_met: bool = True


@dataclass
class PoincareExpansion:
    m: int
    weight: int
    level: int
    coefficients: list = field(default_factory=list)
    principal_part: dict = field(default_factory=dict)

    def coefficient(self, n):
        return self.coefficients[n - 1]


def _spf(limit):
    if _SPF_CACHE["limit"] < limit:
        _SPF_CACHE["table"] = _kernels.sieve_spf(limit)
        _SPF_CACHE["limit"] = limit
    return _SPF_CACHE["table"]


def _costab():
    global _COS_TABLE
    if _COS_TABLE is None:
        _COS_TABLE = _kernels.cos_table()
    return _COS_TABLE


def set_threads(n):
    """Worker count for the c-sum; results are identical for any value."""
    import numba

    numba.set_num_threads(max(1, int(n)))


def _bessel_factors(kind, order, xs):
    """B_order(x) for an array of arguments, splitting tiny/moderate x."""
    out = np.empty_like(xs)
    small = xs <= 2.0
    if small.any():
        f = bessel.bessel_j_small_vec if kind == "J" else bessel.bessel_i_small_vec
        out[small] = f(order, xs[small])
    if (~small).any():
        f = bessel.bessel_j if kind == "J" else bessel.bessel_i
        out[~small] = [f(order, float(x)) for x in xs[~small]]
    return out


def series_values(specs, level, c_max):
    """Coefficients for a batch of (m, weight, n) specs sharing one level.

    One kernel pass over the multiples of the level serves all specs, so
    e.g. a J-series and an I-series at the same level cost one enumeration.
    Returns (values, moduli_count); each value includes the Kronecker delta
    for positive index.
    """
    if c_max > HARD_C_CAP:
        raise ValueError("c_max %d exceeds the kernel cap %d" % (c_max, HARD_C_CAP))
    cs = np.arange(level, c_max + 1, level, dtype=np.int64)
    if cs.size == 0:
        return [1.0 if (m > 0 and n == m) else 0.0 for m, _, n in specs], 0
    a_args = np.array([m if m > 0 else -abs(m) for m, _, _ in specs], dtype=np.int64)
    b_args = np.array([n for _, _, n in specs], dtype=np.int64)
    rows = _kernels.kloosterman_rows(cs, a_args, b_args, _spf(c_max), _costab())
    values = []
    for j, (m, weight, n) in enumerate(specs):
        am = abs(m)
        kind = "J" if m > 0 else "I"
        x = 4.0 * math.pi * math.sqrt(am * n) / cs
        w = _bessel_factors(kind, weight - 1, x) / cs
        pref = 2.0 * math.pi * (-1.0) ** (weight // 2) * (n / am) ** ((weight - 1) / 2.0)
        total = pref * math.fsum(rows[:, j] * w)
        if m > 0 and n == m:
            total += 1.0
        values.append(total)
    return values, int(cs.size)


def _series_rows(m, weight, level, targets, c_max):
    values, count = series_values([(m, weight, n) for n in targets], level, c_max)
    return values, count


def tail_bound(m, n, k, N, c_from):
    """Closed-form majorant of the dropped part of the c-series from c_from.

    Per-term bound d(c) sqrt(gcd) c^{-1/2} * (2 pi sqrt(|m| n)/c)^{k-1}/(k-1)!
    * exp((2 pi sqrt(|m| n)/c)^2), summed over multiples of N by integral
    comparison.  Heuristic majorant (divisor function taken at its average
    order); validated empirically by the convergence tests.  Requires the
    small-argument regime 4 pi sqrt(|m| n)/c_from <= 1.
    """
    if c_from < 1:
        raise ValueError("c_from must be >= 1")
    am = abs(m)
    y = 2.0 * math.pi * math.sqrt(am * n)
    if 2.0 * y / c_from > 1.0:
        raise ValueError("c_from = %d too small for the small-argument regime (need >= %.0f)" % (c_from, 2 * y))
    s = k - 0.5
    lg = math.log(c_from) + 2.0 * _EULER_GAMMA
    amp = y ** (k - 1) / math.factorial(k - 1) * math.sqrt(math.gcd(am, n))
    integral = c_from ** (1.0 - s) * (lg / (s - 1.0) + 1.0 / (s - 1.0) ** 2)
    first = lg * c_from ** (-s)
    return amp * math.exp((y / c_from) ** 2) * (integral / N + first)


def _value_tail(m, weight, level, n, c_from):
    pref = 2.0 * math.pi * (n / abs(m)) ** ((weight - 1) / 2.0)
    return pref * tail_bound(m, n, weight, level, c_from)


def _resolve_c_max(m, weight, level, targets, c_max, tol, cap):
    if (c_max is None) == (tol is None):
        raise ValueError("exactly one of c_max and tol must be given")
    if c_max is not None:
        return int(c_max), True
    cap = min(cap if cap is not None else DEFAULT_TOL_CAP, HARD_C_CAP)
    y = max(2.0 * math.pi * math.sqrt(abs(m) * n) for n in targets)
    c = max(level, int(math.ceil(2.0 * y)), 64)
    while True:
        worst = max(_value_tail(m, weight, level, n, c) for n in targets)
        if worst <= tol:
            return c, True
        if c >= cap:
            return cap, False
        c = min(2 * c, cap)


def poincare_qexp(m, weight, level, n_max, c_max=None, tol=None, cap=None, threads=None):
    """Coefficients a_n for n = 1..n_max; for m < 0 the principal part q^{-|m|} is exact."""
    PoincareParams(m, weight, level, max(1, n_max))
    if threads is not None:
        set_threads(threads)
    targets = list(range(1, n_max + 1))
    use_c, met = _resolve_c_max(m, weight, level, targets, c_max, tol, cap)
    values, count = _series_rows(m, weight, level, targets, use_c)
    exp = PoincareExpansion(m=m, weight=weight, level=level)
    if m < 0:
        exp.principal_part = {m: 1}
    for n, v in zip(targets, values):
        tail_from = use_c + level
        try:
            tail = _value_tail(m, weight, level, n, tail_from)
        except ValueError:
            tail = math.inf
        exp.coefficients.append(
            PoincareCoefficient(n=n, value=v, c_max=use_c, tail_estimate=tail,
                                terms_summed=count, tolerance_met=met)
        )
    return exp


def poincare_coeff(m, weight, level, n, c_max=None, tol=None, cap=None, threads=None):
    """Single coefficient a_n(P_{m,weight,level}) with truncation metadata."""
    PoincareParams(m, weight, level, n)
    if threads is not None:
        set_threads(threads)
    use_c, met = _resolve_c_max(m, weight, level, [n], c_max, tol, cap)
    values, count = _series_rows(m, weight, level, [n], use_c)
    try:
        tail = _value_tail(m, weight, level, n, use_c + level)
    except ValueError:
        tail = math.inf
    return PoincareCoefficient(n=n, value=values[0], c_max=use_c, tail_estimate=tail,
                               terms_summed=count, tolerance_met=met)


def kloosterman_fast(a, b, c):
    """K(a, b; c) through the compiled kernel (kept consistent with arith.kloosterman)."""
    if c < 1:
        raise ValueError("modulus must be positive")
    if c > HARD_C_CAP:
        raise ValueError("modulus exceeds kernel cap %d" % HARD_C_CAP)
    cs = np.array([c], dtype=np.int64)
    rows = _kernels.kloosterman_rows(cs, np.array([a], dtype=np.int64),
                                     np.array([b], dtype=np.int64), _spf(c), _costab())
    return float(rows[0, 0])


def weil_bound(a, b, c):
    """d(c) sqrt(gcd(a, b, c)) sqrt(c), the standard Weil-type bound."""
    return divisor_count(c) * math.sqrt(math.gcd(math.gcd(abs(a), abs(b)), c)) * math.sqrt(c)
