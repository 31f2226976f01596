"""Exact truncated Laurent series in q over the rationals.

A QSeries stores coefficients for exponents v..T (v = valuation anchor,
T = truncation bound); coefficients beyond T are *unknown*, not zero, and
every operation certifies the tightest window it can.  All arithmetic is
done with `fractions.Fraction`, so identities among eta quotients,
Eisenstein series, Hecke operators and the de Rham pairing are exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .arith import divisor_sigma

Rat = Fraction


class TruncationError(ValueError):
    """Requested coefficients beyond the certified window."""


class QSeries:
    """Truncated Laurent series sum_{n=v}^{T} a_n q^n with exact rational a_n."""

    __slots__ = ("v", "coeffs", "T")

    def __init__(self, v, coeffs, T=None):
        coeffs = [Rat(c) for c in coeffs]
        if T is None:
            T = v + len(coeffs) - 1
        if T < v - 1 or T - v + 1 != len(coeffs):
            raise ValueError("inconsistent window: v=%s T=%s len=%d" % (v, T, len(coeffs)))
        # normalize: leading stored coefficient nonzero unless zero up to T
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            v += 1
        self.v = v
        self.coeffs = tuple(coeffs)
        self.T = T

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_dict(cls, d, T):
        if d:
            v = min(d)
            if max(d) > T:
                raise ValueError("coefficient beyond truncation")
        else:
            v = T + 1
        return cls(v, [d.get(n, 0) for n in range(v, T + 1)], T)

    @classmethod
    def zero(cls, T):
        return cls(T + 1, [], T)

    @classmethod
    def one(cls, T):
        return cls(0, [Rat(1)] + [Rat(0)] * T, T)

    @classmethod
    def q_power(cls, n, T):
        if n > T:
            raise ValueError("q^%d exceeds truncation %d" % (n, T))
        return cls(n, [Rat(1)] + [Rat(0)] * (T - n), T)

    # -- access ---------------------------------------------------------

    def coeff(self, n):
        """Coefficient of q^n; raises beyond the certified truncation."""
        if n > self.T:
            raise TruncationError("coefficient %d beyond truncation %d" % (n, self.T))
        if n < self.v:
            return Rat(0)
        return self.coeffs[n - self.v]

    def is_zero(self):
        return not self.coeffs

    @property
    def valuation(self):
        if self.is_zero():
            raise ValueError("zero series (up to truncation) has no valuation")
        return self.v

    def items(self):
        return ((self.v + i, c) for i, c in enumerate(self.coeffs) if c != 0)

    def truncate(self, T):
        if T > self.T:
            raise TruncationError("cannot extend truncation %d to %d" % (self.T, T))
        if T < self.v:
            return QSeries.zero(T)
        return QSeries(self.v, list(self.coeffs[: T - self.v + 1]), T)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = _const(other, self.T)
        T = min(self.T, other.T)
        v = min(self.v, other.v, T + 1)
        out = [Rat(0)] * (T - v + 1)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                n = s.v + i
                if n <= T:
                    out[n - v] += c
        return QSeries(v, out, T)

    def __neg__(self):
        return QSeries(self.v, [-c for c in self.coeffs], self.T)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = _const(other, self.T)
        return self + (-other)

    def __rmul__(self, scalar):
        return self.scalar_mul(scalar)

    def scalar_mul(self, scalar):
        scalar = Rat(scalar)
        if scalar == 0:
            return QSeries.zero(self.T)
        return QSeries(self.v, [scalar * c for c in self.coeffs], self.T)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scalar_mul(other)
        if self.is_zero() or other.is_zero():
            # valuation of the zero operand is >= v-anchor; certify pessimistically
            T = min(self.T + other.v, other.T + self.v)
            return QSeries.zero(T)
        T = min(self.T + other.v, other.T + self.v)
        v = self.v + other.v
        if T < v - 1:
            raise TruncationError("truncation exhausted in product")
        out = [Rat(0)] * (T - v + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            ni = self.v + i
            jmax = min(len(other.coeffs), T - ni - other.v + 1)
            for j in range(jmax):
                b = other.coeffs[j]
                if b != 0:
                    out[ni + other.v + j - v] += a * b
        return QSeries(v, out, T)

    def invert(self):
        """Multiplicative inverse; requires a nonzero leading coefficient."""
        if self.is_zero():
            raise ZeroDivisionError("inversion of the zero series")
        a0 = self.coeffs[0]
        L = len(self.coeffs)
        # 1/f = q^{-v} * (1/u) with u = f/q^v, u(0) = a0 != 0
        inv = [Rat(0)] * L
        inv[0] = 1 / a0
        for n in range(1, L):
            s = Rat(0)
            for i in range(1, n + 1):
                if i < L and self.coeffs[i] != 0:
                    s += self.coeffs[i] * inv[n - i]
            inv[n] = -s / a0
        return QSeries(-self.v, inv, -self.v + L - 1)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.invert()
        return self.scalar_mul(Rat(1) / Rat(other))

    def __pow__(self, e):
        if e == 0:
            return QSeries.one(max(self.T, 0))
        base = self.invert() if e < 0 else self
        e = abs(e)
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        """Equality of the stored windows (same certified truncation)."""
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.T == other.T and self.v == other.v and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.v, self.coeffs, self.T))

    def __repr__(self):
        terms = []
        for n, c in self.items():
            if len(terms) == 6:
                terms.append("...")
                break
            terms.append("%s*q^%d" % (c, n))
        body = " + ".join(terms) if terms else "0"
        return "QSeries(%s; O(q^%d))" % (body, self.T + 1)


def _const(x, T):
    x = Rat(x)
    return QSeries.from_dict({0: x} if x else {}, T)


# -- classical building blocks -----------------------------------------


def euler_product(d, T):
    """prod_{n>=1} (1 - q^{dn}) via the pentagonal number theorem."""
    coeffs = {0: Rat(1)}
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if d * g1 > T and d * g2 > T:
            break
        sign = -1 if k % 2 else 1
        if d * g1 <= T:
            coeffs[d * g1] = Rat(sign)
        if d * g2 <= T:
            coeffs[d * g2] = Rat(sign)
        k += 1
    return QSeries.from_dict(coeffs, T)


def eta_quotient(spec, T):
    """prod_d (q^{d/24} prod_{n>=1}(1-q^{dn}))^{r_d} for spec = [(d, r_d), ...].

    The total prefactor exponent sum(d*r_d)/24 must be an integer.
    """
    pref = sum(d * r for d, r in spec)
    if pref % 24 != 0:
        raise ValueError("non-integral prefactor exponent %s/24" % pref)
    shift = pref // 24
    # expand at internal truncation so the final q^shift window reaches T
    Ti = T - shift if shift < 0 else T
    out = QSeries.one(Ti)
    for d, r in spec:
        if d < 1:
            raise ValueError("eta argument multiplier must be positive")
        out = out * (euler_product(d, Ti) ** r)
    out = out.truncate(T - shift)
    return QSeries(out.v + shift, list(out.coeffs), out.T + shift)


def eisenstein(weight, T):
    """Normalized E_2, E_4 or E_6 (constant term 1)."""
    pref = {2: -24, 4: 240, 6: -504}
    if weight not in pref:
        raise ValueError("unsupported Eisenstein weight %s" % weight)
    coeffs = [Rat(1)] + [Rat(pref[weight]) * divisor_sigma(weight - 1, n) for n in range(1, T + 1)]
    return QSeries(0, coeffs, T)


def delta_qexp(T):
    """Ramanujan Delta = eta(q)^24."""
    return eta_quotient([(1, 24)], T)


def j_invariant(T):
    """Klein j = E4^3 / Delta, valuation -1, leading coefficient 1."""
    if T < 1:
        raise ValueError("truncation must be >= 1")
    Ti = T + 2  # inversion of Delta costs two window slots
    return (eisenstein(4, Ti) ** 3 / delta_qexp(Ti)).truncate(T)


# -- operators ----------------------------------------------------------


def dilate(f, d):
    """f(q) -> f(q^d); the result is certified through d*T + d - 1."""
    if d < 1:
        raise ValueError("dilation factor must be positive")
    T = d * f.T + d - 1
    return QSeries.from_dict({d * n: c for n, c in f.items()}, T)


def bol(h, k):
    """Bol operator D^{k+1} = (q d/dq)^{k+1}: a_n -> n^{k+1} a_n."""
    return QSeries(h.v, [Rat(h.v + i) ** (k + 1) * c for i, c in enumerate(h.coeffs)], h.T)


def hecke_tp(f, p, k):
    """Hecke T_p on a holomorphic cusp expansion (weight k+2).

    T_p f = sum_{n>=1} (a_{pn} + p^{k+1} a_{n/p}) q^n, truncated at floor(T/p).
    """
    if not f.is_zero() and f.valuation < 1:
        raise ValueError("hecke_tp requires valuation >= 1; use hecke_tp_laurent")
    return hecke_tp_laurent(f, p, k)


def hecke_tp_laurent(f, p, k):
    """T_p by the same coefficient formula on Laurent windows (experimental)."""
    T = f.T // p
    if f.is_zero():
        return QSeries.zero(T)
    # a_{pn} reaches down to ceil(v/p); the p^{k+1} a_{n/p} term down to p*v
    lo = min(-(-f.v // p), p * f.v)
    pk1 = p ** (k + 1)
    d = {}
    for n in range(lo, T + 1):
        c = f.coeff(p * n)
        if n % p == 0:
            c += pk1 * f.coeff(n // p)
        if c:
            d[n] = c
    return QSeries.from_dict(d, T)


def principal_part(f):
    """Coefficients a_n for n <= 0 as a dict (finitely supported)."""
    if f.is_zero():
        return {}
    return {n: c for n, c in f.items() if n <= 0}


def de_rham_pairing(f, g, k):
    """<[f],[g]>_dR = k! sum_{n != 0} a_n(f) a_{-n}(g) / n^{k+1}, exact.

    Requires a_0(f) = 0 and truncation windows covering all cross terms:
    T(f) >= -valuation(g) and T(g) >= -valuation(f).
    """
    if f.is_zero() or g.is_zero():
        return Rat(0)
    if f.v <= 0 <= f.T and f.coeff(0) != 0:
        raise ValueError("de_rham_pairing requires a_0(f) = 0")
    if f.T < -g.v or g.T < -f.v:
        raise TruncationError("truncation windows too short to certify the pairing")
    lo = max(f.v, -g.T)
    hi = min(f.T, -g.v)
    total = Rat(0)
    for n in range(lo, hi + 1):
        if n == 0:
            continue
        a = f.coeff(n)
        if a == 0:
            continue
        b = g.coeff(-n)
        if b != 0:
            total += a * b / Rat(n) ** (k + 1)
    return factorial(k) * total


# -- exact linear algebra over Q ----------------------------------------


def _solve_exact(rows, target):
    """One exact solution x of rows^T x = target (rows = list of column vectors).

    Returns a list of Fractions (free variables set to 0) or None if the
    system is inconsistent.
    """
    ncols = len(rows)
    nrows = len(target)
    aug = [[rows[j][i] for j in range(ncols)] + [target[i]] for i in range(nrows)]
    piv_cols = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][col] != 0:
                fac = aug[i][col]
                aug[i] = [x - fac * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    sol = [Rat(0)] * ncols
    for i, col in enumerate(piv_cols):
        sol[col] = aug[i][ncols]
    return sol


def _echelon_basis(series_list, lo, hi):
    """Reduced row echelon (Miller-style) basis on the window [lo, hi]."""
    pool = [(s, [s.coeff(n) for n in range(lo, hi + 1)]) for s in series_list]
    basis = []  # (pivot column, series, window vector)
    for col in range(hi - lo + 1):
        pick = next((t for t in pool if t[1][col] != 0), None)
        if pick is None:
            continue
        pool.remove(pick)
        s, v = pick
        inv = 1 / v[col]
        s = s.scalar_mul(inv)
        v = [x * inv for x in v]
        pool = [
            (t - w[col] * s, [a - w[col] * b for a, b in zip(w, v)]) for (t, w) in pool
        ]
        basis = [
            (pc, t - w[col] * s, [a - w[col] * b for a, b in zip(w, v)])
            for (pc, t, w) in basis
        ]
        basis.append((col, s, v))
    return [t for _, t, _ in basis]


# -- level-1 spaces ------------------------------------------------------


def dim_cusp_forms_level1(weight):
    """dim S_weight(SL_2(Z)) for even weight >= 0."""
    if weight % 2 or weight < 0:
        return 0
    if weight < 12:
        return 0
    if weight % 12 == 2:
        return weight // 12 - 1
    return weight // 12


def _eis_block(weight, T):
    """Some E4^b E6^c of the given weight (constant term 1)."""
    for c in range(weight // 6 + 1):
        rem = weight - 6 * c
        if rem >= 0 and rem % 4 == 0:
            return eisenstein(4, T) ** (rem // 4) * eisenstein(6, T) ** c
    raise ValueError("no Eisenstein block of weight %d" % weight)


def level1_cusp_basis(weight, T):
    """Echelonized (Miller-like) basis of S_weight(SL_2(Z); Q), exact to T."""
    d = dim_cusp_forms_level1(weight)
    if d == 0:
        return []
    monomials = []
    delta = delta_qexp(T)
    for i in range(1, d + 1):
        w = weight - 12 * i
        for c in range(w // 6 + 1):
            rem = w - 6 * c
            if rem >= 0 and rem % 4 == 0:
                m = delta ** i * eisenstein(4, T) ** (rem // 4) * eisenstein(6, T) ** c
                monomials.append(m)
    basis = _echelon_basis(monomials, 1, d)
    if len(basis) != d:
        raise RuntimeError("cusp basis construction failed at weight %d" % weight)
    return basis


def dual_form_level1(weight, T):
    """The dual weakly holomorphic form g at level 1 for rank-2 weights.

    g has pole order exactly 1, a_0(g) = a_1(g) = 0 and a_{-1}(g) = 1/k!
    (k = weight - 2), so that <[f],[g]>_dR = 1 against the normalized cusp
    form f.  Solved by exact linear algebra in the span of f*j^2, f*j, f
    and an Eisenstein block.
    """
    if dim_cusp_forms_level1(weight) != 1:
        raise ValueError("weight %d is not a rank-2 weight at level 1" % weight)
    k = weight - 2
    Ti = max(T, 2) + 2
    f = level1_cusp_basis(weight, Ti + 3)[0]
    j = j_invariant(Ti + 3)
    candidates = [f * j * j, f * j, f, _eis_block(weight, Ti)]
    cols = [[s.coeff(n) for n in (-1, 0, 1)] for s in candidates]
    target = [Rat(1, factorial(k)), Rat(0), Rat(0)]
    sol = _solve_exact(cols, target)
    if sol is None:
        raise RuntimeError("dual form system inconsistent at weight %d" % weight)
    g = QSeries.zero(Ti)
    for x, s in zip(sol, candidates):
        if x:
            g = g + s.truncate(Ti).scalar_mul(x)
    return g.truncate(T)
