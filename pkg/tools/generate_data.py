"""Regenerate the q-expansion data files shipped in svperiods/data.

Every shipped newform with a File recipe is reconstructed here from first
principles with the package's own exact series arithmetic:

  * weight-2 levels 17, 19, 21, 49: Fourier coefficients from brute-force
    point counts of the curve model over F_p (smooth points at bad primes),
    extended multiplicatively by the Hecke recursion;
  * (2,10), (3,8), (5,6): unique cusp form = (eta-quotient newform of
    weight w-2) * (E_2(q) - N E_2(q^N)), normalized;
  * (7,4): the T_2 eigenvector with eigenvalue != 9 in the 2-dimensional
    a_0 = 0 subspace of span{(E_2(q)-7E_2(q^7))^2, E_4(q), E_4(q^7)};
  * (8,4): the eta quotient eta(2t)^4 eta(4t)^4.

Each expansion is verified to be a Hecke eigenform for the first few good
primes before it is written.  Run from the repository root:

    python tools/generate_data.py
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from svperiods.catalog import curve_model, data_dir  # noqa: E402
from svperiods.qexp import (  # noqa: E402
    QSeries,
    dilate,
    eisenstein,
    eta_quotient,
    hecke_tp,
)

T = 400
PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def primes_upto(n):
    sieve = [True] * (n + 1)
    sieve[0:2] = [False, False]
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = [False] * len(sieve[p * p :: p])
    return [p for p, ok in enumerate(sieve) if ok]


def count_smooth_points(model, p):
    """Number of F_p-points of the Weierstrass model, singular point excluded,
    point at infinity included."""
    a1, a2, a3, a4, a6 = (a % p for a in model)
    count = 1  # infinity
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y) % p != rhs:
                continue
            fy = (2 * y + a1 * x + a3) % p
            fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % p
            if fy == 0 and fx == 0:
                continue  # singular (bad reduction)
            count += 1
    return count


def ap_weight2(model, N, p):
    n_pts = count_smooth_points(model, p)
    if N % p == 0:
        # bad reduction: the group of nonsingular points has order p - a_p
        return p - n_pts
    return p + 1 - n_pts


def weight2_expansion(N, T):
    model = curve_model(N)
    ap = {p: ap_weight2(model, N, p) for p in primes_upto(T)}
    a = [0] * (T + 1)
    a[1] = 1
    for p, apv in ap.items():
        q = p
        prev, cur = 1, apv
        while q <= T:
            a[q] = cur
            if N % p == 0:
                prev, cur = cur, cur * apv
            else:
                prev, cur = cur, apv * cur - p * prev
            q *= p
    for n in range(2, T + 1):
        if a[n]:
            continue
        for p in ap:
            if n % p == 0:
                q = p
                while n % (q * p) == 0:
                    q *= p
                m = n // q
                if m > 1:
                    a[n] = a[q] * a[m]
                break
    return QSeries(1, [Fraction(x) for x in a[1:]], T)


def e2_level(N, T):
    """E_2(q) - N E_2(q^N), a true modular form of weight 2 on Gamma_0(N)."""
    return (eisenstein(2, T) - Fraction(N) * dilate(eisenstein(2, T // N), N).truncate(T)).truncate(T)


def normalized(f):
    return f.scalar_mul(1 / f.coeff(f.valuation))


def product_expansion(N, eta_spec, T):
    base = eta_quotient(eta_spec, T + 1)
    return normalized((base * e2_level(N, T + 1)).truncate(T))


def weight4_level7(T):
    e2sq = e2_level(7, T) ** 2
    e4 = eisenstein(4, T)
    e4_7 = dilate(eisenstein(4, T // 7), 7).truncate(T)
    # a_0 = 0 subspace of the weight-4 space span{e2sq, e4, e4_7}
    u = e2sq - e2sq.coeff(0) * e4
    v = e4_7 - e4
    # T_2 acts on span{u, v}; split off the eigenvector with eigenvalue != 9
    tu, tv = hecke_tp(u, 2, 2), hecke_tp(v, 2, 2)
    m = _matrix_in_basis([tu, tv], [u, v], probe=(1, 2))
    tr = m[0][0] + m[1][1]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    lam = tr - 9
    if 9 * lam != det:
        raise RuntimeError("T_2 on S_4(Gamma_0(7)) + Eisenstein split failed")
    # eigenvector (x, y) of the first row of (m - lam)
    x, y = -m[0][1], m[0][0] - lam
    if x == 0 and y == 0:
        x, y = m[1][1] - lam, -m[1][0]
    return normalized(x * u + y * v)


def _matrix_in_basis(images, basis, probe):
    """Exact matrix of the map sending basis[j] -> images[j] coordinates."""
    n1, n2 = probe
    b = [[s.coeff(n1), s.coeff(n2)] for s in basis]
    det = b[0][0] * b[1][1] - b[1][0] * b[0][1]
    if det == 0:
        raise RuntimeError("probe coefficients do not separate the basis")
    out = []
    for img in images:
        c1, c2 = img.coeff(n1), img.coeff(n2)
        x = (c1 * b[1][1] - c2 * b[1][0]) / det
        y = (b[0][0] * c2 - b[0][1] * c1) / det
        out.append([x, y])
    return [[out[0][0], out[1][0]], [out[0][1], out[1][1]]]


def check_eigenform(f, N, weight, label):
    k = weight - 2
    for p in (2, 3, 5, 7):
        if N % p == 0 or p > f.T // p:
            continue
        lhs = hecke_tp(f, p, k)
        rhs = f.coeff(p) * f.truncate(f.T // p)
        if lhs != rhs:
            raise RuntimeError("%s is not a T_%d eigenform" % (label, p))
    print("  %-12s a_2..a_7 = %s" % (label, [f.coeff(n) for n in range(2, 8)]))


def write_file(path, f, headline):
    lines = ["# " + headline,
             "# Generated by tools/generate_data.py; exact rational coefficients.",
             "# Format: '<exponent> <rational>'; missing exponents are zero."]
    for n, c in f.items():
        lines.append("%d %s" % (n, c))
    path.write_text("\n".join(lines) + "\n")
    print("  wrote %s (T = %d)" % (path, f.T))


def main():
    out = data_dir()
    out.mkdir(parents=True, exist_ok=True)

    jobs = []
    for N in (17, 19, 21, 49):
        jobs.append((N, 2, weight2_expansion(N, T),
                     "Level %d weight 2 newform from point counts of X_0(%d)" % (N, N)))
    jobs.append((2, 10, product_expansion(2, [(1, 8), (2, 8)], T),
                 "Level 2 weight 10 newform: eta(t)^8 eta(2t)^8 * (E2(q) - 2 E2(q^2)), normalized"))
    jobs.append((3, 8, product_expansion(3, [(1, 6), (3, 6)], T),
                 "Level 3 weight 8 newform: eta(t)^6 eta(3t)^6 * (E2(q) - 3 E2(q^3)), normalized"))
    jobs.append((5, 6, product_expansion(5, [(1, 4), (5, 4)], T),
                 "Level 5 weight 6 newform: eta(t)^4 eta(5t)^4 * (E2(q) - 5 E2(q^5)), normalized"))
    jobs.append((7, 4, weight4_level7(T),
                 "Level 7 weight 4 newform: T_2 eigenvector in the Eisenstein-product space"))
    jobs.append((8, 4, eta_quotient([(2, 4), (4, 4)], T),
                 "Level 8 weight 4 newform: eta(2t)^4 eta(4t)^4"))

    for N, w, f, headline in jobs:
        check_eigenform(f, N, w, "N=%d k=%d" % (N, w))
        write_file(out / ("qexp_N%d_k%d.txt" % (N, w)), f, headline)


if __name__ == "__main__":
    main()
