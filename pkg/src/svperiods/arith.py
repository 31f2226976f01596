"""Exact integer arithmetic: modular inverses, divisor sums, Kloosterman sums."""

from __future__ import annotations

import math

C_MAX = 2**31 - 1


class NonInvertibleError(ValueError):
    """gcd(x, c) > 1, so x has no inverse modulo c."""


def mod_inverse(x, c):
    """Inverse of x modulo c, as a residue in [0, c).

    For c = 1 the group (Z/1)* is the single class and 0 is returned.
    """
    if c < 1:
        raise ValueError("modulus must be positive")
    if c == 1:
        return 0
    g, s, _ = _xgcd(x % c, c)
    if g != 1:
        raise NonInvertibleError("gcd(%d, %d) = %d > 1" % (x, c, g))
    return s % c


def _xgcd(a, b):
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def factorize(n):
    """Prime factorization as a dict {p: exponent}, trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n:
        for q in (p, p + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        p += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisor_sigma(k, n):
    """sigma_k(n) = sum of d^k over divisors d of n, exact."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1
    for p, e in factorize(n).items():
        if k == 0:
            out *= e + 1
        else:
            out *= (p ** (k * (e + 1)) - 1) // (p**k - 1)
    return out


def euler_phi(n):
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def divisor_count(n):
    return divisor_sigma(0, n)


def kloosterman(a, b, c):
    """Kloosterman sum K(a, b; c) = sum over units x mod c of e((ax + b x^{-1})/c).

    Direct summation over (Z/cZ)* in double precision with compensated
    (Kahan) accumulation.  The exact value is real; the accumulated
    imaginary part is checked against 1e-10 * max(1, phi(c)) as a
    diagnostic.
    """
    if c < 1:
        raise ValueError("modulus must be positive")
    if c > C_MAX:
        raise OverflowError("modulus %d exceeds the supported bound 2^31 - 1" % c)
    if c == 1:
        return 1.0
    a %= c
    b %= c
    primes = list(factorize(c))
    two_pi_over_c = 2.0 * math.pi / c
    re, re_comp = 0.0, 0.0
    im, im_comp = 0.0, 0.0
    count = 0
    for x in range(1, c):
        if any(x % p == 0 for p in primes):
            continue
        xinv = pow(x, -1, c)
        theta = two_pi_over_c * ((a * x + b * xinv) % c)
        # Kahan step on both components
        y = math.cos(theta) - re_comp
        t = re + y
        re_comp = (t - re) - y
        re = t
        y = math.sin(theta) - im_comp
        t = im + y
        im_comp = (t - im) - y
        im = t
        count += 1
    if abs(im) > 1e-10 * max(1, count):
        raise ArithmeticError("imaginary part %g of K(%d,%d;%d) exceeds the diagnostic bound" % (im, a, b, c))
    return re
