"""Compiled inner loops for the Kloosterman-Bessel series.

For each modulus c the kernel enumerates the units x in [1, (c-1)/2]
(x and c-x contribute equal cosines), computes all inverses with one
extended Euclid plus a prefix-product chain, and accumulates
cos(2*pi*(a*x + b*x^{-1})/c) for every requested pair (a, b) through a
shared linearly-interpolated cosine table.  Products stay below 2^49, so
the float-reciprocal reduction is exact after at most one correction each
way.

Per-modulus results are independent of the thread schedule; callers
reduce them in increasing c with exact summation, so outputs are
bit-identical for any worker count.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

C_KERNEL_MAX = 1 << 24  # float-reciprocal reduction needs c^2 << 2^53

_TAB_SIZE = 1 << 17


def cos_table():
    return np.cos(np.linspace(0.0, 2.0 * np.pi, _TAB_SIZE + 1))


@njit(cache=True)
def sieve_spf(n):
    """Smallest prime factor for every integer up to n."""
    spf = np.zeros(n + 1, dtype=np.int32)
    for i in range(2, n + 1):
        if spf[i] == 0:
            for j in range(i, n + 1, i):
                if spf[j] == 0:
                    spf[j] = i
    return spf


@njit(inline="always")
def _mulmod(a, b, c, invc):
    p = a * b
    q = np.int64(p * invc)
    r = p - q * c
    r += c * np.int64(r < 0)
    r -= c * np.int64(r >= c)
    return r


@njit(cache=True)
def _modinv(a, c):
    old_r, r = a, c
    old_s, s = np.int64(1), np.int64(0)
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    res = old_s % c
    if res < 0:
        res += c
    return res


@njit(cache=True, fastmath={"reassoc", "nsz", "contract"})
def _one_modulus(c, a_args, b_args, spf, costab, xs, xinv, pp, out_row):
    npair = a_args.shape[0]
    if c == 1:
        for j in range(npair):
            out_row[j] = 1.0
        return
    if c == 2:
        for j in range(npair):
            out_row[j] = 1.0 if (a_args[j] + b_args[j]) % 2 == 0 else -1.0
        return
    primes = np.empty(9, dtype=np.int64)
    cnt = np.empty(9, dtype=np.int64)
    nf = 0
    t = c
    even = t % 2 == 0
    if even:
        while t % 2 == 0:
            t //= 2
    while t > 1:
        p = np.int64(spf[t])
        primes[nf] = p
        nf += 1
        while t % p == 0:
            t //= p
    half = (c - 1) // 2
    invc = 1.0 / c
    r = np.int64(1)
    k = 0
    step = 2 if even else 1
    if even:
        # odd candidates only; the first odd multiple of p sits at index (p+1)/2
        for i in range(nf):
            cnt[i] = (primes[i] + 1) >> 1
    else:
        for i in range(nf):
            cnt[i] = primes[i]
    for x in range(1, half + 1, step):
        ok = True
        for i in range(nf):
            cnt[i] -= 1
            if cnt[i] == 0:
                cnt[i] = primes[i]
                ok = False
        if ok:
            xs[k] = np.int32(x)
            r = _mulmod(r, np.int64(x), c, invc)
            pp[k] = np.int32(r)
            k += 1
    acc = _modinv(r, c)
    for i in range(k - 1, 0, -1):
        xinv[i] = np.int32(_mulmod(np.int64(pp[i - 1]), acc, c, invc))
        acc = _mulmod(acc, np.int64(xs[i]), c, invc)
    if k > 0:
        xinv[0] = np.int32(acc)
    tabsize = costab.shape[0] - 1
    scale = tabsize * invc
    for j in range(npair):
        a = a_args[j] % c
        b = b_args[j] % c
        total = 0.0
        # a*x + b*xinv < 2^49 for c <= 2^24: one exact float-recip reduction
        for i in range(k):
            p = a * np.int64(xs[i]) + b * np.int64(xinv[i])
            q = np.int64(p * invc)
            rem = p - q * c
            rem += c * np.int64(rem < 0)
            rem -= c * np.int64(rem >= c)
            tpos = rem * scale
            idx = np.int64(tpos)
            fr = tpos - idx
            total += costab[idx] + fr * (costab[idx + 1] - costab[idx])
        out_row[j] = 2.0 * total


@njit(parallel=True, cache=True)
def kloosterman_rows(cs, a_args, b_args, spf, costab):
    """K(a_j, b_j; c_i) for every modulus c_i and argument pair j."""
    nc = cs.shape[0]
    npair = a_args.shape[0]
    out = np.empty((nc, npair), dtype=np.float64)
    maxhalf = 0
    for i in range(nc):
        h = (cs[i] - 1) // 2
        if h > maxhalf:
            maxhalf = h
    nblocks = min(nc, 128)
    for b in prange(nblocks):
        xs = np.empty(max(maxhalf, 1), dtype=np.int32)
        xinv = np.empty(max(maxhalf, 1), dtype=np.int32)
        pp = np.empty(max(maxhalf, 1), dtype=np.int32)
        # strided assignment balances the c^2-growing per-modulus work
        for ci in range(b, nc, nblocks):
            _one_modulus(cs[ci], a_args, b_args, spf, costab, xs, xinv, pp, out[ci])
    return out
