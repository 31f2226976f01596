"""Exact q-expansion algebra: eta quotients, the de Rham pairing, and the
dual weakly holomorphic form g that turns coefficients of P_{-1} into the
single-valued ratio rho.

Everything here is exact rational arithmetic - no floating point.
"""

from fractions import Fraction

from svperiods.qexp import (
    bol,
    de_rham_pairing,
    delta_qexp,
    dual_form_level1,
    eisenstein,
    eta_quotient,
)
from svperiods.svp import dual_form_weight2

T = 10

delta = delta_qexp(T)
print("Delta = eta^24:", [(n, int(c)) for n, c in list(delta.items())[:5]], "...")

e4, e6 = eisenstein(4, T), eisenstein(6, T)
print("E4^3 - E6^2 == 1728 Delta:",
      (e4**3 - e6**2).truncate(T) == delta.scalar_mul(1728).truncate(T))

f11 = eta_quotient([(1, 2), (11, 2)], T)
print("level-11 newform:", [(n, int(c)) for n, c in list(f11.items())[:6]], "...")

# the pairing <[f],[g]> = k! sum a_n(f) a_{-n}(g) / n^{k+1} kills Bol images
h = (e4**2 * e6 / delta**2).truncate(4)
print("\n<[Delta], [D^11 (E4^2 E6 / Delta^2)]> =", de_rham_pairing(delta, bol(h, 10), 10))

g12 = dual_form_level1(12, 8)
print("\ndual form g at level 1, weight 12 (pole 1/10!, a_0 = a_1 = 0):")
print("  ", [(n, str(c)) for n, c in list(g12.items())[:4]], "...")
print("   <[Delta],[g]> =", de_rham_pairing(delta.truncate(8), g12, 10))

g11 = dual_form_weight2((11, 2), 8)
print("\nweight-2 dual form at level 11 (pullback of x dz):")
print("  ", [(n, int(c)) for n, c in list(g11.items())[:6]], "...")
print("   a_1(g) =", g11.coeff(1), " -> a_1(P_{-1,2,11}) = rho + a_1(g) = rho - 1")
