"""Reproduce the three classical Poincare-series expansions with integer
Fourier coefficients, two ways where possible.

  P_{-1,2,1}  = q^-1 - 196884 q - 42987520 q^2 - 2592899910 q^3 - ...
  P_{-2,6,4}  = q^-2 - 35 q^2 + 4096 q^4 - 97686 q^6 + ...
  P_{-1,4,9}  = q^-1 + 2 q^2 - 49 q^5 + 48 q^8 + 771 q^11 - ...

The first is -Dj, so exact series algebra gives the same integers that the
Kloosterman-Bessel sums approach numerically.
"""

from svperiods.poincare import poincare_qexp
from svperiods.qexp import bol, j_invariant

print("Exact route: -Dj = bol(-j, 0)")
dj = bol(-j_invariant(5), 0)
print("  principal part: q^-1;  a_n for n = 1..5:", [int(dj.coeff(n)) for n in range(1, 6)])

print("\nKloosterman-Bessel route (weight 2 converges ~ c^{-3/2}; c <= 3e4 here):")
exp = poincare_qexp(-1, 2, 1, 3, c_max=30_000)
for c in exp.coefficients:
    print("  a_%d = %14.3f   (tail estimate %.2e)" % (c.n, c.value, c.tail_estimate))

print("\nP_{-2,6,4}: weight 6 converges fast; c <= 2000 already gives ~1e-9:")
exp = poincare_qexp(-2, 6, 4, 6, c_max=2000)
print(" ", {c.n: round(c.value, 6) for c in exp.coefficients})

print("\nP_{-1,4,9}: the CM case behind its integrality; support is n = 2 mod 3:")
exp = poincare_qexp(-1, 4, 9, 12, c_max=5000)
print(" ", {c.n: round(c.value, 6) for c in exp.coefficients if abs(c.value) > 1e-4})
