"""The worked ground-truth example: periods and single-valued matrix of
the curve y^2 + y = x^3 - x^2 - 10x - 20 (the modular curve X_0(11)).

The de Rham basis is (dz, x dz); the period matrix P has det 2 pi i
(Legendre), and S = P^{-1} P-bar is a real involution with Tr S = 0.  The
entries of S predict two Fourier coefficients of weight-2 Poincare series
at level 11, which the Kloosterman sums then confirm with no curve input
at all.
"""

import numpy as np

from svperiods.periods import check_block_relations, period_matrix, sv_matrix
from svperiods.poincare import poincare_coeff
from svperiods.svp import predicted_coeffs_from_periods

MODEL = (0, -1, 1, -10, -20)

P = period_matrix(MODEL)
print("period matrix P:")
print(P)
print("det P - 2 pi i:", abs(np.linalg.det(P) - 2j * np.pi))

S = sv_matrix(P, weight=1)
print("\nsingle-valued matrix S = P^{-1} conj(P):")
print(S.entries)
print("block-relation report:", check_block_relations(S))

pred_pos, pred_neg = predicted_coeffs_from_periods(MODEL)
print("\nperiod-side predictions:")
print("  a_1(P_{ 1,2,11}) = -2 pi i / (w1 conj(w2) - conj(w1) w2) =", pred_pos)
print("  a_1(P_{-1,2,11}) = (conj(w1) e2 - conj(w2) e1)/(...) - 1 =", pred_neg)

print("\nKloosterman series at c_max = 1e5 (about 3 s):")
for m, pred in ((1, pred_pos), (-1, pred_neg)):
    coeff = poincare_coeff(m, 2, 11, 1, c_max=10**5)
    print("  m=%+d: series %-12.7f vs periods %-12.7f  diff %.2e"
          % (m, coeff.value, pred, abs(coeff.value - pred)))
