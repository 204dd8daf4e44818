"""
Multiplication operators on monomial truncations
================================================

Exact matrices for polynomial symbols, certified tails for Blaschke
factors, and the defects I - M_b M_b^* and I - M_b^* M_b.
"""

import numpy as np

from rkhs_lab import TruncatedSpace, defect_matrices, hkb_norm_curve, multiplication_matrix, scalar
from rkhs_lab.kernels import BlaschkeProduct, Polynomial, RadialPower

np.set_printoptions(precision=4, suppress=True)
bergman = TruncatedSpace(RadialPower(2), 6)

S = multiplication_matrix(bergman, scalar(Polynomial((0, 1))))
print("shift on the Bergman space, subdiagonal:", np.diag(S.entries, -1))

phi = scalar(BlaschkeProduct((0.3,)))
M = multiplication_matrix(bergman.extend(50), phi)
print("phi_0.3: {} extra rows, tail bound {:.1e}".format(M.entries.shape[0] - 51, M.exactness.bound))

# the Hardy shift leaves only the constants in H(b)
hardy = TruncatedSpace(RadialPower(1), 6)
D, Delta2 = defect_matrices(hardy, scalar(Polynomial((0, 1))))
print("D_N for b = z on the Hardy space:\n", D.real)

# b itself belongs to H_k(b) for a polynomial b in the Bergman space
b = scalar(Polynomial((0, 0.3, 0.2)))
c = hkb_norm_curve(TruncatedSpace(RadialPower(2), 400), b, b.components[0])
print("||b||_b lower bounds:", np.round(c.values, 6), "divergent:", c.divergent)

# z is not in H(z) on the Hardy space
c = hkb_norm_curve(TruncatedSpace(RadialPower(1), 100), scalar(Polynomial((0, 1))), [0, 1], (25, 50, 100))
print("||z|| in H(z):", c.values, "divergent:", c.divergent)
