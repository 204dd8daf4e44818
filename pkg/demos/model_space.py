"""
The model of H_k(b) inside H_k + L_Delta
========================================

H_k(b) is unitarily the complement of M = {(b h, h)}. We check the norm
identity and reproducing property and solve for the representer l_y.
"""

import numpy as np

from rkhs_lab import ModelSpace, TruncatedSpace, kernel_model_pair, representer_l_y, verify_norm_identity, scalar
from rkhs_lab.errors import DeltaNotInjectiveError
from rkhs_lab.kernels import BlaschkeProduct, Polynomial, RadialPower
from rkhs_lab.model import reproducing_error

hardy, bergman = RadialPower(1), RadialPower(2)
half_z = scalar(Polynomial((0, 0.5)))

p = kernel_model_pair(0.5, ModelSpace(hardy, half_z, 200))
print("Hardy, b = z/2, y = 0.5: k^b(y,y) = {:.12f}, ||k^b_y||^2 + ||b(y) k_y||_D^2 = {:.12f}".format(
    p.hkb, p.hk + p.delta))

model = ModelSpace(bergman, scalar(BlaschkeProduct((0.3,))), 200)
g = np.random.default_rng(0)
Y = 0.8 * np.sqrt(g.random(5)) * np.exp(2j * np.pi * g.random(5))
c = g.standard_normal(5) + 1j * g.standard_normal(5)
r = verify_norm_identity(Y, c, model)
print("Bergman, phi_0.3, 5 centres: lhs {:.10f} rhs {:.10f} relerr {:.1e}".format(r.lhs, r.rhs, r.relerr))
print("reproducing error {:.1e}".format(reproducing_error(Y, c, model)))

sp = TruncatedSpace(hardy, 40)
rep = representer_l_y(0.5, sp, half_z)
ky = sp.kernel_coords(np.array([0.5]))[:, 0]
print("l_y = -k_y / 3 to within {:.1e}".format(np.max(np.abs(rep.l + ky / 3))))

try:
    representer_l_y(0.5, sp, scalar(Polynomial((0, 1))))
except DeltaNotInjectiveError as exc:
    print("b = z:", exc)
