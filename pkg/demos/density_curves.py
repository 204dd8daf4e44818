"""
Density of polynomials and kernel functions
===========================================

Residuals of best approximation of k^{b,m}_w by polynomials of growing
degree, and of k^b_w by spans of base kernels on nested ring centres.
"""

from rkhs_lab import scalar
from rkhs_lab.density import kernel_span_curve, poly_residual_curve
from rkhs_lab.kernels import BlaschkeProduct, RadialPower
from rkhs_lab.sampling import ring_centers

phi = scalar(BlaschkeProduct((0.5,)))
degrees = (0, 5, 10, 20, 40, 80, 150)
for beta, m in ((2, 1), (3, 2)):
    c = poly_residual_curve(beta, phi, m, 0.3, degrees)
    print("beta={} m={}".format(beta, m))
    for n, r in zip(c.degrees, c.residuals):
        print("  N={:<4d} residual {:.3e}".format(n, r))

C = ring_centers((0.3, 0.6, 0.85), 14)
c = kernel_span_curve(RadialPower(2), scalar(BlaschkeProduct((0.3,))), 0.4, [C[:n] for n in (8, 16, 24, 32, 40)])
for n, r in zip(c.degrees, c.residuals):
    print("{:2d} centres  residual {:.3e}".format(n, r))
