"""
Operator inequalities on truncations
====================================

Backward-shift contractivity, the forward-shift inequality, the
Bergman-type inequality, and the hypercontraction tower.
"""

from rkhs_lab import (backward_shift_check, check_bergman_type_inequality, check_shimorin, hypercontraction_tower,
                      scalar, szego)
from rkhs_lab.inequalities import bergman_type_sides
from rkhs_lab.kernels import BergmanType, BlaschkeProduct, Polynomial, RadialPower, SubKernel

for c in (0, 1, 0.5):
    r = backward_shift_check(SubKernel(szego(), scalar(Polynomial((0, c)))), trials=1000)
    print("backward shift, b = {}z: {} (worst {:.1e})".format(c, r.verdict, r.max_violation))

for beta in (1, 2):
    print("forward shift on s^{}: {}".format(beta, check_shimorin(RadialPower(beta)).verdict))

# unweighted Bergman data: phi = sqrt(2) z, u = z / sqrt(2)
k = BergmanType(2 ** 0.5, scalar(Polynomial((0, 2 ** -0.5))))
print("spot check f0 = f1 = 1: lhs, rhs =", bergman_type_sides(k, scalar(Polynomial((0,))), [1.0], [[1.0]]))
print("random tuples, b = z/2:", check_bergman_type_inequality(k, scalar(Polynomial((0, 0.5)))).verdict)

for beta, b, m in ((2, Polynomial((0, 1)), 3), (3.5, BlaschkeProduct((0.3,)), 3)):
    levels = hypercontraction_tower(beta, scalar(b), m)
    print("beta={} m={}: {}".format(beta, m, [lv.verdict for lv in levels]),
          "pair det at n=m: {:.3f}".format(levels[-1].pair_det))
