"""
Norms and multiplier norms from sampled data
============================================

Lower bounds sqrt(f^* G^+ f) and the multiplier estimate increase along
nested sample sets and converge to the exact values.
"""

from rkhs_lab import RadialPower, build_gram, mult_norm_estimate, norm_lower_bound, scalar, szego
from rkhs_lab.kernels import BlaschkeProduct
from rkhs_lab.sampling import graded_ring_schedule, nested_ring_schedule

# ||z|| in the Bergman space is 1/sqrt(2)
bergman = RadialPower(2)
for S in nested_ring_schedule((0.5, 0.8), 4, 4):
    est = norm_lower_bound(build_gram(bergman, S), S.array[:, 0])
    print("{:3d} points  ||z|| >= {:.12f}".format(len(S), est.value))
print("exact              {:.12f}".format(2 ** -0.5))

# an inner multiplier of the Hardy space has norm one
phi = scalar(BlaschkeProduct((0.5,)))
for S in graded_ring_schedule():
    G = build_gram(szego(), S)
    print("{:3d} points  ||M_phi|| >= {:.10f}".format(len(S), mult_norm_estimate(G, phi(S.array)).value))
