"""
Gram positivity of radial and subspace kernels
==============================================

Check positivity of s^beta and of k^{b,m} = s^beta (1 - b b^*)^m on a
seeded 60-point grid, then watch the negative control fail with a witness.
"""

import numpy as np

from rkhs_lab import RadialPower, SubKernel, build_gram, check_psd, scalar
from rkhs_lab.kernels import BlaschkeProduct, Polynomial, SampleSet
from rkhs_lab.sampling import random_samples

S = random_samples(60, 1, seed=7)

for beta in (1, 2, 3.5):
    r = check_psd(build_gram(RadialPower(beta), S))
    print("s^{:<4} min eig {: .3e}  max eig {:.3e}  {}".format(beta, r.min_eig, r.max_eig, r.verdict.value))

# m < beta keeps k^{b,m} positive
phi = scalar(BlaschkeProduct((0.5,)))
for beta, m in ((2, 1), (3.5, 2), (3.5, 3)):
    r = check_psd(build_gram(SubKernel(RadialPower(beta), phi, m), S))
    print("beta={} m={} with phi_0.5: {}".format(beta, m, r.verdict.value))

# negative control: b = z, m = 3 over s^2
z = scalar(Polynomial((0, 1)))
K = SubKernel(RadialPower(2), z, 3)
r = check_psd(build_gram(K, S))
print("negative control:", r.verdict.value, "quadratic form {:.3f}".format(r.min_eig))

# the smallest witness: two points
G = build_gram(K, SampleSet((0, 0.9))).entries
print("Gram on {0, 0.9}:\n", np.round(G.real, 4), "\ndeterminant", round(np.linalg.det(G).real, 4))
