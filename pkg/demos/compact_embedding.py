"""
Is the embedding H_k(b) -> H_k compact?
=======================================

Count eigenvalues of the truncated defect D_N above a threshold as N
grows. Settling counts suggest compactness, but the threshold matters: on
the Bergman space the defect of phi_0.5 decays like 1/n, so counts above
1e-3 keep rising until N is in the thousands.
"""

from rkhs_lab import embedding_profile, boundary_modulus_scan, scalar
from rkhs_lab.diagnostics import radial_path
from rkhs_lab.kernels import BlaschkeProduct, Polynomial, RadialPower

hardy, bergman = RadialPower(1), RadialPower(2)
phi = scalar(BlaschkeProduct((0.5,)))
lens = scalar(Polynomial((0.5, 0.5)))

for name, k, b, eps in (("Hardy, z", hardy, scalar(Polynomial((0, 1))), 1e-3),
                        ("Hardy, (1+z)/2", hardy, lens, 1e-3),
                        ("Bergman, phi_0.5", bergman, phi, 1e-3),
                        ("Bergman, phi_0.5", bergman, phi, 3e-2)):
    p = embedding_profile(k, b, epsilon=eps)
    print("{:<18} eps={:<6} counts {} -> {}".format(name, eps, list(p.eigencounts), p.verdict_hint))

# a necessary condition: ||b(x)|| -> 1 wherever k(x, x) blows up
s = boundary_modulus_scan(lens, hardy, radial_path(-1))
for kd, bn in s.table[::3]:
    print("k(x,x) = {:10.1f}   |b(x)| = {:.5f}".format(kd, bn))
print("violation:", s.violation)
