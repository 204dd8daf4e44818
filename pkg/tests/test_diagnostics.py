import numpy as np
import pytest

from rkhs_lab.diagnostics import (blaschke_identity_sides, boundary_modulus_scan, embedding_profile,
                                  expansivity_check, profile_hint, radial_path, verify_ball_automorphism_identity,
                                  verify_blaschke_identity)
from rkhs_lab.kernels import BlaschkeProduct, dirichlet

from conftest import BERGMAN, HARDY, blaschke, disk, poly


# -- independent oracle for the Blaschke identity ------------------------------------

def _oracle_rhs(zeros, z, w):
    """Direct term-by-term sum, no shared code with the library."""
    total = 0j
    for l, a in enumerate(zeros):
        term = (1 - abs(a) ** 2) / ((1 - np.conj(a) * z) * np.conj(1 - np.conj(a) * w))
        for aj in zeros[:l]:
            term *= (z - aj) / (1 - np.conj(aj) * z) * np.conj((w - aj) / (1 - np.conj(aj) * w))
        total += term
    return total


def test_blaschke_identity_one_zero():
    lhs, rhs = blaschke_identity_sides([0.5], np.array([0.0]), np.array([0.0]))
    assert lhs[0] == pytest.approx(0.75) and rhs[0] == pytest.approx(0.75)


def test_blaschke_identity_empty():
    lhs, rhs = blaschke_identity_sides([], np.array([0.3]), np.array([-0.2j]))
    assert abs(lhs[0]) < 1e-16 and rhs[0] == 0


def test_blaschke_identity_random(gen):
    zeros = list(disk(gen, 5, 0.9))
    Z, W = disk(gen, 20, 0.95), disk(gen, 20, 0.95)
    assert verify_blaschke_identity(zeros, list(zip(Z, W))) < 1e-10
    _, rhs = blaschke_identity_sides(zeros, Z, W)
    np.testing.assert_allclose(rhs, [_oracle_rhs(zeros, z, w) for z, w in zip(Z, W)], rtol=1e-12)


# -- automorphisms -------------------------------------------------------------------

def test_automorphism_hand_value():
    r = verify_ball_automorphism_identity((0.3, 0.0), [((0, 0), (0, 0))])
    assert r.max_error < 1e-15
    # both sides equal 1 - |a|^2 = 0.91 at z = w = 0
    from rkhs_lab.kernels import BallAutomorphism
    assert 1 - np.linalg.norm(BallAutomorphism((0.3, 0.0)).evaluate(np.zeros((1, 2)))) ** 2 == pytest.approx(0.91)


def test_automorphism_identity_map(gen):
    z, w = (0.1, 0.2j), (-0.3, 0.1)
    assert verify_ball_automorphism_identity((0.0, 0.0), [(z, w)]).max_error < 1e-15


@pytest.mark.parametrize("beta", [2.0, 3.5])
def test_automorphism_random_d3(gen, beta):
    def ball(n, r):
        x = gen.standard_normal((n, 6))
        z = x[:, :3] + 1j * x[:, 3:]
        return r * gen.random((n, 1)) ** (1 / 6) * z / np.linalg.norm(z, axis=1, keepdims=True)

    a = ball(1, 0.9)[0]
    r = verify_ball_automorphism_identity(a, list(zip(ball(20, 0.95), ball(20, 0.95))), beta)
    assert r.identity_error < 1e-12 and r.factorization_error < 1e-10


# -- embedding profiles --------------------------------------------------------------

def test_profile_hardy_shift():
    p = embedding_profile(HARDY, poly(0, 1))
    assert p.eigencounts == (1, 1, 1) and p.verdict_hint == "STABILIZING"
    assert all(abs(t - 1) < 1e-12 for t in p.top_eigenvalues)


def test_profile_hardy_non_compact():
    assert embedding_profile(HARDY, poly(0.5, 0.5)).verdict_hint == "GROWING"


def test_profile_bergman_blaschke_counts_grow_at_small_N():
    # compact defect, but 1/n eigenvalue decay keeps counts rising below N ~ 1000
    p = embedding_profile(BERGMAN, blaschke(0.5))
    assert p.eigencounts[0] < p.eigencounts[1] < p.eigencounts[2]


def test_profile_bergman_blaschke_coarse_threshold():
    p = embedding_profile(BERGMAN, blaschke(0.5), epsilon=3e-2)
    assert p.verdict_hint == "STABILIZING"


def test_profile_hint_rule():
    assert profile_hint([3, 5, 5]) == "STABILIZING"
    assert profile_hint([3, 5, 7]) == "GROWING"
    assert profile_hint([5, 3, 4]) == "UNDETERMINED"


# -- boundary scan -----------------------------------------------------------------

def test_scan_flags_boundary_zero():
    s = boundary_modulus_scan(poly(0.5, 0.5), HARDY, radial_path(-1))
    assert s.violation and s.b_norms[-1] < 1e-3


def test_scan_blaschke_tends_to_one():
    for direction in (1, -1, 1j, np.exp(0.7j)):
        s = boundary_modulus_scan(blaschke(0.5), HARDY, radial_path(direction))
        assert not s.violation and s.b_norms[-1] > 0.999


def test_scan_constant_flags():
    assert boundary_modulus_scan(poly(0.9), BERGMAN, radial_path(1)).violation


# -- expansivity ---------------------------------------------------------------------

def test_expansive_on_constant_one():
    # ||phi_0.5||_D^2 = 0.25 + 0.75^2 sum_{n>=1} (n + 1) 0.25^{n-1} >= 1
    from rkhs_lab.truncation import TruncatedSpace, multiplication_matrix
    from rkhs_lab.kernels import scalar
    sp = TruncatedSpace(dirichlet(), 0)
    M = multiplication_matrix(sp, scalar(BlaschkeProduct((0.5,))))
    assert np.linalg.norm(M.entries[:, 0]) >= 1


def test_unimodular_constant_is_isometric():
    r = expansivity_check(dirichlet(), BlaschkeProduct((), 1j), trials=50)
    assert abs(r.min_margin) < 1e-12


@pytest.mark.parametrize("zeros", [(0.5,), (0.3, -0.6j)])
def test_expansive_random(zeros):
    r = expansivity_check(dirichlet(), BlaschkeProduct(zeros), trials=1000, degree=50)
    assert r.holds and r.min_margin >= -1e-9
