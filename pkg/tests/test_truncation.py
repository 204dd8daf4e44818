import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rkhs_lab.errors import DimensionMismatchError
from rkhs_lab.kernels import (BallAutomorphism, Polynomial, RadialPower, RowMultiplier, ScaledCoordinate, dirichlet,
                              scalar, szego)
from rkhs_lab.truncation import (TAIL_TOL, TruncatedSpace, defect_matrices, diverges, hkb_norm_curve,
                                 hkb_norm_estimate, multi_indices, multiplication_matrix, shift_matrix)

from conftest import BERGMAN, HARDY, blaschke, disk, poly


def test_multi_index_order():
    assert multi_indices(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(multi_indices(3, 4)) == math.comb(7, 3)


def test_monomial_norms_bergman():
    sp = TruncatedSpace(BERGMAN, 5)
    np.testing.assert_allclose(sp.norms_sq, 1 / np.arange(1, 7), rtol=1e-14)


def test_monomial_norms_drury_arveson():
    # ||z1 z2||^2 = 1! 1! / 2! in the Drury-Arveson space
    sp = TruncatedSpace(szego(), 2, d=2)
    assert sp.norms_sq[sp.index((1, 1))] == pytest.approx(0.5, rel=1e-14)


def test_kernel_coordinates_reproduce(gen):
    sp = TruncatedSpace(RadialPower(2.5), 120)
    Z = disk(gen, 4, 0.6)
    K = sp.kernel_coords(Z)
    np.testing.assert_allclose(K.conj().T @ K, RadialPower(2.5).gram(Z), rtol=1e-12)


def test_coords_reject_overflow():
    with pytest.raises(ValueError):
        TruncatedSpace(szego(), 2).coords([0, 0, 0, 1])


def test_non_radial_kernel_rejected():
    from rkhs_lab.kernels import SubKernel
    with pytest.raises(ValueError):
        TruncatedSpace(SubKernel(szego(), poly(0, 1)), 3)


# -- multiplication matrices ---------------------------------------------------

def test_shift_on_hardy():
    S = shift_matrix(TruncatedSpace(HARDY, 6)).entries
    np.testing.assert_allclose(np.diag(S, -1), np.ones(7), rtol=0)
    assert S.shape == (8, 7)


def test_shift_on_bergman():
    S = shift_matrix(TruncatedSpace(BERGMAN, 6)).entries
    n = np.arange(7)
    np.testing.assert_allclose(np.diag(S, -1), np.sqrt((n + 1) / (n + 2)), rtol=1e-14)


def test_constant_multiplier_is_scalar_identity():
    M = multiplication_matrix(TruncatedSpace(BERGMAN, 5), poly(0.3 - 0.2j)).entries
    np.testing.assert_allclose(M, (0.3 - 0.2j) * np.eye(6), atol=1e-16)


@pytest.mark.parametrize("kernel", [HARDY, BERGMAN, RadialPower(0.7), dirichlet()], ids=str)
def test_polynomial_exactness(kernel, gen):
    sp = TruncatedSpace(kernel, 12)
    b = poly(0.2, -0.3j, 0.1, 0.05)
    M = multiplication_matrix(sp, b)
    assert M.is_exact
    big = sp.extend(M.codomain_degree)
    f = gen.standard_normal(sp.dim) + 1j * gen.standard_normal(sp.dim)
    Z = disk(gen, 20, 0.95)
    np.testing.assert_allclose(big.evaluate(M.entries @ f, Z), b(Z)[:, 0] * sp.evaluate(f, Z), atol=1e-12)


def test_blaschke_tail_certificate(gen):
    sp = TruncatedSpace(BERGMAN, 50)
    M = multiplication_matrix(sp, blaschke(0.3))
    assert not M.is_exact and M.exactness.bound <= TAIL_TOL
    big = sp.extend(M.codomain_degree)
    f = np.zeros(sp.dim, dtype=complex)
    f[:5] = gen.standard_normal(5)
    Z = disk(gen, 10, 0.5)
    np.testing.assert_allclose(big.evaluate(M.entries @ f, Z), blaschke(0.3)(Z)[:, 0] * sp.evaluate(f, Z),
                               atol=1e-10)


def test_ball_multiplication_d2(gen):
    sp = TruncatedSpace(szego(), 6, d=2)
    b = RowMultiplier((ScaledCoordinate(0, 0.5), BallAutomorphism((0.0, 0.0))))
    M = multiplication_matrix(sp, b)
    big = sp.extend(M.codomain_degree)
    assert M.width == 3
    x = gen.standard_normal((8, 4))
    Z = 0.6 * (x[:, :2] + 1j * x[:, 2:]) / np.linalg.norm(x, axis=1, keepdims=True)
    f = gen.standard_normal(sp.dim)
    vals = b(Z)
    for i in range(3):
        np.testing.assert_allclose(big.evaluate(M.block(i) @ f, Z), vals[:, i] * sp.evaluate(f, Z), atol=1e-13)


# -- defect operators -------------------------------------------------------------

def test_hardy_shift_defect():
    D, Delta2 = defect_matrices(TruncatedSpace(HARDY, 6), poly(0, 1))
    np.testing.assert_allclose(D, np.diag([1, 0, 0, 0, 0, 0, 0]), atol=1e-15)
    np.testing.assert_allclose(Delta2, np.zeros((7, 7)), atol=1e-15)


def test_hardy_half_shift_defect():
    _, Delta2 = defect_matrices(TruncatedSpace(HARDY, 6), poly(0, 0.5))
    np.testing.assert_allclose(Delta2, 0.75 * np.eye(7), atol=1e-15)


def test_zero_symbol_defect():
    D, Delta2 = defect_matrices(TruncatedSpace(BERGMAN, 6), poly(0))
    np.testing.assert_allclose(D, np.eye(7), atol=0)
    np.testing.assert_allclose(Delta2, np.eye(7), atol=0)


@pytest.mark.parametrize("b", [poly(0.1, 0.4, -0.3), poly(0, 0.5j)], ids=["quadratic", "linear"])
def test_compression_consistency(b):
    D1 = defect_matrices(TruncatedSpace(BERGMAN, 10), b).D
    D2 = defect_matrices(TruncatedSpace(BERGMAN, 25), b).D
    np.testing.assert_array_equal(D1, D2[:11, :11])


# -- H_k(b) norm estimates --------------------------------------------------------

def test_norm_of_one_in_constants_space():
    sp = TruncatedSpace(HARDY, 50)
    for N in (5, 20, 50):
        assert hkb_norm_estimate(sp, poly(0, 1), [1.0], N) == pytest.approx(1.0, rel=1e-14)


def test_z_not_in_constants_space():
    c = hkb_norm_curve(TruncatedSpace(HARDY, 50), poly(0, 1), [0, 1.0], (5, 10, 20))
    assert c.divergent and math.isinf(c.values[-1])


def test_membership_of_b_in_bergman():
    b = poly(0, 0.3, 0.2)
    c = hkb_norm_curve(TruncatedSpace(BERGMAN, 400), b, b.components[0])
    assert not c.divergent
    assert all(y >= x - 1e-12 for x, y in zip(c.values, c.values[1:]))


@settings(max_examples=15, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=2, max_size=6), st.floats(0.05, 0.9))
def test_hkb_monotone_in_N(coeffs, scale):
    b = poly(0, scale)
    sp = TruncatedSpace(BERGMAN, 60)
    vals = [hkb_norm_estimate(sp, b, coeffs, N) for N in (10, 20, 40, 60)]
    assert all(y >= x - 1e-12 * max(1, x) for x, y in zip(vals, vals[1:]))


def test_divergence_rule():
    assert diverges([1, 2, math.inf])
    assert diverges([1, 5, 11])
    assert not diverges([1, 5, 9])
