import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rkhs_lab.errors import DimensionMismatchError, OutsideBallError, TailBoundError
from rkhs_lab.kernels import (BallAutomorphism, BergmanType, BlaschkeProduct, Point, Polynomial, Product,
                              RadialCoeff, RadialPower, RowMultiplier, SampleSet, ScaledCoordinate, SubKernel,
                              dirichlet, eval_kernel, eval_multiplier, radial_coeffs, scalar, szego,
                              taylor_expand_component)

from conftest import blaschke, disk, poly


# -- points and samples ------------------------------------------------------

def test_point_rejects_boundary():
    with pytest.raises(OutsideBallError):
        Point((1.0,))
    with pytest.raises(OutsideBallError):
        Point((0.8, 0.6))


def test_sample_set_requires_distinct_points():
    with pytest.raises(ValueError):
        SampleSet((0.1, 0.1))


def test_sample_set_mixed_dimensions():
    with pytest.raises(DimensionMismatchError):
        SampleSet(((0.1,), (0.1, 0.2)))


def test_sample_union_drops_exact_duplicates_only():
    a = SampleSet((0.1, 0.2))
    b = SampleSet((0.2, 0.2 + 1e-15))
    assert len(a.union(b)) == 3


# -- kernel evaluation -------------------------------------------------------

def test_szego_value():
    assert eval_kernel(szego(), 0.5, 0.5) == pytest.approx(4 / 3, rel=1e-15)


def test_sub_kernel_of_shift_is_one(gen):
    K = SubKernel(szego(), poly(0, 1))
    Z = disk(gen, 7)
    np.testing.assert_allclose(K.gram(Z), np.ones((7, 7)), atol=1e-14)


def test_sub_kernel_power_three():
    # (1 - 0.81)^3 (1 - 0.81)^-2 = 0.19
    K = SubKernel(RadialPower(2), poly(0, 1), 3)
    assert eval_kernel(K, 0.9, 0.9).real == pytest.approx(0.19, rel=1e-12)


def test_sub_kernel_rejects_m_zero():
    with pytest.raises(ValueError):
        SubKernel(szego(), poly(0, 1), 0)


def test_radial_power_rejects_nonpositive_beta():
    with pytest.raises(ValueError):
        RadialPower(-1)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        eval_kernel(szego(), (0.1,), (0.1, 0.2))


def test_bergman_type_unweighted_bergman_data(gen):
    # c = sqrt 2, u = z / sqrt 2 gives 1 / (1 - t)^2 with t = z conj w
    k = BergmanType(2 ** 0.5, poly(0, 2 ** -0.5))
    Z = disk(gen, 5)
    np.testing.assert_allclose(k.gram(Z), RadialPower(2).gram(Z), rtol=1e-13)
    np.testing.assert_allclose(k.radial_coefficients(6), np.arange(1, 8), rtol=1e-14)


def test_dirichlet_closed_form(gen):
    Z = disk(gen, 6, 0.8)
    t = np.outer(Z, Z.conj())
    np.testing.assert_allclose(dirichlet().gram(Z), -np.log(1 - t) / t, rtol=1e-12)


def test_product_radial_coefficients():
    k = Product(RadialPower(1.5), RadialPower(1.5))
    np.testing.assert_allclose(k.radial_coefficients(8), radial_coeffs(3.0, 8).coeffs, rtol=1e-13)


# -- radial coefficients -----------------------------------------------------

def test_radial_coeffs_small_cases():
    np.testing.assert_array_equal(radial_coeffs(1, 10).coeffs, np.ones(11))
    np.testing.assert_allclose(radial_coeffs(2, 10).coeffs, np.arange(1, 12), rtol=0)
    assert radial_coeffs(1.5, 2).coeffs[2] == pytest.approx(1.875, rel=1e-15)


@given(st.floats(0.1, 6.0), st.integers(1, 60))
def test_radial_coeffs_recursion(beta, N):
    c = radial_coeffs(beta, N).coeffs
    n = np.arange(N)
    np.testing.assert_allclose(c[1:], c[:-1] * (n + beta) / (n + 1), rtol=1e-15, atol=0)


# -- multipliers -------------------------------------------------------------

def test_eval_multiplier_examples():
    a = (0.3, 0.2j)
    assert eval_multiplier(scalar(BallAutomorphism(a)), a).norm < 1e-15
    assert eval_multiplier(blaschke(0.5), 0).row[0] == pytest.approx(-0.5)
    assert eval_multiplier(poly(0.5, 0.5), -0.9).row[0] == pytest.approx(0.05)


def test_row_multiplier_width():
    b = RowMultiplier((BallAutomorphism((0.1, 0.2)), ScaledCoordinate(1, 0.5)))
    assert b.width(2) == 3
    assert b(np.array([[0.1, 0.2]])).shape == (1, 3)
    assert scalar(Polynomial((0, 1))).width(1) == 1


def test_taylor_polynomial_verbatim():
    e = taylor_expand_component(Polynomial((1, 2, 3)), 5)
    np.testing.assert_array_equal(e.coeffs[:3], [1, 2, 3])
    assert e.tail_mass == 0


def test_taylor_single_factor():
    e = taylor_expand_component(BlaschkeProduct((0.5,)), 1)
    np.testing.assert_allclose(e.coeffs, [-0.5, 0.75], rtol=1e-15)
    # exact tail mass 0.75^2 * 0.25 / (1 - 0.25) = 0.1875
    assert 0.1875 - 1e-15 <= e.tail_mass <= 0.25


def test_taylor_two_zeros_constant_term():
    # phi_0.5(0) phi_-0.3(0) = (-0.5)(0.3)
    e = taylor_expand_component(BlaschkeProduct((0.5, -0.3)), 0)
    assert e.coeffs[0] == pytest.approx(-0.15, rel=1e-14)
    assert e.tail_mass >= 1 - 0.15 ** 2 - 1e-14


def test_taylor_tail_bound_enforced():
    with pytest.raises(TailBoundError):
        taylor_expand_component(BlaschkeProduct((0.9,)), 2, tol=1e-6)


@settings(max_examples=30)
@given(st.lists(st.complex_numbers(max_magnitude=0.9), min_size=1, max_size=4), st.integers(0, 40))
def test_taylor_tail_certificate(zeros, N):
    f = BlaschkeProduct(tuple(zeros))
    e = f.taylor(N)
    # an inner function has unit l2 coefficient mass
    true_tail = 1.0 - float(np.sum(np.abs(e.coeffs) ** 2))
    assert e.tail_mass >= true_tail - 1e-12


# -- invariants ----------------------------------------------------------------

FAMILIES = [RadialPower(1), RadialPower(2), RadialPower(3.5), RadialPower(0.5), dirichlet(),
            RadialCoeff(coeffs=(1, 0.5, 0.25)), Product(RadialPower(1), dirichlet()),
            SubKernel(RadialPower(2), blaschke(0.5)), BergmanType(2 ** 0.5, poly(0, 2 ** -0.5))]


@pytest.mark.parametrize("k", FAMILIES, ids=lambda k: type(k).__name__)
def test_hermitian_symmetry(k, gen):
    Z, W = disk(gen, 200, 0.95), disk(gen, 200, 0.95)
    kzw = np.array([eval_kernel(k, z, w) for z, w in zip(Z, W)])
    kwz = np.array([eval_kernel(k, w, z) for z, w in zip(Z, W)])
    assert np.all(np.abs(kzw - np.conj(kwz)) <= 1e-13 * np.abs(kzw))


@pytest.mark.parametrize("k", FAMILIES[:7], ids=lambda k: type(k).__name__)
def test_diagonal_real_positive(k, gen):
    d = np.diag(k.gram(disk(gen, 50, 0.95)))
    assert np.all(np.abs(d.imag) <= 1e-13 * np.abs(d))
    assert np.all(d.real >= 0)


def test_schwarz_pick_contractivity(gen):
    Z = disk(gen, 500, 0.999)
    for b in (blaschke(0.5, -0.3j, 0.9), scalar(BallAutomorphism((0.7,)))):
        assert np.all(np.linalg.norm(b(Z), axis=1) <= 1 + 1e-14)
    x = gen.standard_normal((300, 6))
    Z3 = x[:, :3] + 1j * x[:, 3:]
    Z3 *= (0.999 * gen.random((300, 1)) ** (1 / 6)) / np.linalg.norm(Z3, axis=1, keepdims=True)
    b = scalar(BallAutomorphism((0.3, -0.2j, 0.4)))
    assert np.all(np.linalg.norm(b(Z3), axis=1) <= 1 + 1e-14)
