import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rkhs_lab.gram import PsdVerdict, build_gram, check_psd, check_psd_matrix, mult_norm_estimate, norm_lower_bound
from rkhs_lab.kernels import Product, RadialPower, SampleSet, SubKernel, dirichlet, szego
from rkhs_lab.sampling import graded_ring_schedule, nested_ring_schedule, nested_random_schedule, random_samples

from conftest import BERGMAN, blaschke, disk, poly

SLACK = 1e-12


def test_szego_two_point_gram():
    G = build_gram(szego(), SampleSet((0, 0.5)))
    np.testing.assert_allclose(G.entries, [[1, 1], [1, 4 / 3]], rtol=1e-15)
    assert np.linalg.det(G.entries).real == pytest.approx(1 / 3, rel=1e-14)
    # eigenvalues of [[1, 1], [1, 4/3]]: (7/3 -+ sqrt(1/9 + 4)) / 2
    lam = (7 / 3 - np.sqrt(1 / 9 + 4)) / 2
    assert check_psd(G).min_eig == pytest.approx(lam, rel=1e-13)
    assert lam == pytest.approx(0.153, abs=5e-4)


def test_negative_control_two_points():
    K = SubKernel(BERGMAN, poly(0, 1), 3)
    G = build_gram(K, SampleSet((0, 0.9)))
    np.testing.assert_allclose(G.entries, [[1, 1], [1, 0.19]], atol=1e-14)
    assert np.linalg.det(G.entries).real == pytest.approx(-0.81, rel=1e-13)
    r = check_psd(G)
    assert r.verdict == PsdVerdict.NOT_PSD
    v = r.witness
    assert np.vdot(v, G.entries @ v).real == pytest.approx(r.min_eig, rel=1e-12)
    assert r.min_eig < 0


@pytest.mark.parametrize("beta", [0.5, 1, 2, 3.5])
def test_radial_power_grams_psd(beta):
    r = check_psd(build_gram(RadialPower(beta), random_samples(60, 1, seed=3)))
    assert r.verdict == PsdVerdict.PSD
    assert r.min_eig >= -1e-10 * max(1, r.max_eig)


def test_empty_sample_set_is_psd():
    assert check_psd(build_gram(szego(), SampleSet(()))).verdict == PsdVerdict.PSD


def test_nonfinite_is_inconclusive():
    assert check_psd_matrix(np.array([[np.nan, 0], [0, 1]])).verdict == PsdVerdict.INCONCLUSIVE


# -- norm lower bound ------------------------------------------------------------

def test_norm_of_kernel_function():
    S = SampleSet((0, 0.5, -0.3j, 0.7))
    G = build_gram(szego(), S)
    f = szego().gram(S.array, np.array([[0.5]]))[:, 0]
    assert norm_lower_bound(G, f).value == pytest.approx(np.sqrt(4 / 3), rel=1e-12)
    assert norm_lower_bound(G, 2 * f).value == pytest.approx(2 * np.sqrt(4 / 3), rel=1e-12)


def test_bergman_norm_of_z_increases_to_limit():
    sched = nested_ring_schedule((0.5, 0.8), 4, 4)
    vals = [norm_lower_bound(build_gram(BERGMAN, S), S.array[:, 0]).value for S in sched]
    assert all(b >= a - SLACK for a, b in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(2 ** -0.5, abs=1e-8)


def test_norm_length_mismatch():
    with pytest.raises(ValueError):
        norm_lower_bound(build_gram(szego(), SampleSet((0, 0.5))), [1.0])


# -- multiplier norm -------------------------------------------------------------

def test_constant_multiplier():
    G = build_gram(BERGMAN, random_samples(20, 1, seed=1))
    assert mult_norm_estimate(G, np.full(20, 2.0)).value == pytest.approx(2.0, rel=1e-10)


def test_shift_on_hardy_increases_to_one():
    vals = [mult_norm_estimate(build_gram(szego(), S), S.array[:, 0]).value for S in graded_ring_schedule()]
    assert all(b >= a - SLACK for a, b in zip(vals, vals[1:]))
    assert vals[-1] <= 1 + 1e-9
    assert vals[-1] > 0.99


def test_inner_multiplier_on_hardy():
    b = blaschke(0.5)
    vals = [mult_norm_estimate(build_gram(szego(), S), b(S.array)).value for S in graded_ring_schedule()]
    assert all(y >= x - SLACK for x, y in zip(vals, vals[1:]))
    assert 0.99 < vals[-1] <= 1 + 1e-9


# -- invariants --------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(5))
def test_monotone_on_nested_random_sets(seed):
    sched = nested_random_schedule((5, 10, 20, 30), 1, seed, rmax=0.9)
    b = blaschke(0.4, -0.2j)
    nv = [norm_lower_bound(build_gram(BERGMAN, S), 1 / (1 - 0.3 * S.array[:, 0])).value for S in sched]
    mv = [mult_norm_estimate(build_gram(BERGMAN, S), b(S.array)).value for S in sched]
    assert all(y >= x - SLACK * max(1, x) for x, y in zip(nv, nv[1:]))
    assert all(y >= x - SLACK * max(1, x) for x, y in zip(mv, mv[1:]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 5))
def test_contractive_containment(seed, n):
    # the H_k lower bound of f in span{k^b_y} never exceeds its H_k(b) norm
    g = np.random.default_rng(seed)
    b = blaschke(0.3)
    kb = SubKernel(BERGMAN, b)
    Y = disk(g, n, 0.8)
    c = g.standard_normal(n) + 1j * g.standard_normal(n)
    exact = np.sqrt(np.vdot(c, kb.gram(Y) @ c).real)
    S = random_samples(40, 1, seed=seed % 1000 + 1, rmax=0.9)
    f = kb.gram(S.array, Y) @ c
    assert norm_lower_bound(build_gram(BERGMAN, S), f).value <= exact * (1 + 1e-9)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_product_bound(seed):
    g = np.random.default_rng(seed)
    s, t = RadialPower(1.0), RadialPower(1.5)
    Y1, Y2 = disk(g, 3, 0.8), disk(g, 2, 0.8)
    c1 = g.standard_normal(3) + 1j * g.standard_normal(3)
    c2 = g.standard_normal(2) + 1j * g.standard_normal(2)
    nf = np.sqrt(np.vdot(c1, s.gram(Y1) @ c1).real)
    ng = np.sqrt(np.vdot(c2, t.gram(Y2) @ c2).real)
    S = random_samples(40, 1, seed=seed % 997 + 1, rmax=0.9)
    fg = (s.gram(S.array, Y1) @ c1) * (t.gram(S.array, Y2) @ c2)
    assert norm_lower_bound(build_gram(Product(s, t), S), fg).value <= nf * ng * (1 + 1e-9)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.2, 4.0), st.floats(0.2, 4.0), st.integers(0, 2 ** 32))
def test_schur_closure(b1, b2, seed):
    S = random_samples(30, 1, seed=seed % 10007, rmax=0.95)
    for k in (Product(RadialPower(b1), RadialPower(b2)), Product(RadialPower(b1), dirichlet())):
        assert check_psd(build_gram(k, S)).verdict == PsdVerdict.PSD


def test_blaschke_echo_of_shift_contractivity():
    for K in (szego(), BERGMAN, RadialPower(3.5)):
        for S in graded_ring_schedule():
            if mult_norm_estimate(build_gram(K, S), S.array[:, 0]).value <= 1 + 1e-6:
                b = blaschke(0.5, -0.3j, 0.7)
                assert mult_norm_estimate(build_gram(K, S), b(S.array)).value <= 1 + 1e-5
