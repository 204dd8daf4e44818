import numpy as np
import pytest

from rkhs_lab.kernels import BergmanType, SubKernel, szego
from rkhs_lab.inequalities import (backward_shift_check, bergman_type_sides, check_bergman_type_inequality,
                                   check_shimorin, hypercontraction_tower, shimorin_sides)
from rkhs_lab.truncation import TruncatedSpace

from conftest import BERGMAN, HARDY, blaschke, poly

UNWEIGHTED = BergmanType(2 ** 0.5, poly(0, 2 ** -0.5))


@pytest.mark.parametrize("b", [poly(0), poly(0, 1), poly(0, 0.5)], ids=["zero", "z", "z/2"])
def test_backward_shift_contractive(b):
    r = backward_shift_check(SubKernel(szego(), b), trials=1000)
    assert r.holds and r.verdict == "PASS"
    assert r.max_violation <= 1e-10


def test_backward_shift_needs_b0_zero():
    with pytest.raises(ValueError):
        backward_shift_check(SubKernel(szego(), poly(0.5)))


def test_shimorin_spot_values():
    sp = TruncatedSpace(BERGMAN, 5)
    one = np.zeros(sp.dim)
    one[0] = 1
    lhs, rhs = shimorin_sides(sp, one, one)
    assert lhs == pytest.approx(1.5, rel=1e-14)
    assert rhs == pytest.approx(3.0, rel=1e-14)


def test_shimorin_zero_f_coefficientwise(gen):
    sp = TruncatedSpace(BERGMAN, 30)
    g = gen.standard_normal(sp.dim)
    lhs, rhs = shimorin_sides(sp, np.zeros(sp.dim), g)
    assert lhs <= rhs


@pytest.mark.parametrize("k", [BERGMAN, HARDY], ids=["bergman", "hardy"])
def test_shimorin_random(k):
    assert check_shimorin(k, trials=1000).holds


def test_bergman_type_spot():
    lhs, rhs = bergman_type_sides(UNWEIGHTED, poly(0), [1.0], [[1.0]])
    assert lhs == pytest.approx(1.25, rel=1e-12)
    assert rhs == pytest.approx(2.0, rel=1e-12)


def test_bergman_type_zero_tuple():
    lhs, rhs = bergman_type_sides(UNWEIGHTED, poly(0, 0.5), [0.0], [[0.0]])
    assert lhs == 0 and rhs == 0


def test_bergman_type_random():
    assert check_bergman_type_inequality(UNWEIGHTED, poly(0, 0.5), trials=500).holds


def test_bergman_type_needs_b0_zero():
    with pytest.raises(ValueError):
        check_bergman_type_inequality(UNWEIGHTED, poly(0.3), trials=5)


# -- hypercontraction tower -----------------------------------------------------------

def test_tower_shift_m2_all_psd():
    levels = hypercontraction_tower(2, poly(0, 1), 2)
    assert [lv.verdict for lv in levels] == ["PSD"] * 3


def test_tower_shift_m3_fails_at_three():
    levels = hypercontraction_tower(2, poly(0, 1), 3)
    assert [lv.verdict for lv in levels] == ["PSD", "PSD", "PSD", "NOT_PSD"]
    assert levels[3].pair == (0.0, 0.9)
    assert levels[3].pair_det == pytest.approx(-0.81, rel=1e-12)


def test_tower_blaschke_all_psd():
    levels = hypercontraction_tower(3.5, blaschke(0.3), 3)
    assert all(lv.verdict == "PSD" for lv in levels)


@pytest.mark.parametrize("beta,b,m", [(2, poly(0, 1), 3), (3, poly(0, 0.8), 4), (1.5, blaschke(0.5), 2),
                                      (2, blaschke(0.2, -0.6j), 3)])
def test_tower_routes_agree(beta, b, m):
    assert all(lv.consistent for lv in hypercontraction_tower(beta, b, m, seed=5))


def test_tower_rejects_unimodular_samples():
    with pytest.raises(ValueError):
        hypercontraction_tower(2, poly(1.0), 1)
