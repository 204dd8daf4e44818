import sys
import numpy as np
import pytest

from rkhs_lab.kernels import BlaschkeProduct, Polynomial, RadialPower, scalar


def poly(*c):
    return scalar(Polynomial(tuple(c)))


def blaschke(*zeros):
    return scalar(BlaschkeProduct(tuple(zeros)))


HARDY = RadialPower(1.0)
BERGMAN = RadialPower(2.0)


@pytest.fixture
def gen():
    return np.random.default_rng(1234)


def disk(g, n, rmax=0.9):
    return rmax * np.sqrt(g.random(n)) * np.exp(2j * np.pi * g.random(n))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "LINES", None):
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(mod.LINES):
        terminalreporter.write_line(mod.LINES[cid])
