"""Operator-inequality checks on truncations.

Each checker draws random coefficient vectors from a seeded generator,
evaluates both sides in orthonormal coordinates and reports the largest
relative violation. A verdict holds when that violation is at most
``VIOLATION_TOL``; it is numerical evidence on the truncation, not a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .gram import PSD_TOL, PsdReport, PsdVerdict, build_gram, check_psd, check_psd_matrix
from .kernels import (BergmanType, Kernel, Polynomial, RadialPower, RowMultiplier, SampleSet, SubKernel)
from .linalg import HermitianPinv
from .sampling import random_ball_points, rng
from .truncation import TruncatedSpace, defect_matrices, multiplication_matrix, shift_matrix

VIOLATION_TOL = 1e-10


@dataclass(frozen=True)
class InequalityReport:
    name: str
    holds: bool
    max_violation: float
    trials: int
    worst_trial: int = -1

    @property
    def verdict(self) -> str:
        return "PASS" if self.holds else "FAIL"


def _report(name: str, lhs: np.ndarray, rhs: np.ndarray, tol: float = VIOLATION_TOL) -> InequalityReport:
    lhs = np.atleast_1d(np.asarray(lhs, dtype=float))
    rhs = np.atleast_1d(np.asarray(rhs, dtype=float))
    viol = (lhs - rhs) / np.maximum(np.abs(rhs), 1.0)
    i = int(np.argmax(viol)) if viol.size else -1
    worst = float(viol[i]) if viol.size else 0.0
    return InequalityReport(name, bool(worst <= tol), worst, int(lhs.size), i)


def _random_coords(g: np.random.Generator, n: int, trials: int) -> np.ndarray:
    return g.standard_normal((n, trials)) + 1j * g.standard_normal((n, trials))


def _sq(X: np.ndarray) -> np.ndarray:
    return np.sum(np.abs(X) ** 2, axis=0)


def _pinv_sq(P: HermitianPinv, X: np.ndarray) -> np.ndarray:
    """Column-wise ``x^* D^+ x``, ``inf`` for columns outside the numerical range."""
    C = P.coords(X)
    vals = np.sum(np.abs(C) ** 2 / P.w[:, None], axis=0)
    if P.Vnull.shape[1]:
        out = np.linalg.norm(P.Vnull.conj().T @ X, axis=0) / np.maximum(np.linalg.norm(X, axis=0), 1e-300)
        vals = np.where(out > 1e-8, np.inf, vals)
    return vals


# ---------------------------------------------------------------------------
# backward shift on H(b) spaces over the Hardy kernel

def backward_shift_check(kernel: SubKernel, trials: int = 1000, N: int = 20, seed: int = 0,
                         pad: int = 20) -> InequalityReport:
    """Check ``||Lf|| <= ||f||`` in ``H_{k^b}``, ``Lf = (f - f(0)) / z``.

    The kernel must be ``SubKernel(szego(), b, 1)`` with ``b(0) = 0``. Test
    functions are ``f = (I - M_b M_b^*) h`` for random ``h`` of degree ``<= N``,
    whose norm is exactly ``<(I - M_b M_b^*) h, h>``; ``||Lf||`` is the
    truncated estimate ``(Lf)^* D^+ (Lf)`` at a larger degree.
    """
    if not (isinstance(kernel, SubKernel) and kernel.m == 1 and isinstance(kernel.base, RadialPower)
            and kernel.base.beta == 1.0):
        raise ValueError("backward_shift_check needs SubKernel(szego(), b, 1)")
    b = kernel.b
    if b.b0_norm(1) > 1e-14:
        raise ValueError("backward_shift_check needs b(0) = 0")
    H = TruncatedSpace(kernel.base, N)
    M = multiplication_matrix(H, b)
    A = M.entries[: H.dim]
    T = M.codomain_degree
    g = rng(seed)
    h = _random_coords(g, H.dim, trials)
    Bh = A.conj().T @ h                      # M_b^* h, exact
    f = -(M.entries @ Bh)
    f[: H.dim] += h                          # (I - M_b M_b^*) h, degree <= T
    fnorm = _sq(h) - _sq(Bh)
    Lf = f[1:]                               # Hardy coordinates are monomial coefficients
    big = defect_matrices(H, b, N=T - 1 + pad)
    Lf_big = np.zeros((big.space.dim, trials), dtype=complex)
    Lf_big[: Lf.shape[0]] = Lf
    lnorm = _pinv_sq(HermitianPinv(big.D), Lf_big)
    return _report("backward_shift", lnorm, fnorm)


# ---------------------------------------------------------------------------
# the forward-shift inequality ||zf + g||^2 <= 2 (||f||^2 + ||zg||^2)

def shimorin_sides(space: TruncatedSpace, fhat: np.ndarray, ghat: np.ndarray) -> tuple:
    """``(||zf + g||^2, 2(||f||^2 + ||zg||^2))`` for coordinate vectors (columns allowed)."""
    S = shift_matrix(space).entries
    fhat = np.asarray(fhat, dtype=complex)
    ghat = np.asarray(ghat, dtype=complex)
    zf = S @ fhat
    zg = S @ ghat
    comb = zf.copy()
    comb[: space.dim] += ghat
    return _sq(comb), 2.0 * (_sq(fhat) + _sq(zg))


def check_shimorin(kernel: Kernel, trials: int = 1000, N: int = 30, seed: int = 0) -> InequalityReport:
    """Random test of the forward-shift inequality on the degree-``N`` truncation (d = 1)."""
    sp = TruncatedSpace(kernel, N)
    g = rng(seed)
    f = _random_coords(g, sp.dim, trials)
    h = _random_coords(g, sp.dim, trials)
    lhs, rhs = shimorin_sides(sp, f, h)
    return _report("shimorin", lhs, rhs)


# ---------------------------------------------------------------------------
# the Bergman-type inequality for H_k(b)

@dataclass
class _BergmanTypeSetup:
    space: TruncatedSpace
    pinv: HermitianPinv
    D: np.ndarray
    mult_u: np.ndarray
    shift: np.ndarray
    c: complex
    r: int
    src_dim: int


def _bergman_type_setup(k: BergmanType, b: RowMultiplier, src_degree: int, pad: int) -> _BergmanTypeSetup:
    if not k.is_radial:
        raise ValueError("the Bergman-type kernel must have monomial u-entries")
    if not k.u.is_polynomial:
        raise ValueError("u must be polynomial")
    du = max(k.u.degree, 1)
    top = src_degree + du + pad
    sp = TruncatedSpace(k, top)
    src = sp.extend(src_degree)
    mu = multiplication_matrix(src, k.u, codomain_degree=top).entries
    sh = multiplication_matrix(src, RowMultiplier((Polynomial((0, 1)),)), codomain_degree=top).entries
    D = defect_matrices(sp, b).D
    return _BergmanTypeSetup(sp, HermitianPinv(D), D, mu, sh, k.c, k.u.width(1), src.dim)


def _bt_sides(st: _BergmanTypeSetup, f0: np.ndarray, fs: np.ndarray) -> tuple:
    """``f0``: (src_dim, T); ``fs``: (r * src_dim, T). Returns (lhs, rhs) arrays."""
    F = st.mult_u @ fs
    F[: st.src_dim] += f0
    phif0 = st.c * (st.shift @ f0)
    n = st.src_dim
    pad = lambda X: np.vstack([X, np.zeros((st.space.dim - X.shape[0], X.shape[1]), dtype=complex)])
    lhs = _pinv_sq(st.pinv, F)
    rhs = _pinv_sq(st.pinv, phif0)
    for i in range(st.r):
        rhs = rhs + _pinv_sq(st.pinv, pad(fs[i * n : (i + 1) * n]))
    return lhs, rhs


def bergman_type_sides(k: BergmanType, b: RowMultiplier, f0, fs: Sequence, pad: int = 10) -> tuple:
    """Both sides of ``||f0 + sum u_n f_n||^2 <= ||phi f0||^2 + sum ||f_n||^2`` in ``H_k(b)``.

    ``f0`` and the entries of ``fs`` are monomial coefficient arrays; norms
    are the truncated ``D^+`` estimates (exact when ``D`` is diagonal).
    """
    r = k.u.width(1)
    if len(fs) != r:
        raise ValueError("need one function per entry of u ({} given, {} expected)".format(len(fs), r))
    arrays = [np.atleast_1d(np.asarray(f, dtype=complex)) for f in [f0, *fs]]
    deg = max(a.size for a in arrays) - 1
    st = _bergman_type_setup(k, b, deg, pad)
    src = st.space.extend(deg)
    cols = [src.coords(a)[:, None] for a in arrays]
    lhs, rhs = _bt_sides(st, cols[0], np.vstack(cols[1:]) if r else np.zeros((0, 1)))
    return float(lhs[0]), float(rhs[0])


def check_bergman_type_inequality(k: BergmanType, b: RowMultiplier, trials: int = 500, N: int = 10, seed: int = 0,
                                  pad: int = 10) -> InequalityReport:
    """Random test of the Bergman-type inequality in ``H_k(b)`` (forward direction).

    Test functions are ``f = (I - M_b M_b^*) h`` with random ``h`` of degree
    ``<= N``; this needs polynomial ``b`` with ``b(0) = 0``.
    """
    if not b.is_polynomial:
        raise ValueError("random Bergman-type trials need a polynomial b")
    if b.b0_norm(1) > 1e-14:
        raise ValueError("the Bergman-type inequality needs b(0) = 0")
    q = b.degree
    st = _bergman_type_setup(k, b, N + q, pad)
    base = st.space.extend(N)
    g = rng(seed)
    r = st.r

    def element():
        h = np.zeros((st.space.dim, trials), dtype=complex)
        h[: base.dim] = _random_coords(g, base.dim, trials)
        return (st.D @ h)[: st.src_dim]

    f0 = element()
    fs = np.vstack([element() for _ in range(r)]) if r else np.zeros((0, trials), dtype=complex)
    lhs, rhs = _bt_sides(st, f0, fs)
    return _report("bergman_type", lhs, rhs)


# ---------------------------------------------------------------------------
# hypercontraction tower

@dataclass(frozen=True)
class TowerLevel:
    n: int
    operator: PsdReport = field(repr=False)
    gram: PsdReport = field(repr=False)
    consistent: bool = True
    witness_points: Optional[np.ndarray] = field(default=None, repr=False)
    pair: tuple = (0.0, 0.9)
    pair_det: float = math.nan

    @property
    def verdict(self) -> str:
        if not self.consistent:
            return "INCONSISTENT"
        return "PSD" if self.operator.verdict == PsdVerdict.PSD else "NOT_PSD"


def tower_samples(seed: int = 0, n: int = 60) -> SampleSet:
    """``n`` random disk points together with the two-point witness ``{0, 0.9}``."""
    pts = np.concatenate([[0.0, 0.9], random_ball_points(n, 1, seed)[:, 0]])
    return SampleSet.from_array(pts, label="tower{}".format(n), seed=seed)


def hypercontraction_tower(beta: float, b: RowMultiplier, m: int, N: int = 60,
                           samples: Optional[SampleSet] = None, seed: int = 0,
                           pair: tuple = (0.0, 0.9)) -> list:
    """Positivity of ``sum_j (-1)^j C(n, j) M_b^j M_b^{*j}`` for ``n = 0..m``, two ways.

    The operator route compresses the alternating sum to degree ``<= N``
    (exact, since ``P_N M_b^j P_N = A^j`` with ``A = P_N M_b P_N``). The Gram
    route checks the kernel ``s^beta (1 - b b^*)^n`` on ``samples``. Levels
    where the two verdicts differ are marked inconsistent. ``pair_det`` is
    the determinant of the kernel's 2x2 Gram matrix on ``pair``, a witness
    of non-positivity when negative.
    """
    if b.width(1) != 1:
        raise ValueError("hypercontraction_tower takes a scalar b")
    sp = TruncatedSpace(RadialPower(beta), N)
    A = multiplication_matrix(sp, b).entries[: sp.dim]
    samples = tower_samples(seed) if samples is None else samples
    if np.any(np.abs(b(samples.array)) >= 1.0):
        raise ValueError("|b| must be < 1 on the sample points")
    powers = [np.eye(sp.dim, dtype=complex)]
    for _ in range(m):
        powers.append(A @ powers[-1])
    out = []
    for n in range(m + 1):
        T = sum((-1) ** j * math.comb(n, j) * (powers[j] @ powers[j].conj().T) for j in range(n + 1))
        op = check_psd_matrix(T, PSD_TOL)
        kern = RadialPower(beta) if n == 0 else SubKernel(RadialPower(beta), b, n)
        gr = check_psd(build_gram(kern, samples), PSD_TOL)
        wp = None
        if gr.witness is not None:
            top2 = np.argsort(-np.abs(gr.witness))[:2]
            wp = samples.array[np.sort(top2), 0]
        G2 = kern.gram(np.asarray(pair, dtype=complex)[:, None])
        det = float((G2[0, 0] * G2[1, 1] - abs(G2[0, 1]) ** 2).real)
        out.append(TowerLevel(n, op, gr, op.verdict == gr.verdict, wp, tuple(pair), det))
    return out
