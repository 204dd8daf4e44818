"""Finite model of ``H_k(b)`` as the orthogonal complement of ``M`` in ``H_k + L_Delta``.

``L_Delta`` is the completion of ``H_k (x) C^r`` under ``||Delta g||`` with
``Delta^2 = I - M_b^* M_b``, and ``M = {(b h, h)}``. The map ``(u, v) -> u``
restricted to the complement of ``M`` is unitary onto ``H_k(b)``.

Truncation: the ``L_Delta`` component lives on polynomials of degree ``<= N``
(``r`` blocks), the ``H_k`` component on degree ``<= T`` where ``T`` is the
codomain degree of the multiplication matrix (``N + deg b`` for polynomial
``b``). With ``A`` that matrix, ``M_b^*`` is represented by ``A^*`` and
``Delta^2`` by ``I - A^* A``, so the projection below is exactly idempotent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DeltaNotInjectiveError
from .kernels import Kernel, RowMultiplier, SubKernel, as_point, as_point_array
from .linalg import HermitianPinv, hermitize, solve_hermitian
from .truncation import DEFAULT_SCHEDULE, TAIL_TOL, TruncatedSpace, diverges, multiplication_matrix

#: smallest admissible eigenvalue of Delta2_N before the defect is declared non-injective
INJECTIVITY_TOL = 1e-10


class ModelSpace:
    """The truncated model for a radial kernel and a row multiplier ``b``.

    Parameters
    ----------
    kernel : Kernel
        Radial kernel of ``H_k``.
    b : RowMultiplier
        Contractive row multiplier of width ``r``.
    N : int
        Degree of the ``L_Delta`` component.
    """

    def __init__(self, kernel: Kernel, b: RowMultiplier, N: int, d: int = 1, tol: float = TAIL_TOL):
        self.small = kernel if isinstance(kernel, TruncatedSpace) else TruncatedSpace(kernel, N, d)
        self.small = self.small.extend(N)
        self.b = b
        self.mult = multiplication_matrix(self.small, b, tol)
        self.big = self.small.extend(self.mult.codomain_degree)
        self.A = self.mult.entries
        self.r = self.mult.width
        self.Delta2 = hermitize(np.eye(self.A.shape[1]) - self.A.conj().T @ self.A)

    @property
    def kernel(self) -> Kernel:
        return self.small.kernel

    @property
    def N(self) -> int:
        return self.small.N

    @property
    def T(self) -> int:
        return self.big.N

    # coordinates -------------------------------------------------------

    def kernel_vector(self, y, degree: str = "big") -> np.ndarray:
        """Coordinates of ``P k_y`` on the large (``H_k``) or small truncation."""
        sp = self.big if degree == "big" else self.small
        return sp.kernel_coords(as_point_array(y, sp.d))[:, 0]

    def lift(self, row: np.ndarray, vec: np.ndarray) -> np.ndarray:
        """``row (x) vec`` in the ``r``-block layout: ``sum_i row_i e_i (x) vec``."""
        return np.concatenate([c * vec for c in np.asarray(row)])

    def b_at(self, y) -> np.ndarray:
        return self.b(as_point_array(y, self.small.d))[0]

    def _u(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=complex).reshape(-1)
        if u.size > self.big.dim:
            if np.any(u[self.big.dim :] != 0):
                raise ValueError("H_k component exceeds degree {}".format(self.T))
            u = u[: self.big.dim]
        out = np.zeros(self.big.dim, dtype=complex)
        out[: u.size] = u
        return out

    def _v(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=complex).reshape(-1)
        n = self.A.shape[1]
        if v.size > n:
            raise ValueError("L_Delta component exceeds degree {}".format(self.N))
        if v.size < n:
            if self.r != 1:
                raise ValueError("L_Delta component must have {} coordinates".format(n))
            v = np.concatenate([v, np.zeros(n - v.size, dtype=complex)])
        return v

    # geometry ------------------------------------------------------------

    def inner(self, p: tuple, q: tuple) -> complex:
        """``<p, q> = <u_p, u_q> + <Delta^2 v_p, v_q>``."""
        up, vp = self._u(p[0]), self._v(p[1])
        uq, vq = self._u(q[0]), self._v(q[1])
        return complex(np.vdot(uq, up) + np.vdot(vq, self.Delta2 @ vp))

    def project(self, u, v) -> tuple:
        """Projection onto ``M``: ``(b w, w)`` with ``w = M_b^* u + Delta^2 v``."""
        w = self.A.conj().T @ self._u(u) + self.Delta2 @ self._v(v)
        return self.A @ w, w

    def element_of_M(self, h) -> tuple:
        h = self._v(h)
        return self.A @ h, h

    def min_delta_eig(self) -> float:
        return float(np.linalg.eigvalsh(self.Delta2)[0])


def _model(space, b, N=None) -> ModelSpace:
    if isinstance(space, ModelSpace):
        if N is None or N == space.N:
            return space
        return ModelSpace(space.small, space.b, N)
    if b is None:
        raise ValueError("a multiplier b is needed to build the model")
    sp = space if N is None else space.extend(N)
    return ModelSpace(sp, b, sp.N, sp.d)


def project_onto_M(u, v, space, b: RowMultiplier = None) -> tuple:
    """``(b w, w)``, ``w = M_b^* u + Delta^2 v``; ``space`` is a ModelSpace or a TruncatedSpace."""
    return _model(space, b).project(u, v)


@dataclass(frozen=True)
class ModelPair:
    """``P_{M-perp}(k_y, 0) = (k^b_y, -b(y)^* k_y)`` with its three squared norms.

    ``hk`` is ``||k^b_y||^2`` in ``H_k``, ``delta`` is ``||b(y)^* k_y||_Delta^2``
    and ``hkb`` is ``k^b(y, y)``, which must equal ``hk + delta``.
    """

    y: tuple
    f: np.ndarray = field(repr=False)
    g: np.ndarray = field(repr=False)
    hk: float
    delta: float
    hkb: float

    @property
    def identity_error(self) -> float:
        return abs(self.hk + self.delta - self.hkb) / max(abs(self.hkb), 1e-300)


def kernel_model_pair(y, space, b: RowMultiplier = None) -> ModelPair:
    """The pair ``(k^b_y, -b(y)^* k_y)``, computed as ``(k_y, 0)`` minus its projection onto ``M``."""
    model = _model(space, b)
    y = as_point(y)
    ky = model.kernel_vector(y.array[None, :])
    bw, w = model.project(ky, np.zeros(model.A.shape[1]))
    f = ky - bw
    g = -w
    hk = float(np.vdot(f, f).real)
    delta = float(np.vdot(g, model.Delta2 @ g).real)
    hkb = float(SubKernel(model.kernel, model.b).gram(y.array[None, :])[0, 0].real)
    return ModelPair(y.coords, f, g, hk, delta, hkb)


@dataclass(frozen=True)
class NormIdentity:
    lhs: float
    rhs: float
    relerr: float
    hk: float = math.nan
    delta: float = math.nan


def verify_norm_identity(centers, coeffs, space, b: RowMultiplier = None) -> NormIdentity:
    """Compare ``||sum c_i k^b_{y_i}||_b^2`` from the ``k^b`` Gram matrix with ``||f||_k^2 + ||g||_Delta^2``.

    The right side uses the model coordinates of ``f = sum c_i k^b_{y_i}``
    and ``g = -sum c_i b(y_i)^* k_{y_i}``.
    """
    model = _model(space, b)
    Y = as_point_array(centers, model.small.d)
    c = np.asarray(coeffs, dtype=complex).reshape(-1)
    if c.size != Y.shape[0]:
        raise ValueError("need one coefficient per centre")
    Gb = SubKernel(model.kernel, model.b).gram(Y)
    lhs = float(np.vdot(c, Gb @ c).real)
    K = model.big.kernel_coords(Y)
    Ku = K @ c
    bw, w = model.project(Ku, np.zeros(model.A.shape[1]))
    f = Ku - bw
    hk = float(np.vdot(f, f).real)
    delta = float(np.vdot(w, model.Delta2 @ w).real)
    rhs = hk + delta
    return NormIdentity(lhs, rhs, abs(lhs - rhs) / max(abs(lhs), 1e-300), hk, delta)


def model_inner_product(y, z, space, b: RowMultiplier = None) -> tuple:
    """``(<P(k_y, 0), P(k_z, 0)>, k^b(z, y))`` with ``P`` the projection onto the complement of ``M``."""
    model = _model(space, b)
    p, q = kernel_model_pair(y, model), kernel_model_pair(z, model)
    lhs = model.inner((p.f, p.g), (q.f, q.g))
    y, z = as_point(y), as_point(z)
    rhs = complex(SubKernel(model.kernel, model.b).gram(z.array[None, :], y.array[None, :])[0, 0])
    return lhs, rhs


def reproducing_error(centers, coeffs, space, b: RowMultiplier = None) -> float:
    """``max_i |<f, k^b_{y_i}>_b - f(y_i)| / (1 + ||f||_b)`` for ``f = sum c_j k^b_{y_j}``.

    The inner product is taken in the model (complement of ``M``); ``f(y_i)``
    is evaluated from the kernel itself.
    """
    model = _model(space, b)
    Y = as_point_array(centers, model.small.d)
    c = np.asarray(coeffs, dtype=complex).reshape(-1)
    pairs = [kernel_model_pair(y, model) for y in Y]
    F = sum(ci * p.f for ci, p in zip(c, pairs))
    Gv = sum(ci * p.g for ci, p in zip(c, pairs))
    fvals = SubKernel(model.kernel, model.b).gram(Y) @ c
    inner = np.array([model.inner((F, Gv), (p.f, p.g)) for p in pairs])
    norm = math.sqrt(max(model.inner((F, Gv), (F, Gv)).real, 0.0))
    return float(np.max(np.abs(inner - fvals)) / (1.0 + norm))


# ---------------------------------------------------------------------------
# representers and point evaluations on L_Delta

@dataclass(frozen=True)
class Representer:
    """Solution ``l`` of ``Delta^2 l = -b(y)^* k_y``; ``residual`` is the largest
    ``|<g, l>_Delta + b(y) g(y)|`` over basis vectors ``g``."""

    y: tuple
    l: np.ndarray = field(repr=False)
    residual: float
    min_eig: float


def _check_injective(model: ModelSpace) -> float:
    lo = model.min_delta_eig()
    if lo < INJECTIVITY_TOL:
        raise DeltaNotInjectiveError("Delta^2 has smallest eigenvalue {:.3e} on the degree-{} truncation; "
                                     "Delta may fail to be injective".format(lo, model.N), lo)
    return lo


def representer_l_y(y, space, b: RowMultiplier = None, N: int = None) -> Representer:
    model = _model(space, b, N)
    lo = _check_injective(model)
    y = as_point(y)
    rhs = -model.lift(np.conj(model.b_at(y.array[None, :])), model.kernel_vector(y.array[None, :], "small"))
    l = solve_hermitian(model.Delta2, rhs)
    residual = float(np.max(np.abs(model.Delta2 @ l - rhs))) if l.size else 0.0
    return Representer(y.coords, l, residual, lo)


@dataclass(frozen=True)
class PointEvalCurve:
    degrees: tuple
    d_squared: tuple
    divergent: bool
    singular: tuple

    @property
    def d(self) -> tuple:
        return tuple(math.sqrt(v) for v in self.d_squared)


def pointeval_bound_LDelta(y, e: int, space, b: RowMultiplier = None,
                           schedule: Sequence[int] = DEFAULT_SCHEDULE) -> PointEvalCurve:
    """``d_y^2 = sup |g_e(y)|^2 / ||Delta g||^2`` over the truncations in ``schedule``.

    Each value is the largest generalised eigenvalue of ``(v v^*, Delta2_N)``
    with ``v = e (x) P_N k_y``, i.e. ``v^* Delta2_N^+ v``; it is ``inf`` (and
    the level is flagged singular) when ``v`` leaves the numerical range of
    ``Delta2_N``.
    """
    y = as_point(y)
    vals, sing = [], []
    for N in schedule:
        model = _model(space, b, N)
        if not 0 <= e < model.r:
            raise ValueError("entry index e must lie in [0, {})".format(model.r))
        row = np.zeros(model.r)
        row[e] = 1.0
        v = model.lift(row, model.kernel_vector(y.array[None, :], "small"))
        P = HermitianPinv(model.Delta2)
        if P.w.size == 0 or P.outside(v) > 1e-8:
            vals.append(math.inf)
            sing.append(True)
        else:
            vals.append(float(P.form(v).real))
            sing.append(P.rank_deficient)
    return PointEvalCurve(tuple(int(N) for N in schedule), tuple(vals), diverges(vals), tuple(sing))


def defect_domination_margin(space: TruncatedSpace, b: RowMultiplier, a: RowMultiplier) -> float:
    """Smallest eigenvalue of the compression of ``I - M_b^* M_b - M_a^* M_a``.

    A non-negative value is numerical evidence for ``I - M_b^* M_b >= M_a^* M_a``.
    """
    Mb = multiplication_matrix(space, b).entries
    Ma = multiplication_matrix(space, a).entries
    if Ma.shape[1] != Mb.shape[1]:
        raise ValueError("a and b must have the same width")
    X = np.eye(Mb.shape[1]) - Mb.conj().T @ Mb - Ma.conj().T @ Ma
    return float(np.linalg.eigvalsh(hermitize(X))[0])
