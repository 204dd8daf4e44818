"""Residual-decay experiments for polynomial and kernel-span density.

Polynomial density in ``H(k^{b,m})``, ``k^{b,m} = k (1 - b b^*)^m``: the space
is the range of ``T^(1/2)`` with ``T = sum_j (-1)^j C(m, j) M_b^j M_b^{*j}``
acting on ``H_k``, and the target ``k^{b,m}_w = T k_w``. On the degree-``M``
truncation everything is exact linear algebra; the best-approximation error
by polynomials of degree ``<= N`` is a Schur-complement quadratic form (see
:func:`_schur_residual`), which avoids subtracting two nearly equal norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np
import scipy.linalg as sla

from .errors import NotPositiveError
from .gram import PSD_TOL, check_psd_matrix
from .kernels import Kernel, RadialPower, RowMultiplier, SubKernel, as_point, as_point_array
from .linalg import PINV_RTOL, HermitianPinv, hermitize
from .model import ModelSpace, _check_injective
from .truncation import TruncatedSpace, defect_matrices, hkb_norm_curve, multiplication_matrix

DEFAULT_EXTRA = 60
MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class DensityCurve:
    degrees: tuple
    residuals: tuple
    target: dict = field(default_factory=dict)
    space: dict = field(default_factory=dict)

    @property
    def monotone(self) -> bool:
        r = self.residuals
        return all(b <= a + MONOTONE_SLACK for a, b in zip(r, r[1:]))

    @property
    def final(self) -> float:
        return self.residuals[-1] if self.residuals else math.nan


def _base_kernel(kernel) -> Kernel:
    return RadialPower(kernel) if isinstance(kernel, (int, float)) else kernel


def defect_power(space: TruncatedSpace, b: RowMultiplier, m: int) -> np.ndarray:
    """Compression of ``sum_j (-1)^j C(m, j) M_b^j M_b^{*j}`` to the truncation (scalar ``b``)."""
    if b.width(space.d) != 1:
        raise ValueError("higher-order defects are implemented for scalar b")
    A = multiplication_matrix(space, b).entries[: space.dim]
    T = np.zeros((space.dim, space.dim), dtype=complex)
    P = np.eye(space.dim, dtype=complex)
    for j in range(m + 1):
        T += (-1) ** j * math.comb(m, j) * (P @ P.conj().T)
        P = A @ P
    return hermitize(T)


def _schur_residual(T: np.ndarray, x: np.ndarray, n: int) -> float:
    """``min_p ||T x - p||`` in the range norm of ``T``, over ``p`` in the first ``n`` coordinates.

    With ``x = (x1, x2)`` split after ``n`` entries, the minimum is
    ``z2^* T22 z2`` with ``z2 = x2 + T22^+ T21 x1``.
    """
    if n >= T.shape[0]:
        return 0.0
    T22 = T[n:, n:]
    T21 = T[n:, :n]
    x1, x2 = x[:n], x[n:]
    P = HermitianPinv(T22, PINV_RTOL)
    rhs = T21 @ x1
    z2 = x2 + P.V @ (P.coords(rhs) / P.w)
    val = float(np.vdot(z2, T22 @ z2).real)
    return math.sqrt(max(val, 0.0))


class PolyDensityProblem:
    """Degree-``M`` model for polynomial approximation of ``k^{b,m}_w`` (d = 1)."""

    def __init__(self, kernel, b: Optional[RowMultiplier], m: int, w, M: int):
        self.kernel = _base_kernel(kernel)
        self.b, self.m = b, int(m)
        if self.m < 0:
            raise ValueError("m must be non-negative")
        self.space = TruncatedSpace(self.kernel, M)
        if b is None or self.m == 0:
            self.T = np.eye(self.space.dim, dtype=complex)
        else:
            self.T = defect_power(self.space, b, self.m)
        rep = check_psd_matrix(self.T, PSD_TOL)
        if rep.verdict != "PSD":
            raise NotPositiveError("k^(b,m) is not a positive kernel: the defect compression has eigenvalue {:.3e}"
                                   .format(rep.min_eig), rep)
        self.w = as_point(w)
        self.x = self.space.kernel_coords(self.w.array[None, :])[:, 0]

    def residual(self, N: int) -> float:
        if N > self.space.N:
            raise ValueError("degree {} exceeds the model degree {}".format(N, self.space.N))
        return _schur_residual(self.T, self.x, self.space.size(N))

    def target_norm(self) -> float:
        return math.sqrt(max(float(np.vdot(self.x, self.T @ self.x).real), 0.0))


def poly_projection_residual(beta, b: Optional[RowMultiplier], m: int, w, N: int, M: int = None,
                             extra: int = DEFAULT_EXTRA) -> float:
    """Distance from ``k^{b,m}_w`` to polynomials of degree ``<= N`` in ``H(k^{b,m})``.

    Parameters
    ----------
    beta : float or Kernel
        Exponent of the base kernel ``s^beta`` (or any radial kernel).
    M : int, optional
        Model degree; defaults to ``N + extra``.

    Raises
    ------
    NotPositiveError
        If the defect compression is not PSD (``k^{b,m}`` not a kernel).
    """
    return PolyDensityProblem(beta, b, m, w, N + extra if M is None else M).residual(N)


def poly_residual_curve(beta, b: Optional[RowMultiplier], m: int, w, degrees: Sequence[int],
                        extra: int = DEFAULT_EXTRA) -> DensityCurve:
    """Residuals for every degree in ``degrees`` on one model of degree ``max(degrees) + extra``."""
    degrees = [int(n) for n in degrees]
    prob = PolyDensityProblem(beta, b, m, w, max(degrees) + extra)
    res = tuple(prob.residual(n) for n in degrees)
    return DensityCurve(tuple(degrees), res, {"kind": "kbm", "w": list(prob.w.coords), "norm": prob.target_norm()},
                        {"kernel": repr(prob.kernel), "b": repr(b), "m": m, "model_degree": prob.space.N})


# ---------------------------------------------------------------------------
# spans of base kernels inside H_k(b)

class KernelSpanProblem:
    """``H_k(b)`` inner products of truncated base kernels via ``D_N^+``."""

    def __init__(self, kernel: Kernel, b: RowMultiplier, N: int = 200):
        self.kernel, self.b = kernel, b
        self.model = ModelSpace(kernel, b, N)
        _check_injective(self.model)
        self.space = self.model.small
        self.pinv = HermitianPinv(defect_matrices(self.space, b).D)
        self.kb = SubKernel(kernel, b)

    def residual(self, centers, target, target_kind: str = "kb") -> float:
        Y = as_point_array(centers, self.space.d)
        w = as_point(target)
        K = self.space.kernel_coords(Y)
        if target_kind == "kb":
            t2 = float(self.kb.gram(w.array[None, :])[0, 0].real)
            p = self.kernel.gram(Y, w.array[None, :])[:, 0]
        elif target_kind == "k":
            t = self.space.kernel_coords(w.array[None, :])[:, 0]
            t2 = float(self.pinv.form(t).real)
            p = self.pinv.gram(np.column_stack([K, t]))[:-1, -1]
        else:
            raise ValueError("target_kind must be 'kb' or 'k'")
        G = self.pinv.gram(K)
        # least squares in the Gram geometry: Cholesky-free, via the eigenbasis of G
        ev, V = sla.eigh(G)
        keep = ev > PINV_RTOL * max(ev[-1], 0.0)
        c = V[:, keep].conj().T @ p
        proj = float(np.sum(np.abs(c) ** 2 / ev[keep]))
        return math.sqrt(max(t2 - proj, 0.0))


def kernel_span_residual(kernel: Kernel, b: RowMultiplier, target, centers, N: int = 200,
                         target_kind: str = "kb") -> float:
    """Distance in ``H_k(b)`` from the target kernel at ``target`` to ``span{k_{y_i}}``.

    ``target_kind`` selects ``k^b_w`` (``"kb"``, exact norm and inner
    products by the reproducing property) or ``k_w`` (``"k"``).

    Raises
    ------
    DeltaNotInjectiveError
        When ``Delta^2_N`` is numerically singular, as for inner ``b`` on the
        Hardy space.
    """
    return KernelSpanProblem(kernel, b, N).residual(centers, target, target_kind)


def kernel_span_curve(kernel: Kernel, b: RowMultiplier, target, center_sets: Sequence, N: int = 200,
                      target_kind: str = "kb") -> DensityCurve:
    prob = KernelSpanProblem(kernel, b, N)
    sets = [as_point_array(c, prob.space.d) for c in center_sets]
    res = tuple(prob.residual(c, target, target_kind) for c in sets)
    return DensityCurve(tuple(int(c.shape[0]) for c in sets), res,
                        {"kind": target_kind, "w": list(as_point(target).coords)},
                        {"kernel": repr(kernel), "b": repr(b), "N": N})


def kernel_membership_probe(kernel: Kernel, b: RowMultiplier, y, schedule: Sequence[int] = (50, 100, 200, 400)):
    """:func:`hkb_norm_curve` for the truncated base kernel ``k_y``; divergence suggests ``k_y`` is not in ``H_k(b)``."""
    y = as_point(y)
    sp = TruncatedSpace(kernel, max(schedule))
    coeffs = np.conj(sp.monomials(y.array[None, :])[0]) / sp.norms_sq

    class _Trunc:
        @staticmethod
        def taylor(n):
            from .kernels import TaylorExpansion
            return TaylorExpansion(coeffs[: sp.size(n)], 0.0)

    return hkb_norm_curve(sp, b, _Trunc(), schedule)


def density_curve(config: Mapping) -> DensityCurve:
    """Dispatch on ``config["kind"]``: ``"poly"`` or ``"kernel-span"``.

    ``poly`` keys: ``kernel`` (beta or Kernel), ``b``, ``m``, ``w``,
    ``degrees``, optional ``extra``. ``kernel-span`` keys: ``kernel``, ``b``,
    ``w``, ``center_sets``, optional ``N`` and ``target_kind``.
    """
    kind = config.get("kind", "poly")
    if kind == "poly":
        return poly_residual_curve(config["kernel"], config.get("b"), config.get("m", 1), config["w"],
                                   config["degrees"], config.get("extra", DEFAULT_EXTRA))
    if kind == "kernel-span":
        return kernel_span_curve(_base_kernel(config["kernel"]), config["b"], config["w"], config["center_sets"],
                                 config.get("N", 200), config.get("target_kind", "kb"))
    raise ValueError("unknown density kind {!r}".format(kind))
