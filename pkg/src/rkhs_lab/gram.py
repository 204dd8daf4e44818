"""Gram matrices and the finite-sample positivity / norm / multiplier criteria.

A function ``f`` lies in ``H_k`` with norm at most ``c`` exactly when
``c^2 k(x, y) - f(x) conj(f(y))`` is a positive kernel, and ``phi`` is a
multiplier of norm at most ``c`` exactly when ``k(x, y) (c^2 - phi(x) phi(y)^*)``
is. Restricting both tests to a finite sample set gives lower bounds which
increase as the set grows.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg as sla

from .kernels import Kernel, SampleSet
from .linalg import PINV_RTOL, hermitize

#: default PSD tolerance, relative to max(1, lambda_max)
PSD_TOL = 1e-10


@dataclass(frozen=True)
class GramMatrix:
    entries: np.ndarray = field(repr=False)
    samples: SampleSet
    kernel: Kernel

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def build_gram(spec: Kernel, samples: SampleSet) -> GramMatrix:
    """Hermitian matrix ``[k(x_i, x_j)]`` on the sample set."""
    if len(samples) == 0:
        return GramMatrix(np.zeros((0, 0), dtype=complex), samples, spec)
    return GramMatrix(hermitize(spec.gram(samples.array)), samples, spec)


class PsdVerdict(str, enum.Enum):
    PSD = "PSD"
    NOT_PSD = "NOT_PSD"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class PsdReport:
    min_eig: float
    max_eig: float
    verdict: PsdVerdict
    witness: Optional[np.ndarray] = field(default=None, repr=False)
    tol: float = PSD_TOL

    @property
    def threshold(self) -> float:
        return self.tol * max(1.0, self.max_eig)

    @property
    def witness_form(self) -> Optional[float]:
        """``v^* G v`` for the witness; equals ``min_eig`` for the unit eigenvector."""
        return None if self.witness is None else self.min_eig


def check_psd_matrix(A: np.ndarray, tol: float = PSD_TOL) -> PsdReport:
    """PSD verdict for a Hermitian matrix via a full eigendecomposition."""
    if A.shape[0] == 0:
        return PsdReport(0.0, 0.0, PsdVerdict.PSD, None, tol)
    try:
        w, V = sla.eigh(hermitize(A))
    except (sla.LinAlgError, ValueError):
        return PsdReport(float("nan"), float("nan"), PsdVerdict.INCONCLUSIVE, None, tol)
    if not np.all(np.isfinite(w)):
        return PsdReport(float("nan"), float("nan"), PsdVerdict.INCONCLUSIVE, None, tol)
    lo, hi = float(w[0]), float(w[-1])
    if lo < -tol * max(1.0, hi):
        return PsdReport(lo, hi, PsdVerdict.NOT_PSD, V[:, 0].copy(), tol)
    return PsdReport(lo, hi, PsdVerdict.PSD, None, tol)


def check_psd(G: GramMatrix, tol: float = PSD_TOL) -> PsdReport:
    return check_psd_matrix(G.entries, tol)


@dataclass(frozen=True)
class Estimate:
    """A sampled lower bound plus numerical-health flags.

    ``rank_deficient`` is set when eigenvalues of the Gram matrix fell below
    the pseudo-inverse cutoff; ``discarded`` is the relative size of the part
    of the data that lay in the discarded eigenspace.
    """

    value: float
    rank_deficient: bool = False
    discarded: float = 0.0

    @property
    def ill_conditioned(self) -> bool:
        return self.discarded > 1e-6

    def __float__(self) -> float:
        return self.value


def _range_basis(G: np.ndarray, rtol: float = PINV_RTOL):
    w, V = sla.eigh(hermitize(G))
    cutoff = rtol * max(float(w[-1]), 0.0) if w.size else 0.0
    keep = w > cutoff
    return w[keep], V[:, keep], not bool(np.all(keep))


def norm_lower_bound(G: GramMatrix, fvals) -> Estimate:
    """``sqrt(f^* G^+ f)``: the least ``c`` with ``c^2 G - f f^*`` PSD on the samples."""
    f = np.asarray(fvals, dtype=complex).reshape(-1)
    if f.shape[0] != G.n:
        raise ValueError("fvals has length {}, Gram matrix has {} samples".format(f.shape[0], G.n))
    if G.n == 0:
        raise ValueError("norm_lower_bound needs at least one sample")
    w, V, deficient = _range_basis(G.entries)
    coef = V.conj().T @ f
    value = float(np.sqrt(np.sum(np.abs(coef) ** 2 / w)))
    fn = np.linalg.norm(f)
    discarded = float(np.sqrt(max(fn**2 - np.sum(np.abs(coef) ** 2), 0.0)) / fn) if fn > 0 else 0.0
    return Estimate(value, deficient, discarded)


def mult_norm_estimate(G: GramMatrix, phivals) -> Estimate:
    """Least ``c`` with ``G o (c^2 - phi phi^*)`` PSD on the samples.

    Computed as the square root of the largest generalised eigenvalue of the
    pencil ``(G o Phi, G)``, ``Phi_ij = phi(x_i) phi(x_j)^*``, restricted to
    the numerical range of ``G``.
    """
    P = np.asarray(phivals, dtype=complex)
    if P.ndim == 1:
        P = P[:, None]
    if P.shape[0] != G.n:
        raise ValueError("phivals has {} rows, Gram matrix has {} samples".format(P.shape[0], G.n))
    if G.n == 0:
        raise ValueError("mult_norm_estimate needs at least one sample")
    w, V, deficient = _range_basis(G.entries)
    # G o Phi = sum_k D_k G D_k^* with D_k = diag(phi_k(x_i)); with G = L L^*,
    # L = V diag(sqrt(w)), the pencil maximum is ||[L^+ D_k L]_k||_2^2. This
    # avoids forming L^+ (G o Phi) L^{+*}, which loses cond(G) digits.
    s = np.sqrt(w)
    blocks = [(V.conj().T @ (P[:, k : k + 1] * V)) * (s[None, :] / s[:, None]) for k in range(P.shape[1])]
    top = sla.svdvals(np.concatenate(blocks, axis=1))[0]
    return Estimate(float(top), deficient, 0.0)
