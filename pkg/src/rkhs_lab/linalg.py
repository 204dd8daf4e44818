"""Hermitian helpers shared by the estimators."""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla

#: singular values below this fraction of the largest are treated as zero
PINV_RTOL = 1e-12


def hermitize(A: np.ndarray) -> np.ndarray:
    """Exactly Hermitian copy of ``A``: mean with the conjugate transpose, real diagonal."""
    H = 0.5 * (A + A.conj().T)
    H[np.diag_indices_from(H)] = H.diagonal().real
    return H


class HermitianPinv:
    """Pseudo-inverse quadratic forms ``x^* A^+ y`` of a PSD matrix.

    Eigenvalues at or below ``rtol * lambda_max`` are discarded. Vectors with
    a non-negligible component in the discarded eigenspace are reported by
    :meth:`outside` (numerically not in the range).
    """

    def __init__(self, A: np.ndarray, rtol: float = PINV_RTOL):
        w, V = sla.eigh(hermitize(A))
        self.eigenvalues = w
        top = max(float(w[-1]), 0.0) if w.size else 0.0
        self.cutoff = rtol * top
        keep = w > self.cutoff
        self.w = w[keep]
        self.V = V[:, keep]
        self.Vnull = V[:, ~keep]
        self.rank_deficient = not bool(np.all(keep))

    def coords(self, x: np.ndarray) -> np.ndarray:
        return self.V.conj().T @ x

    def form(self, x: np.ndarray, y: np.ndarray = None) -> complex:
        cx = self.coords(x)
        cy = cx if y is None else self.coords(y)
        return complex(np.sum(np.conj(cx) * cy / self.w, axis=0)) if cx.ndim == 1 else np.conj(cx).T @ (cy / self.w[:, None])

    def gram(self, X: np.ndarray) -> np.ndarray:
        """``X^* A^+ X`` for the columns of ``X``."""
        C = self.coords(X) / np.sqrt(self.w)[:, None]
        return hermitize(C.conj().T @ C)

    def outside(self, x: np.ndarray) -> float:
        """Relative norm of the component of ``x`` in the discarded eigenspace."""
        nx = np.linalg.norm(x)
        if nx == 0 or self.Vnull.shape[1] == 0:
            return 0.0
        return float(np.linalg.norm(self.Vnull.conj().T @ x) / nx)


def solve_hermitian(A: np.ndarray, b: np.ndarray, refine: int = 2) -> np.ndarray:
    """Cholesky solve of a Hermitian positive definite system with iterative refinement."""
    cf = sla.cho_factor(hermitize(A), lower=True)
    x = sla.cho_solve(cf, b)
    for _ in range(refine):
        x = x + sla.cho_solve(cf, b - A @ x)
    return x
