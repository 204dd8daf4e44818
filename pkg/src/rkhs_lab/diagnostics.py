"""Identity verifiers and compactness profilers for the defect ``I - M_b M_b^*``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .kernels import (BallAutomorphism, BlaschkeProduct, Kernel, RowMultiplier, as_point_array,
                      scalar)
from .sampling import rng
from .truncation import TruncatedSpace, defect_matrices, multiplication_matrix

PROFILE_SCHEDULE = (100, 200, 400)
PROFILE_EPSILON = 1e-3


def _pairs(point_pairs, d: int = None) -> tuple:
    P = [tuple(p) for p in point_pairs]
    Z = as_point_array([p[0] for p in P], d)
    W = as_point_array([p[1] for p in P], Z.shape[1])
    return Z, W


def _inner_rows(Z: np.ndarray, W: np.ndarray) -> np.ndarray:
    """``<z_i, w_i>`` for paired rows."""
    return np.sum(Z * np.conj(W), axis=1)


# ---------------------------------------------------------------------------
# finite Blaschke products

def blaschke_identity_sides(zeros: Sequence[complex], z: np.ndarray, w: np.ndarray) -> tuple:
    """Both sides of ``(1 - b(z) conj b(w)) s(z, w) = sum_l v_l(z) conj v_l(w) prod_{j<l} phi_j(z) conj phi_j(w)``.

    ``v_l(z) = sqrt(1 - |a_l|^2) / (1 - conj(a_l) z)``; writing each term as a
    product of a function of ``z`` and the conjugate of the same function of
    ``w`` needs no square-root branch.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    b = BlaschkeProduct(tuple(zeros))
    bz = b.evaluate(z[:, None])[:, 0]
    bw = b.evaluate(w[:, None])[:, 0]
    lhs = (1.0 - bz * np.conj(bw)) / (1.0 - z * np.conj(w))
    rhs = np.zeros(z.shape, dtype=complex)
    prod_z = np.ones(z.shape, dtype=complex)
    prod_w = np.ones(w.shape, dtype=complex)
    for a in b.zeros:
        s = math.sqrt(1.0 - abs(a) ** 2)
        vz = s / (1.0 - np.conj(a) * z)
        vw = s / (1.0 - np.conj(a) * w)
        rhs += vz * np.conj(vw) * prod_z * np.conj(prod_w)
        prod_z = prod_z * (z - a) / (1.0 - np.conj(a) * z)
        prod_w = prod_w * (w - a) / (1.0 - np.conj(a) * w)
    return lhs, rhs


def verify_blaschke_identity(zeros: Sequence[complex], point_pairs) -> float:
    """Largest ``|LHS - RHS|`` of the Blaschke kernel identity over the point pairs."""
    Z, W = _pairs(point_pairs, 1)
    if Z.shape[0] == 0:
        return 0.0
    lhs, rhs = blaschke_identity_sides(zeros, Z[:, 0], W[:, 0])
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------------------
# ball automorphisms

@dataclass(frozen=True)
class AutomorphismCheck:
    identity_error: float
    factorization_error: float

    @property
    def max_error(self) -> float:
        return max(self.identity_error, self.factorization_error)


def verify_ball_automorphism_identity(a, point_pairs, beta: float = 2.0) -> AutomorphismCheck:
    """Check ``1 - <b(z), b(w)> = (1 - |a|^2)(1 - <z, w>) / ((1 - <z, a>)(1 - <a, w>))`` for ``b = phi_a``.

    Also checks ``s^beta (1 - b b^*) = s^(beta - 1) phi conj(phi)`` with
    ``phi(z) = sqrt(1 - |a|^2) / (1 - <z, a>)``, the factorization giving the
    subspace kernel for an automorphism.
    """
    phi_a = BallAutomorphism(tuple(np.atleast_1d(np.asarray(a, dtype=complex))))
    av = np.asarray(phi_a.a)
    Z, W = _pairs(point_pairs, phi_a.d)
    if Z.shape[0] == 0:
        return AutomorphismCheck(0.0, 0.0)
    aa = float(np.vdot(av, av).real)
    zw = _inner_rows(Z, W)
    za = Z @ np.conj(av)
    aw = np.conj(W @ np.conj(av))
    lhs = 1.0 - _inner_rows(phi_a.evaluate(Z), phi_a.evaluate(W))
    rhs = (1.0 - aa) * (1.0 - zw) / ((1.0 - za) * (1.0 - aw))
    s_beta = np.power(1.0 - zw, -beta)
    s_beta1 = np.power(1.0 - zw, -(beta - 1.0))
    phz = math.sqrt(1.0 - aa) / (1.0 - za)
    phw = math.sqrt(1.0 - aa) / (1.0 - W @ np.conj(av))
    fac_l = s_beta * lhs
    fac_r = s_beta1 * phz * np.conj(phw)
    return AutomorphismCheck(float(np.max(np.abs(lhs - rhs))), float(np.max(np.abs(fac_l - fac_r))))


# ---------------------------------------------------------------------------
# compactness of the embedding H_k(b) -> H_k

@dataclass(frozen=True)
class EmbeddingProfile:
    N_schedule: tuple
    epsilon: float
    eigencounts: tuple
    verdict_hint: str
    top_eigenvalues: tuple = field(default=(), repr=False)


def profile_hint(counts: Sequence[int]) -> str:
    """``STABILIZING`` when the last two counts agree, ``GROWING`` when strictly increasing."""
    counts = list(counts)
    if len(counts) >= 2 and counts[-1] == counts[-2]:
        return "STABILIZING"
    if len(counts) >= 2 and all(x < y for x, y in zip(counts, counts[1:])):
        return "GROWING"
    return "UNDETERMINED"


def embedding_profile(kernel: Kernel, b: RowMultiplier, N_schedule: Sequence[int] = PROFILE_SCHEDULE,
                      epsilon: float = PROFILE_EPSILON) -> EmbeddingProfile:
    """Number of eigenvalues of ``D_N`` above ``epsilon`` along a degree schedule.

    Compactness of ``I - M_b M_b^*`` shows up as counts that settle; the
    result is a hint drawn from finite data, not a proof.
    """
    counts, tops = [], []
    for N in N_schedule:
        D = defect_matrices(TruncatedSpace(kernel, N), b).D
        ev = np.linalg.eigvalsh(D)
        counts.append(int(np.sum(ev > epsilon)))
        tops.append(float(ev[-1]))
    return EmbeddingProfile(tuple(int(N) for N in N_schedule), float(epsilon), tuple(counts), profile_hint(counts),
                            tuple(tops))


@dataclass(frozen=True)
class BoundaryScan:
    kernel_diagonal: tuple
    b_norms: tuple
    violation: bool
    threshold: float
    gap: float

    @property
    def table(self) -> list:
        return list(zip(self.kernel_diagonal, self.b_norms))


def radial_path(direction: complex = 1.0, steps: int = 12) -> np.ndarray:
    """Points ``(1 - 2^-j) direction`` for ``j = 1..steps`` (``|direction| = 1``)."""
    return np.array([(1.0 - 2.0 ** -j) * direction for j in range(1, steps + 1)])


def boundary_modulus_scan(b: RowMultiplier, kernel: Kernel, path, threshold: float = 100.0,
                          gap: float = 0.05) -> BoundaryScan:
    """Pairs ``(k(x, x), ||b(x)||)`` along ``path``.

    Flags a violation of the necessary condition for a compact embedding
    (``||b(x_n)|| -> 1`` whenever ``k(x_n, x_n) -> inf``) when some point has
    ``k(x, x) > threshold`` while ``||b(x)|| < 1 - gap``.
    """
    X = as_point_array(path)
    kd = np.real(np.array([kernel.gram(x[None, :])[0, 0] for x in X]))
    bn = np.linalg.norm(b(X), axis=1)
    viol = bool(np.any((kd > threshold) & (bn < 1.0 - gap)))
    return BoundaryScan(tuple(float(v) for v in kd), tuple(float(v) for v in bn), viol, float(threshold), float(gap))


# ---------------------------------------------------------------------------
# expansivity of Blaschke multipliers on the Dirichlet space

@dataclass(frozen=True)
class ExpansivityReport:
    holds: bool
    min_margin: float
    trials: int
    tail_bound: float


def expansivity_check(kernel: Kernel, b: BlaschkeProduct, trials: int = 1000, degree: int = 50, seed: int = 0,
                      tol: float = 1e-9) -> ExpansivityReport:
    """Check ``||b f|| >= ||f||`` for random polynomials ``f`` with ``||f|| = 1``.

    ``||b f||`` is computed from the multiplication matrix with certified
    Taylor tail, so the value used is a lower bound of the true norm up to
    that tail.
    """
    sp = TruncatedSpace(kernel, degree)
    row = b if isinstance(b, RowMultiplier) else scalar(b)
    M = multiplication_matrix(sp, row)
    g = rng(seed)
    F = g.standard_normal((sp.dim, trials)) + 1j * g.standard_normal((sp.dim, trials))
    F /= np.linalg.norm(F, axis=0, keepdims=True)
    margins = np.linalg.norm(M.entries @ F, axis=0) - 1.0
    worst = float(np.min(margins)) if trials else 0.0
    return ExpansivityReport(bool(worst >= -tol), worst, int(trials), M.exactness.bound)
