"""Orthonormal-monomial truncations of radial spaces and exact operator matrices.

For a radial kernel ``k(z, w) = sum_n k_n <z, w>^n`` on the ball of ``C^d``
the monomials are orthogonal with ``||z^alpha||^2 = alpha! / (|alpha|! k_|alpha|)``.
Everything here works in the orthonormal coordinates ``fhat_alpha =
c_alpha ||z^alpha||`` of ``f = sum c_alpha z^alpha``, so that norms are
Euclidean and multiplication operators become (block) lower-triangular
matrices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from .errors import DimensionMismatchError, NotPositiveError, TailBoundError
from .gram import PSD_TOL, check_psd_matrix
from .kernels import BallAutomorphism, Kernel, Polynomial, RowMultiplier, ScaledCoordinate, as_point_array
from .linalg import HermitianPinv, hermitize

#: operator-norm budget for discarded Taylor tails of non-polynomial symbols
TAIL_TOL = 1e-12
#: largest number of extra rows a tail-bounded multiplication matrix may use
MAX_EXTRA_ROWS = 20_000
#: relative size of the out-of-range component treated as "not in the range"
RANGE_TOL = 1e-8
DEFAULT_SCHEDULE = (50, 100, 200, 400)
DIVERGENCE_FACTOR = 10.0


def multi_indices(d: int, N: int) -> list:
    """All ``alpha`` in ``N^d`` with ``|alpha| <= N``, graded, then lexicographically decreasing."""
    out = []
    for n in range(N + 1):
        level = [a for a in itertools.product(range(n, -1, -1), repeat=d) if sum(a) == n]
        out.extend(level)
    return out


class TruncatedSpace:
    """Polynomials of degree ``<= N`` in ``H_k`` for a radial kernel ``k``.

    Parameters
    ----------
    kernel : Kernel
        A radial kernel (``RadialPower``, ``RadialCoeff``, a radial
        ``BergmanType`` or a product of these).
    N : int
        Truncation degree.
    d : int
        Dimension of the ball.
    """

    def __init__(self, kernel: Kernel, N: int, d: int = 1):
        if not getattr(kernel, "is_radial", False):
            raise ValueError("truncations need a radial kernel, got {}".format(type(kernel).__name__))
        if kernel.dim is not None and kernel.dim != d:
            raise DimensionMismatchError("kernel lives in dimension {}, not {}".format(kernel.dim, d))
        if int(N) != N or N < 0:
            raise ValueError("degree N must be a non-negative integer")
        if d < 1:
            raise ValueError("dimension d must be positive")
        self.kernel = kernel
        self.N = int(N)
        self.d = int(d)
        self.indices = multi_indices(self.d, self.N)
        self.exponents = np.array(self.indices, dtype=int).reshape(-1, self.d)
        self.degrees = self.exponents.sum(axis=1)
        kn = np.asarray(kernel.radial_coefficients(self.N), dtype=float)
        if not np.all(np.isfinite(kn)) or np.any(kn <= 0):
            raise ValueError("radial coefficients must be positive up to degree {}".format(self.N))
        self.radial = kn
        # log(alpha! / |alpha|!) - log k_|alpha|
        lognorm = gammaln(self.exponents + 1.0).sum(axis=1) - gammaln(self.degrees + 1.0) - np.log(kn[self.degrees])
        self.norms_sq = np.exp(lognorm)
        self.norms = np.exp(0.5 * lognorm)
        self._position = {a: i for i, a in enumerate(self.indices)}

    def __repr__(self):
        return "TruncatedSpace({!r}, N={}, d={})".format(self.kernel, self.N, self.d)

    @property
    def dim(self) -> int:
        return len(self.indices)

    def size(self, n: int) -> int:
        """Number of basis monomials of degree ``<= n``."""
        return math.comb(n + self.d, self.d)

    def index(self, alpha) -> int:
        return self._position[tuple(alpha)]

    def extend(self, N: int) -> "TruncatedSpace":
        return self if N == self.N else TruncatedSpace(self.kernel, N, self.d)

    def coords(self, coeffs) -> np.ndarray:
        """Orthonormal coordinates of ``sum c_alpha z^alpha`` (coefficients in basis order).

        Shorter inputs are zero-padded; longer inputs must vanish past ``N``.
        """
        c = np.asarray(coeffs, dtype=complex).reshape(-1)
        if c.size > self.dim:
            if np.any(c[self.dim :] != 0):
                raise ValueError("function has degree larger than the truncation degree {}".format(self.N))
            c = c[: self.dim]
        out = np.zeros(self.dim, dtype=complex)
        out[: c.size] = c
        return out * self.norms

    def coefficients(self, fhat) -> np.ndarray:
        return np.asarray(fhat, dtype=complex) / self.norms

    def monomials(self, Z) -> np.ndarray:
        """``Z^alpha`` for every basis index: shape ``(n, dim)``."""
        Z = as_point_array(Z, self.d)
        if self.d == 1:
            return np.power.outer(Z[:, 0], np.arange(self.N + 1))
        return np.prod(np.power(Z[:, None, :], self.exponents[None, :, :]), axis=2)

    def eval_functional(self, Z) -> np.ndarray:
        """Rows ``e`` with ``f(z) = e @ fhat``."""
        return self.monomials(Z) / self.norms[None, :]

    def kernel_coords(self, Z) -> np.ndarray:
        """Columns: coordinates of ``P_N k_z`` for each point (shape ``(dim, n)``)."""
        return self.eval_functional(Z).conj().T

    def evaluate(self, fhat, Z) -> np.ndarray:
        return self.eval_functional(Z) @ np.asarray(fhat, dtype=complex)

    @staticmethod
    def norm(fhat) -> float:
        return float(np.linalg.norm(fhat))


@dataclass(frozen=True)
class Exactness:
    """``EXACT`` or ``TAIL_BOUNDED`` with an operator-norm bound on the discarded rows."""

    kind: str
    bound: float = 0.0

    def __str__(self):
        return self.kind if self.kind == "EXACT" else "TAIL_BOUNDED({:.3e})".format(self.bound)


EXACT = Exactness("EXACT")


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix of an operator between truncations, in orthonormal coordinates.

    The columns of a row multiplier of width ``r`` are grouped in ``r``
    blocks, one per entry, each indexed like the domain basis.
    """

    entries: np.ndarray = field(repr=False)
    domain_degree: int
    codomain_degree: int
    exactness: Exactness = EXACT
    width: int = 1

    @property
    def is_exact(self) -> bool:
        return self.exactness.kind == "EXACT"

    def block(self, i: int) -> np.ndarray:
        n = self.entries.shape[1] // self.width
        return self.entries[:, i * n : (i + 1) * n]


def _entry_taylor(b: RowMultiplier, d: int, n_coeffs: int) -> list:
    """Per-entry coefficient data.

    d = 1: ``(coeffs, envelope)`` with ``envelope`` None for polynomials.
    d > 1: ``("coord", i, factor)`` for linear coordinate entries.
    """
    if d == 1:
        return [(t.coeffs, None if c.is_polynomial else t.envelope)
                for c, t in zip(b.components, b.taylor(n_coeffs))]
    out = []
    for c in b.components:
        if isinstance(c, ScaledCoordinate):
            c.width(d)
            out.append(("coord", c.index, c.factor))
        elif isinstance(c, BallAutomorphism) and c.is_polynomial:
            c.width(d)
            out.extend(("coord", i, 1.0) for i in range(d))
        else:
            raise TailBoundError("no exact or tail-bounded matrix for {} in d = {}".format(type(c).__name__, d))
    return out


def _tail_sum(M: float, R: float, weight, K: int) -> float:
    """``sum_{j > K} M^2 R^(-2j) W(j)`` by chunked summation."""
    if R <= 1.0:
        return math.inf
    total = 0.0
    start = K + 1
    prev_last = math.inf
    while True:
        j = np.arange(start, start + 4096, dtype=float)
        terms = M * M * np.exp(-2.0 * j * math.log(R)) * weight(j)
        total += float(np.sum(terms))
        last = float(terms[-1])
        if last == 0.0 or (last < prev_last and last < 1e-20 * max(total, 1e-300)):
            return total
        prev_last = last
        start += 4096
        if start > K + 10**7:
            return math.inf


def _tail_bound(space: TruncatedSpace, envelopes: list, K: int) -> float:
    """Operator-norm bound for the rows of degree ``> N + K`` (d = 1)."""
    total = 0.0
    for env in envelopes:
        if env is None:
            continue
        total += _tail_sum(env[0], env[1], space.kernel.shift_weight_bound, K)
    return math.sqrt((space.N + 1) * total)


def _extra_rows(space: TruncatedSpace, b: RowMultiplier, tol: float) -> tuple:
    envelopes = [t.envelope for c, t in zip(b.components, b.taylor(0)) if not c.is_polynomial]
    if any(e is None for e in envelopes):
        raise TailBoundError("missing coefficient envelope for a non-polynomial symbol")
    K = 8
    while _tail_bound(space, envelopes, K) > tol:
        K *= 2
        if K > MAX_EXTRA_ROWS:
            raise TailBoundError("Taylor tail of the symbol cannot be certified below {:.1e}".format(tol))
    lo, hi = K // 2, K
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _tail_bound(space, envelopes, mid) <= tol:
            hi = mid
        else:
            lo = mid
    if K == 8 and _tail_bound(space, envelopes, 0) <= tol:
        hi = 0
    return hi, _tail_bound(space, envelopes, hi)


def multiplication_matrix(space: TruncatedSpace, b: RowMultiplier, tol: float = TAIL_TOL,
                          codomain_degree: int = None) -> OperatorMatrix:
    """Matrix of ``M_b: (f_1, ..., f_r) -> sum_i b_i f_i`` on degree ``<= N``.

    Polynomial symbols of degree ``q`` give an exact matrix with rows of
    degree ``<= N + q``. Other symbols keep ``K`` extra rows, chosen so that
    the certified operator norm of the discarded rows is at most ``tol``.
    ``codomain_degree`` can request more rows than the minimum.

    Examples
    --------
    >>> from rkhs_lab.kernels import RadialPower, Polynomial, scalar
    >>> S = TruncatedSpace(RadialPower(2.0), 3)
    >>> M = multiplication_matrix(S, scalar(Polynomial((0, 1))))
    >>> round(M.entries[1, 0].real ** 2, 12)
    0.5
    """
    if not isinstance(b, RowMultiplier):
        raise TypeError("b must be a RowMultiplier")
    r = b.width(space.d)
    N = space.N
    if b.is_polynomial:
        top, exactness = N + b.degree, EXACT
    else:
        if space.d != 1:
            raise TailBoundError("non-polynomial symbols are supported in d = 1 only")
        K, bound = _extra_rows(space, b, tol)
        top, exactness = N + K, Exactness("TAIL_BOUNDED", bound)
    if codomain_degree is not None:
        if codomain_degree < top and not (b.is_polynomial and codomain_degree >= N + b.degree):
            raise ValueError("codomain degree {} is below the required {}".format(codomain_degree, top))
        top = max(top, codomain_degree)
    cod = space.extend(top)
    n = space.dim
    out = np.zeros((cod.dim, r * n), dtype=complex)
    entries = _entry_taylor(b, space.d, top)
    if space.d == 1:
        m = np.arange(top + 1)[:, None]
        k = np.arange(N + 1)[None, :]
        lag = m - k
        ratio = cod.norms[:, None] / cod.norms[None, : N + 1]
        for i, (coeffs, _) in enumerate(entries):
            c = np.zeros(top + 1, dtype=complex)
            c[: min(len(coeffs), top + 1)] = coeffs[: top + 1]
            blk = np.where(lag >= 0, c[np.clip(lag, 0, top)], 0.0) * ratio
            out[:, i * n : (i + 1) * n] = blk
    else:
        for i, (_, coord, factor) in enumerate(entries):
            for col, alpha in enumerate(space.indices):
                beta = list(alpha)
                beta[coord] += 1
                row = cod.index(tuple(beta))
                out[row, i * n + col] = factor * cod.norms[row] / space.norms[col]
    return OperatorMatrix(out, N, top, exactness, r)


def shift_matrix(space: TruncatedSpace) -> OperatorMatrix:
    """``M_z`` (d = 1) from degree ``<= N`` to degree ``<= N + 1``."""
    return multiplication_matrix(space, RowMultiplier((Polynomial((0, 1)),)))


@dataclass(frozen=True)
class DefectPair:
    """Compressions ``D_N`` of ``I - M_b M_b^*`` and ``Delta2_N`` of ``I - M_b^* M_b``.

    Unpacks as ``D, Delta2 = defect_matrices(...)``.
    """

    D: np.ndarray = field(repr=False)
    Delta2: np.ndarray = field(repr=False)
    mult: OperatorMatrix = field(repr=False)
    space: TruncatedSpace = field(repr=False)

    def __iter__(self):
        return iter((self.D, self.Delta2))

    @property
    def leading(self) -> np.ndarray:
        """Rows of degree ``<= N`` of the multiplication matrix (``P_N M_b P_N``)."""
        return self.mult.entries[: self.space.dim]


def defect_matrices(space: TruncatedSpace, b: RowMultiplier, N: int = None, tol: float = TAIL_TOL) -> DefectPair:
    """``(D_N, Delta2_N)`` on the degree-``N`` truncation.

    ``D_N = I - A A^*`` with ``A = P_N M_b P_N`` is exact for any symbol
    because multiplication never lowers degree. ``Delta2_N = I - A_full^*
    A_full`` uses all rows of the multiplication matrix, which carries the
    certified tail bound for non-polynomial ``b``.
    """
    sp = space if N is None else space.extend(N)
    M = multiplication_matrix(sp, b, tol)
    A = M.entries[: sp.dim]
    D = hermitize(np.eye(sp.dim) - A @ A.conj().T)
    Delta2 = hermitize(np.eye(M.entries.shape[1]) - M.entries.conj().T @ M.entries)
    return DefectPair(D, Delta2, M, sp)


def _coeffs_for(f, N: int):
    """Monomial coefficients of ``f`` (array, or object with ``taylor``) for degree ``N``."""
    if hasattr(f, "taylor") and not isinstance(f, np.ndarray):
        t = f.taylor(N)
        if isinstance(t, list):
            if len(t) != 1:
                raise ValueError("fcoeffs must be scalar-valued")
            t = t[0]
        return np.asarray(t.coeffs, dtype=complex)
    return np.asarray(f, dtype=complex)


def hkb_norm_estimate(space: TruncatedSpace, b: RowMultiplier, fcoeffs, N: int = None) -> float:
    """``sqrt(fhat^* D_N^+ fhat)``, a lower bound for ``||f||`` in ``H_k(b)``.

    Returns ``inf`` when ``fhat`` has a non-negligible component outside the
    numerical range of ``D_N`` (so ``f`` is not in the range of the
    compressed defect).

    Parameters
    ----------
    fcoeffs : array_like or function with ``taylor``
        Monomial coefficients in basis order, of degree at most ``N``. A
        scalar function (or width-one row) is truncated at degree ``N``.
    """
    sp = space if N is None else space.extend(N)
    fhat = sp.coords(_coeffs_for(fcoeffs, sp.N))
    D = defect_matrices(sp, b).D
    rep = check_psd_matrix(D, PSD_TOL)
    if rep.verdict != "PSD":
        raise NotPositiveError("I - M_b M_b^* compression is not PSD (min eig {:.3e})".format(rep.min_eig), rep)
    pinv = HermitianPinv(D)
    if pinv.outside(fhat) > RANGE_TOL:
        return math.inf
    return float(math.sqrt(max(pinv.form(fhat).real, 0.0)))


@dataclass(frozen=True)
class NormCurve:
    degrees: tuple
    values: tuple
    divergent: bool
    factor: float = DIVERGENCE_FACTOR


def diverges(values: Sequence[float], factor: float = DIVERGENCE_FACTOR) -> bool:
    """Infinite entries, or growth by more than ``factor`` over the last two doublings."""
    if any(not math.isfinite(v) for v in values):
        return True
    return len(values) >= 3 and values[-1] > factor * values[-3]


def hkb_norm_curve(space: TruncatedSpace, b: RowMultiplier, fcoeffs, schedule: Sequence[int] = DEFAULT_SCHEDULE,
                   factor: float = DIVERGENCE_FACTOR) -> NormCurve:
    """:func:`hkb_norm_estimate` along a degree schedule, with the divergence flag."""
    vals = tuple(hkb_norm_estimate(space, b, fcoeffs, N) for N in schedule)
    return NormCurve(tuple(int(N) for N in schedule), vals, diverges(vals, factor), factor)
