"""Points, sample sets, row multipliers and kernels on the unit ball.

All objects here are immutable values. Kernels evaluate vectorised over
point arrays of shape ``(n, d)``; the scalar entry points
:func:`eval_kernel` and :func:`eval_multiplier` wrap those for single points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Union

import numpy as np

from .errors import DimensionMismatchError, OutsideBallError, TailBoundError

#: absolute tail bound used when summing radial power series
SERIES_TOL = 1e-14
#: longest radial series we are willing to sum
MAX_SERIES_LENGTH = 200_000


# ---------------------------------------------------------------------------
# points

def _as_coords(values) -> tuple:
    arr = np.atleast_1d(np.asarray(values, dtype=complex))
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatchError("a point needs a non-empty 1-d coordinate list")
    return tuple(complex(v) for v in arr)


@dataclass(frozen=True)
class Point:
    """A point of the open unit ball in ``C^d``."""

    coords: tuple

    def __post_init__(self):
        coords = _as_coords(self.coords)
        object.__setattr__(self, "coords", coords)
        if not np.linalg.norm(np.asarray(coords)) < 1.0:
            raise OutsideBallError("point {} is not inside the open unit ball".format(coords))

    @property
    def d(self) -> int:
        return len(self.coords)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=complex)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.array))


def as_point(z) -> Point:
    return z if isinstance(z, Point) else Point(z)


def as_point_array(points, d: Optional[int] = None) -> np.ndarray:
    """Return an ``(n, d)`` complex array, validating that rows lie in the ball."""
    if isinstance(points, SampleSet):
        arr = points.array
    elif isinstance(points, Point):
        arr = points.array[None, :]
    else:
        arr = np.asarray(points, dtype=complex)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        elif arr.ndim == 1:
            # a 1-d input is a list of scalar (d=1) points unless d says otherwise
            arr = arr[:, None] if d in (None, 1) else arr[None, :]
        if arr.size and not np.all(np.linalg.norm(arr, axis=1) < 1.0):
            raise OutsideBallError("sample points must lie in the open unit ball")
    if d is not None and arr.shape[1] != d:
        raise DimensionMismatchError("expected points of dimension {}, got {}".format(d, arr.shape[1]))
    return arr


@dataclass(frozen=True)
class SampleSet:
    """Ordered finite set of distinct points, with a label and optional seed."""

    points: tuple
    label: str = ""
    seed: Optional[int] = None

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if pts:
            dims = {p.d for p in pts}
            if len(dims) != 1:
                raise DimensionMismatchError("sample points have mixed dimensions {}".format(sorted(dims)))
            if len(set(p.coords for p in pts)) != len(pts):
                raise ValueError("sample points must be pairwise distinct")
        if self.seed is not None and not (0 <= int(self.seed) < 2**64):
            raise ValueError("seed must be an unsigned 64-bit integer")

    @classmethod
    def from_array(cls, arr, label: str = "", seed: Optional[int] = None) -> "SampleSet":
        arr = np.asarray(arr, dtype=complex)
        if arr.ndim == 1:
            arr = arr[:, None]
        return cls(tuple(Point(tuple(row)) for row in arr), label=label, seed=seed)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def d(self) -> Optional[int]:
        return self.points[0].d if self.points else None

    @cached_property
    def array(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, 1), dtype=complex)
        return np.array([p.coords for p in self.points], dtype=complex)

    def union(self, other: "SampleSet", label: Optional[str] = None) -> "SampleSet":
        """Points of ``self`` followed by the points of ``other`` not already present."""
        seen = set(p.coords for p in self.points)
        extra = tuple(p for p in other.points if p.coords not in seen)
        return SampleSet(self.points + extra, label=label or self.label, seed=self.seed)


# ---------------------------------------------------------------------------
# radial power series of (1 - t)^(-beta)

@dataclass(frozen=True)
class TaylorTable:
    beta: float
    coeffs: np.ndarray = field(repr=False)


def radial_coeffs(beta: float, N: int) -> TaylorTable:
    """Taylor coefficients ``c_n(beta)`` of ``(1 - t)^(-beta)`` for ``n = 0..N``.

    Integer ``beta`` gives the binomial coefficients ``C(n + beta - 1, n)``
    computed exactly in integer arithmetic; otherwise the recursion
    ``c_n = c_{n-1} (beta + n - 1) / n`` is used.
    """
    if not beta > 0:
        raise ValueError("beta must be positive, got {}".format(beta))
    if N < 0:
        raise ValueError("N must be non-negative")
    if float(beta).is_integer():
        b = int(beta)
        coeffs = np.array([float(math.comb(n + b - 1, n)) for n in range(N + 1)])
    else:
        coeffs = np.empty(N + 1)
        coeffs[0] = 1.0
        for n in range(1, N + 1):
            coeffs[n] = coeffs[n - 1] * (beta + n - 1) / n
    return TaylorTable(float(beta), coeffs)


# ---------------------------------------------------------------------------
# scalar analytic functions and row multipliers

@dataclass(frozen=True)
class TaylorExpansion:
    """Coefficients of degree ``<= N`` and a bound on the discarded part.

    ``tail_mass`` bounds ``sum_{n>N} |c_n|^2``. ``envelope`` is ``(M, R)``
    with ``|c_n| <= M R^{-n}`` for every ``n``, or ``None`` when the function
    is a polynomial of degree ``<= N``.
    """

    coeffs: np.ndarray = field(repr=False)
    tail_mass: float
    envelope: Optional[tuple] = None

    def coefficient_bound(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n)
        if self.envelope is None:
            return np.zeros(n.shape)
        M, R = self.envelope
        return M * np.power(float(R), -n.astype(float))


def _automorphism_disk(z: np.ndarray, a: complex) -> np.ndarray:
    return (z - a) / (1.0 - np.conj(a) * z)


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial ``sum_j coefficients[j] z^j`` (d = 1)."""

    coefficients: tuple

    def __post_init__(self):
        c = tuple(complex(v) for v in np.atleast_1d(np.asarray(self.coefficients, dtype=complex)))
        # strip trailing zeros but keep at least the constant term
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coefficients", c or (0j,))

    is_polynomial = True

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def width(self, d: int) -> int:
        if d != 1:
            raise DimensionMismatchError("Polynomial components are univariate (d = 1)")
        return 1

    def evaluate(self, Z: np.ndarray) -> np.ndarray:
        self.width(Z.shape[1])
        return np.polynomial.polynomial.polyval(Z[:, 0], np.asarray(self.coefficients))[:, None]

    def taylor(self, N: int) -> TaylorExpansion:
        c = np.zeros(N + 1, dtype=complex)
        k = min(N + 1, len(self.coefficients))
        c[:k] = self.coefficients[:k]
        rest = np.abs(np.asarray(self.coefficients[k:]))
        if rest.size:
            # |c_n| <= max |c_j| for every n, zero past the degree
            return TaylorExpansion(c, float(np.sum(rest**2)), (float(np.max(np.abs(self.coefficients))), 1.0))
        return TaylorExpansion(c, 0.0, None)

    def sup_norm_bound(self) -> float:
        return float(np.sum(np.abs(self.coefficients)))


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product ``unimodular * prod_j phi_{a_j}`` (d = 1).

    ``phi_a(z) = (z - a) / (1 - conj(a) z)``. An empty zero list gives the
    unimodular constant.
    """

    zeros: tuple
    unimodular: complex = 1.0

    def __post_init__(self):
        zs = tuple(complex(v) for v in np.atleast_1d(np.asarray(self.zeros, dtype=complex)))
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "unimodular", complex(self.unimodular))
        if any(not abs(a) < 1.0 for a in zs):
            raise OutsideBallError("Blaschke zeros must have modulus < 1")
        if abs(abs(self.unimodular) - 1.0) > 1e-12:
            raise ValueError("the constant factor of a Blaschke product must be unimodular")

    @property
    def is_polynomial(self) -> bool:
        return all(a == 0 for a in self.zeros)

    @property
    def degree(self) -> int:
        if not self.is_polynomial:
            raise ValueError("a Blaschke product with non-zero zeros is not a polynomial")
        return len(self.zeros)

    def width(self, d: int) -> int:
        if d != 1:
            raise DimensionMismatchError("Blaschke products live on the disk (d = 1)")
        return 1

    def evaluate(self, Z: np.ndarray) -> np.ndarray:
        self.width(Z.shape[1])
        z = Z[:, 0]
        out = np.full(z.shape, self.unimodular, dtype=complex)
        for a in self.zeros:
            out = out * _automorphism_disk(z, a)
        return out[:, None]

    def taylor(self, N: int) -> TaylorExpansion:
        c = np.zeros(N + 1, dtype=complex)
        c[0] = self.unimodular
        for a in self.zeros:
            c = np.convolve(c, _automorphism_coeffs(a, N))[: N + 1]
        return TaylorExpansion(c, *self._tail(N))

    def _tail(self, N: int):
        rho = max((abs(a) for a in self.zeros), default=0.0)
        if rho == 0.0:
            k = len(self.zeros)
            return (0.0, None) if k <= N else (1.0, (1.0, 1.0))
        if len(self.zeros) == 1:
            # exact: sum_{n>N} |a|^{2(n-1)} (1-|a|^2)^2 = (1-|a|^2) |a|^{2N}
            a = abs(self.zeros[0])
            M = max(a, (1 - a * a) / a)
            return (1.0 - a * a) * a ** (2 * N), (M, 1.0 / a)
        # Cauchy estimate on |z| = R < 1/rho: |c_n| <= M_R R^{-n}
        R = rho ** -0.5
        M = 1.0
        for a in self.zeros:
            M *= (R + abs(a)) / (1.0 - abs(a) * R)
        tail = M * M * R ** (-2.0 * (N + 1)) / (1.0 - R ** -2.0)
        return min(tail, 1.0), (M, R)

    def sup_norm_bound(self) -> float:
        return 1.0


def _automorphism_coeffs(a: complex, N: int) -> np.ndarray:
    c = np.zeros(N + 1, dtype=complex)
    c[0] = -a
    if N >= 1:
        n = np.arange(1, N + 1)
        c[1:] = np.conj(a) ** (n - 1) * (1.0 - abs(a) ** 2)
    return c


@dataclass(frozen=True)
class BallAutomorphism:
    """The involutive-type automorphism of ``B_d`` sending ``a`` to 0.

    ``phi_a(z) = (P_a z + s_a Q_a z - a) / (1 - <z, a>)`` with ``P_a`` the
    projection onto ``C a``, ``Q_a = I - P_a`` and ``s_a = sqrt(1 - |a|^2)``.
    For ``d = 1`` this is ``(z - a) / (1 - conj(a) z)``. Contributes ``d``
    entries to a row multiplier.
    """

    a: tuple

    def __post_init__(self):
        a = _as_coords(self.a)
        object.__setattr__(self, "a", a)
        if not np.linalg.norm(np.asarray(a)) < 1.0:
            raise OutsideBallError("automorphism centre must lie in the open ball")

    @property
    def d(self) -> int:
        return len(self.a)

    @property
    def is_polynomial(self) -> bool:
        return not np.any(np.asarray(self.a))

    @property
    def degree(self) -> int:
        if not self.is_polynomial:
            raise ValueError("automorphism with a != 0 is not a polynomial")
        return 1

    def width(self, d: int) -> int:
        if d != self.d:
            raise DimensionMismatchError("automorphism centre has dimension {}, points have {}".format(self.d, d))
        return d

    def evaluate(self, Z: np.ndarray) -> np.ndarray:
        self.width(Z.shape[1])
        a = np.asarray(self.a)
        aa = float(np.vdot(a, a).real)
        za = Z @ np.conj(a)
        if aa == 0.0:
            return Z.copy()
        Pz = np.outer(za / aa, a)
        Qz = Z - Pz
        s = math.sqrt(1.0 - aa)
        return (Pz + s * Qz - a[None, :]) / (1.0 - za)[:, None]

    def taylor(self, N: int) -> TaylorExpansion:
        if self.d != 1:
            raise DimensionMismatchError("Taylor expansion is only available for d = 1")
        return BlaschkeProduct((self.a[0],)).taylor(N)

    def sup_norm_bound(self) -> float:
        return 1.0


@dataclass(frozen=True)
class ScaledCoordinate:
    """``factor * z_index``."""

    index: int
    factor: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "index", int(self.index))
        object.__setattr__(self, "factor", complex(self.factor))
        if self.index < 0:
            raise ValueError("coordinate index must be non-negative")

    is_polynomial = True
    degree = 1

    def width(self, d: int) -> int:
        if self.index >= d:
            raise DimensionMismatchError("coordinate index {} out of range for d = {}".format(self.index, d))
        return 1

    def evaluate(self, Z: np.ndarray) -> np.ndarray:
        self.width(Z.shape[1])
        return self.factor * Z[:, self.index : self.index + 1]

    def taylor(self, N: int) -> TaylorExpansion:
        if self.index != 0:
            raise DimensionMismatchError("Taylor expansion is only available for d = 1")
        return Polynomial((0, self.factor)).taylor(N)

    def sup_norm_bound(self) -> float:
        return abs(self.factor)


ScalarFunction = Union[Polynomial, BlaschkeProduct, BallAutomorphism, ScaledCoordinate]


@dataclass(frozen=True)
class RowMultiplier:
    """A finite row ``b = (b_1, ..., b_r)`` of analytic functions.

    Each component contributes ``component.width(d)`` entries (one, except
    for :class:`BallAutomorphism` which contributes ``d``).
    """

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a row multiplier needs at least one component")
        object.__setattr__(self, "components", comps)

    def width(self, d: int) -> int:
        return sum(c.width(d) for c in self.components)

    def __call__(self, Z) -> np.ndarray:
        """Values ``b(z_i)`` as an ``(n, r)`` array."""
        Z = as_point_array(Z)
        return np.concatenate([c.evaluate(Z) for c in self.components], axis=1)

    @property
    def is_polynomial(self) -> bool:
        return all(c.is_polynomial for c in self.components)

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    def taylor(self, N: int) -> list:
        """Per-entry Taylor expansions (d = 1 only)."""
        out = []
        for c in self.components:
            if isinstance(c, BallAutomorphism) and c.d != 1:
                raise DimensionMismatchError("Taylor expansion is only available for d = 1")
            out.append(c.taylor(N))
        return out

    def sup_norm_bound(self) -> float:
        """Crude bound on ``sup_z ||b(z)||``: the l2 norm of component sup bounds."""
        return float(math.sqrt(sum(c.sup_norm_bound() ** 2 * (c.d if isinstance(c, BallAutomorphism) else 1)
                                   for c in self.components)))

    def b0_norm(self, d: int = 1) -> float:
        return float(np.linalg.norm(self(np.zeros((1, d)))))


def scalar(f: ScalarFunction) -> RowMultiplier:
    """Wrap a single scalar function as a width-one row."""
    return RowMultiplier((f,))


@dataclass(frozen=True)
class MultiplierValue:
    row: np.ndarray
    norm: float


def eval_multiplier(b: RowMultiplier, z) -> MultiplierValue:
    """Evaluate the row ``b(z)`` at a single point, with its l2 norm."""
    z = as_point(z)
    row = b(z.array[None, :])[0]
    return MultiplierValue(row, float(np.linalg.norm(row)))


def taylor_expand_component(f: ScalarFunction, N: int, tol: float = math.inf) -> TaylorExpansion:
    """Coefficients of degree <= N with a certified bound on the l2 tail mass.

    Raises :class:`TailBoundError` when the bound exceeds ``tol``.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    exp = f.taylor(N)
    if exp.tail_mass > tol:
        raise TailBoundError("tail mass {:.3e} exceeds tolerance {:.3e} at N = {}".format(exp.tail_mass, tol, N))
    return exp


# ---------------------------------------------------------------------------
# kernels

class Kernel:
    """Base class: ``gram(Z, W)[i, j] = k(z_i, w_j)``."""

    #: required point dimension, or None for any
    dim: Optional[int] = None

    def gram(self, Z, W=None) -> np.ndarray:
        Z = as_point_array(Z)
        W = Z if W is None else as_point_array(W)
        if Z.shape[1] != W.shape[1]:
            raise DimensionMismatchError("point dimensions differ: {} vs {}".format(Z.shape[1], W.shape[1]))
        if self.dim is not None and Z.shape[1] != self.dim:
            raise DimensionMismatchError("{} requires d = {}".format(type(self).__name__, self.dim))
        return self._gram(Z, W)

    def _gram(self, Z, W):  # pragma: no cover - abstract
        raise NotImplementedError

    def __call__(self, z, w) -> complex:
        return eval_kernel(self, z, w)

    # radial structure, when available: k(z, w) = sum_n k_n <z, w>^n
    is_radial = False

    def radial_coefficients(self, N: int) -> np.ndarray:
        raise NotImplementedError("{} is not a radial kernel".format(type(self).__name__))

    def shift_weight_bound(self, j: np.ndarray) -> np.ndarray:
        """Upper bound on ``sup_n k_n / k_{n+j}`` (ratio of squared monomial norms)."""
        raise TailBoundError("no certified shift-weight bound for {}".format(type(self).__name__))


def _inner(Z, W):
    return Z @ W.conj().T


@dataclass(frozen=True)
class RadialPower(Kernel):
    """``s^beta(z, w) = (1 - <z, w>)^(-beta)``; beta = 1 is the Szego/Drury-Arveson kernel."""

    beta: float

    def __post_init__(self):
        object.__setattr__(self, "beta", float(self.beta))
        if not self.beta > 0:
            raise ValueError("RadialPower requires beta > 0")

    is_radial = True

    def _gram(self, Z, W):
        return np.power(1.0 - _inner(Z, W), -self.beta)

    def radial_coefficients(self, N: int) -> np.ndarray:
        return radial_coeffs(self.beta, N).coeffs

    def shift_weight_bound(self, j):
        j = np.asarray(j)
        if self.beta >= 1.0:
            return np.ones(j.shape)
        # c_n / c_{n+j} is largest at n = 0 when beta < 1
        from scipy.special import gammaln

        logc = gammaln(j + self.beta) - gammaln(self.beta) - gammaln(j + 1.0)
        return np.exp(-logc)


def szego() -> RadialPower:
    return RadialPower(1.0)


@dataclass(frozen=True)
class RadialCoeff(Kernel):
    """``k(z, w) = sum_n k_n <z, w>^n``.

    Either an explicit finite list ``coeffs`` (zero beyond its end) or the
    infinite family ``k_n = (n + 1)^(-alpha)`` (``family="power"``); the
    Dirichlet kernel is ``alpha = 1``.
    """

    coeffs: Optional[tuple] = None
    family: Optional[str] = None
    alpha: float = 1.0

    def __post_init__(self):
        if (self.coeffs is None) == (self.family is None):
            raise ValueError("RadialCoeff needs exactly one of coeffs or family")
        if self.coeffs is not None:
            c = tuple(float(v) for v in self.coeffs)
            if not c or c[0] <= 0:
                raise ValueError("RadialCoeff requires k_0 > 0")
            if any(v < 0 for v in c):
                raise ValueError("RadialCoeff coefficients must be non-negative")
            object.__setattr__(self, "coeffs", c)
        elif self.family != "power":
            raise ValueError("unknown coefficient family {!r}".format(self.family))
        object.__setattr__(self, "alpha", float(self.alpha))

    is_radial = True

    @property
    def is_finite(self) -> bool:
        return self.coeffs is not None

    def radial_coefficients(self, N: int) -> np.ndarray:
        if self.coeffs is not None:
            out = np.zeros(N + 1)
            k = min(N + 1, len(self.coeffs))
            out[:k] = self.coeffs[:k]
            return out
        return np.power(np.arange(N + 1) + 1.0, -self.alpha)

    def tail_bound(self, L: int, r: float) -> float:
        """Bound on ``sum_{n >= L} k_n r^n`` for ``0 <= r < 1``."""
        if self.coeffs is not None:
            rest = np.asarray(self.coeffs[L:])
            return float(np.sum(rest * r ** np.arange(L, L + rest.size))) if rest.size else 0.0
        if r == 0.0:
            return 0.0 if L > 0 else 1.0
        # term ratios k_{n+1} r^{n+1} / (k_n r^n) are at most q for n >= L
        q = r * max(1.0, ((L + 2.0) / (L + 1.0)) ** (-self.alpha))
        if q >= 1.0:
            return math.inf
        return (L + 1.0) ** (-self.alpha) * r**L / (1.0 - q)

    def series_length(self, r: float, tol: float = SERIES_TOL, max_length: int = MAX_SERIES_LENGTH) -> int:
        if self.coeffs is not None:
            return len(self.coeffs)
        L = 16
        while self.tail_bound(L, r) >= tol:
            L *= 2
            if L > max_length:
                raise TailBoundError("radial series tail {:.1e} not reachable within {} terms at |t| = {}".format(tol, max_length, r))
        lo, hi = L // 2, L
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.tail_bound(mid, r) < tol:
                hi = mid
            else:
                lo = mid
        return hi

    def _gram(self, Z, W):
        t = _inner(Z, W)
        r = float(np.max(np.abs(t))) if t.size else 0.0
        L = self.series_length(r)
        c = self.radial_coefficients(L - 1)
        out = np.full(t.shape, c[-1], dtype=complex)
        for ck in c[-2::-1]:
            out = out * t + ck
        return out

    def shift_weight_bound(self, j):
        if self.coeffs is not None:
            raise TailBoundError("finite coefficient lists admit polynomial symbols only")
        j = np.asarray(j, dtype=float)
        if self.alpha <= 0:
            return np.ones(j.shape)
        return np.power(1.0 + j, self.alpha)


def dirichlet() -> RadialCoeff:
    """Dirichlet kernel ``-log(1 - t) / t``: ``k_n = 1 / (n + 1)``."""
    return RadialCoeff(family="power", alpha=1.0)


@dataclass(frozen=True)
class BergmanType(Kernel):
    """``k = 1 / (1 - phi(z) conj(phi(w)) (1 - u(z) u(w)^*))`` with ``phi(z) = c z`` (d = 1)."""

    c: complex
    u: RowMultiplier

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))

    dim = 1

    def _gram(self, Z, W):
        pz = self.c * Z[:, 0]
        pw = self.c * W[:, 0]
        uu = self.u(Z) @ self.u(W).conj().T
        return 1.0 / (1.0 - np.outer(pz, np.conj(pw)) * (1.0 - uu))

    @property
    def is_radial(self) -> bool:
        return self._monomial_u() is not None

    def _monomial_u(self):
        """``[(|alpha|^2, p)]`` if every u-entry is ``alpha z^p``, else None."""
        terms = []
        for comp in self.u.components:
            if not comp.is_polynomial:
                return None
            coeffs = np.asarray(comp.taylor(comp.degree).coeffs)
            nz = np.flatnonzero(coeffs)
            if nz.size > 1:
                return None
            if nz.size == 1:
                terms.append((abs(coeffs[nz[0]]) ** 2, int(nz[0])))
        return terms

    def radial_coefficients(self, N: int) -> np.ndarray:
        terms = self._monomial_u()
        if terms is None:
            raise NotImplementedError("BergmanType is radial only when every u-entry is a monomial")
        # k = 1 / (1 - |c|^2 t (1 - sum_i |alpha_i|^2 t^{p_i})) = 1 / (1 - g(t))
        g = np.zeros(N + 1)
        if N >= 1:
            g[1] = abs(self.c) ** 2
        for w, p in terms:
            if p + 1 <= N:
                g[p + 1] -= abs(self.c) ** 2 * w
        k = np.zeros(N + 1)
        k[0] = 1.0
        for n in range(1, N + 1):
            k[n] = np.dot(g[1 : n + 1], k[n - 1 :: -1][:n])
        return k


@dataclass(frozen=True)
class SubKernel(Kernel):
    """``k^{b,m}(z, w) = k(z, w) (1 - b(z) b(w)^*)^m``; ``m = 1`` is ``k^b``."""

    base: Kernel
    b: RowMultiplier
    m: int = 1

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError("m must be a positive integer")
        object.__setattr__(self, "m", int(self.m))

    @property
    def dim(self):
        return self.base.dim

    def _gram(self, Z, W):
        bb = self.b(Z) @ self.b(W).conj().T
        return self.base._gram(Z, W) * (1.0 - bb) ** self.m


@dataclass(frozen=True)
class Product(Kernel):
    left: Kernel
    right: Kernel

    @property
    def dim(self):
        return self.left.dim if self.left.dim is not None else self.right.dim

    def _gram(self, Z, W):
        return self.left._gram(Z, W) * self.right._gram(Z, W)

    @property
    def is_radial(self) -> bool:
        return self.left.is_radial and self.right.is_radial

    def radial_coefficients(self, N: int) -> np.ndarray:
        return np.convolve(self.left.radial_coefficients(N), self.right.radial_coefficients(N))[: N + 1]


def eval_kernel(spec: Kernel, z, w) -> complex:
    """``k(z, w)`` for single points ``z, w`` of the same dimension."""
    z, w = as_point(z), as_point(w)
    if z.d != w.d:
        raise DimensionMismatchError("points have dimensions {} and {}".format(z.d, w.d))
    return complex(spec.gram(z.array[None, :], w.array[None, :])[0, 0])

