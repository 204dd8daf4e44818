"""Experiment configuration: JSON text -> validated :class:`ExperimentConfig`.

Validation is eager and collects every problem as a ``(key path, reason)``
pair; unknown keys are rejected at every level. Complex numbers are written
as a JSON number or a ``[re, im]`` pair.

Layout::

    {
      "schema_version": 1,
      "experiment": "psd-check",
      "kernel": {"type": "radial-power", "beta": 2},
      "multiplier": {"components": [{"type": "polynomial", "coefficients": [0, 1]}]},
      "grid": {"kind": "random", "counts": [60], "seed": 7},
      "truncation": {"N_schedule": [50, 100, 200, 400]},
      "tolerances": {"psd_tol": 1e-10, "ident_tol": 1e-10, "slack": 1e-12},
      "output": "report.json",
      "params": {"m": 1}
    }
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import ConfigError
from .kernels import (BallAutomorphism, BergmanType, BlaschkeProduct, Kernel, Polynomial, Product, RadialCoeff,
                      RadialPower, RowMultiplier, SampleSet, ScaledCoordinate, SubKernel)
from . import sampling

SCHEMA_VERSION = 1

EXPERIMENTS = (
    "psd-check", "norm", "mult-norm", "blaschke-id", "automorphism-id", "model-verify", "representer",
    "pointeval-bound", "embedding-profile", "boundary-scan", "expansivity", "inequality", "density", "question-6",
)
INEQUALITY_KINDS = ("backshift", "shimorin", "bergman-type", "hypercontraction")
GRID_KINDS = ("random", "sobol", "rings", "graded-rings")

TOP_KEYS = ("schema_version", "experiment", "kernel", "multiplier", "grid", "truncation", "tolerances", "output",
            "params")

DEFAULT_TOLERANCES = {"psd_tol": 1e-10, "ident_tol": 1e-10, "slack": 1e-12}


class _Missing:
    pass


MISSING = _Missing()


class _Checker:
    """Accumulates diagnostics while walking a JSON object."""

    def __init__(self):
        self.errors = []

    def fail(self, path: str, reason: str):
        self.errors.append((path, reason))
        return MISSING

    def obj(self, value, path: str, allowed) -> Optional[dict]:
        if not isinstance(value, dict):
            self.fail(path, "expected an object")
            return None
        for k in value:
            if k not in allowed:
                self.fail(_join(path, k), "unknown key")
        return value

    def get(self, d: dict, key: str, path: str, kind: Callable, default=MISSING, check=None, reason=""):
        p = _join(path, key)
        if key not in d:
            if default is MISSING:
                return self.fail(p, "required key missing")
            return default
        try:
            v = kind(d[key])
        except (TypeError, ValueError) as exc:
            return self.fail(p, str(exc) or "invalid value")
        if check is not None and not check(v):
            return self.fail(p, reason or "value out of range")
        return v


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return "{}[{}]".format(path, key)
    return "{}.{}".format(path, key) if path else str(key)


# ---------------------------------------------------------------------------
# scalar coercions

def _real(v) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise TypeError("expected a number")
    v = float(v)
    if not math.isfinite(v):
        raise ValueError("expected a finite number")
    return v


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        if isinstance(v, float) and v.is_integer():
            return int(v)
        raise TypeError("expected an integer")
    return int(v)


def _complex(v) -> complex:
    if isinstance(v, list):
        if len(v) != 2:
            raise ValueError("complex numbers are [re, im] pairs")
        return complex(_real(v[0]), _real(v[1]))
    return complex(_real(v))


def _complex_list(v) -> tuple:
    if not isinstance(v, list):
        raise TypeError("expected a list")
    return tuple(_complex(x) for x in v)


def _int_list(v) -> tuple:
    if not isinstance(v, list) or not v:
        raise TypeError("expected a non-empty list of integers")
    return tuple(_int(x) for x in v)


def _real_list(v) -> tuple:
    if not isinstance(v, list) or not v:
        raise TypeError("expected a non-empty list of numbers")
    return tuple(_real(x) for x in v)


def _str(v) -> str:
    if not isinstance(v, str):
        raise TypeError("expected a string")
    return v


def _u64(v) -> int:
    v = _int(v)
    if not 0 <= v < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return v


def _any(v):
    return v


# ---------------------------------------------------------------------------
# multipliers and kernels

def parse_multiplier(spec, path: str, chk: _Checker) -> Optional[RowMultiplier]:
    d = chk.obj(spec, path, ("components",))
    if d is None:
        return None
    comps = d.get("components")
    if not isinstance(comps, list) or not comps:
        chk.fail(_join(path, "components"), "expected a non-empty list")
        return None
    out = []
    for i, c in enumerate(comps):
        p = _join(_join(path, "components"), i)
        comp = _parse_component(c, p, chk)
        if comp is not None:
            out.append(comp)
    if len(out) != len(comps):
        return None
    row = RowMultiplier(tuple(out))
    if all(isinstance(c, Polynomial) and c.degree == 0 for c in out):
        norm = math.sqrt(sum(abs(c.coefficients[0]) ** 2 for c in out))
        if norm > 1.0:
            chk.fail(path, "non-contractive constant multiplier (norm {:.6g} > 1)".format(norm))
            return None
    return row


def _parse_component(c, path: str, chk: _Checker):
    if not isinstance(c, dict):
        chk.fail(path, "expected an object")
        return None
    kind = c.get("type")
    allowed = {
        "polynomial": ("type", "coefficients"),
        "blaschke": ("type", "zeros", "unimodular"),
        "automorphism": ("type", "a"),
        "coordinate": ("type", "index", "factor"),
    }
    if kind not in allowed:
        chk.fail(_join(path, "type"), "unknown component type {!r}; expected one of {}".format(kind, sorted(allowed)))
        return None
    chk.obj(c, path, allowed[kind])
    n = len(chk.errors)
    try:
        if kind == "polynomial":
            co = chk.get(c, "coefficients", path, _complex_list)
            if co is MISSING:
                return None
            if not co:
                chk.fail(_join(path, "coefficients"), "expected at least one coefficient")
                return None
            return Polynomial(co) if len(chk.errors) == n else None
        if kind == "blaschke":
            zs = chk.get(c, "zeros", path, _complex_list, check=lambda z: all(abs(a) < 1 for a in z),
                         reason="zeros must lie in the open unit disk")
            u = chk.get(c, "unimodular", path, _complex, 1.0, check=lambda x: abs(abs(x) - 1) < 1e-12,
                        reason="constant factor must be unimodular")
            return BlaschkeProduct(zs, u) if len(chk.errors) == n else None
        if kind == "automorphism":
            a = chk.get(c, "a", path, _complex_list, check=lambda a: len(a) >= 1 and sum(abs(x) ** 2 for x in a) < 1,
                        reason="centre must be a non-empty point of the open ball")
            return BallAutomorphism(a) if len(chk.errors) == n else None
        idx = chk.get(c, "index", path, _int, check=lambda i: i >= 0, reason="index must be non-negative")
        fac = chk.get(c, "factor", path, _complex, 1.0)
        return ScaledCoordinate(idx, fac) if len(chk.errors) == n else None
    except (ValueError, TypeError) as exc:
        chk.fail(path, str(exc))
        return None


def parse_kernel(spec, path: str, chk: _Checker) -> Optional[Kernel]:
    if not isinstance(spec, dict):
        chk.fail(path, "expected an object")
        return None
    kind = spec.get("type")
    allowed = {
        "radial-power": ("type", "beta"),
        "szego": ("type",),
        "dirichlet": ("type",),
        "radial-coeff": ("type", "coeffs", "family", "alpha"),
        "bergman-type": ("type", "c", "u"),
        "sub": ("type", "base", "b", "m"),
        "product": ("type", "left", "right"),
    }
    if kind not in allowed:
        chk.fail(_join(path, "type"), "unknown kernel type {!r}; expected one of {}".format(kind, sorted(allowed)))
        return None
    chk.obj(spec, path, allowed[kind])
    n = len(chk.errors)
    if kind == "radial-power":
        beta = chk.get(spec, "beta", path, _real, check=lambda b: b > 0, reason="beta must be positive")
        return RadialPower(beta) if len(chk.errors) == n else None
    if kind == "szego":
        return RadialPower(1.0)
    if kind == "dirichlet":
        return RadialCoeff(family="power", alpha=1.0)
    if kind == "radial-coeff":
        if ("coeffs" in spec) == ("family" in spec):
            chk.fail(path, "give exactly one of 'coeffs' or 'family'")
            return None
        if "coeffs" in spec:
            co = chk.get(spec, "coeffs", path, _real_list, check=lambda c: c[0] > 0 and all(x >= 0 for x in c),
                         reason="coefficients must be non-negative with k_0 > 0")
            return RadialCoeff(coeffs=co) if len(chk.errors) == n else None
        fam = chk.get(spec, "family", path, _str, check=lambda f: f == "power", reason="only family 'power' is known")
        alpha = chk.get(spec, "alpha", path, _real, 1.0)
        return RadialCoeff(family=fam, alpha=alpha) if len(chk.errors) == n else None
    if kind == "bergman-type":
        c = chk.get(spec, "c", path, _complex)
        u = parse_multiplier(spec.get("u"), _join(path, "u"), chk) if "u" in spec else chk.fail(_join(path, "u"), "required key missing")
        return BergmanType(c, u) if len(chk.errors) == n else None
    if kind == "sub":
        base = parse_kernel(spec.get("base"), _join(path, "base"), chk)
        b = parse_multiplier(spec.get("b"), _join(path, "b"), chk)
        m = chk.get(spec, "m", path, _int, 1, check=lambda m: m >= 1, reason="m must be a positive integer")
        return SubKernel(base, b, m) if len(chk.errors) == n else None
    left = parse_kernel(spec.get("left"), _join(path, "left"), chk)
    right = parse_kernel(spec.get("right"), _join(path, "right"), chk)
    return Product(left, right) if len(chk.errors) == n else None


# ---------------------------------------------------------------------------
# grids

@dataclass(frozen=True)
class GridSpec:
    kind: str = "random"
    counts: tuple = (60,)
    radii: tuple = ()
    seed: int = 0
    d: int = 1
    rmax: float = 0.95
    angles: tuple = ()

    def schedule(self, seed: Optional[int] = None) -> list:
        """Nested sample sets, one per level."""
        s = self.seed if seed is None else seed
        if self.kind == "random":
            return sampling.nested_random_schedule(self.counts, self.d, s, self.rmax)
        if self.kind == "sobol":
            return sampling.nested_ball_schedule(self.counts, self.d, s, self.rmax)
        if self.kind == "rings":
            return sampling.nested_ring_schedule(self.radii, self.counts[0], len(self.counts))
        return sampling.graded_ring_schedule(self.radii, self.angles)

    def samples(self, seed: Optional[int] = None) -> SampleSet:
        return self.schedule(seed)[-1]


def parse_grid(spec, chk: _Checker) -> GridSpec:
    if spec is None:
        return GridSpec()
    d = chk.obj(spec, "grid", ("kind", "counts", "radii", "seed", "d", "rmax", "angles"))
    if d is None:
        return GridSpec()
    kind = chk.get(d, "kind", "grid", _str, "random", check=lambda k: k in GRID_KINDS,
                   reason="grid kind must be one of {}".format(list(GRID_KINDS)))
    counts = chk.get(d, "counts", "grid", _int_list, (60,), check=lambda c: all(x > 0 for x in c),
                     reason="counts must be positive")
    radii = chk.get(d, "radii", "grid", _real_list, (), check=lambda r: all(0 < x < 1 for x in r),
                    reason="radii must lie in (0, 1)")
    seed = chk.get(d, "seed", "grid", _u64, 0)
    dim = chk.get(d, "d", "grid", _int, 1, check=lambda x: x >= 1, reason="d must be positive")
    rmax = chk.get(d, "rmax", "grid", _real, 0.95, check=lambda r: 0 < r < 1, reason="rmax must lie in (0, 1)")
    angles = chk.get(d, "angles", "grid", _int_list, (), check=lambda a: all(x > 0 for x in a),
                     reason="angles must be positive")
    if kind == "rings":
        if not radii:
            chk.fail("grid.radii", "ring grids need radii")
        if counts is not MISSING and any(c != counts[0] * 2**j for j, c in enumerate(counts)):
            chk.fail("grid.counts", "ring grids double the angle count at every level")
        if dim != 1:
            chk.fail("grid.d", "ring grids live in the disk (d = 1)")
    if kind == "graded-rings":
        if not radii:
            radii = sampling.GRADED_RADII[:4]
            angles = angles or sampling.GRADED_ANGLES[:4]
        if len(radii) != len(angles or ()):
            chk.fail("grid.angles", "graded rings need one angle count per radius")
        if dim != 1:
            chk.fail("grid.d", "ring grids live in the disk (d = 1)")
    if any(v is MISSING for v in (kind, counts, radii, seed, dim, rmax, angles)):
        return GridSpec()
    return GridSpec(kind, counts, radii, seed, dim, rmax, angles)


# ---------------------------------------------------------------------------
# experiment parameters

# name -> (coercion, default, check, reason); default MISSING means required
_P = dict
_POS = (lambda x: x > 0, "must be positive")
_UNIT = (lambda x: 0 < x < 1, "must lie in (0, 1)")


def _disk_point(v):
    z = _complex_list(v) if isinstance(v, list) and v and isinstance(v[0], list) else None
    if z is None:
        return (_complex(v),)
    return z


def _in_ball(p) -> bool:
    return sum(abs(x) ** 2 for x in p) < 1


PARAMS = {
    "psd-check": _P(m=(_int, 1, lambda m: m >= 1, "m must be a positive integer"),
                    expect=(_str, "PSD", lambda s: s in ("PSD", "NOT_PSD"), "expect must be PSD or NOT_PSD"),
                    witness_max=(_real, None, None, "")),
    "norm": _P(f=(_any, MISSING, None, ""), expected=(_real, None, None, ""), tol=(_real, 1e-8, *_POS)),
    "mult-norm": _P(bound=(_real, None, None, ""), bound_tol=(_real, 1e-6, *_POS)),
    "blaschke-id": _P(products=(_int, 100, *_POS), max_zeros=(_int, 5, *_POS), max_modulus=(_real, 0.9, *_UNIT),
                      pairs=(_int, 20, *_POS), rmax=(_real, 0.95, *_UNIT)),
    "automorphism-id": _P(dims=(_int_list, (1, 2, 3), lambda d: all(x >= 1 for x in d), "dims must be positive"),
                          trials=(_int, 50, *_POS), betas=(_real_list, (2.0, 3.5), lambda b: all(x >= 1 for x in b),
                                                            "beta must be at least 1 for the factorization"),
                          factorization_tol=(_real, 1e-10, *_POS)),
    "model-verify": _P(N=(_int, 200, *_POS), centers=(_int, 5, *_POS), combos=(_int, 50, *_POS),
                       relerr_tol=(_real, 1e-6, *_POS), pair_tol=(_real, 1e-8, *_POS),
                       reproducing_tol=(_real, 1e-9, *_POS), spot=(_real_list, None, None, ""),
                       rmax=(_real, 0.8, *_UNIT)),
    "representer": _P(y=(_disk_point, (0.5,), _in_ball, "y must lie in the open ball"), N=(_int, 200, *_POS)),
    "pointeval-bound": _P(y=(_disk_point, (0.5,), _in_ball, "y must lie in the open ball"),
                          e=(_int, 0, lambda e: e >= 0, "e must be non-negative")),
    "embedding-profile": _P(epsilon=(_real, 1e-3, *_POS),
                            expect=(_str, None, lambda s: s in ("STABILIZING", "GROWING", "UNDETERMINED"),
                                    "expect must be STABILIZING, GROWING or UNDETERMINED"),
                            expect_counts=(_int_list, None, None, "")),
    "boundary-scan": _P(direction=(_complex, 1.0, lambda z: abs(abs(z) - 1) < 1e-12, "direction must be unimodular"),
                        steps=(_int, 12, *_POS), threshold=(_real, 100.0, *_POS), gap=(_real, 0.05, *_UNIT),
                        expect_violation=(lambda v: bool(v) if isinstance(v, bool) else _str(v), None, None, "")),
    "expansivity": _P(trials=(_int, 1000, *_POS), degree=(_int, 50, *_POS), tol=(_real, 1e-9, *_POS)),
    "inequality": _P(kind=(_str, MISSING, lambda k: k in INEQUALITY_KINDS,
                           "kind must be one of {}".format(list(INEQUALITY_KINDS))),
                     trials=(_int, None, *_POS), N=(_int, None, *_POS), m=(_int, 3, lambda m: m >= 0, "m must be >= 0"),
                     expect=(lambda v: tuple(_str(x) for x in v), None, None, ""),
                     spot=(lambda v: [_complex_list(x) for x in v], None, None, "")),
    "density": _P(kind=(_str, "poly", lambda k: k in ("poly", "kernel-span", "membership"),
                        "kind must be poly, kernel-span or membership"),
                  m=(_int, 1, lambda m: m >= 1, "m must be a positive integer"),
                  w=(_disk_point, (0.3,), _in_ball, "w must lie in the open ball"),
                  degrees=(_int_list, (0, 5, 10, 20, 40, 80, 150), lambda d: all(x >= 0 for x in d), "degrees must be >= 0"),
                  extra=(_int, 60, *_POS), residual_below=(_real, None, None, ""),
                  final_below=(_real, None, None, ""), centers=(_int_list, (8, 16, 24, 32, 40), None, ""),
                  rings=(_real_list, (0.3, 0.6, 0.85), None, ""), N=(_int, 200, *_POS),
                  target_kind=(_str, "kb", lambda k: k in ("kb", "k"), "target_kind must be kb or k")),
    "question-6": _P(beta=(_real, 2.0, *_POS), m=(_int, 2, lambda m: m >= 1, "m must be a positive integer"),
                     w=(_disk_point, (0.3,), _in_ball, "w must lie in the open ball"),
                     degrees=(_int_list, (0, 5, 10, 20, 40), None, ""), extra=(_int, 60, *_POS)),
}


def _parse_params(experiment: str, spec, chk: _Checker) -> dict:
    table = PARAMS.get(experiment, {})
    if spec is None:
        spec = {}
    d = chk.obj(spec, "params", tuple(table))
    out = {}
    if d is None:
        return out
    for name, (kind, default, check, reason) in table.items():
        v = chk.get(d, name, "params", kind, default, check, reason)
        if v is not MISSING:
            out[name] = v
    return out


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tolerances:
    psd_tol: float = 1e-10
    ident_tol: float = 1e-10
    slack: float = 1e-12


@dataclass(frozen=True)
class ExperimentConfig:
    schema_version: int
    experiment: str
    kernel: Optional[Kernel]
    multiplier: Optional[RowMultiplier]
    grid: GridSpec
    N_schedule: Optional[tuple]
    tolerances: Tolerances
    output: Optional[str]
    params: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def seed(self) -> int:
        return self.grid.seed

    def with_seed(self, seed: int) -> "ExperimentConfig":
        raw = copy.deepcopy(self.raw)
        raw.setdefault("grid", {})["seed"] = int(seed)
        return parse_dict(raw)


# which top-level sections each experiment needs
NEEDS_KERNEL = {"psd-check", "norm", "mult-norm", "model-verify", "representer", "pointeval-bound",
                "embedding-profile", "boundary-scan", "expansivity", "inequality", "density"}
NEEDS_MULTIPLIER = {"mult-norm", "model-verify", "representer", "pointeval-bound", "embedding-profile",
                    "boundary-scan", "expansivity", "density"}


def parse_dict(data) -> ExperimentConfig:
    chk = _Checker()
    d = chk.obj(data, "", TOP_KEYS)
    if d is None:
        raise ConfigError(chk.errors)
    version = chk.get(d, "schema_version", "", _int, check=lambda v: v == SCHEMA_VERSION,
                      reason="unsupported schema_version (this library reads version {})".format(SCHEMA_VERSION))
    exp = chk.get(d, "experiment", "", _str, check=lambda e: e in EXPERIMENTS,
                  reason="unknown experiment kind; expected one of {}".format(list(EXPERIMENTS)))
    kernel = parse_kernel(d["kernel"], "kernel", chk) if "kernel" in d else None
    mult = parse_multiplier(d["multiplier"], "multiplier", chk) if "multiplier" in d else None
    grid = parse_grid(d.get("grid"), chk)
    sched = None
    if "truncation" in d:
        t = chk.obj(d["truncation"], "truncation", ("N_schedule",))
        if t is not None:
            s = chk.get(t, "N_schedule", "truncation", _int_list, check=lambda s: all(x > 0 for x in s),
                        reason="degrees must be positive")
            sched = None if s is MISSING else s
    tol = Tolerances()
    if "tolerances" in d:
        t = chk.obj(d["tolerances"], "tolerances", tuple(DEFAULT_TOLERANCES))
        if t is not None:
            vals = {k: chk.get(t, k, "tolerances", _real, v, check=lambda x: x > 0, reason="tolerance must be positive")
                    for k, v in DEFAULT_TOLERANCES.items()}
            if not any(v is MISSING for v in vals.values()):
                tol = Tolerances(**vals)
    out = chk.get(d, "output", "", _str, None)
    params = _parse_params(exp, d.get("params"), chk) if exp is not MISSING else {}
    if exp is not MISSING:
        if exp in NEEDS_KERNEL and kernel is None and "kernel" not in d:
            chk.fail("kernel", "experiment {!r} needs a kernel".format(exp))
        needs_b = exp in NEEDS_MULTIPLIER and not (exp == "density" and params.get("kind") == "poly") \
            and not (exp == "psd-check")
        if exp == "inequality" and params.get("kind") in ("bergman-type", "hypercontraction"):
            needs_b = True
        if needs_b and mult is None and "multiplier" not in d:
            chk.fail("multiplier", "experiment {!r} needs a multiplier".format(exp))
    if chk.errors:
        raise ConfigError(chk.errors)
    return ExperimentConfig(version, exp, kernel, mult, grid, sched, tol, None if out is MISSING else out, params,
                            copy.deepcopy(data))


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate JSON config text.

    Raises
    ------
    ConfigError
        With ``diagnostics`` listing every ``(key path, reason)`` found.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([("", "not valid JSON: {} (line {}, column {})".format(exc.msg, exc.lineno, exc.colno))])
    return parse_dict(data)
