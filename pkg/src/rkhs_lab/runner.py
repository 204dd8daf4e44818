"""Dispatch validated configs to the library and collect reports."""

from __future__ import annotations

import copy
import math
import time
from typing import Callable, Optional

import numpy as np
import scipy.linalg as sla

from . import __version__
from .config import ExperimentConfig, parse_dict, parse_multiplier, _Checker
from .density import (kernel_span_curve, poly_residual_curve)
from .diagnostics import (boundary_modulus_scan, embedding_profile, expansivity_check, radial_path,
                          verify_ball_automorphism_identity, verify_blaschke_identity)
from .errors import ConfigError, RKHSLabError
from .gram import build_gram, check_psd, mult_norm_estimate, norm_lower_bound
from .inequalities import (backward_shift_check, bergman_type_sides, check_bergman_type_inequality, check_shimorin,
                           hypercontraction_tower, tower_samples)
from .kernels import BlaschkeProduct, RadialPower, RowMultiplier, SampleSet, SubKernel, scalar
from .model import (ModelSpace, kernel_model_pair, model_inner_product, pointeval_bound_LDelta, representer_l_y,
                    reproducing_error, verify_norm_identity)
from .report import Report
from .sampling import ring_centers, rng
from .truncation import DEFAULT_SCHEDULE, TruncatedSpace, hkb_norm_curve

HANDLERS = {}


def handler(name: str):
    def deco(fn: Callable):
        HANDLERS[name] = fn
        return fn

    return deco


def run_experiment(cfg: ExperimentConfig, seed: Optional[int] = None) -> Report:
    """Run one experiment; library errors become ERROR verdicts, never exceptions."""
    if seed is not None:
        cfg = cfg.with_seed(seed)
    rep = Report(cfg.experiment, cfg.raw, __version__, cfg.schema_version, cfg.seed)
    t0 = time.perf_counter()
    try:
        HANDLERS[cfg.experiment](cfg, rep)
    except (RKHSLabError, ValueError, ArithmeticError, np.linalg.LinAlgError, sla.LinAlgError) as exc:
        rep.error("run", "{}: {}".format(type(exc).__name__, exc))
    rep.wall_time_seconds = time.perf_counter() - t0
    if not rep.verdicts:
        rep.metric("note", "no verdict produced")
        rep.verdict("run", "HINT", "note")
    return rep


def _points(S: SampleSet) -> list:
    A = S.array
    return [complex(z) for z in A[:, 0]] if A.shape[1] == 1 else [[complex(x) for x in row] for row in A]


def _monotone(values, slack: float, increasing: bool = True) -> bool:
    v = list(values)
    if increasing:
        return all(b >= a - slack for a, b in zip(v, v[1:]))
    return all(b <= a + slack for a, b in zip(v, v[1:]))


def _scalar_b(cfg: ExperimentConfig) -> RowMultiplier:
    if cfg.multiplier is None:
        raise ValueError("this experiment needs a multiplier")
    return cfg.multiplier


# ---------------------------------------------------------------------------
# gram engine

@handler("psd-check")
def _psd(cfg, rep):
    K = cfg.kernel
    if cfg.multiplier is not None:
        K = SubKernel(K, cfg.multiplier, cfg.params["m"])
    S = cfg.grid.samples()
    r = check_psd(build_gram(K, S), cfg.tolerances.psd_tol)
    rep.metric("n_points", len(S))
    rep.metric("min_eig", r.min_eig)
    rep.metric("max_eig", r.max_eig)
    rep.metric("threshold", -r.threshold)
    rep.metric("psd_verdict", r.verdict.value)
    rep.check("psd", r.verdict.value == cfg.params["expect"], "psd_verdict",
              "expected {}".format(cfg.params["expect"]))
    if r.witness is not None:
        rep.witnesses["not_psd"] = {"vector": r.witness, "points": _points(S), "quadratic_form": r.min_eig}
        rep.metric("witness_quadratic_form", r.min_eig)
        if cfg.params.get("witness_max") is not None:
            rep.check("witness", r.min_eig <= cfg.params["witness_max"], "witness_quadratic_form",
                      "quadratic form <= {}".format(cfg.params["witness_max"]))


def _series(cfg, rep, values, sizes, name):
    rep.curve(name, "n_points", "estimate", sizes, values)
    rep.check("monotone", _monotone(values, cfg.tolerances.slack), name,
              "nondecreasing within slack {}".format(cfg.tolerances.slack))


@handler("norm")
def _norm(cfg, rep):
    chk = _Checker()
    f = parse_multiplier({"components": [cfg.params["f"]]}, "params.f", chk)
    if chk.errors:
        raise ConfigError(chk.errors)
    sched = cfg.grid.schedule()
    vals, flags = [], []
    for S in sched:
        est = norm_lower_bound(build_gram(cfg.kernel, S), f(S.array)[:, 0])
        vals.append(est.value)
        flags.append(est.rank_deficient)
    _series(cfg, rep, vals, [len(S) for S in sched], "norm_curve")
    rep.metric("rank_deficient", flags)
    if cfg.params.get("expected") is not None:
        err = abs(vals[-1] - cfg.params["expected"])
        rep.metric("error_vs_expected", err)
        rep.check("converged", err <= cfg.params["tol"], "error_vs_expected", "tolerance {}".format(cfg.params["tol"]))


@handler("mult-norm")
def _mult(cfg, rep):
    b = _scalar_b(cfg)
    sched = cfg.grid.schedule()
    vals = [mult_norm_estimate(build_gram(cfg.kernel, S), b(S.array)).value for S in sched]
    _series(cfg, rep, vals, [len(S) for S in sched], "mult_norm_curve")
    if cfg.params.get("bound") is not None:
        rep.metric("max_estimate", max(vals))
        rep.check("bounded", max(vals) <= cfg.params["bound"] + cfg.params["bound_tol"], "max_estimate")


# ---------------------------------------------------------------------------
# diagnostics

def _disk(g: np.random.Generator, n: int, rmax: float) -> np.ndarray:
    return rmax * np.sqrt(g.random(n)) * np.exp(2j * np.pi * g.random(n))


def _ball(g: np.random.Generator, d: int, rmax: float) -> np.ndarray:
    x = g.standard_normal(2 * d)
    x /= np.linalg.norm(x)
    r = rmax * g.random() ** (1.0 / (2 * d))
    return r * (x[:d] + 1j * x[d:])


@handler("blaschke-id")
def _blaschke(cfg, rep):
    p = cfg.params
    g = rng(cfg.seed)
    products = []
    if cfg.multiplier is not None:
        products = [c.zeros for c in cfg.multiplier.components if isinstance(c, BlaschkeProduct)]
    if not products:
        for _ in range(p["products"]):
            k = int(g.integers(1, p["max_zeros"] + 1))
            products.append(tuple(_disk(g, k, p["max_modulus"])))
    errs = []
    for zs in products:
        z = _disk(g, p["pairs"], p["rmax"])
        w = _disk(g, p["pairs"], p["rmax"])
        errs.append(verify_blaschke_identity(zs, list(zip(z, w))))
    rep.metric("products", len(products))
    rep.metric("max_error", max(errs))
    rep.check("identity", max(errs) < cfg.tolerances.ident_tol, "max_error", "< {}".format(cfg.tolerances.ident_tol))


@handler("automorphism-id")
def _automorphism(cfg, rep):
    p = cfg.params
    g = rng(cfg.seed)
    ident, fac = [], []
    for d in p["dims"]:
        for _ in range(p["trials"]):
            a = _ball(g, d, 0.9)
            z = _ball(g, d, 0.95)
            w = _ball(g, d, 0.95)
            for beta in p["betas"]:
                r = verify_ball_automorphism_identity(a, [(z, w)], beta)
                ident.append(r.identity_error)
                fac.append(r.factorization_error)
    rep.metric("identity_max_error", max(ident))
    rep.metric("factorization_max_error", max(fac))
    rep.check("identity", max(ident) < cfg.tolerances.ident_tol, "identity_max_error")
    rep.check("factorization", max(fac) < p["factorization_tol"], "factorization_max_error")


@handler("embedding-profile")
def _profile(cfg, rep):
    sched = cfg.N_schedule or (100, 200, 400)
    prof = embedding_profile(cfg.kernel, _scalar_b(cfg), sched, cfg.params["epsilon"])
    rep.metric("N_schedule", list(prof.N_schedule))
    rep.metric("epsilon", prof.epsilon)
    rep.metric("eigencounts", list(prof.eigencounts))
    rep.metric("top_eigenvalues", list(prof.top_eigenvalues))
    rep.metric("verdict_hint", prof.verdict_hint)
    if cfg.params.get("expect") is not None:
        rep.check("hint", prof.verdict_hint == cfg.params["expect"], "verdict_hint",
                  "expected {}".format(cfg.params["expect"]))
    else:
        rep.verdict("hint", "HINT", "verdict_hint", prof.verdict_hint)
    if cfg.params.get("expect_counts") is not None:
        rep.check("counts", list(prof.eigencounts) == list(cfg.params["expect_counts"]), "eigencounts")


@handler("boundary-scan")
def _scan(cfg, rep):
    p = cfg.params
    scan = boundary_modulus_scan(_scalar_b(cfg), cfg.kernel, radial_path(p["direction"], p["steps"]),
                                 p["threshold"], p["gap"])
    rep.metric("kernel_diagonal", list(scan.kernel_diagonal))
    rep.metric("b_norms", list(scan.b_norms))
    rep.metric("violation", scan.violation)
    if p.get("expect_violation") is not None:
        rep.check("violation", scan.violation == bool(p["expect_violation"]), "violation")
    else:
        rep.verdict("violation", "HINT", "violation", "VIOLATION" if scan.violation else "NO_VIOLATION")


@handler("expansivity")
def _expansivity(cfg, rep):
    b = _scalar_b(cfg)
    if b.width(1) != 1:
        raise ValueError("expansivity needs a scalar multiplier")
    r = expansivity_check(cfg.kernel, b, cfg.params["trials"], cfg.params["degree"], cfg.seed, cfg.params["tol"])
    rep.metric("min_margin", r.min_margin)
    rep.metric("tail_bound", r.tail_bound)
    rep.metric("trials", r.trials)
    rep.check("expansive", r.holds, "min_margin", ">= -{}".format(cfg.params["tol"]))


# ---------------------------------------------------------------------------
# model space

@handler("model-verify")
def _model_verify(cfg, rep):
    p = cfg.params
    model = ModelSpace(cfg.kernel, _scalar_b(cfg), p["N"])
    g = rng(cfg.seed)
    rel, repro, pair = [], [], []
    for _ in range(p["combos"]):
        Y = _disk(g, p["centers"], p["rmax"])
        c = g.standard_normal(p["centers"]) + 1j * g.standard_normal(p["centers"])
        rel.append(verify_norm_identity(Y, c, model).relerr)
        repro.append(reproducing_error(Y, c, model))
    Y = _disk(g, p["centers"], p["rmax"])
    for i in range(len(Y)):
        for j in range(len(Y)):
            lhs, rhs = model_inner_product(Y[i], Y[j], model)
            pair.append(abs(lhs - rhs))
    rep.metric("norm_identity_max_relerr", max(rel))
    rep.metric("reproducing_max_error", max(repro))
    rep.metric("pair_identity_max_error", max(pair))
    rep.check("norm_identity", max(rel) < p["relerr_tol"], "norm_identity_max_relerr")
    rep.check("reproducing", max(repro) <= p["reproducing_tol"], "reproducing_max_error")
    rep.check("pair_identity", max(pair) < p["pair_tol"], "pair_identity_max_error")
    if p.get("spot") is not None:
        y, value = p["spot"][0], p["spot"][1]
        mp = kernel_model_pair(y, model)
        rep.metric("spot", {"y": y, "kb_yy": mp.hkb, "hk_plus_delta": mp.hk + mp.delta, "expected": value})
        err = max(abs(mp.hkb - value), abs(mp.hk + mp.delta - value))
        rep.metric("spot_error", err)
        rep.check("spot", err <= cfg.tolerances.ident_tol, "spot_error")


@handler("representer")
def _representer(cfg, rep):
    y = cfg.params["y"]
    r = representer_l_y(y, TruncatedSpace(cfg.kernel, cfg.params["N"]), _scalar_b(cfg))
    rep.metric("residual", r.residual)
    rep.metric("min_eig", r.min_eig)
    rep.metric("l_norm", float(np.linalg.norm(r.l)))
    rep.check("defining_relation", r.residual <= cfg.tolerances.ident_tol * (1 + float(np.linalg.norm(r.l))),
              "residual")


@handler("pointeval-bound")
def _pointeval(cfg, rep):
    sched = cfg.N_schedule or DEFAULT_SCHEDULE
    c = pointeval_bound_LDelta(cfg.params["y"], cfg.params["e"], TruncatedSpace(cfg.kernel, max(sched)),
                               _scalar_b(cfg), sched)
    rep.curve("pointeval", "degree", "d_squared", c.degrees, c.d_squared)
    rep.metric("singular", list(c.singular))
    rep.verdict("bounded", "HINT", "pointeval", "DIVERGENT" if c.divergent else "BOUNDED")


# ---------------------------------------------------------------------------
# inequalities

@handler("inequality")
def _inequality(cfg, rep):
    p = cfg.params
    kind = p["kind"]
    if kind == "backshift":
        K = cfg.kernel if isinstance(cfg.kernel, SubKernel) else SubKernel(cfg.kernel, _scalar_b(cfg), 1)
        r = backward_shift_check(K, p["trials"] or 1000, p["N"] or 20, cfg.seed)
    elif kind == "shimorin":
        r = check_shimorin(cfg.kernel, p["trials"] or 1000, p["N"] or 30, cfg.seed)
    elif kind == "bergman-type":
        b = _scalar_b(cfg)
        r = check_bergman_type_inequality(cfg.kernel, b, p["trials"] or 500, p["N"] or 10, cfg.seed)
        if p.get("spot") is not None:
            lhs, rhs = bergman_type_sides(cfg.kernel, b, p["spot"][0], p["spot"][1:])
            rep.metric("spot", {"lhs": lhs, "rhs": rhs})
            rep.check("spot", lhs <= rhs + cfg.tolerances.ident_tol, "spot")
    else:
        _tower(cfg, rep)
        return
    rep.metric("max_violation", r.max_violation)
    rep.metric("trials", r.trials)
    rep.check(kind, r.holds, "max_violation", "violation <= 1e-10")


def _tower(cfg, rep):
    p = cfg.params
    if not isinstance(cfg.kernel, RadialPower):
        raise ValueError("the hypercontraction tower needs a radial-power kernel")
    S = tower_samples(cfg.seed, cfg.grid.counts[-1])
    levels = hypercontraction_tower(cfg.kernel.beta, _scalar_b(cfg), p["m"], p["N"] or 60, S)
    rep.metric("levels", [lv.verdict for lv in levels])
    rep.metric("operator_min_eig", [lv.operator.min_eig for lv in levels])
    rep.metric("gram_min_eig", [lv.gram.min_eig for lv in levels])
    rep.metric("pair_det", [lv.pair_det for lv in levels])
    rep.metric("consistent", all(lv.consistent for lv in levels))
    rep.check("routes_agree", all(lv.consistent for lv in levels), "consistent")
    failing = [lv for lv in levels if lv.verdict == "NOT_PSD"]
    if failing:
        rep.check("pair_witness", all(lv.pair_det < 0 for lv in failing), "pair_det",
                  "negative 2x2 determinant on {} at every failing level".format(list(levels[0].pair)))
    for lv in levels:
        if lv.verdict != "PSD":
            rep.witnesses["n={}".format(lv.n)] = {"pair": list(lv.pair), "pair_det": lv.pair_det,
                                                  "gram_witness_points": lv.witness_points}
    if p.get("expect") is not None:
        rep.check("levels", [lv.verdict for lv in levels] == list(p["expect"]), "levels",
                  "expected {}".format(list(p["expect"])))


# ---------------------------------------------------------------------------
# density

@handler("density")
def _density(cfg, rep):
    p = cfg.params
    kind = p["kind"]
    slack = cfg.tolerances.slack
    if kind == "poly":
        curve = poly_residual_curve(cfg.kernel, cfg.multiplier, p["m"], p["w"], p["degrees"], p["extra"])
        x_name = "degree"
    elif kind == "kernel-span":
        per_ring = math.ceil(max(p["centers"]) / len(p["rings"]))
        C = ring_centers(p["rings"], per_ring)
        curve = kernel_span_curve(cfg.kernel, _scalar_b(cfg), p["w"], [C[:n] for n in p["centers"]], p["N"],
                                  p["target_kind"])
        x_name = "centers"
    else:
        _membership(cfg, rep)
        return
    rep.curve("density", x_name, "residual", curve.degrees, curve.residuals)
    rep.check("monotone", _monotone(curve.residuals, slack, increasing=False), "density",
              "nonincreasing within slack {}".format(slack))
    if p.get("residual_below") is not None:
        rep.metric("min_residual", min(curve.residuals))
        rep.check("reaches", min(curve.residuals) < p["residual_below"], "min_residual",
                  "< {}".format(p["residual_below"]))
    if p.get("final_below") is not None:
        rep.metric("final_residual", curve.residuals[-1])
        rep.check("final", curve.residuals[-1] < p["final_below"], "final_residual", "< {}".format(p["final_below"]))


def _membership(cfg, rep):
    b = _scalar_b(cfg)
    if b.width(1) != 1:
        raise ValueError("the membership probe takes a scalar multiplier")
    sched = cfg.N_schedule or DEFAULT_SCHEDULE
    c = hkb_norm_curve(TruncatedSpace(cfg.kernel, max(sched)), b, b.components[0], sched)
    rep.curve("membership", "degree", "estimate", c.degrees, c.values)
    rep.check("bounded", not c.divergent, "membership", "growth below factor {}".format(c.factor))
    rep.check("monotone", _monotone(c.values, cfg.tolerances.slack), "membership")


@handler("question-6")
def _question6(cfg, rep):
    p = cfg.params
    b = cfg.multiplier or scalar(BlaschkeProduct((0.5,)))
    curve = poly_residual_curve(RadialPower(p["beta"]), b, p["m"], p["w"], p["degrees"], p["extra"])
    rep.curve("density", "degree", "residual", curve.degrees, curve.residuals)
    rep.metric("target_norm", curve.target["norm"])
    rep.verdict("curve", "HINT", "density", "reported without verdict")


# ---------------------------------------------------------------------------
# acceptance battery

def _poly(*c):
    return {"components": [{"type": "polynomial", "coefficients": list(c)}]}


def _bl(*zeros):
    return {"components": [{"type": "blaschke", "zeros": list(zeros)}]}


Z, ZHALF = _poly(0, 1), _poly(0, 0.5)
PHI3, PHI5 = _bl(0.3), _bl(0.5)
ROW = {"components": [{"type": "polynomial", "coefficients": [0, 2 ** -0.5]},
                      {"type": "polynomial", "coefficients": [0, 0, 0.5]}]}
HARDY = {"type": "radial-power", "beta": 1}
BERGMAN = {"type": "radial-power", "beta": 2}


def _cfg(experiment, **kw) -> dict:
    d = {"schema_version": 1, "experiment": experiment}
    d.update(kw)
    return d


def _psd_cfg(beta, b=None, m=1, expect="PSD", witness_max=None):
    d = _cfg("psd-check", kernel={"type": "radial-power", "beta": beta},
             grid={"kind": "random", "counts": [60]}, params={"m": m, "expect": expect})
    if b is not None:
        d["multiplier"] = b
    if witness_max is not None:
        d["params"]["witness_max"] = witness_max
    return d


SUITE = [
    (1, "Blaschke kernel identity", [
        _cfg("blaschke-id", params={"products": 100, "max_zeros": 5, "max_modulus": 0.9, "pairs": 20},
             tolerances={"ident_tol": 1e-10}),
    ]),
    (2, "Ball automorphism identity and factorization", [
        _cfg("automorphism-id", params={"dims": [1, 2, 3], "trials": 50, "betas": [2, 3.5],
                                        "factorization_tol": 1e-10}, tolerances={"ident_tol": 1e-12}),
    ]),
    (3, "Gram positivity suite with negative control", [
        _psd_cfg(1), _psd_cfg(2), _psd_cfg(3.5),
        _psd_cfg(1, ZHALF), _psd_cfg(1, PHI5), _psd_cfg(1, ROW),
        _psd_cfg(2, ZHALF), _psd_cfg(2, PHI5), _psd_cfg(2, ROW),
        _psd_cfg(3.5, PHI5, 2), _psd_cfg(3.5, Z, 3), _psd_cfg(2, PHI5, 1),
        _psd_cfg(2, Z, 3, "NOT_PSD", -0.5),
    ]),
    (4, "Reproducing property in H_k(b)", [
        _cfg("model-verify", kernel=BERGMAN, multiplier=PHI3, params={"N": 200, "combos": 50}),
    ]),
    (5, "Model norm identity", [
        _cfg("model-verify", kernel=HARDY, multiplier=ZHALF, params={"N": 200, "combos": 10, "spot": [0.5, 1.25]}),
        _cfg("model-verify", kernel=HARDY, multiplier=PHI3, params={"N": 200, "combos": 10}),
        _cfg("model-verify", kernel=BERGMAN, multiplier=ZHALF, params={"N": 200, "combos": 10}),
        _cfg("model-verify", kernel=BERGMAN, multiplier=PHI3, params={"N": 200, "combos": 10}),
    ]),
    (6, "Estimator convergence and monotonicity", [
        _cfg("norm", kernel=BERGMAN, grid={"kind": "rings", "radii": [0.5, 0.8], "counts": [4, 8, 16, 32]},
             params={"f": {"type": "polynomial", "coefficients": [0, 1]}, "expected": 0.5 ** 0.5, "tol": 1e-8}),
        _cfg("norm", kernel={"type": "radial-power", "beta": 3.5},
             grid={"kind": "rings", "radii": [0.5, 0.8], "counts": [4, 8, 16, 32]},
             params={"f": {"type": "polynomial", "coefficients": [0, 0, 1]}, "expected": (2 / 15.75) ** 0.5,
                     "tol": 1e-8}),
        _cfg("norm", kernel=HARDY, grid={"kind": "graded-rings"},
             params={"f": {"type": "blaschke", "zeros": [0.5]}}),
        _cfg("mult-norm", kernel=BERGMAN, multiplier=Z, grid={"kind": "graded-rings"}, params={"bound": 1.0}),
        _cfg("density", kernel=BERGMAN, multiplier=_poly(0, 0.3, 0.2), params={"kind": "membership"}),
    ]),
    (7, "Density curves", [
        _cfg("density", kernel=BERGMAN, multiplier=PHI5,
             params={"kind": "poly", "m": 1, "w": 0.3, "degrees": [0, 5, 10, 20, 40, 80, 150],
                     "residual_below": 1e-3}),
        _cfg("density", kernel={"type": "radial-power", "beta": 3}, multiplier=PHI5,
             params={"kind": "poly", "m": 2, "w": 0.3, "degrees": [0, 5, 10, 20, 40, 80, 150],
                     "final_below": 1e-2}),
        _cfg("density", kernel=BERGMAN, multiplier=PHI5, params={"kind": "membership"}),
        _cfg("density", kernel=BERGMAN, multiplier=PHI3,
             params={"kind": "kernel-span", "w": 0.4, "centers": [8, 16, 24, 32, 40], "final_below": 1e-2}),
    ]),
    (8, "Embedding profiles and boundary scan", [
        _cfg("embedding-profile", kernel=HARDY, multiplier=Z, params={"expect_counts": [1, 1, 1]}),
        _cfg("embedding-profile", kernel=BERGMAN, multiplier=PHI5, params={"expect": "STABILIZING"}),
        _cfg("embedding-profile", kernel=HARDY, multiplier=_poly(0.5, 0.5), params={"expect": "GROWING"}),
        _cfg("boundary-scan", kernel=HARDY, multiplier=_poly(0.5, 0.5),
             params={"direction": -1, "expect_violation": True}),
    ]),
    (9, "Operator inequalities", [
        _cfg("inequality", kernel=HARDY, multiplier=_poly(0), params={"kind": "backshift", "trials": 1000}),
        _cfg("inequality", kernel=HARDY, multiplier=Z, params={"kind": "backshift", "trials": 1000}),
        _cfg("inequality", kernel=HARDY, multiplier=ZHALF, params={"kind": "backshift", "trials": 1000}),
        _cfg("inequality", kernel=BERGMAN, params={"kind": "shimorin", "trials": 1000}),
        _cfg("inequality", kernel=HARDY, params={"kind": "shimorin", "trials": 1000}),
        _cfg("inequality", kernel={"type": "bergman-type", "c": 2 ** 0.5, "u": _poly(0, 2 ** -0.5)},
             multiplier=_poly(0), params={"kind": "bergman-type", "trials": 500, "spot": [[1], [1]]}),
        _cfg("inequality", kernel={"type": "bergman-type", "c": 2 ** 0.5, "u": _poly(0, 2 ** -0.5)},
             multiplier=ZHALF, params={"kind": "bergman-type", "trials": 500}),
    ]),
    (10, "Hypercontraction tower", [
        _cfg("inequality", kernel=BERGMAN, multiplier=Z, grid={"counts": [60]},
             params={"kind": "hypercontraction", "m": 2, "expect": ["PSD", "PSD", "PSD"]}),
        _cfg("inequality", kernel=BERGMAN, multiplier=Z, grid={"counts": [60]},
             params={"kind": "hypercontraction", "m": 3, "expect": ["PSD", "PSD", "PSD", "NOT_PSD"]}),
        _cfg("inequality", kernel={"type": "radial-power", "beta": 3.5}, multiplier=PHI3, grid={"counts": [60]},
             params={"kind": "hypercontraction", "m": 3, "expect": ["PSD", "PSD", "PSD", "PSD"]}),
    ]),
    (11, "Dirichlet expansivity of Blaschke multipliers", [
        _cfg("expansivity", kernel={"type": "dirichlet"}, multiplier=PHI5, params={"trials": 1000, "degree": 50}),
        _cfg("expansivity", kernel={"type": "dirichlet"}, multiplier=_bl(0.3, [0, -0.6]),
             params={"trials": 1000, "degree": 50}),
    ]),
]


def _worst(statuses) -> str:
    if "ERROR" in statuses:
        return "ERROR"
    if "FAIL" in statuses:
        return "FAIL"
    return "PASS"


def run_suite(seed: int = 0, criteria=None, progress: Optional[Callable] = None) -> tuple:
    """Run the acceptance battery; returns ``(suite_dict, timing_dict)``.

    The suite dict holds no wall-clock data, so identical seeds give
    identical serialized reports.
    """
    out, timing = [], {}
    for cid, title, configs in SUITE:
        if criteria is not None and cid not in criteria:
            continue
        reps = []
        for i, raw in enumerate(configs):
            rep = run_experiment(parse_dict(copy.deepcopy(raw)), seed)
            timing["{}.{}".format(cid, i)] = rep.wall_time_seconds
            reps.append(rep)
        status = _worst([r.status for r in reps])
        out.append({"id": cid, "title": title, "status": status, "reports": [r.to_dict() for r in reps]})
        if progress is not None:
            progress(cid, title, status)
    suite = {"schema_version": 1, "library_version": __version__, "seed": int(seed),
             "status": _worst([c["status"] for c in out]), "criteria": out}
    timing["total"] = sum(v for v in timing.values())
    return suite, timing
