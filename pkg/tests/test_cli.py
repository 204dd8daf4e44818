import copy
import json
import math

import jsonschema
import pytest

from rkhs_lab.cli import main
from rkhs_lab.config import EXPERIMENTS, parse_config, parse_dict
from rkhs_lab.errors import ConfigError
from rkhs_lab.report import REPORT_SCHEMA, SUITE_SCHEMA, Report, curve_csv, dumps, loads
from rkhs_lab.runner import SUITE, run_experiment, run_suite

MINIMAL = {"schema_version": 1, "experiment": "psd-check", "kernel": {"type": "radial-power", "beta": 2},
           "multiplier": {"components": [{"type": "polynomial", "coefficients": [0, 1]}]}, "params": {"m": 1}}


def _diag(data):
    with pytest.raises(ConfigError) as exc:
        parse_dict(data)
    return dict(exc.value.diagnostics)


# -- config parsing -------------------------------------------------------------------

def test_minimal_config_parses():
    cfg = parse_config(json.dumps(MINIMAL))
    assert cfg.experiment == "psd-check" and cfg.params["m"] == 1


def test_m_zero_rejected():
    d = copy.deepcopy(MINIMAL)
    d["params"]["m"] = 0
    assert "positive integer" in _diag(d)["params.m"]


def test_negative_beta_rejected():
    d = copy.deepcopy(MINIMAL)
    d["kernel"]["beta"] = -1
    assert "kernel.beta" in _diag(d)


def test_non_contractive_constant_rejected():
    d = copy.deepcopy(MINIMAL)
    d["multiplier"] = {"components": [{"type": "polynomial", "coefficients": [1.5]}]}
    assert any(k.startswith("multiplier") for k in _diag(d))


def test_unknown_experiment_and_key():
    d = copy.deepcopy(MINIMAL)
    d["experiment"] = "teleport"
    d["colour"] = "blue"
    diag = _diag(d)
    assert "experiment" in diag and "colour" in diag


def test_bad_schema_version():
    d = copy.deepcopy(MINIMAL)
    d["schema_version"] = 2
    assert "schema_version" in _diag(d)


def test_invalid_json_text():
    with pytest.raises(ConfigError):
        parse_config("{not json")


# -- serialization ----------------------------------------------------------------------

def test_float_round_trip():
    data = {"a": 1 / 3, "b": [0.1, 1e-300, 2.0], "c": complex(0.5, -1 / 7), "d": math.inf}
    back = loads(dumps(data))
    assert back["a"] == 1 / 3 and back["b"] == [0.1, 1e-300, 2.0]
    assert back["c"] == {"re": 0.5, "im": -1 / 7} and back["d"] == "inf"


def test_verdict_needs_metric():
    r = Report("x", {}, "0")
    with pytest.raises(KeyError):
        r.verdict("v", "PASS", "missing")


def test_density_csv_header():
    rep = run_experiment(parse_dict({"schema_version": 1, "experiment": "density",
                                     "kernel": {"type": "radial-power", "beta": 3},
                                     "multiplier": {"components": [{"type": "blaschke", "zeros": [0.5]}]},
                                     "params": {"kind": "poly", "m": 2}}), seed=7)
    text = curve_csv(rep.curves["density"])
    assert text.splitlines()[0] == "degree,residual"
    assert rep.verdicts["monotone"]["status"] == "PASS"


# -- runner: every experiment kind yields a schema-valid report ----------------------------

def _all_suite_configs():
    return [(cid, i, raw) for cid, _, cfgs in SUITE for i, raw in enumerate(cfgs)]


EXTRA = [
    {"schema_version": 1, "experiment": "representer", "kernel": {"type": "radial-power", "beta": 2},
     "multiplier": {"components": [{"type": "blaschke", "zeros": [0.3]}]}, "params": {"y": 0.4, "N": 100}},
    {"schema_version": 1, "experiment": "pointeval-bound", "kernel": {"type": "radial-power", "beta": 2},
     "multiplier": {"components": [{"type": "blaschke", "zeros": [0.3]}]}, "truncation": {"N_schedule": [50, 100]},
     "params": {"y": 0.4}},
    {"schema_version": 1, "experiment": "question-6", "params": {"degrees": [0, 5, 10]}},
    {"schema_version": 1, "experiment": "density", "kernel": {"type": "radial-power", "beta": 2},
     "multiplier": {"components": [{"type": "blaschke", "zeros": [0.3]}]},
     "params": {"kind": "kernel-span", "centers": [8, 16], "N": 100}},
]


def test_every_experiment_kind_covered():
    kinds = {raw["experiment"] for _, _, raw in _all_suite_configs()} | {raw["experiment"] for raw in EXTRA}
    assert kinds == set(EXPERIMENTS)


@pytest.mark.parametrize("raw", EXTRA, ids=lambda r: r["experiment"])
def test_extra_reports_validate(raw):
    rep = run_experiment(parse_dict(raw), seed=1)
    jsonschema.validate(loads(dumps(rep.to_dict())), REPORT_SCHEMA)
    for v in rep.verdicts.values():
        assert v["metric"] in rep.metrics
    assert rep.status == "PASS"


def test_error_verdict_for_inner_symbol():
    raw = {"schema_version": 1, "experiment": "representer", "kernel": {"type": "szego"},
           "multiplier": {"components": [{"type": "polynomial", "coefficients": [0, 1]}]}}
    rep = run_experiment(parse_dict(raw))
    assert rep.status == "ERROR" and "Delta" in rep.metrics["error_message"]
    jsonschema.validate(loads(dumps(rep.to_dict())), REPORT_SCHEMA)


def test_blaschke_seed_seven():
    raw = {"schema_version": 1, "experiment": "blaschke-id", "params": {"products": 1, "max_zeros": 5}}
    rep = run_experiment(parse_dict(raw), seed=7)
    assert rep.status == "PASS" and rep.metrics["max_error"] < 1e-10


def test_profile_hardy_shift_report():
    raw = {"schema_version": 1, "experiment": "embedding-profile", "kernel": {"type": "szego"},
           "multiplier": {"components": [{"type": "polynomial", "coefficients": [0, 1]}]}}
    rep = run_experiment(parse_dict(raw))
    assert rep.metrics["eigencounts"] == [1, 1, 1] and rep.metrics["verdict_hint"] == "STABILIZING"


def test_same_seed_same_report():
    raw = {"schema_version": 1, "experiment": "psd-check", "kernel": {"type": "radial-power", "beta": 3.5},
           "grid": {"kind": "sobol", "counts": [10, 40]}}
    a = dumps(run_experiment(parse_dict(raw), seed=11).to_dict())
    b = dumps(run_experiment(parse_dict(raw), seed=11).to_dict())
    assert a == b


def test_suite_subset_validates():
    suite, timing = run_suite(3, criteria={1, 10})
    jsonschema.validate(loads(dumps(suite)), SUITE_SCHEMA)
    assert [c["id"] for c in suite["criteria"]] == [1, 10] and "total" in timing


# -- command line -------------------------------------------------------------------------

def _write(tmp_path, data, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_cli_validate(tmp_path, capsys):
    assert main(["validate", "--config", _write(tmp_path, MINIMAL)]) == 0
    bad = dict(MINIMAL, params={"m": 0})
    assert main(["validate", "--config", _write(tmp_path, bad, "bad.json")]) == 1
    assert "params.m" in capsys.readouterr().err


def test_cli_run_writes_report(tmp_path):
    out = tmp_path / "r.json"
    assert main(["psd-check", "--config", _write(tmp_path, MINIMAL), "--seed", "7", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["seed"] == 7 and data["config"]["grid"]["seed"] == 7
    assert (tmp_path / "r.timing.json").exists()


def test_cli_exit_codes(tmp_path):
    fail = dict(MINIMAL, params={"m": 1, "expect": "NOT_PSD"})
    assert main(["psd-check", "--config", _write(tmp_path, fail), "--out", str(tmp_path / "f.json")]) == 2
    err = {"schema_version": 1, "experiment": "representer", "kernel": {"type": "szego"},
           "multiplier": {"components": [{"type": "polynomial", "coefficients": [0, 1]}]}}
    assert main(["representer", "--config", _write(tmp_path, err, "e.json"), "--out", str(tmp_path / "e.out")]) == 3


def test_cli_usage_errors(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1
    assert main(["norm", "--config", _write(tmp_path, MINIMAL)]) == 1
    assert main(["psd-check", "--config", str(tmp_path / "missing.json")]) == 1


def test_cli_suite_subset_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["suite", "--seed", "7", "--criteria", "1,2", "--quiet", "--out", str(a)]) == 0
    assert main(["suite", "--seed", "7", "--criteria", "1,2", "--quiet", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
