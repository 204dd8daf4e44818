"""Report object model, byte-stable JSON serialization and CSV curve output.

Floats are written with 17 significant digits (``%.17g``) so that every
double round-trips exactly; non-finite values become the strings ``"inf"``,
``"-inf"`` and ``"nan"``; complex values become ``{"re": .., "im": ..}``.
Key order is insertion order, so identical inputs give identical bytes.
Wall-clock timings are kept out of the report and written to a separate
``<report>.timing.json`` file.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

STATUSES = ("PASS", "FAIL", "HINT", "ERROR")


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = "%.17g" % x
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def to_plain(obj: Any) -> Any:
    """Convert numpy scalars/arrays, tuples and complex values to JSON-model values."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    out = io.StringIO()
    _write(to_plain(obj), out, indent, 0)
    out.write("\n")
    return out.getvalue()


def _write(obj, out, indent: int, level: int):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.write(pad + json.dumps(k) + ": ")
            _write(v, out, indent, level + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write(end + "}")
    elif isinstance(obj, list):
        if not obj:
            out.write("[]")
            return
        if all(not isinstance(v, (dict, list)) for v in obj):
            out.write("[" + ", ".join(_scalar(v) for v in obj) + "]")
            return
        out.write("[\n")
        for i, v in enumerate(obj):
            out.write(pad)
            _write(v, out, indent, level + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write(end + "]")
    else:
        out.write(_scalar(obj))


def _scalar(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        return _fmt_float(v)
    if isinstance(v, int):
        return str(v)
    return json.dumps(v)


def loads(text: str) -> Any:
    return json.loads(text)


@dataclass
class Curve:
    """A named series written additionally as CSV with header ``x_name,y_name``."""

    x_name: str
    y_name: str
    x: list
    y: list


@dataclass
class Report:
    """Metrics, verdicts and witnesses of one experiment run.

    Every verdict names the metric it was derived from.
    """

    experiment: str
    config: dict
    library_version: str
    schema_version: int = 1
    seed: Optional[int] = None
    metrics: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    curves: dict = field(default_factory=dict)
    wall_time_seconds: Optional[float] = None

    def metric(self, name: str, value):
        self.metrics[name] = value
        return value

    def verdict(self, name: str, status: str, metric: str, detail: str = ""):
        if status not in STATUSES:
            raise ValueError("unknown verdict status {!r}".format(status))
        if metric not in self.metrics:
            raise KeyError("verdict {!r} refers to missing metric {!r}".format(name, metric))
        v = {"status": status, "metric": metric}
        if detail:
            v["detail"] = detail
        self.verdicts[name] = v

    def check(self, name: str, ok: bool, metric: str, detail: str = ""):
        self.verdict(name, "PASS" if ok else "FAIL", metric, detail)

    def error(self, name: str, message: str):
        self.metrics.setdefault("error_message", message)
        self.verdict(name, "ERROR", "error_message", message)

    def curve(self, name: str, x_name: str, y_name: str, x, y):
        self.curves[name] = Curve(x_name, y_name, list(x), list(y))
        self.metrics[name] = {x_name: list(x), y_name: list(y)}

    @property
    def status(self) -> str:
        st = [v["status"] for v in self.verdicts.values()]
        if "ERROR" in st:
            return "ERROR"
        if "FAIL" in st:
            return "FAIL"
        return "PASS"

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "library_version": self.library_version,
            "experiment": self.experiment,
            "seed": self.seed,
            "status": self.status,
            "config": self.config,
            "metrics": self.metrics,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
        }


def exit_code(status: str) -> int:
    return {"PASS": 0, "FAIL": 2, "ERROR": 3}[status]


def write_text(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError("cannot write {}: {}".format(path, exc.strerror or exc)) from exc


def curve_csv(c: Curve) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([c.x_name, c.y_name])
    for x, y in zip(c.x, c.y):
        w.writerow([_csv_value(x), _csv_value(y)])
    return buf.getvalue()


def _csv_value(v) -> str:
    if isinstance(v, float):
        return _fmt_float(v).strip('"')
    return str(v)


def emit_report(report, path: Optional[str], timing: Optional[dict] = None) -> list:
    """Write the report (and its curves as CSV files next to it); returns written paths.

    ``report`` is a :class:`Report` or a plain dict (suite reports). With
    ``path`` None the JSON goes to standard output and no side files are
    written.
    """
    data = report.to_dict() if isinstance(report, Report) else report
    text = dumps(data)
    if path is None:
        import sys

        sys.stdout.write(text)
        return []
    written = [path]
    write_text(path, text)
    stem, _ = os.path.splitext(path)
    curves = report.curves if isinstance(report, Report) else {}
    for name, c in curves.items():
        p = "{}.{}.csv".format(stem, name)
        write_text(p, curve_csv(c))
        written.append(p)
    if timing is not None:
        p = stem + ".timing.json"
        write_text(p, dumps(timing))
        written.append(p)
    return written


VERDICT_SCHEMA = {
    "type": "object",
    "required": ["status", "metric"],
    "properties": {
        "status": {"enum": list(STATUSES)},
        "metric": {"type": "string"},
        "detail": {"type": "string"},
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "library_version", "experiment", "status", "config", "metrics", "verdicts",
                 "witnesses"],
    "properties": {
        "schema_version": {"const": 1},
        "library_version": {"type": "string"},
        "experiment": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
        "status": {"enum": ["PASS", "FAIL", "ERROR"]},
        "config": {"type": "object"},
        "metrics": {"type": "object"},
        "verdicts": {"type": "object", "additionalProperties": VERDICT_SCHEMA},
        "witnesses": {"type": "object"},
    },
    "additionalProperties": False,
}

SUITE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "library_version", "seed", "status", "criteria"],
    "properties": {
        "schema_version": {"const": 1},
        "library_version": {"type": "string"},
        "seed": {"type": "integer"},
        "status": {"enum": ["PASS", "FAIL", "ERROR"]},
        "criteria": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "title", "status", "reports"],
                "properties": {
                    "id": {"type": "integer"},
                    "title": {"type": "string"},
                    "status": {"enum": ["PASS", "FAIL", "ERROR"]},
                    "reports": {"type": "array", "items": REPORT_SCHEMA},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}
