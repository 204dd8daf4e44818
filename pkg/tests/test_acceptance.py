"""Acceptance battery: one test per exit criterion, each printing a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or through pytest
(``pytest -m acceptance -s`` shows the lines inline; they are also repeated
in the terminal summary).
"""

import filecmp
import os
import subprocess
import sys

import pytest

from rkhs_lab.runner import SUITE, run_suite

SEED = 7
TITLES = {cid: title for cid, title, _ in SUITE}
TITLES[12] = "Determinism of the suite report"
LINES = {}

pytestmark = pytest.mark.acceptance


@pytest.fixture(scope="module")
def suite():
    data, _ = run_suite(SEED)
    return {c["id"]: c for c in data["criteria"]}


def _failures(crit) -> list:
    out = []
    for rep in crit["reports"]:
        for name, v in rep["verdicts"].items():
            if v["status"] in ("FAIL", "ERROR"):
                out.append("{}:{} {} ({}={})".format(rep["experiment"], name, v["status"], v["metric"],
                                                     rep["metrics"].get(v["metric"])))
                if "eigencounts" in rep["metrics"]:
                    out[-1] += " eigencounts={}".format(rep["metrics"]["eigencounts"])
    return out


def _record(cid: int, ok: bool, detail: str = ""):
    line = "criterion {:>2} {:<4} {}{}".format(cid, "PASS" if ok else "FAIL", TITLES[cid],
                                               " | " + detail if detail else "")
    LINES[cid] = line
    print(line)


@pytest.mark.parametrize("cid", range(1, 12))
def test_criterion(suite, cid):
    crit = suite[cid]
    bad = _failures(crit)
    _record(cid, crit["status"] == "PASS", "; ".join(bad))
    assert crit["status"] == "PASS", "\n".join(bad)


def test_criterion_12(tmp_path):
    paths = [str(tmp_path / "run{}.json".format(i)) for i in (1, 2)]
    for p in paths:
        subprocess.run([sys.executable, "-m", "rkhs_lab.cli", "suite", "--seed", str(SEED), "--quiet", "--out", p],
                       check=False, capture_output=True)
    ok = all(os.path.exists(p) for p in paths) and filecmp.cmp(paths[0], paths[1], shallow=False)
    _record(12, ok, "" if ok else "reports differ")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
