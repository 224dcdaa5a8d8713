import csv
import io
import json
import os
import subprocess
import sys

import pytest

from quatrefine import cli
from quatrefine.recipe import ConsistencyError, RefinedCounts


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_refined_json(capsys):
    code, out, _ = run(["refined", "--d", "7", "--tag", "Hinf", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["h_total"] == 3
    assert RefinedCounts.from_dict(data).to_dict() == data


def test_refined_text_with_explicit_algebra(capsys):
    code, out, _ = run(["refined", "--d", "7", "--alg=-1,-1"], capsys)
    assert code == 0
    assert "S4 t=1 h=1" in out and "h_total=3" in out


def test_zeta(capsys):
    assert run(["zeta", "--d", "5"], capsys)[:2] == (0, "1/30\n")


def test_prime_small(capsys):
    code, out, _ = run(["prime", "--p", "5"], capsys)
    assert code == 0 and "A5 t=1 h=1" in out.splitlines()


def test_prime_crosscheck(capsys):
    code, out, _ = run(["prime", "--p", "7", "--crosscheck"], capsys)
    assert code == 0 and "agree" in out


def test_classnum(capsys):
    assert run(["classnum", "-m", "-21"], capsys)[1] == "4\n"
    assert run(["classnum", "-m", "323"], capsys)[1] == "4\n"


def test_ssab_formats(capsys):
    code, out, _ = run(["ssab", "--p", "7"], capsys)
    data = json.loads(out)
    assert data["h_pi"] == 3 and data["real_quadratic_endalgebra"] is True
    code, out, _ = run(["ssab", "--p", "7", "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["p", "group", "count"] and rows[-1] == ["7", "total", "3"]


def test_cmorders(capsys):
    code, out, _ = run(["cmorders", "--d", "7"], capsys)
    assert code == 0 and len(json.loads(out)["orders"]) == 5


def test_order_verify(capsys):
    code, out, _ = run(["order-verify", "--d", "7", "--case", "S4-max"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["maximal"] and rep["unit_group"] == "S4" and rep["unit_group_order"] == 24


@pytest.mark.parametrize("argv", [
    ["refined", "--d", "12"],
    ["refined", "--d", "7", "--alg=1,2,3"],
    ["zeta", "--d", "1"],
    ["ssab", "--p", "9"],
    ["order-verify", "--d", "7", "--case", "B-xi"],
    ["refined"],
    ["bogus"],
])
def test_validation_errors_exit_one(argv, capsys):
    code = None
    try:
        code = cli.main(argv)
    except SystemExit as e:
        code = e.code
    assert code == 1
    assert capsys.readouterr().err


def test_consistency_failure_exits_two(monkeypatch, capsys):
    def broken(*a, **k):
        raise ConsistencyError("forced")
    monkeypatch.setattr(cli, "full_counts", broken)
    code, _, err = run(["refined", "--d", "7"], capsys)
    assert code == 2 and "forced" in err


def test_budget_exhaustion_exits_one(monkeypatch, capsys):
    monkeypatch.setenv("QUATREFINE_BUDGET", "5")
    from quatrefine import recipe
    recipe.minimal_order_orbits.cache_clear()
    code, _, err = run(["refined", "--d", "13"], capsys)
    assert code == 1 and "exceeded" in err


def test_sweep_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["sweep", "--dmin", "6", "--dmax", "11", "--report", str(a)]) == 0
    assert cli.main(["sweep", "--dmin", "6", "--dmax", "11", "--report", str(b), "--jobs", "2"]) == 0
    assert a.read_text() == b.read_text()
    rows = list(csv.DictReader(a.open()))
    assert list(rows[0]) == cli.SWEEP_HEADER
    assert {r["d"] for r in rows} == {"6", "7", "10", "11"}
    assert all(r["mass_residual"] == "0" and r["eichler_residual"] == "0" for r in rows)


def test_module_entry_point():
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "quatrefine", "zeta", "--d", "13"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and proc.stdout.strip() == "1/6"
