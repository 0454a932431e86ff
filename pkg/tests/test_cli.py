import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from replica import fixtures
from replica.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_series_csv():
    code, out = call("series", "--name", "nome", "--f", "elliptic", "--order", "6", "--format", "csv")
    assert code == 0
    assert out.splitlines()[:3] == ["1,1", "2,744", "3,750420"]


def test_series_json_is_exact():
    code, out = call("series", "--name", "mirror", "--order", "4", "--format", "json")
    doc = json.loads(out)
    assert doc["coefficients"] == [[1, "1"], [2, "-744"], [3, "356652"], [4, "-140361152"]]


def test_pcurv():
    code, out = call("pcurv", "--f", "poly:1,-744,-393768", "--primes", "3..31", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["zero"] == [3, 11, 13, 17, 23, 31]
    assert doc["nonzero"] == [5, 7, 19, 29]


def test_parameter_values_are_exact():
    code, out = call("oneparam", "--order", "3", "--a", "3", "--format", "csv")
    assert out.splitlines() == ["1,3", "2,-4464", "3,1917216"]
    code, out = call("twoparam", "--order", "2", "--a", "1", "--b", "1/1728", "--format", "csv")
    assert out.splitlines() == ["1,1", "2,1"]


def test_other_verbs():
    assert call("correspondence", "--n", "2", "--order", "4", "--format", "csv")[1].splitlines() == \
        ["2,1", "3,1488", "4,2053632"]
    code, out = call("epsilon", "--m", "2", "--order", "3", "--format", "json")
    assert json.loads(out)["B_2"] == [[2, "-744"], [3, "-37116"]]
    code, out = call("modcheck", "--n", "5", "--order", "12", "--format", "json")
    assert code == 0 and json.loads(out)["ok"]
    code, out = call("modcheck", "--n", "landen", "--order", "12", "--format", "json")
    assert code == 0
    code, out = call("radius", "--series", "nome", "--terms", "60", "--format", "json")
    doc = json.loads(out)
    assert len(doc["trace"]) == 10 and len(doc["estimate"].lstrip("-0.")) <= 12
    code, out = call("modp", "--series", "sigma", "--p", "2", "--order", "16", "--format", "json")
    assert json.loads(out)["support"] == [0, 1, 2, 4, 8, 16]
    code, out = call("series", "--name", "W", "--order", "1", "--format", "json")
    assert json.loads(out)["laurent_terms"][:2] == [[-2, "-1/2"], [-1, "-744"]]


@pytest.mark.parametrize("argv", [
    ["series", "--name", "F", "--order", "0"],
    ["series", "--name", "F", "--f", "nonsense"],
    ["oneparam", "--a", "1/x"],
    ["modp", "--series", "nome", "--p", "4"],
    ["modcheck", "--n", "99"],
    ["series", "--name", "nome", "--f", "heun81"],
    ["radius", "--series", "nome", "--terms", "4"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv, io.StringIO()) == 2


def test_modp_a3():
    assert call("modp", "--series", "a3", "--p", "5", "--order", "6")[0] == 0


def test_deterministic():
    argv = ["twoparam", "--order", "4", "--format", "json"]
    assert call(*argv) == call(*argv)


def test_verify_all_passes_and_reports_errata(tmp_path):
    out = subprocess.run([sys.executable, "-m", "replica", "verify-all", "--order", "20", "--format", "csv"],
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    rows = [line.split(",")[:3] for line in out.stdout.splitlines()]
    assert any(r[2] == "erratum" and r[1] == "compositiona0bisHeun" for r in rows)


def test_verify_all_fails_on_a_bad_table(tmp_path):
    src = Path(fixtures.__file__).parent / "data"
    for f in src.glob("*.txt"):
        shutil.copy(f, tmp_path / f.name)
    p = tmp_path / "fixtures.txt"
    p.write_text(p.read_text().replace("750420*x**3 + 872769632", "750421*x**3 + 872769632"))
    import os
    env = dict(os.environ, REPLICA_FIXTURES=str(tmp_path))
    out = subprocess.run([sys.executable, "-m", "replica", "verify-all", "--order", "8"],
                         capture_output=True, text=True, env=env)
    assert out.returncode == 1
    assert "first failure: mirror2 at order 3" in out.stderr
