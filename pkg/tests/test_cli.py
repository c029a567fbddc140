import io
import json

import pytest

from qfermion.cli import IDENTITIES, run
from qfermion.laurent import LaurentPoly


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_table_json():
    code, out, _ = call(["table", "--triangle", "stirling2f", "--rows", "3", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "stirling2f"
    rows = [[str(LaurentPoly.from_terms(p)) for p in row] for row in doc["rows"]]
    assert rows == [["1"], ["1", "-q"], ["1", "-2*q + q^2", "-q^3"]]


def test_table_eval_and_formats():
    code, out, _ = call(["table", "--triangle", "antinormal-b", "--rows", "2", "--eval-q", "2/1"])
    assert json.loads(out)["rows"] == [["1/1"], ["-1/2", "1/2"]]
    code, out, _ = call(["table", "--triangle", "lahf", "--rows", "2", "--format", "csv"])
    assert out.splitlines() == ["r,s,value", "1,0,0", "1,1,1", "2,0,0", "2,1,1 - q", "2,2,q^2"]
    code, out, _ = call(["table", "--triangle", "stirling1f", "--rows", "2", "--format", "md"])
    assert "| 2 | q^-1 | -q^-1 |" in out


def test_bell_values_at_one():
    code, out, _ = call(["bell", "--rows", "2", "--eval-q", "1/1"])
    assert code == 0 and json.loads(out)["values"] == ["1/1", "0/1"]
    code, out, _ = call(["bell", "--rows", "3"])
    assert json.loads(out)["rows"][2] == [[0, "1/1"], [1, "-2/1"], [2, "1/1"], [3, "-1/1"]]


@pytest.mark.parametrize("identity", IDENTITIES)
def test_verify_all_pass(identity):
    code, out, _ = call(["verify", "--identity", identity])
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_falling_example():
    code, out, _ = call(["verify", "--identity", "falling", "--max-r", "6", "--max-n", "10"])
    assert code == 0 and json.loads(out)["checked"] > 0


def test_verify_fock_with_q():
    code, out, _ = call(["verify", "--identity", "fock-normal", "--q", "1.7", "--max-r", "3"])
    doc = json.loads(out)
    assert code == 0 and {e["q"] for e in doc["entries"]} == {1.7}


def test_verify_failure_exit_code(monkeypatch):
    from qfermion import triangles

    real = triangles.Report.passed

    monkeypatch.setattr(triangles.Report, "passed", property(lambda self: False))
    code, out, _ = call(["verify", "--identity", "falling", "--max-r", "2", "--max-n", "3"])
    assert code == 1 and json.loads(out)["pass"] is False
    monkeypatch.setattr(triangles.Report, "passed", real)


def test_dobinski_cli():
    code, out, _ = call(["dobinski", "--q", "2", "--r", "2"])
    doc = json.loads(out)
    assert code == 0 and set(doc) == {"value", "terms_used", "converged", "regime"}
    assert doc["value"] == pytest.approx(-1.0)
    code, out, err = call(["dobinski", "--q", "0.5", "--r", "2"])
    assert code == 2 and out == "" and "divergent" in err
    code, out, _ = call(["dobinski", "--q", "0.5", "--x", "1", "--max-terms", "50"])
    assert code == 0 and json.loads(out)["regime"] == "divergent"


def test_moments_cli(tmp_path):
    code, out, _ = call(
        ["moments", "--n", "4", "--r", "2", "--q", "7/10", "--density", "uniform", "--support", "0", "1",
         "--subinterval", "0", "1"]
    )
    doc = json.loads(out)
    assert code == 0 and doc["p"] == pytest.approx(1.0)
    assert [t["s"] for t in doc["terms"]] == [1, 2]
    assert doc["moment"] == pytest.approx((1 - 0.7 + 0.49 - 0.343) ** 2)
    table = tmp_path / "d.csv"
    table.write_text("E,value\n0,0\n1,1\n2,0\n")
    code, out, _ = call(
        ["moments", "--n", "3", "--r", "1", "--q", "0.5", "--density", "tabulated", "--table", str(table),
         "--subinterval", "0", "1"]
    )
    assert code == 0 and json.loads(out)["p"] == pytest.approx(0.5)
    code, out, _ = call(
        ["moments", "--n", "3", "--r", "2", "--q", "0.5", "--density", "triangular", "--support", "0", "2",
         "--peak", "0.5", "--subinterval", "0", "3"]
    )
    assert code == 2 and out == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        ["table", "--triangle", "stirling2f", "--rows", "0"],
        ["table", "--triangle", "stirling2f", "--rows", "2", "--bogus"],
        ["bell", "--rows", "2", "--eval-q", "1/0"],
        ["moments", "--n", "3", "--r", "2", "--q", "0.5", "--subinterval", "0", "1"],
        ["verify", "--identity", "falling", "--max-r", "5", "--max-n", "3"],
    ],
)
def test_usage_errors(argv, capsys):
    code, out, _ = call(argv)
    assert code == 2 and out == ""


def test_eval_at_zero_with_negative_powers():
    code, out, err = call(["table", "--triangle", "stirling1f", "--rows", "2", "--eval-q", "0/1"])
    assert code == 2 and out == "" and "q = 0" in err


def test_output_deterministic():
    argv = ["verify", "--identity", "fock-antinormal"]
    assert call(argv)[1] == call(argv)[1]
