import json
import subprocess
import sys

import pytest

from tanny_dowling.cli import dumps, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_usage_error(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    return exc.value.code, capsys.readouterr().err


def test_table_whitney_csv(capsys):
    code, out, _ = run(capsys, "table", "whitney2", "--m", "2", "--a", "1", "--nmax", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,k,value"
    assert lines[-3:] == ["2,0,1", "2,1,0", "2,2,1"]
    assert out.endswith("\n")


def test_table_bernoulli_numbers_csv(capsys):
    code, out, _ = run(capsys, "table", "bernoulli_numbers", "--nmax", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1:] == ["0,1", "1,-1/2", "2,1/6"]


def test_table_stirling_single_row(capsys):
    _, out, _ = run(capsys, "table", "stirling2", "--nmax", "0", "--format", "csv")
    assert out.splitlines() == ["n,k,value", "0,0,1"]


def test_table_polynomial_json_schema(capsys):
    code, out, _ = run(capsys, "table", "tanny_dowling", "--m", "2", "--a", "1", "--nmax", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["polynomials"][2] == {
        "n": 2, "family": "tanny_dowling", "m": 2, "a": "1", "coeffs": ["1", "0", "2"],
    }


def test_table_negative_rational_flag(capsys):
    _, out, _ = run(capsys, "table", "dowling", "--m", "2", "--a", "-5/2", "--nmax", "1", "--format", "csv")
    assert out.splitlines()[1:] == ["0,0,1", "1,0,5/2", "1,1,1"]


def test_table_bernoulli_poly_json(capsys):
    _, out, _ = run(capsys, "table", "bernoulli_poly", "--nmax", "2")
    doc = json.loads(out)
    assert doc["polynomials"][2]["coeffs"] == ["1/6", "-1", "1"]
    assert "m" not in doc["polynomials"][2]


def test_table_output_file(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", "stirling2", "--nmax", "3", "--format", "csv", "-o", str(path))
    assert code == 0 and out == ""
    assert path.read_text(encoding="utf-8").splitlines()[-1] == "3,3,1"


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "nope"),
        ("table", "whitney2", "--m", "0"),
        ("table", "stirling2", "--nmax", "-1"),
        ("table", "whitney2", "--a", "0.5"),
        ("verify", "theorem1", "--m", "0"),
        ("verify", "all", "--astep", "0"),
        ("verify", "all", "--amin", "2", "--amax", "1"),
        ("quadcheck", "theorem3", "--order", "0"),
        ("quadcheck", "theorem5"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, err = run_usage_error(capsys, *argv)
    assert code == 2
    assert "usage" in err


def test_verify_grid_passes(capsys):
    code, out, _ = run(
        capsys, "verify", "all", "--mmax", "3", "--amin", "-2", "--amax", "2", "--astep", "1/2", "--nmax", "20"
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["fail"] == 0 and doc["pass"] == len(doc["checks"]) > 0
    assert doc["grid"]["a"][0] == "-2" and doc["grid"]["a"][1] == "-3/2"


def test_verify_kellner_suite(capsys):
    code, out, _ = run(capsys, "verify", "theorem1", "--m", "1", "--a", "0", "--nmax", "25")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] == 26
    first = doc["checks"][1]
    assert first == {"id": "THEOREM1", "m": 1, "a": "0", "n": 1, "lhs": "-1/2", "rhs": "-1/2", "holds": True}


def test_verify_report_schema_example(capsys):
    _, out, _ = run(capsys, "verify", "theorem1", "--m", "2", "--a", "1", "--nmin", "2", "--nmax", "2")
    doc = json.loads(out)
    assert set(doc) == {"grid", "checks", "pass", "fail"}
    assert doc["checks"] == [
        {"id": "THEOREM1", "m": 2, "a": "1", "n": 2, "lhs": "11/3", "rhs": "11/3", "holds": True}
    ]


def test_verify_failure_exit_1(capsys, monkeypatch):
    from fractions import Fraction

    from tanny_dowling import identities

    def broken(p, n):
        return identities.IdentityCheck.compare(
            identities.IdentityId.THEOREM1, p, n, Fraction(1), Fraction(2)
        )

    monkeypatch.setitem(identities._GRID_CHECKS, "theorem1", broken)
    code, out, _ = run(capsys, "verify", "theorem1", "--m", "1", "--a", "0", "--nmax", "1")
    assert code == 1
    assert json.loads(out)["fail"] == 2


def test_quadcheck_theorem3(capsys):
    code, out, _ = run(
        capsys, "quadcheck", "theorem3", "--m", "2", "--a", "1", "--nmax", "10", "--x", "1/2", "--order", "64"
    )
    doc = json.loads(out)
    assert code == 0 and doc["all_pass"]
    assert all(r["residual"] < 1e-8 * max(abs(r["target"]), 1) for r in doc["rows"])


def test_quadcheck_theorem4_divergent_is_not_a_crash(capsys):
    code, out, _ = run(capsys, "quadcheck", "theorem4", "--m", "1", "--a", "0", "--x", "1", "--z", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["rows"][0]["status"] == "divergent"


def test_quadcheck_theorem4_convergent(capsys):
    code, out, _ = run(capsys, "quadcheck", "theorem4", "--m", "2", "--a", "1", "--x", "1", "--z", "1/20")
    doc = json.loads(out)
    assert code == 0 and doc["rows"][0]["residual"] < 1e-8


def test_quadcheck_theorem1(capsys):
    code, out, _ = run(capsys, "quadcheck", "theorem1", "--m", "1", "--a", "0", "--nmax", "0")
    doc = json.loads(out)
    assert code == 0 and doc["rows"][0]["residual"] < 1e-14


def test_quadcheck_residual_breach_exit_1(capsys):
    # m = 5, n = 15 sits past binary64 resolution for the finite-interval route.
    code, out, _ = run(capsys, "quadcheck", "theorem1", "--m", "5", "--a", "0", "--nmax", "15")
    assert code == 1
    assert json.loads(out)["all_pass"] is False


def test_output_is_deterministic(capsys):
    argv = ("quadcheck", "theorem3", "--m", "3", "--a", "-1/2", "--nmax", "6", "--x", "-2")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    argv = ("verify", "all", "--mmax", "2", "--nmax", "6")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_floats_use_17_significant_digits():
    text = dumps({"v": 0.1, "w": [1e-300], "s": "0.1", "nan": float("nan")})
    doc = json.loads(text)
    assert '"v": 0.10000000000000001' in text
    assert doc["w"][0] == 1e-300 and doc["s"] == "0.1" and doc["nan"] is None


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "tanny_dowling", "table", "stirling2", "--nmax", "2", "--format", "csv"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert out.stdout.splitlines()[-1] == "2,2,1"
    bad = subprocess.run([sys.executable, "-m", "tanny_dowling", "verify", "theorem1", "--m", "0"],
                         capture_output=True, text=True)
    assert bad.returncode == 2 and "positive" in bad.stderr
