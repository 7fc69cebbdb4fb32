import csv
import io
import json
import subprocess
import sys

import pytest

from sblab.cli import main
from sblab.corpus import write_corpus


@pytest.fixture(scope="module")
def problems(tmp_path_factory):
    out = tmp_path_factory.mktemp("problems")
    write_corpus(out)
    return out


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_basis_command(problems, capsys):
    code, out, _ = run(["basis", problems / "worked_example.sbl", "--minimal"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "# local order, 3 elements"
    assert "exp (0, 5)" in out


def test_basis_global_reduced(problems, capsys):
    code, out, _ = run(["basis", problems / "monomial_control.sbl", "--order", "global", "--reduced"], capsys)
    assert code == 0 and "3 elements" in out


def test_tangent_cone_command(problems, capsys):
    code, out, _ = run(["tangent-cone", problems / "worked_example.sbl"], capsys)
    assert code == 0
    assert sorted(line.split()[0] for line in out.splitlines()) == ["x*y", "x^2", "y^5"]


def test_growth_json_to_stdout(problems, capsys):
    code, out, err = run(["growth", problems / "worked_example.sbl", "--nmax", "3", "--json", "-"], capsys)
    assert code == 0
    data = json.loads(out)
    assert [r["max_ord"] for r in data["rows"]] == [5, 9, 13]
    assert "lambda_hat=5" in err


def test_growth_csv_file(problems, tmp_path, capsys):
    path = tmp_path / "g.csv"
    code, out, _ = run(["growth", problems / "worked_example.sbl", "--nmax", "2", "--csv", path], capsys)
    assert code == 0 and "lambda_hat=5" in out
    rows = list(csv.reader(io.StringIO(path.read_text())))
    assert rows[0] == ["n", "p_n", "max_ord", "ord_list"]
    assert len(rows) == 3


def test_artin_rees_command(problems, capsys):
    code, out, _ = run(["artin-rees", problems / "principal_x2.sbl", "--mmax", "3", "--npad", "2",
                        "--lambda-bound", "3"], capsys)
    assert code == 0 and "lambda_min=2" in out
    code, out, _ = run(["artin-rees", problems / "principal_x2.sbl", "--mmax", "3", "--npad", "2",
                        "--lambda-bound", "1"], capsys)
    assert code == 0 and "no lambda found within 1" in out


def test_prop4_command(problems, capsys):
    code, out, _ = run(["prop4", problems / "worked_example.sbl", "--l", "5", "--mmax", "2"], capsys)
    assert code == 0 and "r(l)=3" in out and "consistent: True" in out


def test_worked_example_command(capsys, tmp_path):
    path = tmp_path / "p.json"
    code, out, _ = run(["paper-example", "--nmax", "3", "--json", path], capsys)
    assert code == 0
    assert json.loads(path.read_text())["passed"] is True


def test_verdict_failure_exit_code(problems, capsys, monkeypatch):
    import sblab.cli
    from sblab.experiments import prop4_experiment

    def broken(*args):
        report = prop4_experiment(*args)
        report.consistent = False
        return report

    monkeypatch.setattr(sblab.cli, "prop4_experiment", broken)
    code, _, _ = run(["prop4", problems / "worked_example.sbl", "--l", "5", "--mmax", "1"], capsys)
    assert code == 1


def test_input_errors(tmp_path, capsys):
    code, _, err = run(["basis", tmp_path / "nope.sbl"], capsys)
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.sbl"
    bad.write_text("ring(x)\nfield Q\nI = [x^^2]\n")
    code, _, err = run(["basis", bad], capsys)
    assert code == 2 and err.startswith("sblab:")
    code, _, _ = run(["paper-example", "--nmax", "1"], capsys)
    assert code == 2


def test_resource_exit_code(problems, capsys, monkeypatch):
    monkeypatch.setenv("SBLAB_MAX_PAIRS", "2")
    code, _, err = run(["growth", problems / "worked_example.sbl", "--nmax", "3"], capsys)
    assert code == 3 and "truncated" in err
    monkeypatch.setenv("SBLAB_MAX_PAIRS", "0")
    code, _, err = run(["basis", problems / "worked_example.sbl"], capsys)
    assert code == 3 and "resource limit" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["growth"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sblab.cli", "paper-example", "--nmax", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.split() == ["n=1", "ok", "n=2", "ok"]
