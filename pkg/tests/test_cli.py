import json
import math
import subprocess
import sys

import pytest

from plapratio.cli import main
from plapratio.solver_nd import eigenpair_from_text
from plapratio.sweep import CSV_HEADER, run_sweep


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_json(capsys):
    code, out, _ = run(capsys, "bound", "2", "1", "--json")
    assert code == 0
    data = json.loads(out)
    assert list(data) == ["p", "n", "m", "m_hat", "k_hat", "bound_eq7", "bound_eq9", "best"]
    assert data["best"] == 5 and data["bound_eq7"] is None


def test_bound_p3_n2(capsys):
    code, out, _ = run(capsys, "bound", "3", "2", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["m_hat"] == 2.24492409662 and data["k_hat"] == 1.88561808316
    assert data["best"] == data["bound_eq9"] == 109.885618083


def test_bound_text(capsys):
    code, out, _ = run(capsys, "bound", "3", "1")
    assert code == 0 and "best=217.333333333" in out


@pytest.mark.parametrize("argv, expected", [(["bound", "1.5", "1"], 3), (["bound", "0.5", "1"], 2),
                                            (["bound", "2", "0"], 2)])
def test_bound_exit_codes(capsys, argv, expected):
    assert run(capsys, *argv)[0] == expected


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bound", "two", "1"])
    assert exc.value.code == 2
    assert run(capsys, "sweep", "--p-list", "")[0] == 2
    assert run(capsys, "sweep", "--domains", "disk")[0] == 2
    assert run(capsys, "solve1d", "2", "--modes", "7")[0] == 2


@pytest.mark.parametrize("p, ratio", [("2", "4"), ("3", "8"), ("5", "32")])
def test_solve1d(capsys, p, ratio):
    code, out, _ = run(capsys, "solve1d", p)
    assert code == 0
    got = float(out.split("ratio = ")[1].split()[0])
    assert got == pytest.approx(float(ratio), rel=1e-6)


def test_solve_square_p2(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", "--domain", "square", "--p", "2", "--dump", str(tmp_path))
    assert code == 0
    ratio = float(out.split("ratio = ")[1].split()[0])
    assert ratio == pytest.approx(2.5, rel=1e-3)
    assert "verdict: satisfied" in out
    text = (tmp_path / "phi1.txt").read_text()
    assert text.startswith("p=2.0 lambda=")
    pair = eigenpair_from_text(text)
    assert pair.phi.domain.resolution == (128, 128)
    assert pair.eigenvalue == pytest.approx(2 * math.pi ** 2, rel=1e-2)


def test_solve_interval_p3(capsys):
    code, out, _ = run(capsys, "solve", "--domain", "interval", "--p", "3", "--grid", "128")
    assert code == 0 and "verdict: satisfied" in out


def test_solve_square_p3_never_falsified(capsys):
    code, out, _ = run(capsys, "solve", "--domain", "square", "--p", "3", "--grid", "48")
    assert code == 0
    assert "UPPER" in out and "FALSIFIED" not in out


def test_solve_inapplicable(capsys):
    code, _, _ = run(capsys, "solve", "--domain", "interval", "--p", "1.5", "--grid", "64")
    assert code == 3


def test_solve_nonconvergence(capsys):
    code, _, err = run(capsys, "solve", "--domain", "square", "--p", "3", "--grid", "16", "--max-iter", "1")
    assert code == 4 and "no convergence" in err


def test_audit_to_file(capsys, tmp_path):
    out_file = tmp_path / "audit.json"
    code, _, _ = run(capsys, "audit", "--domain", "square", "--p", "3", "--grid", "48", "--out", str(out_file))
    assert code == 0
    data = json.loads(out_file.read_text())
    names = [e["name"] for e in data["entries"]]
    assert "ratio_large_p" in names and "moment_origin3" in names
    assert data["instance"]["lambda2_kind"] == "UPPER"


def test_sweep_csv_and_determinism(capsys, tmp_path):
    args = ["sweep", "--p-list", "3,2", "--domains", "square,interval", "--grid", "32"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--workers", "2", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[0] == "p,n,domain,grid,lambda1,lambda2,estimate_kind,ratio,bound_eq7,bound_eq9,best_bound,satisfied,inconclusive"
    keys = [(float(r.split(",")[0]), int(r.split(",")[1]), r.split(",")[2]) for r in lines[1:]]
    assert keys == sorted(keys) and len(keys) == 4


def test_sweep_dimension_filter():
    rows = run_sweep([2.0], ["interval", "square", "cube"], grid=16, n_list=[2])
    assert [r.domain for r in rows] == ["square"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "plapratio", "bound", "2", "2", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["best"] == 3
