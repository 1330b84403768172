import json
import subprocess
import sys

import numpy as np
import pytest

from contaaa import report
from contaaa.barycentric import reval
from contaaa.cli import main
from contaaa.domains import Domain, bad_pole, mobius_maps, xs_params
from contaaa.funcspec import FunctionSpec

FILES = (report.MODEL_FILE, report.HISTORY_FILE, report.CURVE_FILE)


def cli(tmp_path, command, *args):
    out = tmp_path / "out"
    code = main(["--out", str(out), *args], command=command)
    return code, out


def fine_error_from_model(d, r):
    """Recompute the fine-grid relative error from a saved model alone."""
    f = FunctionSpec(d["function"])
    density = 30
    if d["domain"] == "interval":
        t = np.sort(r.support.real)
        x = xs_params(t, density)
        fx, rx = f(x), reval(r, x)
    else:
        z_to_w = None
        pts = r.support
        if d["domain"] == "imaginary-axis":
            w_to_z, z_to_w = mobius_maps()
            pts = z_to_w(pts)
        t = np.sort(np.mod(np.angle(pts), 2 * np.pi))
        w = np.exp(1j * xs_params(t, density, periodic=True))
        x = w if z_to_w is None else w_to_z(w)
        fx, rx = f(x), reval(r, x)
    return np.max(np.abs(fx - rx)) / np.max(np.abs(fx))


class TestExitCodes:
    def test_exp(self, tmp_path, capsys):
        code, out = cli(tmp_path, "aaax", "--fn", "exp")
        assert code == 0
        d = json.loads((out / report.MODEL_FILE).read_text())
        assert d["degree"] == 6 and d["status"] == "Converged"
        assert "Converged: degree 6" in capsys.readouterr().out

    def test_sqrt_branch_fallback(self, tmp_path):
        code, out = cli(tmp_path, "aaaz", "--catalog", "sqrt-branch", "--mero", "0")
        assert code == 3
        d = json.loads((out / report.MODEL_FILE).read_text())
        assert d["fine_error"] <= 1e-7 and d["status"] == "BadPoleFallback"
        for p in d["poles"]:
            assert abs(complex(*p)) >= 1

    def test_max_degree(self, tmp_path):
        code, _ = cli(tmp_path, "aaax", "--fn", "abs(x)", "--degree", "10")
        assert code == 2

    def test_parse_error(self, tmp_path, capsys):
        code, out = cli(tmp_path, "aaax", "--fn", "exp(")
        assert code == 1
        assert "offset 4" in capsys.readouterr().err
        assert not (out / report.MODEL_FILE).exists()

    def test_nonfinite_sample(self, tmp_path, capsys):
        code, _ = cli(tmp_path, "aaax", "--fn", "log(1+x)")
        assert code == 1
        assert "non-finite" in capsys.readouterr().err

    def test_source_required(self, tmp_path):
        with pytest.raises(SystemExit):
            main(["--out", str(tmp_path)], command="aaax")
        with pytest.raises(SystemExit):
            main(["--fn", "x", "--catalog", "relu"], command="aaax")

    def test_module_entry_point(self, tmp_path):
        proc = subprocess.run([sys.executable, "-m", "contaaa", "aaax", "--fn", "exp", "--out", str(tmp_path)],
                              capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0 and "degree 6" in proc.stdout


class TestOutputs:
    def test_files_and_history(self, tmp_path):
        code, out = cli(tmp_path, "aaax", "--catalog", "fermi-dirac")
        assert code == 0
        d = json.loads((out / report.MODEL_FILE).read_text())
        rows = report.read_csv(out / report.HISTORY_FILE)
        assert list(rows[0]) == ["degree", "error", "bad_poles"]
        assert len(rows) == len(d["history"]) == d["degree"]
        curve = report.read_csv(out / report.CURVE_FILE)
        assert list(curve[0]) == ["param_re", "param_im", "err_re", "err_im"]
        assert len(curve) == 30 * d["degree"] + d["degree"] + 1
        x = np.array([float(c["param_re"]) for c in curve])
        assert np.all(np.diff(x) > 0)

    def test_deterministic(self, tmp_path):
        _, a = cli(tmp_path / "a", "aaaz", "--catalog", "circle-branch", "--degree", "8", "--lawson", "5")
        _, b = cli(tmp_path / "b", "aaaz", "--catalog", "circle-branch", "--degree", "8", "--lawson", "5")
        for name in FILES:
            assert (a / name).read_bytes() == (b / name).read_bytes()

    @pytest.mark.parametrize(
        "command, args",
        [("aaax", ["--fn", "abs(x)"]), ("aaax", ["--catalog", "cmv"]), ("aaaz", ["--catalog", "tan-z4"]),
         ("aaai", ["--catalog", "two-branch-axis"])],
    )
    def test_json_round_trip(self, tmp_path, command, args):
        cli(tmp_path, command, *args)
        r, d = report.load_model(tmp_path / "out" / report.MODEL_FILE)
        assert abs(fine_error_from_model(d, r) - d["fine_error"]) <= 1e-15
        domain = Domain(report_kind(d["domain"]), d["mero"])
        assert not any(bad_pole(complex(*p), domain) for p in d["poles"])

    def test_abs_poles_conjugate_pairs(self, tmp_path):
        cli(tmp_path, "aaax", "--fn", "abs(x)")
        d = json.loads((tmp_path / "out" / report.MODEL_FILE).read_text())
        poles = np.array([complex(*p) for p in d["poles"]])
        assert 90 <= d["degree"] <= 150 and len(d["support"]) == d["degree"] + 1
        for p in poles[poles.imag != 0]:
            assert np.min(np.abs(poles - p.conjugate())) <= 1e-8 * max(1, abs(p))
        assert np.median(np.abs(poles.real) / np.abs(poles)) < 0.1

    def test_constant_function(self, tmp_path):
        code, out = cli(tmp_path, "aaax", "--fn", "2.5")
        assert code == 0
        d = json.loads((out / report.MODEL_FILE).read_text())
        assert d["degree"] == 1
        assert d["poles"] == [] and d["zeros"] == [] and d["fine_error"] == 0

    def test_plots(self, tmp_path):
        _, out = cli(tmp_path, "aaax", "--fn", "exp", "--plot")
        for name in ("convergence.svg", "error.svg"):
            assert (out / name).read_text().lstrip().startswith("<?xml")


def report_kind(value):
    from contaaa.domains import DomainKind

    return DomainKind(value)
