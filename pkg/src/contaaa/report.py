"""Writing results: model.json, history.csv, error_curve.csv and optional SVG plots."""

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .barycentric import BarycentricRational

MODEL_FILE = "model.json"
HISTORY_FILE = "history.csv"
CURVE_FILE = "error_curve.csv"


def atomic_write(path, data):
    """Write text or bytes to ``path`` via a temporary file and rename."""
    path = Path(path)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": ""})) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _pairs(a):
    # floats print via repr, the shortest string that round-trips exactly
    a = np.asarray(a, dtype=complex)
    return [[float(z.real), float(z.imag)] for z in a]


def _unpairs(rows):
    rows = np.asarray(rows, dtype=float).reshape(-1, 2)
    if not np.any(rows[:, 1]):
        # real data was computed in real arithmetic; keep it that way
        return rows[:, 0].copy()
    return rows[:, 0] + 1j * rows[:, 1]


def model_dict(result, function=None):
    r = result.approximant
    d = {
        "domain": result.domain.kind.value,
        "mero": bool(result.domain.mero),
        "degree": r.degree(),
        "support": _pairs(r.support),
        "values": _pairs(r.values),
        "weights": _pairs(r.weights),
        "poles": _pairs(result.report.poles),
        "residues": _pairs(result.report.residues),
        "zeros": _pairs(result.report.zeros),
        "status": result.status.value,
        "grid_error": float(result.grid_error),
        "fine_error": float(result.fine_error),
        "feval_count": int(result.feval_count),
        "history": [
            {"degree": h.step_degree, "error": float(h.grid_error), "bad_poles": bool(h.bad_poles)}
            for h in result.history
        ],
    }
    if function is not None:
        d["function"] = function
    if result.lawson is not None:
        d["lawson"] = {
            "status": result.lawson.status,
            "initial_error": float(result.lawson.initial_error),
            "best_error": float(result.lawson.best_error),
        }
    if result.winding_number is not None:
        d["winding_number"] = int(result.winding_number)
    return d


def emit_model(result, path, function=None):
    text = json.dumps(model_dict(result, function), allow_nan=False) + "\n"
    atomic_write(path, text)
    return Path(path)


def load_model(path):
    """Read model.json back; returns (BarycentricRational, raw dict)."""
    with open(path, encoding="utf-8") as fh:
        d = json.load(fh)
    r = BarycentricRational(_unpairs(d["support"]), _unpairs(d["values"]), _unpairs(d["weights"]))
    return r, d


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def emit_history(result, path):
    rows = [(h.step_degree, repr(float(h.grid_error)), int(h.bad_poles)) for h in result.history]
    atomic_write(path, _csv_text(("degree", "error", "bad_poles"), rows))


def emit_error_curve(result, path):
    c = result.error_curve
    p = np.asarray(c.parameters, dtype=complex)
    e = np.asarray(c.errors, dtype=complex)
    rows = [tuple(repr(float(v)) for v in (a.real, a.imag, b.real, b.imag)) for a, b in zip(p, e)]
    atomic_write(path, _csv_text(("param_re", "param_im", "err_re", "err_im"), rows))


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def emit_plots(result, outdir):
    """Convergence and error-curve SVGs (convenience output only)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    deg = np.array([h.step_degree for h in result.history])
    err = np.array([max(h.grid_error, 1e-300) for h in result.history])
    bad = np.array([h.bad_poles for h in result.history], dtype=bool)

    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.semilogy(deg[~bad], err[~bad], ".", color="tab:blue", label="pole-free")
    ax.semilogy(deg[bad], err[bad], ".", color="tab:red", label="bad poles")
    ax.semilogy([result.degree], [max(result.fine_error, 1e-300)], "o", mfc="none", color="tab:green",
                label="fine-grid error")
    ax.set_xlabel("degree")
    ax.set_ylabel("relative error")
    ax.legend(loc="upper right", fontsize="small")
    fig.tight_layout()
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    atomic_write(outdir / "convergence.svg", buf.getvalue())

    c = result.error_curve
    p = np.asarray(c.parameters)
    e = np.asarray(c.errors)
    fig, ax = plt.subplots(figsize=(7, 3.5))
    kind = result.domain.kind.value
    if kind == "interval":
        ax.plot(np.real(p), np.real(e), color="purple" if result.lawson else "k", lw=0.8)
        ax.set_xlabel("x")
        ax.set_ylabel("f(x) - r(x)")
    else:
        ax.plot(np.real(e), np.imag(e), color="purple" if result.lawson else "k", lw=0.8)
        ax.set_aspect("equal", adjustable="datalim")
        ax.set_xlabel("Re(f - r)")
        ax.set_ylabel("Im(f - r)")
    ax.set_title(f"degree {result.degree}, max error {result.fine_error:.2e}")
    fig.tight_layout()
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    atomic_write(outdir / "error.svg", buf.getvalue())
