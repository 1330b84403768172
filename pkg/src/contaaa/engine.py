"""Continuum AAA: adaptive sampling, Loewner least squares and greedy support selection."""

import enum
import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .barycentric import BarycentricRational, PoleZeroReport, prz, reval
from .domains import Domain, DomainKind, bad_pole, mobius_maps, xs, xs_params
from .errors import NonFiniteSample, NoValidApproximant, UnresolvedWinding
from .kernels import min_singular_vector

log = logging.getLogger(__name__)

BAD_POLE_STREAK = 10
FALLBACK_ACCURACY = 1e-2


class Status(enum.Enum):
    CONVERGED = "Converged"
    MAX_DEGREE = "MaxDegreeReached"
    BAD_POLE_FALLBACK = "BadPoleFallback"


@dataclass(frozen=True)
class AaaOptions:
    tol: float = 1e-13
    max_degree: int = 150
    lawson_steps: int = 0
    mero: bool = False
    fine_grid_density: int = 30
    lawson_density: int = 30

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if self.lawson_steps < 0:
            raise ValueError("lawson_steps must be >= 0")
        if self.fine_grid_density < 1 or self.lawson_density < 1:
            raise ValueError("grid densities must be >= 1")


@dataclass(frozen=True)
class ConvergenceRecord:
    step_degree: int
    grid_error: float
    bad_poles: bool
    num_bad_poles: int


@dataclass(frozen=True)
class ErrorCurve:
    """Error f - r sampled along the domain, in domain order."""

    parameters: np.ndarray
    errors: np.ndarray

    def __post_init__(self):
        if np.shape(self.parameters) != np.shape(self.errors):
            raise ValueError("parameters and errors must have the same length")


@dataclass
class AaaResult:
    approximant: BarycentricRational
    status: Status
    history: list
    grid_error: float
    fine_error: float
    report: PoleZeroReport
    feval_count: int
    domain: Domain
    error_curve: ErrorCurve
    lawson: Optional["object"] = None
    winding_number: Optional[int] = None
    # approximant in the variable the loop ran in (w for the imaginary axis)
    working_approximant: Optional[BarycentricRational] = field(default=None, repr=False)

    @property
    def degree(self):
        return self.approximant.degree()

    def __call__(self, x):
        return reval(self.approximant, x)


class Sampler:
    """Wraps f: vectorised evaluation, finiteness check, distinct-point count."""

    def __init__(self, f: Callable, transform: Optional[Callable] = None):
        self.f = f
        self.transform = transform
        self._seen = set()

    @property
    def count(self):
        return len(self._seen)

    def __call__(self, pts):
        pts = np.asarray(pts)
        args = self.transform(pts) if self.transform is not None else pts
        with np.errstate(all="ignore"):
            vals = np.asarray(self.f(args))
        vals = np.broadcast_to(vals, pts.shape).copy()
        self._seen.update(np.asarray(pts, dtype=complex).ravel().tolist())
        bad = ~np.isfinite(vals)
        if np.any(bad):
            k = int(np.flatnonzero(bad.ravel())[0])
            raise NonFiniteSample(args.ravel()[k], vals.ravel()[k])
        if np.iscomplexobj(vals) and not np.any(vals.imag):
            vals = vals.real.copy()
        return vals


def loewner(FX, FS, X, S):
    """N x m Loewner matrix A[i, j] = (F(x_i) - F(s_j)) / (x_i - s_j)."""
    FX, FS, X, S = (np.asarray(a) for a in (FX, FS, X, S))
    for vals, pts in ((FX, X), (FS, S)):
        bad = ~np.isfinite(vals)
        if np.any(bad):
            k = int(np.flatnonzero(bad)[0])
            raise NonFiniteSample(pts[k], vals[k])
    diff = X[:, None] - S[None, :]
    if np.any(diff == 0):
        raise ValueError("sample points must not coincide with support points")
    return (FX[:, None] - FS[None, :]) / diff


def _relative_error(err, F):
    scale = np.max(np.abs(F)) if F.size else 0.0
    return float(np.max(err)) / (scale if scale > 0 else 1.0)


def _fit(FX, FS, X, S):
    w = min_singular_vector(loewner(FX, FS, X, S))
    r = BarycentricRational(S, FS, w)
    R = reval(r, X)
    err = np.abs(FX - R)
    return r, err


def aaa_step(f, S, p, domain=None):
    """One AAA step from support S: returns (r, X, argmax point, grid_error)."""
    domain = domain or Domain.interval()
    f = f if isinstance(f, Sampler) else Sampler(f)
    S = np.asarray(S)
    X = xs(S, p, domain)
    FX, FS = f(X), f(S)
    r, err = _fit(FX, FS, X, S)
    k = int(np.argmax(err))
    return r, X, X[k], _relative_error(err, FX)


def _working_domain(domain):
    if domain.kind is DomainKind.IMAGINARY_AXIS:
        return Domain.circle(domain.mero)
    return domain


def _bad_count(poles, domain, real_path):
    return sum(bad_pole(t, domain, real_arithmetic=real_path) for t in poles)


@dataclass
class _Incumbent:
    r: BarycentricRational
    t: np.ndarray
    grid_error: float
    real_path: bool


def run(f, domain=None, opts=None, initial_params=None):
    """Continuum AAA approximation of f on ``domain``.

    ``f`` is a vectorised callable. For the imaginary axis the loop runs on
    the unit circle for g(w) = f(M(1+w)/(1-w)) and the result is mapped back
    to the z-plane.
    """
    domain = domain or Domain.interval()
    opts = opts or AaaOptions()
    if opts.mero and not domain.mero:
        domain = replace(domain, mero=True)
    wdom = _working_domain(domain)
    periodic = wdom.periodic

    transform = None
    if domain.kind is DomainKind.IMAGINARY_AXIS:
        transform = mobius_maps(domain.mobius_scale)[0]
    sample = Sampler(f, transform)

    t = np.sort(np.asarray(initial_params if initial_params is not None else domain.initial_params(), float))
    FS = sample(wdom.to_point(t))
    history = []
    best = None
    streak = 0
    status = Status.MAX_DEGREE

    for m in range(2, opts.max_degree + 2):
        S = wdom.to_point(t)
        p = max(3, 16 - m)
        tX = xs_params(t, p, periodic)
        X = wdom.to_point(tX)
        FX = sample(X)
        r, err = _fit(FX, FS, X, S)
        grid_error = _relative_error(err, FX)
        real_path = wdom.kind is DomainKind.UNIT_INTERVAL and not np.iscomplexobj(r.weights)
        nbad = _bad_count(prz(r).poles, wdom, real_path)
        history.append(ConvergenceRecord(m - 1, grid_error, nbad > 0, nbad))
        log.debug("degree %d: error %.3e, bad poles %d", m - 1, grid_error, nbad)

        if nbad == 0:
            streak = 0
            if best is None or grid_error < best.grid_error:
                best = _Incumbent(r, t.copy(), grid_error, real_path)
            if grid_error < opts.tol:
                status = Status.CONVERGED
                break
        else:
            streak += 1
            if streak >= BAD_POLE_STREAK and best is not None and best.grid_error <= FALLBACK_ACCURACY:
                status = Status.BAD_POLE_FALLBACK
                break
        if m - 1 >= opts.max_degree:
            break

        k = int(np.argmax(err))
        pos = np.searchsorted(t, tX[k])
        t = np.insert(t, pos, tX[k])
        FS = np.insert(FS.astype(np.result_type(FS, FX)), pos, FX[k])

    if best is None:
        raise NoValidApproximant("no approximant free of bad poles was found")
    if status is Status.MAX_DEGREE and best.r is not r:
        log.info("returning best pole-free approximant of degree %d", best.r.degree())

    r_work = best.r
    lawson = None
    if opts.lawson_steps > 0:
        from .lawson import lawson_refine

        lawson = lawson_refine(sample, r_work, wdom, opts.lawson_steps, density=opts.lawson_density)
        r_work = lawson.approximant

    feval_count = sample.count
    # a posteriori check on the finer grid; not counted as approximation work
    t_work = best.t
    tF = xs_params(t_work, opts.fine_grid_density, periodic)
    F_fine = sample(wdom.to_point(tF))
    e_fine = F_fine - reval(r_work, wdom.to_point(tF))
    fine_error = _relative_error(np.abs(e_fine), F_fine)

    t_curve = np.concatenate([tF, t_work])
    order = np.argsort(t_curve, kind="stable")
    t_curve = t_curve[order]
    S_work = wdom.to_point(t_work)
    e_curve = np.concatenate([e_fine, sample(S_work) - reval(r_work, S_work)])[order]

    report = prz(r_work)
    approximant = r_work
    params = wdom.to_point(t_curve)
    if domain.kind is DomainKind.IMAGINARY_AXIS:
        approximant, report = transplant_to_axis(r_work, report, domain.mobius_scale)
        params = transform(params)
        # measure the z-plane model itself, which is what gets reported and saved
        e_fine = F_fine - reval(approximant, transform(wdom.to_point(tF)))
        fine_error = _relative_error(np.abs(e_fine), F_fine)
        e_curve = np.concatenate([e_fine, sample(S_work) - reval(approximant, transform(S_work))])[order]
    curve = ErrorCurve(params, e_curve)

    winding = None
    if periodic:
        from .lawson import winding_number

        try:
            winding = winding_number(ErrorCurve(t_curve, e_curve))
        except UnresolvedWinding:
            winding = None

    return AaaResult(
        approximant=approximant,
        status=status,
        history=history,
        grid_error=best.grid_error,
        fine_error=fine_error,
        report=report,
        feval_count=feval_count,
        domain=domain,
        error_curve=curve,
        lawson=lawson,
        winding_number=winding,
        working_approximant=r_work,
    )


def transplant_to_axis(r, report, M):
    """Rewrite a disk-variable barycentric rational in the z-plane.

    With w = (z-M)/(z+M), 1/(w - w_j) = (z+M)(z_j+M) / (2M (z - z_j)); the
    common factor cancels, leaving weights w_j (z_j + M) at z_j.
    """
    w_to_z, _ = mobius_maps(M)
    zj = w_to_z(r.support)
    rz = BarycentricRational(zj, r.values, r.weights * (zj + M))
    poles = w_to_z(report.poles)
    keep = np.isfinite(poles)
    residues = report.residues[keep] * (poles[keep] + M) ** 2 / (2 * M)
    zeros = w_to_z(report.zeros)
    zeros = zeros[np.isfinite(zeros)]
    return rz, PoleZeroReport(poles[keep], residues, zeros)
