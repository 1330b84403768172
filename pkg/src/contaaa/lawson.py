"""Barycentric Lawson iteration toward minimax, and error-curve diagnostics."""

import logging
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .barycentric import BarycentricRational, prz, reval
from .domains import Domain, DomainKind, bad_pole, xs_params
from .engine import ErrorCurve, Sampler
from .errors import LawsonBreakdown, UnresolvedWinding
from .kernels import min_singular_vector

log = logging.getLogger(__name__)

_EPS = np.finfo(float).eps


@dataclass
class LawsonState:
    lawson_weights: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    best_error: float = np.inf
    best_coeffs: Optional[tuple] = None


@dataclass
class LawsonResult:
    approximant: BarycentricRational
    curve: ErrorCurve
    status: str  # "ok", "skipped" or "breakdown"
    initial_error: float
    best_error: float
    errors: list = field(default_factory=list)
    lawson_weights: Optional[np.ndarray] = None

    def __iter__(self):
        yield self.approximant
        yield self.curve


def _support_limit_rows(Z, is_support):
    """Scale for the rows of the Cauchy matrix that sit on support points.

    Such a row would be infinite; it is replaced by L * e_k with L the
    reciprocal distance to the nearest other grid point, which is the size
    the neighbouring rows have in that column.
    """
    L = np.empty(is_support.sum())
    idx = np.flatnonzero(is_support)
    for n, i in enumerate(idx):
        d = np.abs(np.delete(Z, i) - Z[i])
        L[n] = 1.0 / d.min()
    return L


def _from_coefficients(S, alpha, beta):
    """Barycentric form of sum alpha_j/(x-s_j) / sum beta_j/(x-s_j), or None.

    A support point with beta_k = alpha_k = 0 drops out of the sum; its stored
    value is the limit of the remaining terms. beta_k = 0 with alpha_k != 0
    puts a pole on s_k and gives None.
    """
    zero = beta == 0
    if np.any(zero & (alpha != 0)) or np.all(zero):
        return None
    values = np.zeros(S.size, dtype=np.result_type(alpha, beta))
    values[~zero] = alpha[~zero] / beta[~zero]
    for k in np.flatnonzero(zero):
        c = 1.0 / (S[k] - S[~zero])
        values[k] = (c @ alpha[~zero]) / (c @ beta[~zero])
    if not np.all(np.isfinite(values)):
        return None
    return BarycentricRational(S, values, beta)


def _pole_free(r, domain, real_path):
    return not any(bad_pole(t, domain, real_arithmetic=real_path) for t in prz(r).poles)


def lawson_refine(f, r0, domain=None, steps=20, density=30):
    """Improve r0 toward minimax by iteratively reweighted least squares.

    The working grid is ``density`` points per gap plus the support points
    themselves, whose interpolation conditions are dropped: numerator and
    denominator coefficients (alpha, beta) are both free. Each step solves a
    Lawson-weighted linearised problem by SVD and multiplies the weights by
    the current error. The best pole-free iterate is returned, never worse
    than r0 on the working grid.
    """
    domain = domain or Domain.interval()
    if domain.kind is DomainKind.IMAGINARY_AXIS:
        raise ValueError("run Lawson on the circle transplant of the imaginary axis")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    sample = f if isinstance(f, Sampler) else Sampler(f)

    S = r0.support
    m = S.size
    tS = domain.to_param(S)
    if np.any(np.diff(tS) <= 0):
        raise ValueError("r0 support must be ordered along the domain")
    tX = xs_params(tS, density, domain.periodic)
    tZ = np.concatenate([tX, tS])
    order = np.argsort(tZ, kind="stable")
    Z = domain.to_point(tZ[order])
    is_support = (np.arange(tZ.size) >= tX.size)[order]
    F = sample(Z)
    real_path = domain.kind is DomainKind.UNIT_INTERVAL and not np.iscomplexobj(F)

    with np.errstate(divide="ignore", invalid="ignore"):
        C = 1.0 / (Z[:, None] - S[None, :])
    C[is_support] = 0
    C[np.flatnonzero(is_support), np.arange(m)] = _support_limit_rows(Z, is_support)

    R0 = reval(r0, Z)
    e0 = np.abs(F - R0)
    scale = max(float(np.max(np.abs(F))), np.finfo(float).tiny)
    state = LawsonState(np.full(Z.size, 1.0 / Z.size), r0.weights * r0.values, r0.weights.copy())
    state.best_error = float(e0.max())
    state.best_coeffs = (state.alpha, state.beta)
    best_r, best_e = r0, F - R0
    errors = [state.best_error]

    if state.best_error <= 1e2 * _EPS * scale:
        warnings.warn("approximation is already near machine precision; Lawson iteration skipped",
                      RuntimeWarning, stacklevel=2)
        return LawsonResult(r0, ErrorCurve(Z, best_e), "skipped", errors[0], errors[0], errors,
                            state.lawson_weights)

    status = "ok"
    try:
        for _ in range(steps):
            sq = np.sqrt(state.lawson_weights)[:, None]
            A = np.hstack([sq * F[:, None] * C, -sq * C])
            c = min_singular_vector(A)
            state.beta, state.alpha = c[:m], c[m:]
            r = _from_coefficients(S, state.alpha, state.beta)
            if r is None:
                raise LawsonBreakdown("denominator coefficients vanished")
            with np.errstate(divide="ignore", invalid="ignore"):
                R = reval(r, Z)
            if not np.all(np.isfinite(R)):
                raise LawsonBreakdown("denominator vanished on the working grid")
            e = F - R
            err = np.abs(e)
            emax = float(err.max())
            errors.append(emax)
            if emax < state.best_error:
                if _pole_free(r, domain, real_path):
                    state.best_error = emax
                    state.best_coeffs = (state.alpha, state.beta)
                    best_r, best_e = r, e
            lam = state.lawson_weights * err
            total = lam.sum()
            if not (np.isfinite(total) and total > 0):
                raise LawsonBreakdown("Lawson weights collapsed")
            state.lawson_weights = lam / total
    except LawsonBreakdown as exc:
        warnings.warn(f"Lawson iteration broke down: {exc}", RuntimeWarning, stacklevel=2)
        status = "breakdown"

    return LawsonResult(best_r, ErrorCurve(Z, best_e), status, errors[0], state.best_error, errors,
                        state.lawson_weights)


def winding_number(curve, closed=True):
    """Net number of turns of the error curve around the origin."""
    e = np.asarray(curve.errors, dtype=complex)
    if e.size < 8:
        raise UnresolvedWinding("need at least 8 points")
    if np.any(e == 0):
        raise UnresolvedWinding("error curve passes through zero")
    ratios = e[1:] / e[:-1]
    if closed:
        ratios = np.append(ratios, e[0] / e[-1])
    dtheta = np.angle(ratios)
    if np.any(np.abs(dtheta) >= np.pi / 2):
        raise UnresolvedWinding("argument jumps by pi/2 or more; refine the grid")
    return int(np.rint(dtheta.sum() / (2 * np.pi)))


def sign_runs(errors):
    """Largest |error| on each maximal run of constant sign of a real error curve."""
    e = np.real(np.asarray(errors))
    e = e[e != 0]
    if e.size == 0:
        return np.zeros(0)
    breaks = np.flatnonzero(np.sign(e[1:]) != np.sign(e[:-1])) + 1
    return np.array([np.abs(run).max() for run in np.split(e, breaks)])


def equioscillation_ratio(errors):
    """(largest run extremum) / (smallest run extremum); 1 means perfect equioscillation."""
    peaks = sign_runs(errors)
    if peaks.size == 0:
        return np.inf
    return float(peaks.max() / peaks.min())
