"""Barycentric rational functions: evaluation, poles, zeros and residues."""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSupport
from .kernels import arrowhead_pencil_eigenvalues

_EPS = np.finfo(float).eps


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class BarycentricRational:
    r"""Rational function in barycentric form

    .. math::

        r(x) = \frac{\sum_j w_j f_j / (x - s_j)}{\sum_j w_j / (x - s_j)}

    with support points ``s_j``, values ``f_j`` and weights ``w_j``.
    Arrays are copied and made read-only on construction.
    """

    support: np.ndarray
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        s = np.atleast_1d(np.asarray(self.support))
        f = np.atleast_1d(np.asarray(self.values))
        w = np.atleast_1d(np.asarray(self.weights))
        if not (s.ndim == f.ndim == w.ndim == 1) or not (s.size == f.size == w.size) or s.size < 1:
            raise InvalidSupport("support, values and weights must be 1-D arrays of equal length >= 1")
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(f)) and np.all(np.isfinite(w))):
            raise InvalidSupport("barycentric data must be finite")
        if not np.any(w != 0):
            raise InvalidSupport("at least one weight must be nonzero")
        if np.unique(s).size != s.size:
            raise InvalidSupport("support points must be distinct")
        object.__setattr__(self, "support", _frozen(s))
        object.__setattr__(self, "values", _frozen(f))
        object.__setattr__(self, "weights", _frozen(w))

    @property
    def m(self):
        return self.support.size

    def degree(self):
        return self.m - 1

    def __call__(self, x):
        return reval(self, x)

    def poles(self):
        return prz(self).poles

    def scale(self):
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class PoleZeroReport:
    poles: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    residues: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    zeros: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))


def reval(r, pts):
    """Evaluate r at the points ``pts`` (any shape).

    A point that equals a support point exactly returns the stored value
    there. Evaluation at a pole gives a non-finite result.
    """
    x = np.asarray(pts)
    shape = x.shape
    x = x.ravel()
    s, f, w = r.support, r.values, r.weights
    if np.all(f == f[0]):
        # equal values: r is that constant (any zero of the denominator is removable)
        return np.full(shape, f[0])
    with np.errstate(divide="ignore", invalid="ignore"):
        C = 1.0 / (x[:, None] - s[None, :])
        out = (C @ (w * f)) / (C @ w)
    ii, jj = np.nonzero(x[:, None] == s[None, :])
    if ii.size:
        out = out.astype(np.result_type(out, f), copy=False)
        out[ii] = f[jj]
    return out.reshape(shape)


def _cancel_removable(poles, residues, zeros, scale):
    """Drop pole/zero pairs that cancel to working precision."""
    if poles.size == 0 or zeros.size == 0:
        return poles, residues, zeros
    keep_p = np.ones(poles.size, bool)
    keep_z = np.ones(zeros.size, bool)
    for k, t in enumerate(poles):
        if abs(residues[k]) > 8 * _EPS * scale:
            continue
        d = np.abs(zeros - t)
        d[~keep_z] = np.inf
        j = int(np.argmin(d))
        if d[j] <= 8 * _EPS * max(1.0, abs(t)):
            keep_p[k] = False
            keep_z[j] = False
    return poles[keep_p], residues[keep_p], zeros[keep_z]


def residues_at(r, poles):
    """Residues n(t)/d'(t) at simple poles t."""
    poles = np.asarray(poles, dtype=complex)
    if poles.size == 0:
        return np.zeros(0, complex)
    s, f, w = r.support, r.values, r.weights
    with np.errstate(divide="ignore", invalid="ignore"):
        C = 1.0 / (poles[:, None] - s[None, :])
        num = C @ (w * f)
        dprime = -(C**2) @ w
        return num / dprime


def prz(r):
    """Poles, residues and zeros of a barycentric rational."""
    if r.m < 2:
        return PoleZeroReport()
    poles = arrowhead_pencil_eigenvalues(r.support, r.weights).astype(complex)
    zeros = arrowhead_pencil_eigenvalues(r.support, r.weights * r.values).astype(complex)
    res = residues_at(r, poles)
    poles, res, zeros = _cancel_removable(poles, res, zeros, max(r.scale(), 1.0))
    return PoleZeroReport(poles=poles, residues=res, zeros=zeros)
