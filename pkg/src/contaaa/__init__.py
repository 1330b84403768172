"""Continuum AAA rational approximation on the unit interval, unit circle and imaginary axis."""

from .barycentric import BarycentricRational, PoleZeroReport, prz, reval
from .domains import Domain, DomainKind, bad_pole, mobius_maps, xs
from .engine import AaaOptions, AaaResult, ConvergenceRecord, ErrorCurve, Status, aaa_step, loewner, run
from .errors import (
    AAAError,
    DomainError,
    InvalidMatrix,
    InvalidSupport,
    KernelFailure,
    LawsonBreakdown,
    NonFiniteSample,
    NoValidApproximant,
    ParseError,
    UnresolvedWinding,
)
from .funcspec import CATALOG, FunctionSpec, catalog, evaluate, parse, to_text
from .kernels import arrowhead_pencil_eigenvalues, min_singular_vector
from .lawson import LawsonResult, equioscillation_ratio, lawson_refine, winding_number


def aaax(f, degree=150, lawson=0, tol=1e-13):
    """Approximate f on [-1, 1]."""
    return run(f, Domain.interval(), AaaOptions(tol=tol, max_degree=degree, lawson_steps=lawson))


def aaaz(f, degree=150, lawson=0, tol=1e-13, mero=False):
    """Approximate f on the unit circle (analytic in the disk unless ``mero``)."""
    return run(f, Domain.circle(mero), AaaOptions(tol=tol, max_degree=degree, lawson_steps=lawson))


def aaai(f, degree=150, lawson=0, tol=1e-13, mero=False):
    """Approximate f on the imaginary axis (analytic in the right half-plane unless ``mero``)."""
    return run(f, Domain.imaginary_axis(mero), AaaOptions(tol=tol, max_degree=degree, lawson_steps=lawson))


__version__ = "0.1.0"
