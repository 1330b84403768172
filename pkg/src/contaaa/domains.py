"""Approximation domains, sample-grid construction and the bad-pole test.

Every domain is handled through a real parameter ``t``: the point itself on
[-1, 1], the angle in [0, 2*pi) on the unit circle, and the angle of the
Moebius-transplanted point for the imaginary axis.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSupport

TWO_PI = 2 * np.pi
MOBIUS_SCALE = 1.207


class DomainKind(enum.Enum):
    UNIT_INTERVAL = "interval"
    UNIT_CIRCLE = "circle"
    IMAGINARY_AXIS = "imaginary-axis"


@dataclass(frozen=True)
class Domain:
    kind: DomainKind = DomainKind.UNIT_INTERVAL
    mero: bool = False
    mobius_scale: float = MOBIUS_SCALE

    def __post_init__(self):
        if not self.mobius_scale > 0:
            raise ValueError("mobius_scale must be positive")

    @classmethod
    def interval(cls):
        return cls(DomainKind.UNIT_INTERVAL)

    @classmethod
    def circle(cls, mero=False):
        return cls(DomainKind.UNIT_CIRCLE, bool(mero))

    @classmethod
    def imaginary_axis(cls, mero=False, mobius_scale=MOBIUS_SCALE):
        return cls(DomainKind.IMAGINARY_AXIS, bool(mero), float(mobius_scale))

    @property
    def periodic(self):
        return self.kind is not DomainKind.UNIT_INTERVAL

    def to_point(self, t):
        """Parameter -> point in the plane the engine works in (x, or w on the circle)."""
        t = np.asarray(t, dtype=float)
        if self.periodic:
            return np.exp(1j * t)
        return t

    def to_param(self, pts):
        pts = np.asarray(pts)
        if self.periodic:
            return np.mod(np.angle(pts), TWO_PI)
        return np.real(pts).astype(float)

    def initial_params(self):
        if self.kind is DomainKind.UNIT_INTERVAL:
            return np.array([-1.0, 1.0])
        if self.kind is DomainKind.UNIT_CIRCLE:
            return np.array([0.0, np.pi])
        # w = +-i, i.e. z = +-iM; w = 1 would put a support point at z = infinity
        return np.array([np.pi / 2, 3 * np.pi / 2])


def mobius_maps(M=MOBIUS_SCALE):
    """Return ``(w_to_z, z_to_w)`` for z = M(1+w)/(1-w), w = (z-M)/(z+M)."""
    if not M > 0:
        raise ValueError("M must be positive")

    def w_to_z(w):
        w = np.asarray(w, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            z = M * (1 + w) / (1 - w)
        return z if np.ndim(z) else complex(z)

    def z_to_w(z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = (z - M) / (z + M)
        return w if np.ndim(w) else complex(w)

    return w_to_z, z_to_w


def xs_params(t, p, periodic=False):
    """p equispaced parameters strictly inside each gap of the sorted parameters t."""
    t = np.asarray(t, dtype=float)
    if t.size < 2:
        raise InvalidSupport("need at least two support points")
    if p < 1:
        raise ValueError("p must be >= 1")
    hi = np.append(t[1:], t[0] + TWO_PI) if periodic else t[1:]
    lo = t if periodic else t[:-1]
    gaps = hi - lo
    if np.any(gaps <= 0):
        raise InvalidSupport("support points must be distinct and sorted along the domain")
    k = np.arange(1, p + 1) / (p + 1)
    out = (lo[:, None] + gaps[:, None] * k[None, :]).ravel()
    if periodic:
        out = np.mod(out, TWO_PI)
    return out


def xs(S, p, domain=None):
    """Sample points placed p per gap between consecutive support points.

    On the interval ``S`` holds real points in ascending order; on the circle
    it holds unit-modulus points ordered by angle in [0, 2*pi) and the grid
    includes the wrap-around arc. Points come back in domain order.
    """
    domain = domain or Domain.interval()
    if domain.kind is DomainKind.IMAGINARY_AXIS:
        raise ValueError("sample the imaginary axis through its circle transplant")
    t = domain.to_param(S)
    if np.unique(t).size != t.size:
        raise InvalidSupport("duplicate support points")
    order = np.argsort(t, kind="stable")
    if not np.array_equal(order, np.arange(t.size)):
        raise InvalidSupport("support points must be sorted along the domain")
    return domain.to_point(xs_params(t, p, domain.periodic))


def bad_pole(pole, domain, real_arithmetic=True):
    """Is ``pole`` forbidden for an approximant on ``domain``?

    On the interval a pole is bad when it lies on [-1, 1]. With
    ``real_arithmetic`` the approximant came from real data, so its poles are
    exactly real or exact conjugate pairs and only exactly-real poles count;
    otherwise an imaginary part up to 1e-13*max(1, |Re|) is tolerated.

    On the circle (pole given in the disk variable) and on the imaginary axis
    (pole given in the z-plane) poles are bad inside the unit disk / right
    half-plane unless ``domain.mero`` is set.
    """
    pole = complex(pole)
    if domain.kind is DomainKind.UNIT_INTERVAL:
        re, im = pole.real, pole.imag
        if real_arithmetic:
            on_axis = im == 0
        else:
            on_axis = abs(im) <= 1e-13 * max(1.0, abs(re))
        return bool(on_axis and -1 <= re <= 1)
    if domain.mero:
        return False
    if domain.kind is DomainKind.UNIT_CIRCLE:
        return abs(pole) < 1
    return pole.real > 0
