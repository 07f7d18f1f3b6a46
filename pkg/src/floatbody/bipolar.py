"""Bipolar chart of the lower half-plane with foci at ``(+-a, 0)``.

The strip ``-pi < v < 0`` is mapped onto ``y < 0`` by

    x = a sinh u / (cosh u - cos v),    y = a sin v / (cosh u - cos v),

so that ``v = -pi`` is the waterline interval ``|x| < a``, ``v = 0`` is the
free surface ``|x| > a`` and each level line ``v = sigma`` is a circular arc
through both foci.  The inverse is ``u - i v = Log((z + a) / (z - a))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FocusPoint, FocusTouch, GeometryError, NoBracket, PolePoint
from .geometry import FluidConfig, ImmersedGeometry

MONOTONE_SLACK = 1e-9


@dataclass(frozen=True)
class BipolarPoint:
    u: float
    v: float
    a: float = 1.0

    def __post_init__(self):
        if not -math.pi <= self.v <= 0:
            raise ValueError(f"v must lie in [-pi, 0], got {self.v}")
        if not self.a > 0:
            raise ValueError("focal half-distance must be positive")


@dataclass(frozen=True)
class ArcSpec:
    sigma: float
    side: str = "right"
    a: float = 1.0

    def __post_init__(self):
        if not -math.pi < self.sigma < 0:
            raise ValueError("sigma must lie in (-pi, 0)")
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")

    @property
    def center(self) -> tuple[float, float]:
        return 0.0, self.a / math.tan(self.sigma)

    @property
    def radius(self) -> float:
        return self.a * math.sqrt(1.0 / math.tan(self.sigma) ** 2 + 1.0)


@dataclass(frozen=True)
class MappedContour:
    """Images of the wetted contour and the bottom in the ``(u, v)`` strip.

    ``S_image`` samples the right half of the contour from the keel towards
    the focus ``(a, 0)``; columns are ``u, v, x, y``.
    """

    S_image: np.ndarray
    H_image: np.ndarray | None
    alpha: float
    vb: float
    vh: float | None
    decreasing: str
    witness: tuple[float, float] | None
    a: float


def _denominator(u, v):
    # cosh u - cos v, scaled by 2 exp(-|u|) to stay finite for large |u|
    e = np.exp(-np.abs(u))
    return 1.0 + e * e - 2.0 * e * np.cos(v), e


def to_physical(u, v, a: float = 1.0):
    """Map strip coordinates to ``(x, y)``; accepts scalars or arrays."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.any((u == 0) & (np.mod(v, 2 * np.pi) == 0)):
        raise PolePoint("(u, v) = (0, 0) is the image of infinity")
    den, e = _denominator(u, v)
    x = a * np.sign(u) * (1.0 - e * e) / den
    y = a * 2.0 * e * np.sin(v) / den
    if x.ndim == 0:
        return float(x), float(y)
    return x, y


def to_bipolar(x, y, a: float = 1.0):
    """Inverse chart for points of the closed lower half-plane.

    Returns ``(u, v)`` with ``-pi <= v <= 0``; points on ``|x| < a, y = 0``
    get ``v = -pi`` and points at infinity map to the origin.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(y > 0):
        raise ValueError("to_bipolar is defined on the closed lower half-plane")
    if np.any((y == 0) & (np.abs(np.abs(x) - a) == 0)):
        raise FocusPoint("the foci (+-a, 0) map to infinity")
    z = x + 1j * y
    with np.errstate(divide="ignore", invalid="ignore"):
        zeta = np.log1p(2.0 * a / (z - a))
    u = zeta.real
    v = -zeta.imag
    on_d = (y == 0) & (np.abs(x) < a)
    v = np.where(on_d | (v > 0), -np.pi, v)
    v = np.where((y == 0) & (np.abs(x) > a), 0.0, v)
    inf = ~np.isfinite(z)
    u = np.where(inf, 0.0, u)
    v = np.where(inf, 0.0, v)
    if u.ndim == 0:
        return float(u), float(v)
    return u, v


def jacobian_scale(u, v, a: float = 1.0):
    """Conformal scale factor ``|dz/dzeta| = a / (cosh u - cos v)``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.any((u == 0) & (np.mod(v, 2 * np.pi) == 0)):
        raise PolePoint("the scale factor is infinite at (0, 0)")
    den, e = _denominator(u, v)
    out = a * 2.0 * e / den
    return float(out) if out.ndim == 0 else out


def arc_points(arc: ArcSpec, n: int) -> np.ndarray:
    """``n`` interior points of the arc ``v = sigma`` ordered from the y-axis towards the focus."""
    if n < 2:
        raise ValueError("need at least two points")
    cx, cy = arc.center
    R = arc.radius
    theta_focus = math.atan2(-cy, arc.a)
    t = -0.5 * math.pi + (theta_focus + 0.5 * math.pi) * np.arange(1, n + 1) / (n + 1)
    x = R * np.cos(t)
    y = cy + R * np.sin(t)
    if arc.side == "left":
        x = -x
    return np.column_stack([x, y])


def _root_on_strip(c: float) -> float:
    """Root in ``(-pi, 0)`` of ``cos v - c sin v = 1`` by bisection."""
    if not c > 0:
        raise ValueError("ratio must be positive")

    def f(v):
        # cos v - 1 written as -2 sin^2(v/2) to keep the sign near v = 0
        return -2.0 * math.sin(0.5 * v) ** 2 - c * math.sin(v)

    lo = -math.pi
    hi = -min(1.0, c) * 1e-6
    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        raise NoBracket(f"no sign change on [{lo}, {hi}] for ratio {c}")
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def root_vb(a: float, b0: float) -> float:
    """Ordinate in the strip of the keel point ``(0, -b0)``."""
    if not (a > 0 and b0 > 0):
        raise ValueError("a and b0 must be positive")
    return _root_on_strip(a / b0)


def root_vh(a: float, h: float) -> float:
    """Ordinate in the strip of the bottom point ``(0, -h)``."""
    if not (a > 0 and h > 0):
        raise ValueError("a and h must be positive")
    return _root_on_strip(a / h)


def weight_function(u):
    """``(u sinh u - 2 (cosh u - 1)) / (cosh u - 1)**2`` with value 1/3 at ``u = 0``."""
    u = np.abs(np.asarray(u, dtype=float))
    out = np.empty_like(u)
    small = u < 1e-2
    s = u[small] ** 2
    # Taylor series in u**2 about 0
    out[small] = 1.0 / 3.0 - s / 30.0 + s * s / 504.0 - s ** 3 / 10800.0
    big = ~small
    ub = u[big]
    with np.errstate(over="ignore", invalid="ignore"):
        cm1 = 2.0 * np.sinh(0.5 * ub) ** 2
        val = (ub * np.sinh(ub) - 2.0 * cm1) / cm1 ** 2
    # for huge u the ratio underflows to zero; it is positive there
    val = np.where(np.isfinite(val), val, 0.0)
    out[big] = val
    return float(out) if out.ndim == 0 else out


def contact_angle(chain: np.ndarray) -> float:
    """Angle inside the water between the free surface and the last edge of a chain.

    The chain must end on the waterline at its right end point.
    """
    corner = chain[-1]
    d = chain[-2] - corner
    return float(math.atan2(-d[1], d[0]))


def right_half(chain: np.ndarray) -> np.ndarray:
    """Portion of a symmetric chain with ``x >= 0``, starting on the axis."""
    x = chain[:, 0]
    crossings = []
    for k in range(len(chain) - 1):
        if x[k] < 0 <= x[k + 1]:
            crossings.append(k)
    if len(crossings) != 1:
        raise GeometryError("wetted contour must cross the symmetry axis exactly once")
    k = crossings[0]
    p, q = chain[k], chain[k + 1]
    if q[0] == 0:
        head = [q]
        rest = chain[k + 2 :]
    else:
        t = -p[0] / (q[0] - p[0])
        head = [np.array([0.0, p[1] + t * (q[1] - p[1])])]
        rest = chain[k + 1 :]
    return np.vstack([head, rest])


def _monotone_verdict(uv: np.ndarray, pts: np.ndarray):
    du = np.diff(uv[:, 0])
    dv = np.diff(uv[:, 1])
    bad = (du < -MONOTONE_SLACK) | (dv > MONOTONE_SLACK)
    if bad.any():
        k = int(np.flatnonzero(bad)[0]) + 1
        return "fails", (float(pts[k, 0]), float(pts[k, 1]))
    tie = (np.abs(du) <= MONOTONE_SLACK) | (np.abs(dv) <= MONOTONE_SLACK)
    if tie.any():
        k = int(np.flatnonzero(tie)[0]) + 1
        return "marginal", (float(pts[k, 0]), float(pts[k, 1]))
    return "holds", None


def map_wetted_contour(
    imm: ImmersedGeometry, fluid: FluidConfig | None = None, samples_per_edge: int = 32
) -> MappedContour:
    """Map the right half of the wetted contour (and the bottom) into the strip.

    The body is assumed symmetric about ``x = 0`` with a single waterline
    interval ``(-a, a)``.  The verdict ``decreasing`` says whether the image
    is the graph of a strictly decreasing function of ``u``; each polygon
    edge is subdivided because straight edges map to curves.
    """
    fluid = fluid or FluidConfig()
    if len(imm.S) != 1:
        raise GeometryError("the bipolar test needs a single wetted contour")
    a = imm.a
    chain = imm.S[0]
    interior = chain[1:-1]
    near = (np.abs(interior[:, 1]) <= 1e-12 * imm.diameter) & (
        np.abs(np.abs(interior[:, 0]) - a) <= 1e-12 * imm.diameter
    )
    if near.any():
        raise FocusTouch("a vertex of the wetted contour sits on a focus")

    half = right_half(chain)
    t = np.arange(samples_per_edge) / samples_per_edge
    pts = [p + t[:, None] * (q - p) for p, q in zip(half[:-1], half[1:])]
    pts = np.vstack(pts)
    u, v = to_bipolar(pts[:, 0], np.minimum(pts[:, 1], 0.0), a)
    uv = np.column_stack([u, v])
    verdict, witness = _monotone_verdict(uv, pts)

    H_image = vh = None
    if fluid.finite_depth:
        h = fluid.depth
        vh = root_vh(a, h)
        s = np.linspace(-0.5 * np.pi, 0.5 * np.pi, 4001)[1:-1]
        xb = h * np.tan(s)
        hu, hv = to_bipolar(xb, np.full_like(xb, -h), a)
        H_image = np.column_stack([hu, hv, xb, np.full_like(xb, -h)])

    return MappedContour(
        S_image=np.column_stack([uv, pts]),
        H_image=H_image,
        alpha=contact_angle(chain),
        vb=root_vb(a, imm.b0),
        vh=vh,
        decreasing=verdict,
        witness=witness,
        a=a,
    )
