"""Body cross-sections, waterline clipping and exact polygon quadrature.

All lengths are in metres and the free surface at rest is the line ``y = 0``
with water occupying ``y < 0``.  The unit normal on the wetted contour points
out of the water domain, that is, into the body.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import (
    CornerPoint,
    DegeneratePolygon,
    DepthConflict,
    GeometryError,
    NotSurfacePiercing,
    ZeroMass,
)

SNAP_RTOL = 1e-12

INTEGRANDS = ("1", "x", "y", "x2", "r2")


@dataclass(frozen=True)
class FluidConfig:
    """Gravity, water density and depth (``math.inf`` for deep water)."""

    g: float = 9.81
    rho0: float = 1000.0
    depth: float = math.inf

    def __post_init__(self):
        if not self.g > 0:
            raise GeometryError(f"g must be positive, got {self.g}")
        if not self.rho0 > 0:
            raise GeometryError(f"rho0 must be positive, got {self.rho0}")
        if not self.depth > 0:
            raise GeometryError(f"depth must be positive, got {self.depth}")

    @property
    def finite_depth(self) -> bool:
        return math.isfinite(self.depth)


@dataclass(frozen=True)
class DensityRegion:
    vertices: np.ndarray
    value: float

    def __post_init__(self):
        object.__setattr__(self, "vertices", _as_polygon(self.vertices))
        if not self.value >= 0:
            raise GeometryError(f"density must be non-negative, got {self.value}")


@dataclass(frozen=True)
class BodySpec:
    """Closed counterclockwise polygon with a uniform or piecewise constant density.

    Exactly one of ``density`` (uniform value) or ``regions`` must be given.
    Outside the listed regions the density is zero.
    """

    vertices: np.ndarray
    density: float | None = None
    regions: tuple[DensityRegion, ...] = ()

    def __post_init__(self):
        verts = _as_polygon(self.vertices)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "regions", tuple(self.regions))
        if (self.density is None) == (not self.regions):
            raise GeometryError("give exactly one of a uniform density or density regions")
        if self.density is not None and not self.density >= 0:
            raise GeometryError(f"density must be non-negative, got {self.density}")
        validate_polygon(verts)
        for region in self.regions:
            validate_polygon(region.vertices)
        if self.regions:
            total = sum(shoelace_area(r.vertices) for r in self.regions)
            if total > shoelace_area(verts) * (1 + 1e-9):
                raise GeometryError("density regions cover more area than the body")

    @classmethod
    def uniform(cls, vertices, density: float) -> "BodySpec":
        return cls(vertices=vertices, density=float(density))

    def density_components(self) -> list[tuple[np.ndarray, float]]:
        if self.density is not None:
            return [(self.vertices, float(self.density))]
        return [(r.vertices, float(r.value)) for r in self.regions]

    @property
    def diameter(self) -> float:
        return polygon_diameter(self.vertices)


@dataclass(frozen=True)
class ImmersedGeometry:
    """Decomposition of a floating body by the plane ``y = 0``.

    ``B`` holds the immersed polygons (counterclockwise), ``S`` the wetted
    chains, each running from the left waterline point to the right one with
    the body on its left, and ``D`` the waterline intervals.
    """

    B: tuple[np.ndarray, ...]
    S: tuple[np.ndarray, ...]
    D: tuple[tuple[float, float], ...]
    a: float
    b0: float
    waterline_intervals: int
    x_left: float
    x_right: float
    diameter: float = field(default=1.0)

    @property
    def center(self) -> float:
        return 0.5 * (self.x_left + self.x_right)

    @property
    def area(self) -> float:
        return float(sum(shoelace_area(p) for p in self.B))

    @property
    def vertices(self) -> np.ndarray:
        """All vertices of the immersed region stacked into one array."""
        return np.vstack(self.B)

    def s_edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Start and end points of every edge of the wetted contour."""
        starts = np.vstack([c[:-1] for c in self.S])
        ends = np.vstack([c[1:] for c in self.S])
        return starts, ends

    @property
    def s_length(self) -> float:
        p, q = self.s_edges()
        return float(np.linalg.norm(q - p, axis=1).sum())


@dataclass(frozen=True)
class GeneralizedNormal:
    N1: float
    N2: float
    N3: float
    point: tuple[float, float]

    def as_array(self) -> np.ndarray:
        return np.array([self.N1, self.N2, self.N3])


# ---------------------------------------------------------------------------
# polygon primitives


def _as_polygon(vertices) -> np.ndarray:
    P = np.array(vertices, dtype=float)
    if P.ndim != 2 or P.shape[1] != 2:
        raise GeometryError("vertices must be an (n, 2) array")
    if len(P) > 1 and np.allclose(P[0], P[-1]):
        P = P[:-1]
    if len(P) < 3:
        raise GeometryError("a polygon needs at least three vertices")
    P.setflags(write=False)
    return P


def shoelace_area(P: np.ndarray) -> float:
    """Signed area, positive for counterclockwise vertex order."""
    x, y = P[:, 0], P[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_diameter(P: np.ndarray) -> float:
    P = np.asarray(P)
    d = P[:, None, :] - P[None, :, :]
    return float(np.sqrt((d ** 2).sum(-1).max()))


def _segments_intersect(p1, p2, q1, q2) -> np.ndarray:
    """Vectorised closed-segment intersection test (collinear overlap counts)."""

    def orient(a, b, c):
        return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (
            c[..., 0] - a[..., 0]
        )

    def on_segment(a, b, c):
        return (
            (np.minimum(a[..., 0], b[..., 0]) <= c[..., 0])
            & (c[..., 0] <= np.maximum(a[..., 0], b[..., 0]))
            & (np.minimum(a[..., 1], b[..., 1]) <= c[..., 1])
            & (c[..., 1] <= np.maximum(a[..., 1], b[..., 1]))
        )

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)
    touch = (
        ((d1 == 0) & on_segment(q1, q2, p1))
        | ((d2 == 0) & on_segment(q1, q2, p2))
        | ((d3 == 0) & on_segment(p1, p2, q1))
        | ((d4 == 0) & on_segment(p1, p2, q2))
    )
    return proper | touch


def is_simple(P: np.ndarray) -> bool:
    n = len(P)
    if len(np.unique(P, axis=0)) != n:
        return False
    a = P
    b = np.roll(P, -1, axis=0)
    i, j = np.triu_indices(n, k=2)
    # the first and last edge share a vertex
    keep = ~((i == 0) & (j == n - 1))
    i, j = i[keep], j[keep]
    if len(i) == 0:
        return True
    hit = _segments_intersect(a[i], b[i], a[j], b[j])
    return not bool(hit.any())


def validate_polygon(P: np.ndarray) -> None:
    if not is_simple(P):
        raise GeometryError("polygon is not simple")
    area = shoelace_area(P)
    scale = polygon_diameter(P) ** 2
    if abs(area) <= 1e-14 * scale:
        raise DegeneratePolygon("polygon has zero area")
    if area < 0:
        raise GeometryError("polygon vertices must be in counterclockwise order")


def polygon_moment(P: np.ndarray, p: int, q: int) -> float:
    """Exact ``\\int x**p y**q dA`` over a polygon by Green's theorem.

    Each edge integral of ``x**(p+1) y**q / (p+1) dy`` is a polynomial of
    degree ``p + q + 1`` in the edge parameter, so Gauss-Legendre with
    ``ceil((p + q + 2) / 2)`` nodes is exact.  The sign follows the
    orientation of ``P``.
    """
    npts = max(1, math.ceil((p + q + 2) / 2))
    t, w = np.polynomial.legendre.leggauss(npts)
    t = 0.5 * (t + 1.0)
    w = 0.5 * w
    a = np.asarray(P, dtype=float)
    b = np.roll(a, -1, axis=0)
    x = a[:, 0:1] + t[None, :] * (b[:, 0:1] - a[:, 0:1])
    y = a[:, 1:2] + t[None, :] * (b[:, 1:2] - a[:, 1:2])
    dy = (b[:, 1] - a[:, 1])[:, None]
    vals = x ** (p + 1) * y ** q / (p + 1) * dy
    return float((vals * w[None, :]).sum())


def region_integral(region, integrand: str = "1", origin=(0.0, 0.0)) -> float:
    """Integrate ``1``, ``x``, ``y``, ``x2`` or ``r2`` (shifted by ``origin``) over a polygon.

    The result does not depend on the vertex orientation.

    Raises
    ------
    DegeneratePolygon
        If the polygon has zero area.
    """
    P = np.asarray(region, dtype=float) - np.asarray(origin, dtype=float)
    area = polygon_moment(P, 0, 0)
    if abs(area) <= 1e-14 * polygon_diameter(P) ** 2:
        raise DegeneratePolygon("cannot integrate over a zero-area polygon")
    sign = 1.0 if area > 0 else -1.0
    if integrand == "1":
        val = area
    elif integrand == "x":
        val = polygon_moment(P, 1, 0)
    elif integrand == "y":
        val = polygon_moment(P, 0, 1)
    elif integrand == "x2":
        val = polygon_moment(P, 2, 0)
    elif integrand == "r2":
        val = polygon_moment(P, 2, 0) + polygon_moment(P, 0, 2)
    else:
        raise ValueError(f"unknown integrand {integrand!r}; expected one of {INTEGRANDS}")
    return sign * val


def point_in_polygon(points: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Even-odd rule membership test for an array of points."""
    pts = np.atleast_2d(points)
    x, y = pts[:, 0:1], pts[:, 1:2]
    a = P[None, :, :]
    b = np.roll(P, -1, axis=0)[None, :, :]
    ay, by = a[..., 1], b[..., 1]
    cond = (ay > y) != (by > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = a[..., 0] + (y - ay) * (b[..., 0] - a[..., 0]) / (by - ay)
    inside = cond & (x < xint)
    return (inside.sum(axis=1) % 2) == 1


def strip_collinear(P: np.ndarray, rtol: float = 1e-12) -> np.ndarray:
    P = np.asarray(P, dtype=float)
    scale = polygon_diameter(P)
    prev = np.roll(P, 1, axis=0)
    nxt = np.roll(P, -1, axis=0)
    cross = (P[:, 0] - prev[:, 0]) * (nxt[:, 1] - prev[:, 1]) - (P[:, 1] - prev[:, 1]) * (
        nxt[:, 0] - prev[:, 0]
    )
    return P[np.abs(cross) > rtol * scale ** 2]


def is_mirror_symmetric(P: np.ndarray, tol: float = 1e-9) -> bool:
    """True if the polygon is invariant under ``x -> -x`` within ``tol * diameter``."""
    Q = strip_collinear(P)
    mirrored = Q * np.array([-1.0, 1.0])
    dist, _ = cKDTree(Q).query(mirrored)
    return bool(np.all(dist <= tol * polygon_diameter(Q)))


# ---------------------------------------------------------------------------
# body-level operations


def center_of_mass(body: BodySpec) -> tuple[float, float]:
    """Density-weighted centroid of the whole cross-section."""
    mass = mx = my = 0.0
    for poly, rho in body.density_components():
        if rho == 0:
            continue
        mass += rho * region_integral(poly, "1")
        mx += rho * region_integral(poly, "x")
        my += rho * region_integral(poly, "y")
    if mass <= 0:
        raise ZeroMass("the density vanishes identically")
    return mx / mass, my / mass


def body_mass(body: BodySpec) -> float:
    return sum(rho * region_integral(poly, "1") for poly, rho in body.density_components() if rho)


def _crossing(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    t = p[1] / (p[1] - q[1])
    return np.array([p[0] + t * (q[0] - p[0]), 0.0])


def _clip_lower(P: np.ndarray, diam: float):
    """Chains, polygons and line intervals of ``P`` intersected with ``y < 0``.

    ``P`` must already be snapped and must have vertices on both sides.
    """
    below = P[:, 1] < 0
    n = len(P)
    start = int(np.flatnonzero(~below)[0])
    P = np.roll(P, -start, axis=0)
    below = np.roll(below, -start)

    chains: list[np.ndarray] = []
    current: list[np.ndarray] | None = None
    for k in range(n):
        p, q = P[k], P[(k + 1) % n]
        bp, bq = below[k], below[(k + 1) % n]
        if not bp and bq:
            current = [_crossing(p, q), q]
        elif bp and bq:
            current.append(q)
        elif bp and not bq:
            current.append(_crossing(p, q))
            chains.append(np.array(current))
            current = None
    chains.sort(key=lambda c: (c[0, 0], c[-1, 0]))

    # crossing points paired along the line give the waterline intervals
    xs = []
    for ci, c in enumerate(chains):
        xs.append((c[0, 0], 0, ci))  # chain enters the water here
        xs.append((c[-1, 0], 1, ci))  # and leaves here
    order = sorted(range(len(xs)), key=lambda i: (xs[i][0], xs[i][1]))
    pos = {order[j]: j for j in range(len(order))}
    pairs = [(xs[order[2 * k]][0], xs[order[2 * k + 1]][0]) for k in range(len(order) // 2)]

    polygons = []
    used = [False] * len(chains)
    for ci in range(len(chains)):
        if used[ci]:
            continue
        pts: list[np.ndarray] = []
        cj = ci
        while not used[cj]:
            used[cj] = True
            pts.extend(chains[cj])
            partner = order[pos[2 * cj + 1] ^ 1]
            if xs[partner][1] != 0:
                raise GeometryError("inconsistent waterline crossings")
            cj = xs[partner][2]
        poly = np.array(pts)
        keep = np.ones(len(poly), dtype=bool)
        keep[1:] = np.any(np.abs(np.diff(poly, axis=0)) > 0, axis=1)
        if np.allclose(poly[0], poly[-1]):
            keep[-1] = False
        polygons.append(poly[keep])
    return chains, polygons, pairs


def split_polygon(P, level: float = 0.0) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Cut a counterclockwise polygon by the line ``y = level``.

    Returns the pieces below and above the line, all counterclockwise.
    """
    P = np.asarray(P, dtype=float)
    diam = polygon_diameter(P)
    Q = P - np.array([0.0, level])
    Q[np.abs(Q[:, 1]) < SNAP_RTOL * diam, 1] = 0.0
    shift = np.array([0.0, level])
    if not (Q[:, 1] < 0).any():
        return [], [P.copy()]
    if not (Q[:, 1] > 0).any():
        return [P.copy()], []
    _, lower, _ = _clip_lower(Q, diam)
    flipped = (Q * np.array([1.0, -1.0]))[::-1]
    _, upper, _ = _clip_lower(flipped, diam)
    upper = [(u * np.array([1.0, -1.0]))[::-1] for u in upper]
    return [p + shift for p in lower], [p + shift for p in upper]


def clip_immersed(body: BodySpec, fluid: FluidConfig | None = None) -> ImmersedGeometry:
    """Split the body at ``y = 0`` into immersed region, wetted contour and waterline.

    Vertices within ``1e-12 * diameter`` of the waterline are snapped onto it.

    Raises
    ------
    NotSurfacePiercing
        The body lies entirely above or below the free surface.
    DepthConflict
        Finite depth not exceeding the draft.
    """
    diam = body.diameter
    P = np.array(body.vertices, dtype=float)
    P[np.abs(P[:, 1]) < SNAP_RTOL * diam, 1] = 0.0
    if not (P[:, 1] < 0).any():
        raise NotSurfacePiercing("no part of the body lies below the free surface")
    if not (P[:, 1] > 0).any():
        raise NotSurfacePiercing("no part of the body lies above the free surface")
    chains, polygons, pairs = _clip_lower(P, diam)

    tol = SNAP_RTOL * diam
    D = tuple((float(l), float(r)) for l, r in pairs if r - l > tol)
    if not D:
        raise NotSurfacePiercing("the waterline interval is empty")
    x_left = min(l for l, _ in D)
    x_right = max(r for _, r in D)
    b0 = float(max(-poly[:, 1].min() for poly in polygons))
    imm = ImmersedGeometry(
        B=tuple(polygons),
        S=tuple(chains),
        D=D,
        a=0.5 * (x_right - x_left),
        b0=b0,
        waterline_intervals=len(D),
        x_left=x_left,
        x_right=x_right,
        diameter=diam,
    )
    if fluid is not None and fluid.finite_depth and not fluid.depth > b0:
        raise DepthConflict(f"depth {fluid.depth} must exceed the draft {b0}")
    return imm


def edge_normals(imm: ImmersedGeometry, com) -> dict[str, np.ndarray]:
    """Per-edge data on the wetted contour: endpoints, lengths, unit normals.

    The normal of an edge is constant; ``N3`` is returned at both endpoints
    because it varies linearly along the edge.
    """
    p, q = imm.s_edges()
    d = q - p
    length = np.linalg.norm(d, axis=1)
    ok = length > 0
    p, q, d, length = p[ok], q[ok], d[ok], length[ok]
    # body lies to the left of each chain
    n = np.column_stack([-d[:, 1], d[:, 0]]) / length[:, None]
    x0, y0 = com
    N3p = (p[:, 0] - x0) * n[:, 1] - (p[:, 1] - y0) * n[:, 0]
    N3q = (q[:, 0] - x0) * n[:, 1] - (q[:, 1] - y0) * n[:, 0]
    return {"start": p, "end": q, "length": length, "normal": n, "N3_start": N3p, "N3_end": N3q}


def generalized_normal(imm: ImmersedGeometry, com, s: float) -> GeneralizedNormal:
    """Normal ``(n_x, n_y)`` and moment arm ``N3`` at arclength ``s`` along the wetted contour.

    Arclength runs through the chains of ``imm.S`` in order.  Vertices,
    including the two waterline end points, raise ``CornerPoint``.
    """
    edges = edge_normals(imm, com)
    length = edges["length"]
    cum = np.concatenate([[0.0], np.cumsum(length)])
    total = cum[-1]
    if s < 0 or s > total:
        raise ValueError(f"arclength {s} outside [0, {total}]")
    # chain joints are vertices too
    if np.min(np.abs(cum - s)) <= 1e-12 * total:
        raise CornerPoint(f"arclength {s} is a vertex of the wetted contour")
    k = int(np.searchsorted(cum, s, side="right") - 1)
    t = (s - cum[k]) / length[k]
    point = edges["start"][k] + t * (edges["end"][k] - edges["start"][k])
    n = edges["normal"][k]
    x0, y0 = com
    N3 = (point[0] - x0) * n[1] - (point[1] - y0) * n[0]
    return GeneralizedNormal(float(n[0]), float(n[1]), float(N3), (float(point[0]), float(point[1])))


def regular_polygon(n: int, radius: float = 1.0, center=(0.0, 0.0), phase: float = 0.0) -> np.ndarray:
    """Counterclockwise regular n-gon; used to pre-sample circular sections."""
    t = phase + 2 * np.pi * np.arange(n) / n
    return np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)])


def rectangle(x0: float, x1: float, y0: float, y1: float) -> np.ndarray:
    return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], dtype=float)


def mirror_density_symmetric(body: BodySpec, tol: float = 1e-9) -> bool:
    """True if the density is an even function of ``x``."""
    if body.density is not None:
        return True
    comps = body.density_components()
    diam = body.diameter
    for poly, rho in comps:
        mirrored = strip_collinear(poly) * np.array([-1.0, 1.0])
        found = False
        for other, rho2 in comps:
            if abs(rho - rho2) > tol * max(abs(rho), 1.0):
                continue
            Q = strip_collinear(other)
            if len(Q) != len(mirrored):
                continue
            dist, _ = cKDTree(Q).query(mirrored)
            if np.all(dist <= tol * diam):
                found = True
                break
        if not found:
            return False
    return True


def sample_polyline(points: Sequence, spacing: float) -> np.ndarray:
    """Subdivide each segment of an open polyline into pieces no longer than ``spacing``."""
    pts = np.asarray(points, dtype=float)
    out = [pts[0]]
    for p, q in zip(pts[:-1], pts[1:]):
        m = max(1, int(math.ceil(np.linalg.norm(q - p) / spacing - 1e-9)))
        t = np.arange(1, m + 1) / m
        out.extend(p + t[:, None] * (q - p))
    return np.array(out)
