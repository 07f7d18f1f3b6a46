"""Triangulation of the sealed tank ``|x| < L, -h < y < 0`` minus the body."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import triangle

from ..bipolar import right_half
from ..errors import DepthConflict, GeometryError, MeshFailure
from ..geometry import ImmersedGeometry, is_mirror_symmetric, sample_polyline

TAGS = ("F", "S", "H", "walls")
_MARK = {"F": 1, "S": 2, "H": 3, "walls": 4, "axis": 5}


@dataclass(frozen=True)
class TankConfig:
    """Sealed rectangular tank with no-flow walls at ``x = +-half_length``."""

    half_length: float
    depth: float
    mesh_size: float = 0.1

    def __post_init__(self):
        for name in ("half_length", "depth", "mesh_size"):
            if not getattr(self, name) > 0:
                raise GeometryError(f"{name} must be positive")


@dataclass(frozen=True)
class Mesh:
    """Conforming P1 triangulation.

    ``boundary[tag]`` lists the boundary edges (node index pairs) carrying
    that tag; ``mirror[i]`` is the node reflected from node ``i`` under
    ``x -> -x``, or ``None`` when the mesh is not symmetric.
    """

    nodes: np.ndarray
    triangles: np.ndarray
    boundary: dict
    mirror: np.ndarray | None
    mesh_size: float

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    def boundary_nodes(self, tag: str) -> np.ndarray:
        e = self.boundary.get(tag)
        if e is None or len(e) == 0:
            return np.zeros(0, dtype=int)
        return np.unique(e)


def _check_fit(imm: ImmersedGeometry, tank: TankConfig) -> None:
    xs = imm.vertices[:, 0]
    if not (tank.depth > imm.b0):
        raise DepthConflict(f"tank depth {tank.depth} must exceed the draft {imm.b0}")
    if not (tank.half_length > max(abs(xs.min()), abs(xs.max()))):
        raise MeshFailure("the body does not fit between the tank walls")


def _pslg(pieces, spacing):
    """Closed boundary from consecutive ``(points, tag)`` pieces."""
    verts, marks = [], []
    for pts, tag in pieces:
        s = sample_polyline(pts, spacing)
        verts.append(s[:-1])
        marks.extend([_MARK[tag]] * (len(s) - 1))
    V = np.vstack(verts)
    n = len(V)
    seg = np.column_stack([np.arange(n), (np.arange(n) + 1) % n])
    return V, seg, np.array(marks)


def _triangulate(V, seg, marks, h):
    area = math.sqrt(3.0) / 4.0 * h * h
    try:
        out = triangle.triangulate(
            {"vertices": V, "segments": seg, "segment_markers": marks}, f"pq30a{area:.12g}YQ"
        )
    except Exception as exc:  # the wrapper raises bare RuntimeError/KeyError
        raise MeshFailure(f"triangulation failed: {exc}") from exc
    if "triangles" not in out or len(out["triangles"]) == 0:
        raise MeshFailure("triangulation produced no elements")
    nodes = np.asarray(out["vertices"], dtype=float)
    if len(nodes) < len(V) or not np.array_equal(nodes[: len(V)], V):
        raise MeshFailure("the mesher moved boundary vertices")
    return nodes, np.asarray(out["triangles"], dtype=np.int64)


def _tagged(seg, marks):
    return {t: seg[marks == _MARK[t]] for t in TAGS}


def _structured(tank: TankConfig, h: float) -> Mesh:
    nx = max(1, math.ceil(tank.half_length / h - 1e-9))
    ny = max(1, math.ceil(tank.depth / h - 1e-9))
    i = np.arange(2 * nx + 1)
    j = np.arange(ny + 1)
    x = tank.half_length * (i - nx) / nx
    y = -tank.depth + tank.depth * j / ny
    X, Y = np.meshgrid(x, y, indexing="ij")
    nodes = np.column_stack([X.ravel(), Y.ravel()])
    idx = lambda a, b: a * (ny + 1) + b  # noqa: E731
    tris = []
    for a in range(2 * nx):
        for b in range(ny):
            n00, n10, n01, n11 = idx(a, b), idx(a + 1, b), idx(a, b + 1), idx(a + 1, b + 1)
            if a >= nx:
                tris += [(n00, n10, n11), (n00, n11, n01)]
            else:
                tris += [(n00, n10, n01), (n10, n11, n01)]
    top = np.array([(idx(a, ny), idx(a + 1, ny)) for a in range(2 * nx)])
    bottom = np.array([(idx(a, 0), idx(a + 1, 0)) for a in range(2 * nx)])
    walls = np.array(
        [(idx(0, b), idx(0, b + 1)) for b in range(ny)] + [(idx(2 * nx, b), idx(2 * nx, b + 1)) for b in range(ny)]
    )
    mirror = np.array([idx(2 * nx - a, b) for a in range(2 * nx + 1) for b in range(ny + 1)])
    boundary = {"F": top, "S": np.zeros((0, 2), dtype=int), "H": bottom, "walls": walls}
    return Mesh(nodes, np.array(tris, dtype=np.int64), boundary, mirror, h)


def _general(imm: ImmersedGeometry, tank: TankConfig, h: float) -> Mesh:
    L, d = tank.half_length, tank.depth
    pieces = [(np.array([[-L, -d], [L, -d]]), "H"), (np.array([[L, -d], [L, 0.0]]), "walls")]
    x = L
    for chain in sorted(imm.S, key=lambda c: -c[-1, 0]):
        pieces.append((np.array([[x, 0.0], chain[-1]]), "F"))
        pieces.append((chain[::-1], "S"))
        x = chain[0, 0]
    pieces.append((np.array([[x, 0.0], [-L, 0.0]]), "F"))
    pieces.append((np.array([[-L, 0.0], [-L, -d]]), "walls"))
    V, seg, marks = _pslg(pieces, h)
    nodes, tris = _triangulate(V, seg, marks, h)
    return Mesh(nodes, tris, _tagged(seg, marks), None, h)


def _mirrored(imm: ImmersedGeometry, tank: TankConfig, h: float) -> Mesh:
    L, d = tank.half_length, tank.depth
    half = right_half(imm.S[0])
    keel = half[0]
    pieces = [
        (np.array([[0.0, -d], [L, -d]]), "H"),
        (np.array([[L, -d], [L, 0.0]]), "walls"),
        (np.array([[L, 0.0], half[-1]]), "F"),
        (half[::-1], "S"),
        (np.array([keel, [0.0, -d]]), "axis"),
    ]
    V, seg, marks = _pslg(pieces, h)
    R, T = _triangulate(V, seg, marks, h)
    on_axis = R[:, 0] == 0.0
    off = np.flatnonzero(~on_axis)
    left = np.arange(len(R))
    left[off] = len(R) + np.arange(len(off))
    nodes = np.vstack([R, R[off] * np.array([-1.0, 1.0])])
    tris = np.vstack([T, left[T][:, ::-1]])
    mirror = np.empty(len(nodes), dtype=np.int64)
    mirror[: len(R)] = left
    mirror[left[off]] = off
    boundary = {}
    for tag, e in _tagged(seg, marks).items():
        boundary[tag] = np.vstack([e, left[e][:, ::-1]]) if len(e) else e
    return Mesh(nodes, tris, boundary, mirror, h)


def build_mesh(imm: ImmersedGeometry | None, tank: TankConfig, target_h: float | None = None) -> Mesh:
    """Mesh the water region of the tank.

    The empty tank gets a structured, mirror-symmetric grid.  A body that is
    symmetric about ``x = 0`` with one wetted contour is meshed on the right
    half and reflected, so the mirror map is exact; any other body is meshed
    in one piece with ``mirror=None``.

    Raises
    ------
    DepthConflict
        The body reaches the tank bottom.
    MeshFailure
        The body touches the walls or the mesher fails.
    """
    h = tank.mesh_size if target_h is None else target_h
    if not h > 0:
        raise MeshFailure("mesh size must be positive")
    if imm is None:
        return _structured(tank, h)
    _check_fit(imm, tank)
    symmetric = (
        len(imm.S) == 1
        and abs(imm.center) <= 1e-12 * imm.diameter
        and is_mirror_symmetric(np.vstack(imm.B), 1e-9)
    )
    if symmetric:
        try:
            return _mirrored(imm, tank, h)
        except GeometryError:
            pass
    return _general(imm, tank, h)
