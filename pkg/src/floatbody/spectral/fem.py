"""Piecewise-linear finite element forms of the coupled problem."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..geometry import FluidConfig
from ..hydrostatics import HydroMatrices
from .mesh import Mesh


@dataclass(frozen=True)
class DiscreteSystem:
    """``A`` stiffness, ``MF`` free-surface mass, ``C`` wetted-contour coupling.

    ``C[i, J]`` is the integral over the wetted contour of the hat function
    of node ``i`` times the ``J``-th component of the generalized normal.
    ``E`` and ``K`` are ``None`` for an empty tank.
    """

    mesh: Mesh
    A: sp.csr_matrix
    MF: sp.csr_matrix
    C: np.ndarray
    E: np.ndarray | None
    K: np.ndarray | None
    g: float
    com: tuple[float, float]

    @property
    def has_body(self) -> bool:
        return self.E is not None

    @property
    def n(self) -> int:
        return self.mesh.n_nodes


def stiffness(nodes: np.ndarray, tris: np.ndarray) -> sp.csr_matrix:
    P = nodes[tris]
    # edge vectors opposite each vertex
    e0 = P[:, 2] - P[:, 1]
    e1 = P[:, 0] - P[:, 2]
    e2 = P[:, 1] - P[:, 0]
    E = np.stack([e0, e1, e2], axis=1)
    area = 0.5 * (e2[:, 0] * (-e1[:, 1]) - e2[:, 1] * (-e1[:, 0]))
    local = np.einsum("tik,tjk->tij", E, E) / (4.0 * area)[:, None, None]
    rows = np.repeat(tris, 3, axis=1).ravel()
    cols = np.tile(tris, (1, 3)).ravel()
    n = len(nodes)
    return sp.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()


def edge_mass(nodes: np.ndarray, edges: np.ndarray) -> sp.csr_matrix:
    n = len(nodes)
    if len(edges) == 0:
        return sp.csr_matrix((n, n))
    ell = np.linalg.norm(nodes[edges[:, 1]] - nodes[edges[:, 0]], axis=1)
    local = ell[:, None, None] / 6.0 * np.array([[2.0, 1.0], [1.0, 2.0]])
    rows = np.repeat(edges, 2, axis=1).ravel()
    cols = np.tile(edges, (1, 2)).ravel()
    return sp.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()


def _owner_vertex(mesh: Mesh, edges: np.ndarray) -> np.ndarray:
    """Third vertex of the triangle adjacent to each boundary edge."""
    lookup = {}
    for t in mesh.triangles:
        for k in range(3):
            a, b = t[k], t[(k + 1) % 3]
            lookup[(min(a, b), max(a, b))] = t[(k + 2) % 3]
    return np.array([lookup[(min(a, b), max(a, b))] for a, b in edges], dtype=np.int64)


def s_edge_normals(mesh: Mesh) -> np.ndarray:
    """Unit normals of wetted-contour edges pointing out of the water, into the body."""
    edges = mesh.boundary["S"]
    if len(edges) == 0:
        return np.zeros((0, 2))
    p, q = mesh.nodes[edges[:, 0]], mesh.nodes[edges[:, 1]]
    d = q - p
    n = np.column_stack([d[:, 1], -d[:, 0]]) / np.linalg.norm(d, axis=1)[:, None]
    r = mesh.nodes[_owner_vertex(mesh, edges)] - p
    flip = np.einsum("ij,ij->i", n, r) > 0
    n[flip] *= -1.0
    return n


def coupling(mesh: Mesh, com) -> np.ndarray:
    """Exact integrals of hat functions against ``(n_x, n_y, N3)`` on the wetted contour."""
    nodes = mesh.nodes
    edges = mesh.boundary["S"]
    C = np.zeros((len(nodes), 3))
    if len(edges) == 0:
        return C
    n = s_edge_normals(mesh)
    i, j = edges[:, 0], edges[:, 1]
    p, q = nodes[i], nodes[j]
    ell = np.linalg.norm(q - p, axis=1)
    x0, y0 = com
    N3p = (p[:, 0] - x0) * n[:, 1] - (p[:, 1] - y0) * n[:, 0]
    N3q = (q[:, 0] - x0) * n[:, 1] - (q[:, 1] - y0) * n[:, 0]
    for J, (fi, fj) in enumerate([(n[:, 0], n[:, 0]), (n[:, 1], n[:, 1]), (N3p, N3q)]):
        # linear f on the edge: int phi_i f = l (2 f_i + f_j) / 6
        np.add.at(C[:, J], i, ell * (2.0 * fi + fj) / 6.0)
        np.add.at(C[:, J], j, ell * (fi + 2.0 * fj) / 6.0)
    return C


def assemble(mesh: Mesh, fluid: FluidConfig, matrices: HydroMatrices | None = None) -> DiscreteSystem:
    """Assemble ``A``, ``MF`` and ``C``; walls and bottom carry natural no-flow conditions."""
    A = stiffness(mesh.nodes, mesh.triangles)
    MF = edge_mass(mesh.nodes, mesh.boundary["F"])
    if matrices is None:
        com = (0.0, 0.0)
        C = np.zeros((mesh.n_nodes, 3))
        E = K = None
    else:
        com = matrices.com
        C = coupling(mesh, com)
        E, K = matrices.E, matrices.K
    return DiscreteSystem(mesh=mesh, A=A, MF=MF, C=C, E=E, K=K, g=fluid.g, com=com)
