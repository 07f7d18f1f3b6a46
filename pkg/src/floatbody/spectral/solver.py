"""Quadratic eigenvalue problem of the coupled fluid-body system and its energy identities.

For a trial pair ``(psi, xi)`` the discrete equations are

    A phi - (omega**2 / g) MF phi - omega C chi = 0,
    omega**2 E chi + omega C^T phi - g K chi = 0,

a gyroscopic pencil ``omega**2 M2 + omega M1 + M0`` with symmetric ``M2``,
``M0`` and skew ``M1``.  Nodes off the free surface and the wetted contour
enter only through ``A`` and are eliminated exactly before a dense
companion linearization is solved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..criteria import FrequencyBound, field_parity
from ..errors import SolverFailure
from .fem import DiscreteSystem

REAL_RTOL = 1e-8


@dataclass
class CoupledMode:
    """Standing mode normalized to unit energy ``phi^T A phi + omega**2 chi^T E chi = 1``."""

    omega: float
    phi: np.ndarray
    chi: np.ndarray
    g: float
    parity: str = "none"
    residual: float = math.nan

    @property
    def nu(self) -> float:
        return self.omega**2 / self.g


@dataclass
class SolveInfo:
    unknowns: int
    reduced_size: int
    candidates: int
    complex_rejected: int
    max_imag_ratio: float
    condition: float
    notes: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class EnergySign:
    s: float
    d: float
    mismatch: float
    above_bound: bool
    contradiction: bool


def _split(sys: DiscreteSystem):
    mesh = sys.mesh
    active = np.union1d(mesh.boundary_nodes("F"), mesh.boundary_nodes("S") if sys.has_body else [])
    active = active.astype(np.int64)
    mask = np.zeros(sys.n, dtype=bool)
    mask[active] = True
    inner = np.flatnonzero(~mask)
    return active, inner


class _Condenser:
    """Exact elimination of nodes where only the Laplace equation holds."""

    def __init__(self, A: sp.csr_matrix, active: np.ndarray, inner: np.ndarray):
        self.active, self.inner = active, inner
        self.A_ia = A[inner][:, active].tocsc()
        if len(inner):
            self.lu = spla.splu(A[inner][:, inner].tocsc())
            X = self.lu.solve(self.A_ia.toarray())
            self.S = A[active][:, active].toarray() - self.A_ia.T @ X
        else:
            self.lu = None
            self.S = A[active][:, active].toarray()
        self.S = 0.5 * (self.S + self.S.T)

    def extend(self, phi_active: np.ndarray, n: int) -> np.ndarray:
        phi = np.zeros(n)
        phi[self.active] = phi_active
        if self.lu is not None:
            phi[self.inner] = -self.lu.solve(self.A_ia @ phi_active)
        return phi


def _normalize(mode_phi, chi, omega, sys: DiscreteSystem):
    energy = float(mode_phi @ (sys.A @ mode_phi))
    if sys.has_body:
        energy += omega**2 * float(chi @ sys.E @ chi)
    scale = 1.0 / math.sqrt(energy)
    phi, chi = mode_phi * scale, chi * scale
    k = int(np.argmax(np.abs(phi)))
    if phi[k] < 0:
        phi, chi = -phi, -chi
    return phi, chi


def _fixed_modes(sys: DiscreteSystem, k: int, active, inner):
    cond = _Condenser(sys.A, active, inner)
    M = sys.MF[active][:, active].toarray()
    try:
        nu, V = la.eigh(cond.S, M)
    except la.LinAlgError as exc:
        raise SolverFailure(f"symmetric eigensolve failed: {exc}") from exc
    scale = max(abs(nu).max(), 1.0)
    keep = np.flatnonzero(nu > 1e-10 * scale)
    info = SolveInfo(sys.n, len(active), len(nu), 0, 0.0, float(np.linalg.cond(cond.S + M)))
    modes = []
    for idx in keep[:k]:
        phi = cond.extend(V[:, idx], sys.n)
        omega = math.sqrt(nu[idx] * sys.g)
        phi, chi = _normalize(phi, np.zeros(3), omega, sys)
        modes.append(CoupledMode(omega, phi, chi, sys.g))
    return modes, info


def _coupled_modes(sys: DiscreteSystem, k: int, active, inner):
    cond = _Condenser(sys.A, active, inner)
    g = sys.g
    na = len(active)
    m = na + 3
    C = sys.C[active]
    MF = sys.MF[active][:, active].toarray()
    M2 = np.zeros((m, m))
    M2[:na, :na] = -MF / g
    M2[na:, na:] = sys.E
    M1 = np.zeros((m, m))
    M1[:na, na:] = -C
    M1[na:, :na] = C.T
    M0 = np.zeros((m, m))
    M0[:na, :na] = cond.S
    M0[na:, na:] = -g * sys.K

    # frequencies scaled by sqrt(g / l) so the three blocks are commensurate
    ell = max(np.ptp(sys.mesh.nodes[:, 0]), np.ptp(sys.mesh.nodes[:, 1]))
    w0 = math.sqrt(g / ell)
    I = np.eye(m)
    Z = np.zeros((m, m))
    L0 = np.block([[Z, I], [-M0, -w0 * M1]])
    L1 = np.block([[I, Z], [Z, w0 * w0 * M2]])
    try:
        ab, Vr = la.eig(L0, L1, homogeneous_eigvals=True)
    except la.LinAlgError as exc:
        raise SolverFailure(f"generalized eigensolve failed: {exc}") from exc
    alpha, beta = ab
    finite = np.abs(beta) > 1e-13 * np.abs(alpha)
    omega = np.full(alpha.shape, np.inf, dtype=complex)
    omega[finite] = alpha[finite] / beta[finite] * w0

    floor = 1e-6 * w0
    cand = np.flatnonzero(finite & (omega.real > floor))
    imag_ratio = np.abs(omega.imag[cand]) / np.abs(omega[cand])
    real = cand[imag_ratio < REAL_RTOL]
    info = SolveInfo(
        unknowns=sys.n + 3,
        reduced_size=m,
        candidates=len(cand),
        complex_rejected=int(len(cand) - len(real)),
        max_imag_ratio=float(imag_ratio.max()) if len(cand) else 0.0,
        condition=float(np.linalg.cond(cond.S + MF)),
    )
    order = real[np.argsort(omega.real[real])]
    modes = []
    for idx in order[:k]:
        w = float(omega[idx].real)
        z = Vr[:, idx]
        x = z[:m] if abs(alpha[idx]) <= abs(beta[idx]) else z[m:] / (alpha[idx] / beta[idx])
        j = int(np.argmax(np.abs(x)))
        x = (x * np.conj(x[j]) / abs(x[j])).real
        x = _refine(x, w, M2, M1, M0)
        phi = cond.extend(x[:na], sys.n)
        phi, chi = _normalize(phi, x[na:], w, sys)
        modes.append(CoupledMode(w, phi, chi, g))
    return modes, info


def _refine(x, w, M2, M1, M0):
    """One step of inverse iteration at the converged frequency."""
    Q = w * w * M2 + w * M1 + M0
    try:
        y = la.lstsq(Q + 1e-14 * np.linalg.norm(Q, 1) * np.eye(len(x)), x)[0]
    except la.LinAlgError:
        return x
    y /= np.linalg.norm(y)
    return y if np.linalg.norm(Q @ y) <= np.linalg.norm(Q @ x) / np.linalg.norm(x) else x / np.linalg.norm(x)


def solve_modes(sys: DiscreteSystem, k: int = 6, fixed_body: bool = False):
    """Lowest ``k`` real standing modes with ``omega > 0``, sorted ascending.

    With ``fixed_body=True`` (or an empty tank) the body is held at rest,
    ``chi = 0``, and the problem reduces to a symmetric sloshing pencil.

    Returns
    -------
    modes : list of CoupledMode
    info : SolveInfo
        Sizes, the number of complex eigenvalues rejected and a condition estimate.
    """
    if k < 1:
        raise ValueError("k must be positive")
    active, inner = _split(sys)
    if not sys.has_body or fixed_body:
        active_f = sys.mesh.boundary_nodes("F")
        mask = np.ones(sys.n, dtype=bool)
        mask[active_f] = False
        modes, info = _fixed_modes(sys, k, active_f, np.flatnonzero(mask))
    else:
        modes, info = _coupled_modes(sys, k, active, inner)
    if not modes:
        raise SolverFailure("no real positive eigenvalues retained")
    mirror = sys.mesh.mirror
    for md in modes:
        if mirror is not None:
            md.parity = field_parity(md.phi, mirror)
        md.residual = equipartition_residual(md, sys, fixed_body)
    return modes, info


def pencil_residual(mode: CoupledMode, sys: DiscreteSystem) -> float:
    """Relative residual of both discrete equations at the mode."""
    w, g = mode.omega, sys.g
    r1 = sys.A @ mode.phi - (w * w / g) * (sys.MF @ mode.phi)
    scale = np.linalg.norm(sys.A @ mode.phi) + (w * w / g) * np.linalg.norm(sys.MF @ mode.phi)
    if sys.has_body:
        r1 = r1 - w * (sys.C @ mode.chi)
        r2 = w * w * (sys.E @ mode.chi) + w * (sys.C.T @ mode.phi) - g * (sys.K @ mode.chi)
        scale += np.linalg.norm(w * w * sys.E @ mode.chi) + np.linalg.norm(g * sys.K @ mode.chi)
        r = np.concatenate([r1, r2])
    else:
        r = r1
    return float(np.linalg.norm(r) / scale)


def _energies(mode: CoupledMode, sys: DiscreteSystem):
    phi, chi, w = mode.phi, mode.chi, mode.omega
    kin_f = float(phi @ (sys.A @ phi))
    pot_f = mode.nu * float(phi @ (sys.MF @ phi))
    if sys.has_body:
        kin_b = w * w * float(chi @ sys.E @ chi)
        pot_b = sys.g * float(chi @ sys.K @ chi)
    else:
        kin_b = pot_b = 0.0
    return kin_f, kin_b, pot_f, pot_b


def equipartition_residual(mode: CoupledMode, sys: DiscreteSystem, fixed_body: bool = False) -> float:
    """``|(phi A phi + w^2 chi E chi) - (nu phi MF phi + g chi K chi)|`` over the sum of both sides."""
    kin_f, kin_b, pot_f, pot_b = _energies(mode, sys)
    if fixed_body:
        kin_b = pot_b = 0.0
    lhs, rhs = kin_f + kin_b, pot_f + pot_b
    return abs(lhs - rhs) / (lhs + rhs)


def transposition_identity_residual(mode: CoupledMode, sys: DiscreteSystem) -> float:
    """Residual of ``w^2 chi E chi - g chi K chi + int_S phi dphi/dn`` with the flux ``w N^T chi``.

    Scaled by the mode energy; zero for an empty tank or ``chi = 0``.
    """
    if not sys.has_body:
        return 0.0
    phi, chi, w = mode.phi, mode.chi, mode.omega
    flux = w * float(phi @ (sys.C @ chi))
    val = w * w * float(chi @ sys.E @ chi) - sys.g * float(chi @ sys.K @ chi) + flux
    kin_f, kin_b, _, _ = _energies(mode, sys)
    return abs(val) / (kin_f + kin_b)


def energy_sign_check(mode: CoupledMode, sys: DiscreteSystem, bound: FrequencyBound | None = None) -> EnergySign:
    """Compare ``s = chi^T (w^2 E - g K) chi`` with ``d = nu int_F phi^2 - int_W |grad phi|^2``.

    The two agree for every discrete mode.  A mode above the bound with
    ``chi != 0`` and ``s < 0`` would contradict positive semi-definiteness.
    """
    kin_f, kin_b, pot_f, pot_b = _energies(mode, sys)
    s = kin_b - pot_b
    d = pot_f - kin_f
    mismatch = abs(s - d) / (kin_f + kin_b)
    above = bound is not None and mode.omega**2 >= bound.lambda_max
    chi_norm = float(np.linalg.norm(mode.chi))
    contradiction = bool(above and chi_norm > 0 and s < -1e-10 * (kin_f + kin_b))
    return EnergySign(s=s, d=d, mismatch=mismatch, above_bound=above, contradiction=contradiction)
