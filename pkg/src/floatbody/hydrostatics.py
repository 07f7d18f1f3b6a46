"""Equilibrium checks and the mass/inertia and restoring matrices of a floating section."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroMass
from .geometry import BodySpec, FluidConfig, ImmersedGeometry, center_of_mass, region_integral

EQUILIBRIUM_RTOL = 1e-9


@dataclass(frozen=True)
class HydroMatrices:
    """Scalar integrals defining ``E`` and ``K``; all already divided by ``rho0``.

    ``ISy`` is integrated over the immersed region ``B``.
    """

    IM: float
    IM2: float
    ID: float
    IDx: float
    IDxx: float
    ISy: float
    g: float
    rho0: float
    com: tuple[float, float]

    @property
    def E(self) -> np.ndarray:
        return np.diag([self.IM, self.IM, self.IM2])

    @property
    def K(self) -> np.ndarray:
        k33 = self.IDxx + self.ISy
        return np.array(
            [
                [0.0, 0.0, 0.0],
                [0.0, self.ID, self.IDx],
                [0.0, self.IDx, k33],
            ]
        )

    @property
    def Kprime(self) -> np.ndarray:
        return self.K[1:, 1:]


@dataclass(frozen=True)
class EquilibriumReport:
    archimedes_residual: float
    buoyancy_residual: float
    K_psd: bool
    Kprime_pd: bool
    Kprime_eigenvalues: tuple[float, float]
    tolerance: float = EQUILIBRIUM_RTOL

    @property
    def balanced(self) -> bool:
        return self.archimedes_residual <= self.tolerance and self.buoyancy_residual <= self.tolerance

    @property
    def ok(self) -> bool:
        """Archimedes, vertical alignment and stability all hold."""
        return self.balanced and self.K_psd and self.Kprime_pd


def assemble_matrices(
    body: BodySpec, imm: ImmersedGeometry, com=None, fluid: FluidConfig | None = None
) -> HydroMatrices:
    """Evaluate the six integrals entering ``E`` and ``K``.

    Parameters
    ----------
    body : BodySpec
        Whole cross-section with its density.
    imm : ImmersedGeometry
        Result of :func:`~floatbody.geometry.clip_immersed` for ``body``.
    com : pair of float, optional
        Centre of mass; computed from ``body`` when omitted.
    fluid : FluidConfig, optional
        Supplies ``g`` and ``rho0`` (defaults: 9.81, 1000).
    """
    fluid = fluid or FluidConfig()
    if com is None:
        com = center_of_mass(body)
    x0, y0 = float(com[0]), float(com[1])

    mass = inertia = 0.0
    for poly, rho in body.density_components():
        if rho == 0:
            continue
        mass += rho * region_integral(poly, "1")
        inertia += rho * region_integral(poly, "r2", origin=(x0, y0))
    if mass <= 0:
        raise ZeroMass("the density vanishes identically")

    ID = sum(r - l for l, r in imm.D)
    IDx = sum(0.5 * ((r - x0) ** 2 - (l - x0) ** 2) for l, r in imm.D)
    IDxx = sum(((r - x0) ** 3 - (l - x0) ** 3) / 3.0 for l, r in imm.D)
    ISy = sum(region_integral(p, "y", origin=(x0, y0)) for p in imm.B)
    return HydroMatrices(
        IM=mass / fluid.rho0,
        IM2=inertia / fluid.rho0,
        ID=float(ID),
        IDx=float(IDx),
        IDxx=float(IDxx),
        ISy=float(ISy),
        g=fluid.g,
        rho0=fluid.rho0,
        com=(x0, y0),
    )


def _psd_tol(M: np.ndarray) -> float:
    return 1e-12 * max(np.linalg.norm(M, 2), np.finfo(float).tiny)


def check_equilibrium(
    body: BodySpec,
    imm: ImmersedGeometry,
    com,
    matrices: HydroMatrices,
    tolerance: float = EQUILIBRIUM_RTOL,
) -> EquilibriumReport:
    """Report how far the given pose is from a stable equilibrium; never adjusts it."""
    area = imm.area
    x0 = float(com[0])
    archimedes = abs(matrices.IM - area) / area
    moment = sum(region_integral(p, "x", origin=(x0, 0.0)) for p in imm.B)
    buoyancy = abs(moment) / area / body.diameter

    K = matrices.K
    tol = _psd_tol(K)
    k_eigs = np.linalg.eigvalsh(K)
    kp_eigs = np.linalg.eigvalsh(matrices.Kprime)
    return EquilibriumReport(
        archimedes_residual=float(archimedes),
        buoyancy_residual=float(buoyancy),
        K_psd=bool(k_eigs.min() >= -tol),
        Kprime_pd=bool(kp_eigs.min() > tol),
        Kprime_eigenvalues=(float(kp_eigs[0]), float(kp_eigs[1])),
        tolerance=tolerance,
    )
