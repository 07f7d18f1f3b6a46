"""Sealed-tank finite element engine for the coupled fluid-body spectral problem."""
from .dispersion import solve_dispersion
from .fem import DiscreteSystem, assemble, coupling, edge_mass, s_edge_normals, stiffness
from .mesh import Mesh, TankConfig, build_mesh
from .solver import (
    CoupledMode,
    EnergySign,
    SolveInfo,
    energy_sign_check,
    equipartition_residual,
    pencil_residual,
    solve_modes,
    transposition_identity_residual,
)
from .vm import VMResult, vm_identity_residual

__all__ = [
    "CoupledMode",
    "DiscreteSystem",
    "EnergySign",
    "Mesh",
    "SolveInfo",
    "TankConfig",
    "VMResult",
    "assemble",
    "build_mesh",
    "coupling",
    "edge_mass",
    "energy_sign_check",
    "equipartition_residual",
    "pencil_residual",
    "s_edge_normals",
    "solve_dispersion",
    "solve_modes",
    "stiffness",
    "transposition_identity_residual",
    "vm_identity_residual",
]
