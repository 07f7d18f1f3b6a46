"""
Coupled modes of a body in a sealed tank
========================================

Inside a closed tank every mode is trapped, so the spectrum is discrete.
This makes the tank a clean test bed: an empty tank has known sloshing
frequencies, and a floating body turns the Steklov problem into a
quadratic pencil in omega.
"""

import math

from floatbody.fixtures import reference_rectangle
from floatbody.geometry import FluidConfig, clip_immersed
from floatbody.hydrostatics import assemble_matrices
from floatbody.spectral import TankConfig, assemble, build_mesh, solve_modes, transposition_identity_residual

# %%
# Empty tank of half-length pi and depth 1: the even modes are n tanh n.
mesh = build_mesh(None, TankConfig(math.pi, 1.0, 0.05))
modes, _ = solve_modes(assemble(mesh, FluidConfig()), 6)
for md in modes:
    print(f"nu = {md.nu:.5f}  ({md.parity})")
print("exact even:", [round(n * math.tanh(n), 5) for n in (1, 2, 3)])

# %%
# Now float the pontoon in a tank of half-length 6 and depth 2.
body = reference_rectangle()
fluid = FluidConfig(depth=2.0)
imm = clip_immersed(body, fluid)
system = assemble(build_mesh(imm, TankConfig(6.0, 2.0, 0.11)), fluid, assemble_matrices(body, imm, fluid=fluid))
modes, info = solve_modes(system, 8)
print(f"{info.unknowns} unknowns, reduced to {info.reduced_size}; complex rejected: {info.complex_rejected}")
for md in modes:
    heave, roll = md.chi[1], md.chi[2]
    print(
        f"omega = {md.omega:.5f}  {md.parity:4s}  heave {heave:+.2e}  roll {roll:+.2e}"
        f"  residuals {md.residual:.1e} / {transposition_identity_residual(md, system):.1e}"
    )
