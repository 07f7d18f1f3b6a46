"""
Hydrostatic stiffness and the frequency bound
=============================================

A wall-sided pontoon floating at half draft, of width 4 and height 1, is
the simplest body with a nontrivial stiffness matrix. Here we assemble its
inertia and stiffness, test the equilibrium and compute the frequency above
which no trapped mode can exist.
"""

import math

import numpy as np

from floatbody.criteria import frequency_bound, pencil_witness
from floatbody.fixtures import half_density_square, reference_rectangle
from floatbody.geometry import center_of_mass, clip_immersed
from floatbody.hydrostatics import assemble_matrices, check_equilibrium

body = reference_rectangle()
imm = clip_immersed(body)
com = center_of_mass(body)
m = assemble_matrices(body, imm, com)
eq = check_equilibrium(body, imm, com, m)

np.set_printoptions(precision=6, suppress=True)
print("E =\n", m.E)
print("K =\n", m.K)
print("balanced:", eq.balanced, " K' eigenvalues:", eq.Kprime_eigenvalues)

# %%
# The bound comes from the pencil K - (lambda/g) E restricted to heave and
# roll. Its largest root fixes omega*.
b = frequency_bound(m)
print("lambda roots:", b.lambdas)
print(f"omega* = {b.omega_star:.12f}   (sqrt(2g) = {math.sqrt(2 * m.g):.12f})")

# %%
# Below lambda_max the pencil is indefinite, and the witness vector shows
# which rigid motion makes the quadratic form negative.
for frac in (1.0, 0.99):
    lo, chi = pencil_witness(m, frac * b.lambda_max)
    print(f"{frac:4.2f} lambda_max: min eigenvalue {lo:+.3e}, witness {chi}")

# %%
# A square of the same density is upright-unstable. Its roll restoring
# moment is negative, so no bound is claimed.
sq = half_density_square()
sq_imm = clip_immersed(sq)
sq_com = center_of_mass(sq)
sq_eq = check_equilibrium(sq, sq_imm, sq_com, assemble_matrices(sq, sq_imm, sq_com))
print("square K' eigenvalues:", sq_eq.Kprime_eigenvalues, " stable:", sq_eq.Kprime_pd)
