"""
Which bodies are guaranteed not to trap waves
=============================================

The report applies the geometric tests in turn (cone, vertical strip,
monotone bipolar image) and states a claim only when the equilibrium is
stable.
"""

from floatbody.criteria import nontrapping_report
from floatbody.fixtures import flared_bulb, flared_fluid, half_density_square, reference_rectangle
from floatbody.geometry import BodySpec, FluidConfig

# a V hull, wider than it is deep; density 600 floats it with the deck edge at the waterline
vee = BodySpec.uniform([(-2.0, 0.5), (-2.0, 0.0), (0.0, -1.5), (2.0, 0.0), (2.0, 0.5)], 600.0)

cases = [
    ("pontoon", reference_rectangle(), FluidConfig()),
    ("square", half_density_square(), FluidConfig()),
    ("vee", vee, FluidConfig()),
    ("flared bulb", flared_bulb(), flared_fluid()),
]
for name, body, fluid in cases:
    r = nontrapping_report(body, fluid)
    print(f"{name:12s} SU={r.simon_ursell.status:9s} strip={r.john_ii.status:9s} -> {r.applicable_proposition:13s} {r.claim}")
