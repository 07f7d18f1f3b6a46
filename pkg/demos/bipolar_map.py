"""
The bipolar chart of the fluid domain
=====================================

With foci at the waterline ends (+-a, 0), the lower half plane becomes the
strip -pi < v < 0. The free surface maps to v = 0 and the waterline gap to
v = -pi, and each circular arc through both foci is a line v = sigma.
"""

import math

import numpy as np

from floatbody.bipolar import ArcSpec, arc_points, map_wetted_contour, root_vb, to_bipolar, to_physical, weight_function
from floatbody.fixtures import flared_bulb, flared_fluid, reference_rectangle
from floatbody.geometry import FluidConfig, clip_immersed

u, v = 0.7, -1.1
x, y = to_physical(u, v)
print(f"(u, v) = ({u}, {v}) -> (x, y) = ({x:.6f}, {y:.6f}) -> {to_bipolar(x, y)}")

# %%
# The deepest point of the body sets v_b, the arc that just touches the keel.
for b0 in (0.1, 1.0, 10.0):
    print(f"b0 = {b0:5.1f}: v_b = {root_vb(1.0, b0):+.6f}  closed form {-2 * math.atan(1 / b0):+.6f}")

# %%
# Every point of an arc has the same v.
pts = arc_points(ArcSpec(-2.0, "right"), 7)
print("v along the arc v = -2:", np.round(to_bipolar(pts[:, 0], pts[:, 1])[1], 14))

# %%
# The weight function entering the energy identity is positive and tends
# to 1/3 at the centre line.
print("w(0), w(1), w(5):", weight_function(np.array([0.0, 1.0, 5.0])))

# %%
# A decreasing image v(u) of the wetted hull means every arc enters the
# water. The pontoon fails the test, and the flared bulb passes it.
for name, body, fluid in [
    ("pontoon", reference_rectangle(), FluidConfig(depth=2.0)),
    ("flared bulb", flared_bulb(), flared_fluid()),
]:
    mc = map_wetted_contour(clip_immersed(body, fluid), fluid)
    print(f"{name:12s} decreasing={mc.decreasing:6s} alpha={mc.alpha:.4f} v_b={mc.vb:+.4f}")
