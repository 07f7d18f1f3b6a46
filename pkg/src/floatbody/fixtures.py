"""Reference bodies used by the tests, the demos and the data directory."""
from __future__ import annotations

import numpy as np

from .bipolar import to_physical
from .geometry import (
    BodySpec,
    DensityRegion,
    FluidConfig,
    clip_immersed,
    rectangle,
    shoelace_area,
    split_polygon,
)


def reference_rectangle(rho0: float = 1000.0) -> BodySpec:
    """``[-2, 2] x [-0.5, 0.5]`` at half the water density: floats at draft 0.5."""
    return BodySpec.uniform(rectangle(-2.0, 2.0, -0.5, 0.5), 0.5 * rho0)


def half_density_square(rho0: float = 1000.0) -> BodySpec:
    """Unit half-width square at half density; it floats but rolls over."""
    return BodySpec.uniform(rectangle(-1.0, 1.0, -1.0, 1.0), 0.5 * rho0)


def bulb_outline(
    a: float = 1.0,
    alpha: float = 0.5,
    vb: float = -0.35,
    ell: float = 1.0,
    n: int = 200,
    umax: float = 7.0,
    deck: float = 0.3,
) -> np.ndarray:
    """Symmetric hull whose wetted contour is, in bipolar coordinates, the graph

        v(u) = -alpha + (vb + alpha) exp(-|u| / ell),

    strictly decreasing on ``u > 0``.  The hull leaves the waterline at the
    angle ``alpha`` and bulges far outside every cone through ``(+-a, 0)``.
    """
    u = np.linspace(0.0, umax, n)
    v = -alpha + (vb + alpha) * np.exp(-u / ell)
    x, y = to_physical(u, v, a)
    right = np.vstack([np.column_stack([x, y]), [[a, 0.0]]])
    # lower runs (-a, 0) -> keel -> (a, 0); close over a flat deck
    lower = np.vstack([right[::-1][:-1] * np.array([-1.0, 1.0]), right])
    return np.vstack([lower, [[a, deck], [-a, deck]]])


def flared_bulb(rho0: float = 1000.0, split: float = -3.0, rho_upper: float = 300.0, **shape) -> BodySpec:
    """Ballasted bulb hull in stable equilibrium at the waterline ``y = 0``.

    The part below ``y = split`` is heavy ballast whose density is fixed by
    Archimedes' law; the part above has density ``rho_upper``.
    """
    P = bulb_outline(**shape)
    displaced = clip_immersed(BodySpec.uniform(P, 1.0)).area
    lower, upper = split_polygon(P, split)
    area_lo = sum(shoelace_area(p) for p in lower)
    area_up = sum(shoelace_area(p) for p in upper)
    rho_lower = (rho0 * displaced - rho_upper * area_up) / area_lo
    regions = [DensityRegion(p, rho_lower) for p in lower] + [DensityRegion(p, rho_upper) for p in upper]
    return BodySpec(P, regions=tuple(regions))


FLARED_DEPTH = 8.0


def flared_fluid() -> FluidConfig:
    return FluidConfig(depth=FLARED_DEPTH)
