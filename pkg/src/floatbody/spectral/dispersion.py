"""Finite-depth dispersion relation ``k tanh(k h) = nu``."""
from __future__ import annotations

import math


def solve_dispersion(nu: float, h: float, rtol: float = 1e-15, maxiter: int = 100) -> float:
    """Unique positive root ``k0`` of ``k tanh(k h) = nu``.

    Newton's method safeguarded by the bracket
    ``max(nu, sqrt(nu/h)) <= k0 <= nu / tanh(nu h)``.
    """
    if not (nu > 0 and h > 0):
        raise ValueError("nu and h must be positive")
    if not (math.isfinite(nu) and math.isfinite(h)):
        raise ValueError("nu and h must be finite")
    lo = max(nu, math.sqrt(nu / h))
    hi = nu / math.tanh(nu * h)
    if hi <= lo:
        return lo

    def f(k):
        return k * math.tanh(k * h) - nu

    k = 0.5 * (lo + hi)
    for _ in range(maxiter):
        t = math.tanh(k * h)
        fk = k * t - nu
        if fk == 0:
            return k
        if fk < 0:
            lo = k
        else:
            hi = k
        df = t + k * h * (1.0 - t * t)
        step = fk / df
        k_new = k - step
        if not lo < k_new < hi:
            k_new = 0.5 * (lo + hi)
        if abs(k_new - k) <= rtol * k:
            k = k_new
            break
        k = k_new
    # the last Newton step can land one ulp off the best neighbour
    best = min((k, math.nextafter(k, 0.0), math.nextafter(k, math.inf)), key=lambda c: abs(f(c)))
    return best
