"""Finite-difference check of the identity

    (2 u phi_u + phi) lap(phi)
        = div((2 u phi_u + phi) grad(phi)) - 2 phi_u**2 - (u |grad phi|**2)_u

which is exact for every twice differentiable ``phi(u, v)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

Field = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class VMResult:
    residual: float
    residual_half: float
    order: float


def _du(f: Field, h: float) -> Field:
    return lambda u, v: (f(u + h, v) - f(u - h, v)) / (2.0 * h)


def _dv(f: Field, h: float) -> Field:
    return lambda u, v: (f(u, v + h) - f(u, v - h)) / (2.0 * h)


def _residual(phi: Field, h: float, U: np.ndarray, V: np.ndarray) -> float:
    pu, pv = _du(phi, h), _dv(phi, h)
    lap = lambda u, v: (  # noqa: E731
        phi(u + h, v) + phi(u - h, v) + phi(u, v + h) + phi(u, v - h) - 4.0 * phi(u, v)
    ) / (h * h)
    w = lambda u, v: 2.0 * u * pu(u, v) + phi(u, v)  # noqa: E731
    flux_u = lambda u, v: w(u, v) * pu(u, v)  # noqa: E731
    flux_v = lambda u, v: w(u, v) * pv(u, v)  # noqa: E731
    grad2 = lambda u, v: u * (pu(u, v) ** 2 + pv(u, v) ** 2)  # noqa: E731
    lhs = w(U, V) * lap(U, V)
    rhs = _du(flux_u, h)(U, V) + _dv(flux_v, h)(U, V) - 2.0 * pu(U, V) ** 2 - _du(grad2, h)(U, V)
    return float(np.max(np.abs(lhs - rhs)))


def default_points(n: int = 9) -> tuple[np.ndarray, np.ndarray]:
    """A grid inside the strip ``-pi < v < 0`` away from ``u = 0``."""
    u = np.linspace(0.3, 1.5, n)
    v = np.linspace(-2.5, -0.5, n)
    return np.meshgrid(u, v, indexing="ij")


def vm_identity_residual(phi: Field, step: float, points=None) -> VMResult:
    """Max residual of the identity with central differences at ``step`` and ``step / 2``.

    ``order`` is the observed convergence rate ``log2(r(step) / r(step/2))``;
    it is ``nan`` when both residuals vanish.
    """
    if not step > 0:
        raise ValueError("step must be positive")
    U, V = default_points() if points is None else points
    U, V = np.asarray(U, dtype=float), np.asarray(V, dtype=float)
    r1 = _residual(phi, step, U, V)
    r2 = _residual(phi, 0.5 * step, U, V)
    order = math.log2(r1 / r2) if r1 > 0 and r2 > 0 else math.nan
    return VMResult(residual=r1, residual_half=r2, order=order)
