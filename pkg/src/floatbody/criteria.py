"""Non-trapping frequency bound and the geometric hypotheses behind it.

Verdicts are tri-state: ``"holds"``, ``"fails"`` or ``"marginal"`` (the
measured violation lies inside the tolerance band).  Failing verdicts carry
a witness point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bipolar import MappedContour, map_wetted_contour
from .errors import FloatBodyError, InfiniteDepth, NegativeRoot
from .geometry import (
    BodySpec,
    FluidConfig,
    ImmersedGeometry,
    center_of_mass,
    clip_immersed,
    is_mirror_symmetric,
    mirror_density_symmetric,
)
from .hydrostatics import EquilibriumReport, HydroMatrices, assemble_matrices, check_equilibrium

DEEP_CONE_DEG = 45.0
FINITE_CONE_DEG = 44.0 + 1.0 / 3.0
GEOM_RTOL = 1e-9
ROUND_RTOL = 1e-13
PARITY_THRESHOLD = 1e-6


@dataclass(frozen=True)
class Verdict:
    status: str
    margin: float = math.nan
    witness: tuple[float, float] | None = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"


@dataclass(frozen=True)
class ClassBVerdict:
    status: str
    symmetric: bool
    graph: str
    alpha: float
    simon_ursell: str
    witness: tuple[float, float] | None = None
    detail: str = ""


@dataclass(frozen=True)
class FrequencyBound:
    """Roots of ``det(lambda E - g K) = 0``; ``omega_star = sqrt(lambda_max)``."""

    lambdas: tuple[float, float, float]
    lambda_max: float
    omega_star: float
    strict: bool = False


@dataclass
class CriteriaReport:
    john_i: Verdict
    john_ii: Verdict
    simon_ursell: Verdict
    cone_angle_deg: float
    class_b: ClassBVerdict | None
    equilibrium: EquilibriumReport
    bound: FrequencyBound | None
    applicable_proposition: str
    mode_restriction: tuple[str, ...]
    claim: str
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# frequency bound


def frequency_bound(m: HydroMatrices, g: float | None = None, strict: bool = False) -> FrequencyBound:
    """Closed-form roots of the 3x3 pencil ``lambda E - g K``.

    The surge row of ``K`` vanishes, so one root is zero and the others
    solve the 2x2 pencil ``lambda diag(IM, IM2) - g K'``.

    Raises
    ------
    NegativeRoot
        If ``K'`` is indefinite, i.e. the floating position is unstable.
    """
    g = m.g if g is None else g
    k22, k23, k33 = m.ID, m.IDx, m.IDxx + m.ISy
    A = m.IM * m.IM2
    B = -g * (m.IM * k33 + m.IM2 * k22)
    C = g * g * (k22 * k33 - k23 * k23)
    # discriminant written as a sum of squares so it never goes negative
    disc = g * g * ((m.IM * k33 - m.IM2 * k22) ** 2 + 4.0 * m.IM * m.IM2 * k23 * k23)
    q = -0.5 * (B + math.copysign(math.sqrt(disc), B))
    if q == 0.0:
        r1 = r2 = 0.0
    else:
        r1, r2 = q / A, C / q
    scale = max(abs(r1), abs(r2), 0.0)
    lo = min(r1, r2)
    if lo < -1e-12 * scale:
        raise NegativeRoot(f"stiffness pencil has negative root {lo}; K' is not positive semi-definite")
    roots = tuple(sorted((0.0, max(r1, 0.0), max(r2, 0.0))))
    lam = roots[-1]
    return FrequencyBound(lambdas=roots, lambda_max=lam, omega_star=math.sqrt(lam), strict=strict)


def stiffness_pencil(m: HydroMatrices, omega2: float, g: float | None = None) -> np.ndarray:
    """The symmetric matrix ``omega**2 E - g K``."""
    g = m.g if g is None else g
    return omega2 * m.E - g * m.K


def pencil_witness(m: HydroMatrices, omega2: float, g: float | None = None) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue of ``omega**2 E - g K`` and a unit vector attaining it.

    If the eigenvalue is negative the vector is a rigid motion ``chi`` with
    ``chi^T (omega**2 E - g K) chi < 0``.
    """
    w, V = np.linalg.eigh(stiffness_pencil(m, omega2, g))
    return float(w[0]), V[:, 0]


# ---------------------------------------------------------------------------
# geometric hypotheses


def _tri_state(violation: float, tol: float, round_tol: float) -> str:
    if violation <= round_tol:
        return "holds"
    if violation <= tol:
        return "marginal"
    return "fails"


def check_john_i(imm: ImmersedGeometry) -> Verdict:
    n = imm.waterline_intervals
    status = "holds" if n == 1 else "fails"
    return Verdict(status, float(1 - n), None, f"{n} waterline interval(s)")


def _cone_violation(imm: ImmersedGeometry, angle_deg: float):
    t = math.tan(math.radians(angle_deg))
    V = imm.vertices
    x, y = V[:, 0], V[:, 1]
    right = (x - imm.x_right) + y * t
    left = (imm.x_left - x) + y * t
    viol = np.maximum(right, left)
    k = int(np.argmax(viol))
    return float(viol[k]), (float(x[k]), float(y[k]))


def check_john_strip(imm: ImmersedGeometry, tol: float | None = None) -> Verdict:
    """All of ``B`` lies between the vertical lines through the waterline end points."""
    return _cone_verdict(imm, 0.0, tol)


def check_simon_ursell(
    imm: ImmersedGeometry, fluid: FluidConfig | None = None, angle_deg: float | None = None, tol=None
) -> Verdict:
    """``B`` lies in the angular domain bounded by lines through ``(x_left, 0)``
    and ``(x_right, 0)`` inclined at ``angle_deg`` to the vertical.

    Defaults to 45 degrees in deep water and 44 1/3 degrees at finite depth.
    For a flat bottom the segment condition reduces to the same vertex test.
    """
    fluid = fluid or FluidConfig()
    if angle_deg is None:
        angle_deg = FINITE_CONE_DEG if fluid.finite_depth else DEEP_CONE_DEG
    return _cone_verdict(imm, angle_deg, tol)


def _cone_verdict(imm: ImmersedGeometry, angle_deg: float, tol) -> Verdict:
    tol = GEOM_RTOL * imm.diameter if tol is None else tol
    viol, point = _cone_violation(imm, angle_deg)
    status = _tri_state(viol, tol, ROUND_RTOL * imm.diameter)
    witness = point if status != "holds" else None
    return Verdict(status, -viol, witness, f"angle {angle_deg:.6g} deg")


def check_class_b(
    imm: ImmersedGeometry,
    body: BodySpec,
    fluid: FluidConfig,
    mapped: MappedContour | None = None,
    simon_ursell: Verdict | None = None,
) -> ClassBVerdict:
    """Symmetric body at finite depth whose mapped contour is a decreasing graph
    and which is not covered by the cone condition.

    Raises
    ------
    InfiniteDepth
        The class is defined for a layer of finite depth only.
    """
    if not fluid.finite_depth:
        raise InfiniteDepth("class B requires a finite-depth layer")
    tol = GEOM_RTOL * imm.diameter
    symmetric = (
        imm.waterline_intervals == 1
        and abs(imm.center) <= tol
        and is_mirror_symmetric(body.vertices, GEOM_RTOL)
        and mirror_density_symmetric(body, GEOM_RTOL)
    )
    su = simon_ursell or check_simon_ursell(imm, fluid)
    if not symmetric:
        return ClassBVerdict("fails", False, "n/a", math.nan, su.status, None, "body or density not symmetric")
    if mapped is None:
        mapped = map_wetted_contour(imm, fluid)
    graph = mapped.decreasing
    if su.status == "holds":
        status, detail = "fails", "cone condition already applies"
    elif graph == "fails":
        status, detail = "fails", "mapped contour is not a decreasing graph"
    elif graph == "marginal" or su.status == "marginal":
        status, detail = "marginal", "verdict within tolerance"
    else:
        status, detail = "holds", ""
    return ClassBVerdict(status, True, graph, mapped.alpha, su.status, mapped.witness, detail)


# ---------------------------------------------------------------------------
# mode types


def field_parity(phi: np.ndarray, mirror: np.ndarray, threshold: float = PARITY_THRESHOLD) -> str:
    """Classify a nodal field as ``even``, ``odd`` or ``none`` under ``x -> -x``.

    ``mirror[i]`` is the index of the node mirroring node ``i``.
    """
    phi = np.asarray(phi, dtype=float)
    norm = np.linalg.norm(phi)
    if norm == 0:
        return "even"
    reflected = phi[mirror]
    even = np.linalg.norm(0.5 * (phi + reflected)) / norm
    odd = np.linalg.norm(0.5 * (phi - reflected)) / norm
    if odd < threshold:
        return "even"
    if even < threshold:
        return "odd"
    return "none"


def classify_mode(phi_parity: str, chi, tol: float = PARITY_THRESHOLD) -> str:
    """``type-a``: even field with no heave; ``type-b``: odd field with pure heave."""
    chi = np.asarray(chi, dtype=float)
    scale = tol * np.linalg.norm(chi)
    if phi_parity == "even" and abs(chi[1]) <= scale:
        return "type-a"
    if phi_parity == "odd" and abs(chi[0]) <= scale and abs(chi[2]) <= scale:
        return "type-b"
    return "neither"


# ---------------------------------------------------------------------------
# aggregate report


def nontrapping_report(
    body: BodySpec,
    fluid: FluidConfig,
    angle_deg: float | None = None,
    tolerance: float = 1e-9,
) -> CriteriaReport:
    """Evaluate every hypothesis and state which non-trapping claim, if any, follows."""
    imm = clip_immersed(body, fluid)
    com = center_of_mass(body)
    m = assemble_matrices(body, imm, com, fluid)
    eq = check_equilibrium(body, imm, com, m, tolerance)
    notes = ["ISy integrated over the immersed region B"]

    if angle_deg is None:
        angle_deg = FINITE_CONE_DEG if fluid.finite_depth else DEEP_CONE_DEG
    john_i = check_john_i(imm)
    john_ii = check_john_strip(imm)
    su = check_simon_ursell(imm, fluid, angle_deg)

    class_b = None
    if fluid.finite_depth:
        try:
            class_b = check_class_b(imm, body, fluid, simon_ursell=su)
        except FloatBodyError as exc:
            notes.append(f"class B test skipped: {exc}")

    try:
        bound = frequency_bound(m)
    except NegativeRoot as exc:
        bound = None
        notes.append(str(exc))

    restriction: tuple[str, ...] = ()
    if not eq.Kprime_pd or bound is None:
        prop, claim = "none", "no claim (equilibrium unstable)"
    elif not eq.balanced:
        prop, claim = "none", "no claim (body not in equilibrium)"
    elif not john_i.holds:
        prop, claim = "none", "no claim (more than one surface-piercing part)"
    elif su.holds:
        prop = "Prop2-SU"
        claim = f"no trapped modes for omega >= {bound.omega_star:.17g}"
    elif john_ii.holds:
        prop = "Prop2-John"
        claim = f"no trapped modes for omega >= {bound.omega_star:.17g}"
    elif class_b is not None and class_b.status == "holds":
        prop = "Prop3-classB"
        restriction = ("type-a", "type-b")
        bound = FrequencyBound(bound.lambdas, bound.lambda_max, bound.omega_star, strict=True)
        claim = f"no trapped modes of type (a) or (b) for omega > {bound.omega_star:.17g}"
    else:
        prop, claim = "none", "no conclusion"

    return CriteriaReport(
        john_i=john_i,
        john_ii=john_ii,
        simon_ursell=su,
        cone_angle_deg=angle_deg,
        class_b=class_b,
        equilibrium=eq,
        bound=bound,
        applicable_proposition=prop,
        mode_restriction=restriction,
        claim=claim,
        notes=notes,
    )
