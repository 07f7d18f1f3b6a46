"""Deterministic JSON and CSV writers; every float is printed with 17 significant digits."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from pathlib import Path

import numpy as np

from .criteria import ClassBVerdict, CriteriaReport, FrequencyBound, Verdict
from .geometry import FluidConfig, ImmersedGeometry
from .hydrostatics import EquilibriumReport, HydroMatrices


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _plain(obj):
    """Reduce arrays, tuples and dataclasses to JSON-ready Python values."""
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return obj


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, dict)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [pad + json.dumps(k) + ": " + _encode(v, indent, level + 1) for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _encode(_plain(obj), indent, 0) + "\n"


def write_csv(path: Path, header, rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    Path(path).write_text(buf.getvalue())


def flatten(obj, prefix: str = ""):
    """``(key, value)`` rows with slash-separated keys, for CSV output of reports."""
    obj = _plain(obj)
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from flatten(v, f"{prefix}/{k}")
    elif isinstance(obj, list) and any(isinstance(v, (list, dict)) for v in obj):
        for i, v in enumerate(obj):
            yield from flatten(v, f"{prefix}/{i}")
    elif isinstance(obj, list):
        yield prefix, " ".join(fmt(v) if isinstance(v, float) else str(v) for v in obj)
    else:
        yield prefix, obj


# ---------------------------------------------------------------------------
# report sections


def fluid_section(fluid: FluidConfig) -> dict:
    return {"g": fluid.g, "rho0": fluid.rho0, "depth": fluid.depth if fluid.finite_depth else "infinite"}


def geometry_section(imm: ImmersedGeometry, com) -> dict:
    return {
        "a": imm.a,
        "b0": imm.b0,
        "waterline_intervals": imm.waterline_intervals,
        "D": [list(d) for d in imm.D],
        "x_left": imm.x_left,
        "x_right": imm.x_right,
        "immersed_area": imm.area,
        "wetted_length": imm.s_length,
        "center_of_mass": list(com),
    }


def matrices_section(m: HydroMatrices) -> dict:
    return {
        "IM": m.IM,
        "IM2": m.IM2,
        "ID": m.ID,
        "IDx": m.IDx,
        "IDxx": m.IDxx,
        "ISy": m.ISy,
        "E": m.E,
        "K": m.K,
    }


def equilibrium_section(eq: EquilibriumReport) -> dict:
    return {
        "archimedes_residual": eq.archimedes_residual,
        "buoyancy_residual": eq.buoyancy_residual,
        "K_psd": eq.K_psd,
        "Kprime_pd": eq.Kprime_pd,
        "Kprime_eigenvalues": list(eq.Kprime_eigenvalues),
        "balanced": eq.balanced,
        "ok": eq.ok,
    }


def bound_section(b: FrequencyBound | None):
    if b is None:
        return None
    return {"lambdas": list(b.lambdas), "lambda_max": b.lambda_max, "omega_star": b.omega_star, "strict": b.strict}


def _verdict(v: Verdict) -> dict:
    return {
        "status": v.status,
        "margin": v.margin,
        "witness": list(v.witness) if v.witness else None,
        "detail": v.detail,
    }


def _class_b(v: ClassBVerdict | None):
    if v is None:
        return None
    return {
        "status": v.status,
        "symmetric": v.symmetric,
        "graph": v.graph,
        "alpha": v.alpha,
        "simon_ursell": v.simon_ursell,
        "witness": list(v.witness) if v.witness else None,
        "detail": v.detail,
    }


def criteria_section(r: CriteriaReport) -> dict:
    su = _verdict(r.simon_ursell)
    su["angle_deg"] = r.cone_angle_deg
    return {
        "john_i": _verdict(r.john_i),
        "john_ii": _verdict(r.john_ii),
        "simon_ursell": su,
        "class_b": _class_b(r.class_b),
        "applicable_proposition": r.applicable_proposition,
        "mode_restriction": list(r.mode_restriction) if r.mode_restriction else "none",
        "claim": r.claim,
        "notes": list(r.notes),
    }
