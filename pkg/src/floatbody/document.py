"""Reading and validating geometry input documents.

A document looks like::

    {"vertices": [[x, y], ...],
     "density": {"uniform": 500.0} | {"regions": [{"vertices": [...], "value": v}, ...]},
     "fluid": {"g": 9.81, "rho0": 1000.0, "depth": "infinite" | h}}
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

import jsonschema

from .geometry import BodySpec, DensityRegion, FluidConfig

_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_POLY = {"type": "array", "items": _POINT, "minItems": 3}

SCHEMA = {
    "type": "object",
    "required": ["vertices", "density"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "vertices": _POLY,
        "density": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["uniform"],
                    "additionalProperties": False,
                    "properties": {"uniform": {"type": "number", "minimum": 0}},
                },
                {
                    "type": "object",
                    "required": ["regions"],
                    "additionalProperties": False,
                    "properties": {
                        "regions": {
                            "type": "array",
                            "minItems": 1,
                            "items": {
                                "type": "object",
                                "required": ["vertices", "value"],
                                "additionalProperties": False,
                                "properties": {
                                    "vertices": _POLY,
                                    "value": {"type": "number", "minimum": 0},
                                },
                            },
                        }
                    },
                },
            ]
        },
        "fluid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "g": {"type": "number", "exclusiveMinimum": 0},
                "rho0": {"type": "number", "exclusiveMinimum": 0},
                "depth": {
                    "oneOf": [
                        {"const": "infinite"},
                        {"type": "number", "exclusiveMinimum": 0},
                    ]
                },
            },
        },
    },
}


class DocumentError(ValueError):
    """Schema violation; ``pointer`` is a JSON pointer to the offending location."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message


@dataclass(frozen=True)
class InputDocument:
    body: BodySpec
    fluid: FluidConfig
    sha256: str
    raw: dict


def _pointer(error: jsonschema.ValidationError) -> str:
    parts = [str(p) for p in error.absolute_path]
    if error.validator == "required":
        missing = [k for k in error.validator_value if k not in error.instance]
        if missing:
            parts.append(missing[0])
    return "".join("/" + p.replace("~", "~0").replace("/", "~1") for p in parts)


def validate(doc) -> None:
    """Raise :class:`DocumentError` for the first (deepest) schema violation."""
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = list(validator.iter_errors(doc))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise DocumentError(_pointer(err), err.message)


def parse_document(doc: dict, sha256: str = "") -> InputDocument:
    validate(doc)
    dens = doc["density"]
    if "uniform" in dens:
        body = BodySpec(doc["vertices"], density=float(dens["uniform"]))
    else:
        regions = tuple(DensityRegion(r["vertices"], float(r["value"])) for r in dens["regions"])
        body = BodySpec(doc["vertices"], regions=regions)
    f = doc.get("fluid", {})
    depth = f.get("depth", "infinite")
    fluid = FluidConfig(
        g=float(f.get("g", 9.81)),
        rho0=float(f.get("rho0", 1000.0)),
        depth=math.inf if depth == "infinite" else float(depth),
    )
    return InputDocument(body=body, fluid=fluid, sha256=sha256, raw=doc)


def load_document(path) -> InputDocument:
    data = Path(path).read_bytes()
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentError("", f"invalid JSON: {exc}") from exc
    return parse_document(doc, hashlib.sha256(data).hexdigest())


def body_document(body: BodySpec, fluid: FluidConfig, name: str = "") -> dict:
    """Inverse of :func:`parse_document`, used to write fixtures."""
    doc: dict = {}
    if name:
        doc["name"] = name
    doc["vertices"] = [[float(x), float(y)] for x, y in body.vertices]
    if body.density is not None:
        doc["density"] = {"uniform": float(body.density)}
    else:
        doc["density"] = {
            "regions": [
                {"vertices": [[float(x), float(y)] for x, y in r.vertices], "value": float(r.value)}
                for r in body.regions
            ]
        }
    doc["fluid"] = {
        "g": fluid.g,
        "rho0": fluid.rho0,
        "depth": "infinite" if not fluid.finite_depth else fluid.depth,
    }
    return doc
