"""
Reference input documents
=========================

Writes the JSON bodies in ``data/`` that the tests and the other demos use.
"""

import json
from pathlib import Path

from floatbody.document import body_document
from floatbody.fixtures import flared_bulb, flared_fluid, half_density_square, reference_rectangle
from floatbody.geometry import FluidConfig

out = Path(__file__).resolve().parent.parent / "data"
out.mkdir(exist_ok=True)

# wall-sided pontoon floating at half draft in water of depth 2
docs = {
    "rectangle.json": body_document(reference_rectangle(), FluidConfig(depth=2.0), "reference rectangle"),
    # same density, but a square: it floats upright and capsizes
    "square.json": body_document(half_density_square(), FluidConfig(), "half-density square"),
    # ballasted bulb hull, outside every cone but in class B
    "flared.json": body_document(flared_bulb(), flared_fluid(), "ballasted bulb hull"),
}
for name, doc in docs.items():
    (out / name).write_text(json.dumps(doc, indent=1) + "\n")
    print("wrote", out / name)
