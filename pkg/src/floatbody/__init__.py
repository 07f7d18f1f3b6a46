"""Stability, non-trapping bounds and sealed-tank modes of a freely floating cylinder."""
from .bipolar import map_wetted_contour, root_vb, root_vh, to_bipolar, to_physical, weight_function
from .criteria import (
    check_class_b,
    check_john_strip,
    check_simon_ursell,
    classify_mode,
    frequency_bound,
    nontrapping_report,
)
from .geometry import BodySpec, DensityRegion, FluidConfig, center_of_mass, clip_immersed, generalized_normal
from .hydrostatics import assemble_matrices, check_equilibrium

__version__ = "0.1.0"

__all__ = [
    "BodySpec",
    "DensityRegion",
    "FluidConfig",
    "assemble_matrices",
    "center_of_mass",
    "check_class_b",
    "check_equilibrium",
    "check_john_strip",
    "check_simon_ursell",
    "classify_mode",
    "clip_immersed",
    "frequency_bound",
    "generalized_normal",
    "map_wetted_contour",
    "nontrapping_report",
    "root_vb",
    "root_vh",
    "to_bipolar",
    "to_physical",
    "weight_function",
]
