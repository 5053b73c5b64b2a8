"""Exact lattice-point counting of real dilates of rational polytopes."""

from .ehrhart import (
    QStepFunction,
    WindowTooLarge,
    count,
    jumps,
    lifting,
    ppyr_step_function,
    step_function,
    window_function,
)
from .polytope import HPolytope, PolytopeError, box, from_json, ppyr_volume, rvol, translate, validate
from .reconstruct import EhrhartOracle, ReconstructionConfig, ReconstructionReport, recover

__all__ = [
    "EhrhartOracle",
    "HPolytope",
    "PolytopeError",
    "QStepFunction",
    "ReconstructionConfig",
    "ReconstructionReport",
    "WindowTooLarge",
    "box",
    "count",
    "from_json",
    "jumps",
    "lifting",
    "ppyr_step_function",
    "ppyr_volume",
    "recover",
    "rvol",
    "step_function",
    "translate",
    "validate",
    "window_function",
]
