"""theoria: finite theory-elements, numeric microworlds and grid-figure area theory."""

from .axioms import (
    FAIL,
    PASS,
    PASS_UP_TO_BOUND,
    AxiomId,
    CheckReport,
    axiom,
    check_axiom,
    check_extensive_structure,
)
from .structure import Structure, build_structure, load_structure, render, restrict

__version__ = "0.1.0"

__all__ = [
    "FAIL",
    "PASS",
    "PASS_UP_TO_BOUND",
    "AxiomId",
    "CheckReport",
    "Structure",
    "axiom",
    "build_structure",
    "check_axiom",
    "check_extensive_structure",
    "load_structure",
    "render",
    "restrict",
]
