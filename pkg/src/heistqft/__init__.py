"""Heisenberg group actions on TQFT modules of colored ribbon graphs."""

from .coloring import count_colorings, enumerate_colorings
from .cyclo import CycNum, QMonomial, make_ring
from .errors import (
    EmptyCycle,
    HeistError,
    InputNotInLattice,
    NotAdmissible,
    NotAnInteger,
    ParseError,
    ValidationError,
)
from .heisenberg import HeisenbergElement, RepMatrix, parse_element, rep_matrix, trace_fixed
from .ribbon import MeridianSpace, RibbonGraph, cycle_basis, load_graph, parse_graph
from .skein import delta_coeff, fusion_coeff, half_twist, tetrahedron
from .verlinde import spectral_brick_dims, verlinde_number

__all__ = [
    "count_colorings",
    "enumerate_colorings",
    "CycNum",
    "QMonomial",
    "make_ring",
    "EmptyCycle",
    "HeistError",
    "InputNotInLattice",
    "NotAdmissible",
    "NotAnInteger",
    "ParseError",
    "ValidationError",
    "HeisenbergElement",
    "RepMatrix",
    "parse_element",
    "rep_matrix",
    "trace_fixed",
    "MeridianSpace",
    "RibbonGraph",
    "cycle_basis",
    "load_graph",
    "parse_graph",
    "delta_coeff",
    "fusion_coeff",
    "half_twist",
    "tetrahedron",
    "spectral_brick_dims",
    "verlinde_number",
]

__version__ = "0.1.0"
