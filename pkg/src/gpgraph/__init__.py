"""Generalized Paley graphs Γ(k, q) over explicitly constructed finite fields."""

from .classify import Classification, NamedForm, SrgParams, classify, srg_check, srg_family_params
from .decompose import Decomposition, aut_descriptor, connectivity_params, decompose, waring_number
from .errors import GPGraphError, InternalTheoremViolation
from .finite_field import FieldElement, FiniteField, build_field, subfield
from .gp_graph import GPGraph, build_graph, export_graph
from .spectra import Spectrum, character_spectrum

__all__ = [
    "Classification",
    "Decomposition",
    "FieldElement",
    "FiniteField",
    "GPGraph",
    "GPGraphError",
    "InternalTheoremViolation",
    "NamedForm",
    "Spectrum",
    "SrgParams",
    "aut_descriptor",
    "build_field",
    "build_graph",
    "character_spectrum",
    "classify",
    "connectivity_params",
    "decompose",
    "export_graph",
    "srg_check",
    "srg_family_params",
    "subfield",
    "waring_number",
]

__version__ = "0.1.0"
