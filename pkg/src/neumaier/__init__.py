"""Neumaier graphs: verification, constructions, exhaustive search and ILP campaigns."""
from __future__ import annotations

from .graph import Graph, Tag, classify, complement, decode_graph6, encode_graph6
from .params import ParameterSet, complement_parameters, enumerate_admissible, is_admissible

__all__ = ["Graph", "Tag", "classify", "complement", "decode_graph6", "encode_graph6",
           "ParameterSet", "complement_parameters", "enumerate_admissible", "is_admissible"]
