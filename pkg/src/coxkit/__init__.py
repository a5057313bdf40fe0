"""Exact tools for Coxeter groups, their root systems, the hat graph on roots,
Artin and virtual Artin words, and direct-product decompositions of small
finite Coxeter groups."""
from __future__ import annotations

from .errors import (ContextMismatch, CoxkitError, GraphError, InternalInvariantError,
                     NotSpherical, RootOutOfRange, TruncatedEnumeration)
from .graph import CoxeterGraph, analyze, emit, parse_graph, preset
from .coxeter import (CoxeterGroup, GroupEl, RootVec, coxeter_group, element_of,
                      enumerate_group, enumerate_roots, longest_element,
                      minimal_coset_decomposition)

__version__ = "0.1.0"

__all__ = [
    "ContextMismatch", "CoxkitError", "GraphError", "InternalInvariantError",
    "NotSpherical", "RootOutOfRange", "TruncatedEnumeration",
    "CoxeterGraph", "analyze", "emit", "parse_graph", "preset",
    "CoxeterGroup", "GroupEl", "RootVec", "coxeter_group", "element_of",
    "enumerate_group", "enumerate_roots", "longest_element",
    "minimal_coset_decomposition",
]
