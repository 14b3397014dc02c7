"""Concept sizes and relations in conceptual spaces (C++ engine)."""

from ._core import (
    ArgumentError,
    Concept,
    ConceptSpace,
    Error,
    LimitExceededError,
    ModelError,
    ParseError,
    alpha_cut_volume,
    between,
    export_grid,
    implication,
    load_space,
    measure,
    membership,
    oracle_check,
    parse_space,
    reproduce_tables,
    similarity,
    subsethood,
)

__all__ = [
    "ArgumentError",
    "Concept",
    "ConceptSpace",
    "Error",
    "LimitExceededError",
    "ModelError",
    "ParseError",
    "alpha_cut_volume",
    "between",
    "export_grid",
    "implication",
    "load_space",
    "measure",
    "membership",
    "oracle_check",
    "parse_space",
    "reproduce_tables",
    "similarity",
    "subsethood",
]
