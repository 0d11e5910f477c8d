"""Turán numbers of path and star forests: constructions, closed forms,
forest containment, an exact small-order oracle and verification suites."""

__version__ = "0.1.0"

from ._accel import BACKEND
from .constructions import ExtremalDescriptor, edge_formula, g1, g2, g3, h_family, parse_construction
from .containment import Embedding, contains_forest, is_free, naive_contains, verify_embedding
from .forest import ForestSpec, ForestSpecError, canonical_family, parse_spec
from .formulas import FormulaResult, crossover_scan, ex_k_even_paths, ex_k_stars, ex_path, ex_path_star, ex_two_p5
from .graph import Graph, canonical_form, graph6_decode, graph6_encode, is_isomorphic
from .oracle import turan_oracle

__all__ = [
    "BACKEND", "Embedding", "ExtremalDescriptor", "ForestSpec", "ForestSpecError", "FormulaResult", "Graph",
    "canonical_family", "canonical_form", "contains_forest", "crossover_scan", "edge_formula", "ex_k_even_paths",
    "ex_k_stars", "ex_path", "ex_path_star", "ex_two_p5", "g1", "g2", "g3", "graph6_decode", "graph6_encode",
    "h_family", "is_free", "is_isomorphic", "naive_contains", "parse_construction", "parse_spec",
    "turan_oracle", "verify_embedding",
]
