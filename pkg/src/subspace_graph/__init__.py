"""Intersection graphs of subspaces of GF(q)^n: formulas, constructions, exact solvers."""

__version__ = "0.1.0"

from .counting import complement_count, degree_formula, gaussian_binomial, predicted_invariants
from .gf import FieldSpec, build_field
from .graph import BitGraph, IntersectionGraph, build_graph
from .linalg import Subspace, enumerate_subspaces, intersection_dim, rref, span

__all__ = [
    "BitGraph",
    "FieldSpec",
    "IntersectionGraph",
    "Subspace",
    "build_field",
    "build_graph",
    "complement_count",
    "degree_formula",
    "enumerate_subspaces",
    "gaussian_binomial",
    "intersection_dim",
    "predicted_invariants",
    "rref",
    "span",
]
