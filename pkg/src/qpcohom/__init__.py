"""Hochschild cohomology of relation extensions and of Jacobian algebras of punctured polygons."""

from .algebra import (
    FiniteDimAlgebra,
    build_algebra,
    jacobian_algebra,
    split_extension,
)
from .document import parse, parse_file
from .hochschild import bar_complex_hh1, h1_dim, hh1
from .potential import QP, Potential, Relation, potential_invariant, relation_extension
from .quiver import Arrow, Cycle, Quiver
from .theorems import rep_finite_formula, run_theorem_a, tame_a_epsilon, theorem_a_from_qp

__all__ = [
    "Arrow",
    "Cycle",
    "FiniteDimAlgebra",
    "Potential",
    "QP",
    "Quiver",
    "Relation",
    "bar_complex_hh1",
    "build_algebra",
    "h1_dim",
    "hh1",
    "jacobian_algebra",
    "parse",
    "parse_file",
    "potential_invariant",
    "relation_extension",
    "rep_finite_formula",
    "run_theorem_a",
    "split_extension",
    "tame_a_epsilon",
    "theorem_a_from_qp",
]

__version__ = "0.1.0"
