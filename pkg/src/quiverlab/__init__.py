"""Exact computations with representations of finite quivers."""

from quiverlab.exceptions import (
    IncompleteComputationError,
    QuiverLabError,
    ValidationError,
)
from quiverlab.forms import GraphType, classify_graph, enumerate_roots, euler_form, positive_roots
from quiverlab.linalg import Field, Matrix
from quiverlab.quiver import Arrow, Path, Quiver
from quiverlab.representation import Morphism, Representation, hom_basis, hom_dim

__version__ = "0.1.0"

__all__ = [
    # Errors
    "IncompleteComputationError",
    "QuiverLabError",
    "ValidationError",
    # Scalars and matrices
    "Field",
    "Matrix",
    # Quivers and forms
    "Arrow",
    "GraphType",
    "Path",
    "Quiver",
    "classify_graph",
    "enumerate_roots",
    "euler_form",
    "positive_roots",
    # Representations
    "Morphism",
    "Representation",
    "hom_basis",
    "hom_dim",
]
