"""JSON document models, validation and loading."""

from quiverlab.io.models import (
    DecompositionModel,
    GroupRepModel,
    KroneckerIndecModel,
    QuiverModel,
    ReflectionWordModel,
    RepresentationModel,
)
from quiverlab.io.validator import (
    DocumentValidator,
    ValidationResult,
    load_group_rep,
    load_kronecker_indec,
    load_quiver,
    load_representation,
    load_word,
    read_json,
)

__all__ = [
    "DecompositionModel",
    "DocumentValidator",
    "GroupRepModel",
    "KroneckerIndecModel",
    "QuiverModel",
    "ReflectionWordModel",
    "RepresentationModel",
    "ValidationResult",
    "load_group_rep",
    "load_kronecker_indec",
    "load_quiver",
    "load_representation",
    "load_word",
    "read_json",
]
