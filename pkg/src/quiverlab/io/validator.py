"""
Schema validation for input files.

Every document is checked against its pydantic model before anything is
computed. Problems are collected in a ValidationResult; strict mode turns
errors into SchemaError.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Type

from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from quiverlab.catalogue import by_name
from quiverlab.exceptions import QuiverError, SchemaError
from quiverlab.groups import GroupRep
from quiverlab.io.models import (
    DecompositionModel,
    GroupRepModel,
    KroneckerIndecModel,
    QuiverModel,
    ReflectionWordModel,
    RepresentationModel,
)
from quiverlab.kronecker import KroneckerIndec
from quiverlab.linalg import Field
from quiverlab.quiver import Quiver
from quiverlab.reflection import ReflectionWord
from quiverlab.representation import Representation, change_field

logger = logging.getLogger(__name__)

MODELS: Dict[str, Type[BaseModel]] = {
    "quiver": QuiverModel,
    "representation": RepresentationModel,
    "word": ReflectionWordModel,
    "kronecker": KroneckerIndecModel,
    "group": GroupRepModel,
    "decomposition": DecompositionModel,
}


class ValidationResult:
    """Result of validating one document."""

    def __init__(self) -> None:
        self.is_valid = True
        self.warnings: List[str] = []
        self.errors: List[str] = []
        self.suggestions: List[str] = []

    def add_warning(self, message: str) -> None:
        self.warnings.append(message)

    def add_error(self, message: str) -> None:
        """Add an error message and mark as invalid."""
        self.errors.append(message)
        self.is_valid = False

    def add_suggestion(self, message: str) -> None:
        self.suggestions.append(message)

    @property
    def has_issues(self) -> bool:
        return bool(self.warnings or self.errors)

    def __str__(self) -> str:
        parts = []
        for title, items in (("Errors", self.errors), ("Warnings", self.warnings), ("Suggestions", self.suggestions)):
            if items:
                parts.append(f"{title} ({len(items)}):")
                parts.extend(f"  - {item}" for item in items)
        return "\n".join(parts) if parts else "Validation passed with no issues"


class DocumentValidator:
    """
    Validator for quiverlab JSON documents.

    Args:
        strict: If True, ``require`` raises SchemaError on any error.
    """

    def __init__(self, strict: bool = True):
        self.strict = strict

    def validate(self, kind: str, data: Any) -> ValidationResult:
        result = ValidationResult()
        model = MODELS.get(kind)
        if model is None:
            result.add_error(f"unknown document kind {kind!r}")
            return result
        try:
            model.model_validate(data)
        except PydanticValidationError as exc:
            for err in exc.errors():
                loc = ".".join(str(p) for p in err["loc"]) or "<root>"
                result.add_error(f"{loc}: {err['msg']}")
            return result
        if isinstance(data, dict):
            self._hints(kind, data, result)
        return result

    def _hints(self, kind: str, data: Dict[str, Any], result: ValidationResult) -> None:
        if kind in ("representation", "group") and "field" not in data:
            result.add_warning("no field given; Q is assumed")
        if kind == "representation" and "quiver" not in data:
            result.add_suggestion("inline the quiver so the file is self-contained")
        if kind == "quiver" and not data.get("name"):
            result.add_suggestion("name the quiver for readable output")

    def require(self, kind: str, data: Any) -> ValidationResult:
        result = self.validate(kind, data)
        for w in result.warnings:
            logger.warning("%s document: %s", kind, w)
        if not result.is_valid and self.strict:
            raise SchemaError(f"invalid {kind} document", errors=result.errors)
        return result


# =============================================================================
# Loading
# =============================================================================


def read_json(path: str) -> Any:
    p = Path(path)
    if not p.is_file():
        raise SchemaError(f"no such file: {path}")
    try:
        return json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON", errors=[str(exc)]) from exc


def _document(source: Any) -> Any:
    return read_json(source) if isinstance(source, (str, Path)) else source


def load_quiver(source: Any) -> Quiver:
    """A quiver from a file, a parsed document, or a catalogue name such as ``D4``."""
    if isinstance(source, str) and not Path(source).is_file():
        try:
            return by_name(source)
        except QuiverError:
            raise SchemaError(f"{source!r} is neither a file nor a catalogue quiver") from None
    data = _document(source)
    DocumentValidator().require("quiver", data)
    return Quiver.from_dict(data)


def load_representation(source: Any, quiver: Optional[Quiver] = None, field: Optional[Field] = None) -> Representation:
    """
    A representation; ``quiver`` supplies or must equal the inline quiver and
    ``field`` converts the matrices (lossless conversions only).
    """
    data = _document(source)
    DocumentValidator().require("representation", data)
    inline = Quiver.from_dict(data["quiver"]) if data.get("quiver") else None
    if inline is None and quiver is None:
        raise SchemaError("representation file has no quiver and none was given")
    if inline is not None and quiver is not None and inline != quiver:
        raise SchemaError("representation quiver differs from the given quiver")
    q = quiver or inline
    if len(data["dims"]) != q.vertex_count:
        raise SchemaError(f"{len(data['dims'])} dimensions for {q.vertex_count} vertices")
    x = Representation.from_dict(data, quiver=q)
    return change_field(x, field) if field is not None else x


def load_word(source: Any) -> ReflectionWord:
    data = _document(source)
    if isinstance(data, list):
        data = {"word": data}
    DocumentValidator().require("word", data)
    model = ReflectionWordModel.model_validate(data)
    return ReflectionWord.from_list([(step.sign, step.vertex) for step in model.word])


def load_kronecker_indec(source: Any, field: Field) -> KroneckerIndec:
    data = _document(source)
    DocumentValidator().require("kronecker", data)
    return KroneckerIndec.from_dict(data, field)


def load_group_rep(source: Any, field: Optional[Field] = None) -> GroupRep:
    data = _document(source)
    DocumentValidator().require("group", data)
    rep = GroupRep.from_dict(data)
    if field is not None and field != rep.field:
        rep = GroupRep.from_dict(data, field=field)
    return rep


__all__ = [
    "DocumentValidator",
    "MODELS",
    "ValidationResult",
    "load_group_rep",
    "load_kronecker_indec",
    "load_quiver",
    "load_representation",
    "load_word",
    "read_json",
]
