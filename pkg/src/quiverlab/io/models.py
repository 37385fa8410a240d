"""Pydantic models for the JSON files the CLI reads and writes."""

from __future__ import annotations

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from quiverlab.exceptions import FieldError
from quiverlab.linalg import Field as ScalarField

Scalar = Union[int, str]


def _check_field(value: str) -> str:
    try:
        ScalarField.parse(value)
    except FieldError as exc:
        raise ValueError(exc.message) from exc
    return value


class ArrowModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    label: str = Field(min_length=1)
    source: int = Field(alias="from", ge=1)
    target: int = Field(alias="to", ge=1)


class QuiverModel(BaseModel):
    """``{"vertices": n, "arrows": [{"label", "from", "to"}], "name"}``."""

    model_config = ConfigDict(extra="forbid")

    vertices: int = Field(ge=0)
    arrows: List[ArrowModel] = Field(default_factory=list)
    name: str = ""

    @model_validator(mode="after")
    def check_endpoints(self) -> "QuiverModel":
        seen = set()
        for a in self.arrows:
            if a.source > self.vertices or a.target > self.vertices:
                raise ValueError(f"arrow {a.label} has an endpoint outside 1..{self.vertices}")
            if a.label in seen:
                raise ValueError(f"duplicate arrow label {a.label}")
            seen.add(a.label)
        return self


class RepresentationModel(BaseModel):
    """A representation; ``quiver`` may be omitted when supplied separately."""

    model_config = ConfigDict(extra="forbid")

    quiver: Optional[QuiverModel] = None
    field: str = "Q"
    dims: List[int]
    matrices: Dict[str, List[List[Scalar]]] = Field(default_factory=dict)

    check_field = field_validator("field")(_check_field)

    @field_validator("dims")
    @classmethod
    def check_dims(cls, dims: List[int]) -> List[int]:
        if any(d < 0 for d in dims):
            raise ValueError("dimensions must be nonnegative")
        return dims

    @model_validator(mode="after")
    def check_shapes(self) -> "RepresentationModel":
        if self.quiver is None:
            return self
        if len(self.dims) != self.quiver.vertices:
            raise ValueError(f"{len(self.dims)} dimensions for {self.quiver.vertices} vertices")
        for a in self.quiver.arrows:
            rows = self.matrices.get(a.label)
            expected = (self.dims[a.target - 1], self.dims[a.source - 1])
            if rows is None:
                if expected[0] and expected[1]:
                    raise ValueError(f"missing matrix for arrow {a.label}")
                continue
            if len(rows) != expected[0] or any(len(r) != expected[1] for r in rows):
                raise ValueError(f"matrix for {a.label} does not have shape {expected}")
        unknown = set(self.matrices) - {a.label for a in self.quiver.arrows}
        if unknown:
            raise ValueError(f"matrices for unknown arrows {sorted(unknown)}")
        return self


class WordStepModel(BaseModel):
    sign: Literal["+", "-"]
    vertex: int = Field(ge=1)


class ReflectionWordModel(BaseModel):
    """``{"word": [["+", 2], ["-", 1]]}``, applied left to right."""

    word: List[WordStepModel]

    @field_validator("word", mode="before")
    @classmethod
    def split_pairs(cls, value):
        out = []
        for step in value:
            if isinstance(step, (list, tuple)) and len(step) == 2:
                out.append({"sign": step[0], "vertex": step[1]})
            else:
                out.append(step)
        return out


class KroneckerIndecModel(BaseModel):
    """``{"kind": "P", "r": 1}`` or ``{"kind": "R", "p": 2, "point": ["5", "1"]}``."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["P", "I", "R"]
    r: Optional[int] = Field(default=None, ge=0)
    p: Optional[int] = Field(default=None, ge=1)
    point: Optional[List[Scalar]] = None

    @model_validator(mode="after")
    def check_family(self) -> "KroneckerIndecModel":
        if self.kind == "R":
            if self.p is None or self.point is None or len(self.point) != 2:
                raise ValueError("R needs p and a two-entry point")
        elif self.r is None:
            raise ValueError(f"{self.kind} needs r")
        return self


class ElementaryAbelianModel(BaseModel):
    p: int = Field(ge=2)
    r: int = Field(ge=1)


class GroupRepModel(BaseModel):
    """``{"group": "klein4" | {"C_p^r": {...}}, "field", "dim", "gamma"}``."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    group: Union[Literal["klein4"], Dict[Literal["C_p^r"], ElementaryAbelianModel]]
    field: str = "Q"
    dim: int = Field(ge=0)
    gamma: List[List[List[Scalar]]]

    check_field = field_validator("field")(_check_field)

    @model_validator(mode="after")
    def check_square(self) -> "GroupRepModel":
        expected = 2 if self.group == "klein4" else self.group["C_p^r"].r
        if len(self.gamma) != expected:
            raise ValueError(f"expected {expected} generator matrices")
        for g in self.gamma:
            if len(g) != self.dim or any(len(row) != self.dim for row in g):
                raise ValueError(f"generator matrices must be {self.dim}x{self.dim}")
        return self


class SummandModel(BaseModel):
    dims: List[int]
    multiplicity: int = Field(ge=1)
    tag: Optional[str] = None
    matrices: Dict[str, List[List[Scalar]]]


class DecompositionModel(BaseModel):
    summands: List[SummandModel]
    witness: List[List[List[Scalar]]]


__all__ = [
    "ArrowModel",
    "DecompositionModel",
    "ElementaryAbelianModel",
    "GroupRepModel",
    "KroneckerIndecModel",
    "QuiverModel",
    "ReflectionWordModel",
    "RepresentationModel",
    "SummandModel",
    "WordStepModel",
]
