"""
The Jordan quiver and the Kronecker quiver.

Jordan: the blocks J_{p,λ}, standard morphisms φ_{p,q}, hom bases and the
uniserial chain. Kronecker: the families P_r, I_r and R_{p,λ}, λ ∈ ℙ¹(k),
and a classifier that recovers the family of every indecomposable summand.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from quiverlab.catalogue import jordan, kronecker
from quiverlab.decomposition import krs_decompose, require_indecomposable
from quiverlab.exceptions import IrrationalParameterError, QuiverError, RepresentationError
from quiverlab.linalg import (
    Field,
    Matrix,
    jordan_block,
    kernel_basis,
    minimal_poly,
    roots_in_field,
)
from quiverlab.representation import (
    Morphism,
    Representation,
    Subobject,
    cokernel,
    hom_dim,
    kernel,
    subrepresentation,
)

logger = logging.getLogger(__name__)

_QQ = Field.rationals()
JORDAN = jordan()
KRONECKER = kronecker(2)


# =============================================================================
# Jordan quiver
# =============================================================================


def jordan_rep(p: int, lam: Any = 0, field_: Field = _QQ) -> Representation:
    """J_{p,λ} = (k^p, J(p, λ))."""
    if p < 1:
        raise RepresentationError("J_{p,λ} needs p >= 1", p=p)
    return Representation(JORDAN, field_, [p], {"a": jordan_block(field_, p, lam)})


def _standard_matrix(field_: Field, p: int, q: int) -> Matrix:
    shift = max(p - q, 0)
    rows = [[field_.zero] * p for _ in range(q)]
    for i in range(shift, p):
        rows[i - shift][i] = field_.one
    return Matrix(field_, rows, (q, p))


def standard_morphism(p: int, q: int, lam: Any = 0, field_: Field = _QQ) -> Morphism:
    """
    φ_{p,q}: J_{p,λ} -> J_{q,λ}.

    e_i ↦ e_i when p <= q (inclusion) and e_i ↦ e_{i-(p-q)} when p > q, with
    e_j = 0 for j < 1.
    """
    return Morphism(
        jordan_rep(p, lam, field_),
        jordan_rep(q, lam, field_),
        [_standard_matrix(field_, p, q)],
    )


def jordan_hom_basis(p: int, lam: Any, q: int, mu: Any, field_: Field = _QQ) -> List[Morphism]:
    """{φ_{i,q} φ_{p,i} | 1 <= i <= min(p, q)} when λ = μ, else empty."""
    if field_.scalar(lam) != field_.scalar(mu):
        return []
    return [standard_morphism(i, q, lam, field_) @ standard_morphism(p, i, lam, field_) for i in range(1, min(p, q) + 1)]


def jordan_subreps(p: int, lam: Any = 0, field_: Field = _QQ) -> List[Subobject]:
    """
    The chain 0 = J_{0,λ} ⊂ J_{1,λ} ⊂ ... ⊂ J_{p,λ}.

    The q-th term is Ker (J - λ)^q; it must coincide with the span of
    e_1, ..., e_q.
    """
    x = jordan_rep(p, lam, field_)
    shifted = x.matrix("a") - Matrix.identity(field_, p).scale(field_.scalar(lam))
    chain = []
    for q in range(p + 1):
        basis = kernel_basis(shifted.power(q))
        expected = Matrix.identity(field_, p).extract(range(p), range(q))
        if basis.ncols != q or Matrix.hstack(field_, [basis, expected], nrows=p).rank() != q:
            raise RepresentationError("Jordan block is not uniserial", p=p, q=q)
        chain.append(subrepresentation(x, [basis]))
    return chain


def is_irreducible_standard(p: int, q: int, lam: Any = 0, field_: Field = _QQ) -> bool:
    """Whether Ker φ_{p,q} ⊕ Coker φ_{p,q} is simple."""
    phi = standard_morphism(p, q, lam, field_)
    return kernel(phi).rep.total_dim + cokernel(phi).rep.total_dim == 1


# =============================================================================
# Kronecker quiver
# =============================================================================


@dataclass(frozen=True)
class ProjectivePoint:
    """(λ₀ : λ₁) normalized to (λ₀ : 1) when λ₁ != 0, else (1 : 0)."""

    field: Field
    lam0: Any
    lam1: Any

    @classmethod
    def of(cls, field_: Field, lam0: Any, lam1: Any = 1) -> "ProjectivePoint":
        l0, l1 = field_.scalar(lam0), field_.scalar(lam1)
        if l1 != field_.zero:
            return cls(field_, l0 / l1, field_.one)
        if l0 == field_.zero:
            raise RepresentationError("(0:0) is not a point of the projective line")
        return cls(field_, field_.one, field_.zero)

    @classmethod
    def infinity(cls, field_: Field) -> "ProjectivePoint":
        return cls(field_, field_.one, field_.zero)

    @property
    def is_infinity(self) -> bool:
        return self.lam1 == self.field.zero

    def sort_key(self) -> Tuple[int, Any]:
        return (1, 0) if self.is_infinity else (0, self.field.to_fraction(self.lam0))

    def to_list(self) -> List[str]:
        return [self.field.to_str(self.lam0), self.field.to_str(self.lam1)]

    def __str__(self) -> str:
        a, b = self.to_list()
        return f"({a}:{b})"


@dataclass(frozen=True)
class KroneckerIndec:
    """P_r (dims (r, r+1)), I_r (dims (r+1, r)) or R_{p,λ} (dims (p, p))."""

    kind: str
    n: int
    point: Optional[ProjectivePoint] = None

    def __post_init__(self) -> None:
        if self.kind not in ("P", "I", "R"):
            raise QuiverError(f"unknown Kronecker family {self.kind!r}")
        if self.n < (1 if self.kind == "R" else 0):
            raise QuiverError(f"{self.kind} index out of range", n=self.n)
        if (self.kind == "R") != (self.point is not None):
            raise QuiverError("exactly the R family carries a point")

    @classmethod
    def P(cls, r: int) -> "KroneckerIndec":
        return cls("P", r)

    @classmethod
    def I(cls, r: int) -> "KroneckerIndec":
        return cls("I", r)

    @classmethod
    def R(cls, p: int, point: ProjectivePoint) -> "KroneckerIndec":
        return cls("R", p, point)

    @property
    def dims(self) -> Tuple[int, int]:
        if self.kind == "P":
            return (self.n, self.n + 1)
        if self.kind == "I":
            return (self.n + 1, self.n)
        return (self.n, self.n)

    def label(self) -> str:
        if self.kind == "R":
            return f"R_{{{self.n},{self.point}}}"
        return f"{self.kind}_{self.n}"

    def sort_key(self) -> Tuple[Any, ...]:
        order = {"P": 0, "R": 1, "I": 2}[self.kind]
        return (order, self.n, self.point.sort_key() if self.point else (0, 0))

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == "R":
            return {"kind": "R", "p": self.n, "point": self.point.to_list()}
        return {"kind": self.kind, "r": self.n}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], field_: Field = _QQ) -> "KroneckerIndec":
        kind = data.get("kind")
        if kind == "R":
            lam0, lam1 = data["point"]
            return cls.R(int(data["p"]), ProjectivePoint.of(field_, lam0, lam1))
        return cls(str(kind), int(data["r"]))


def kronecker_indec(kind: KroneckerIndec, field_: Field = _QQ, chart: int = 0) -> Representation:
    """
    The displayed representative of a Kronecker family.

    R_{p,(λ₀:1)} is (J(p, λ₀), id) and R_{p,(1:0)} is (id, J(p, 0)). With
    ``chart=1`` a point with λ₀ != 0 is built as (id, J(p, 1/λ₀)) instead.
    """
    def ident(n: int) -> Matrix:
        return Matrix.identity(field_, n)

    if kind.kind == "P":
        r = kind.n
        a = Matrix.vstack(field_, [ident(r), Matrix.zeros(field_, 1, r)], ncols=r)
        b = Matrix.vstack(field_, [Matrix.zeros(field_, 1, r), ident(r)], ncols=r)
        return Representation(KRONECKER, field_, [r, r + 1], {"a": a, "b": b})
    if kind.kind == "I":
        r = kind.n
        a = Matrix.hstack(field_, [ident(r), Matrix.zeros(field_, r, 1)], nrows=r)
        b = Matrix.hstack(field_, [Matrix.zeros(field_, r, 1), ident(r)], nrows=r)
        return Representation(KRONECKER, field_, [r + 1, r], {"a": a, "b": b})
    p, point = kind.n, kind.point
    if point.field != field_:
        point = ProjectivePoint.of(field_, field_.convert_from(point.field, point.lam0), field_.convert_from(point.field, point.lam1))
    if point.is_infinity:
        mats = {"a": ident(p), "b": jordan_block(field_, p, 0)}
    elif chart == 1 and point.lam0 != field_.zero:
        mats = {"a": ident(p), "b": jordan_block(field_, p, field_.one / point.lam0)}
    else:
        mats = {"a": jordan_block(field_, p, point.lam0), "b": ident(p)}
    return Representation(KRONECKER, field_, [p, p], mats)


def _require_kronecker(x: Representation, operation: str) -> None:
    if x.quiver != KRONECKER:
        raise QuiverError(f"{operation} expects a representation of the Kronecker quiver")


def _single_eigenvalue(m: Matrix) -> Any:
    poly = minimal_poly(m)
    roots = roots_in_field(m.field, poly)
    if not roots:
        raise IrrationalParameterError(m.field.describe(), str(poly.as_expr()))
    if len(roots) > 1 or poly.degree() != m.nrows:
        raise RepresentationError("regular summand is not a single Jordan block", roots=len(roots))
    return roots[0]


def regular_point(x: Representation) -> ProjectivePoint:
    """The point λ of an indecomposable regular x ≅ R_{p,λ}."""
    _require_kronecker(x, "regular_point")
    a, b = x.matrix("a"), x.matrix("b")
    if x.dims[0] != x.dims[1] or x.dims[0] == 0:
        raise RepresentationError("regular Kronecker summands have dims (p, p)", dims=list(x.dims))
    if b.is_invertible():
        return ProjectivePoint.of(x.field, _single_eigenvalue(b.inverse() @ a), 1)
    if a.is_invertible():
        _single_eigenvalue(a.inverse() @ b)
        return ProjectivePoint.infinity(x.field)
    raise RepresentationError("neither Kronecker map is invertible", dims=list(x.dims))


def identify_indecomposable(x: Representation) -> KroneckerIndec:
    """Family of an indecomposable Kronecker representation, read off its dims."""
    d1, d2 = x.dims
    if d2 == d1 + 1:
        return KroneckerIndec.P(d1)
    if d1 == d2 + 1:
        return KroneckerIndec.I(d2)
    if d1 == d2:
        return KroneckerIndec.R(d1, regular_point(x))
    raise RepresentationError("dimension vector is not a Kronecker root", dims=list(x.dims))


def kronecker_classify(x: Representation, seed: int = 0) -> List[Tuple[KroneckerIndec, int]]:
    """KRS decomposition followed by identification of each summand."""
    _require_kronecker(x, "kronecker_classify")
    decomposition = krs_decompose(x, seed=seed)
    counts: Dict[KroneckerIndec, int] = {}
    for s in decomposition.summands:
        kind = identify_indecomposable(s.rep)
        counts[kind] = counts.get(kind, 0) + s.multiplicity
    out = sorted(counts.items(), key=lambda kv: kv[0].sort_key())
    logger.debug("kronecker_classify %s: %s", x.dims, [(k.label(), m) for k, m in out])
    return out


def reg_sub_find(x: Representation) -> Tuple[ProjectivePoint, Morphism]:
    """
    A monomorphism R_{1,λ} -> x for an indecomposable regular x.

    A kernel vector of a gives λ = (0:1), one of b gives (1:0), and otherwise
    an eigenvector v of b⁻¹a with eigenvalue c gives (c:1).
    """
    _require_kronecker(x, "reg_sub_find")
    require_indecomposable(x, "reg_sub_find")
    if x.dims[0] != x.dims[1]:
        raise RepresentationError("reg_sub_find needs a regular representation", dims=list(x.dims))
    field_ = x.field
    a, b = x.matrix("a"), x.matrix("b")
    ker_a, ker_b = kernel_basis(a), kernel_basis(b)
    if ker_a.ncols:
        point, v, w = ProjectivePoint.of(field_, 0, 1), ker_a.column(0), b @ ker_a.column(0)
    elif ker_b.ncols:
        point, v, w = ProjectivePoint.infinity(field_), ker_b.column(0), a @ ker_b.column(0)
    else:
        m = b.inverse() @ a
        c = _single_eigenvalue(m)
        v = kernel_basis(m - Matrix.identity(field_, m.nrows).scale(c)).column(0)
        point, w = ProjectivePoint.of(field_, c, 1), b @ v
    sub = kronecker_indec(KroneckerIndec.R(1, point), field_)
    return point, Morphism(sub, x, [v, w])


def hom_table(ps: Sequence[int], points: Sequence[ProjectivePoint], field_: Field = _QQ) -> Dict[Tuple[int, str, int, str], int]:
    """dim Hom(R_{p,λ}, R_{q,μ}) over the given sizes and points."""
    reps = {(p, str(pt)): kronecker_indec(KroneckerIndec.R(p, pt), field_) for p in ps for pt in points}
    return {(p, l, q, m): hom_dim(x, y) for (p, l), x in reps.items() for (q, m), y in reps.items()}


__all__ = [
    "JORDAN",
    "KRONECKER",
    "KroneckerIndec",
    "ProjectivePoint",
    "hom_table",
    "identify_indecomposable",
    "is_irreducible_standard",
    "jordan_hom_basis",
    "jordan_rep",
    "jordan_subreps",
    "kronecker_classify",
    "kronecker_indec",
    "reg_sub_find",
    "regular_point",
    "standard_morphism",
]
