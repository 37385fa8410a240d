"""
Representations of elementary abelian groups C_p^r.

A representation is stored through its nilpotent-style generators
γ_i = X_{g_i} - id, which turns it into a representation of the r-loop
quiver. The Klein four group C_2 × C_2 in characteristic 2 is classified
through the separated quiver of the 2-loop quiver, which is the Kronecker
quiver.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from quiverlab.catalogue import kronecker, loop_labels, loop_quiver
from quiverlab.exceptions import CharacteristicError, RepresentationError
from quiverlab.kronecker import KRONECKER, KroneckerIndec, kronecker_classify
from quiverlab.linalg import Field, Matrix, complement_basis, kernel_basis, solve
from quiverlab.radical import separated_S, separated_T
from quiverlab.representation import (
    Morphism,
    Representation,
    find_retraction,
    hom_basis,
    kernel,
)

logger = logging.getLogger(__name__)

GroupElement = Tuple[int, ...]


@dataclass(frozen=True)
class ElementaryAbelian:
    """C_p^r = <g_1, ..., g_r>."""

    p: int
    r: int

    def __post_init__(self) -> None:
        if self.p < 2 or self.r < 1:
            raise RepresentationError("C_p^r needs a prime p and r >= 1", p=self.p, r=self.r)

    @property
    def order(self) -> int:
        return self.p ** self.r

    @property
    def is_klein(self) -> bool:
        return self.p == 2 and self.r == 2

    def elements(self) -> List[GroupElement]:
        """Exponent vectors in lexicographic order; the identity comes first."""
        return list(itertools.product(range(self.p), repeat=self.r))

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return tuple((a + b) % self.p for a, b in zip(g, h))

    def inverse(self, g: GroupElement) -> GroupElement:
        return tuple((-a) % self.p for a in g)

    def generator(self, k: int) -> GroupElement:
        return tuple(1 if j == k else 0 for j in range(self.r))

    def to_json(self) -> Union[str, Dict[str, Any]]:
        if self.is_klein:
            return "klein4"
        return {"C_p^r": {"p": self.p, "r": self.r}}

    @classmethod
    def from_json(cls, data: Union[str, Dict[str, Any]]) -> "ElementaryAbelian":
        if data == "klein4":
            return KLEIN4
        if isinstance(data, dict) and "C_p^r" in data:
            body = data["C_p^r"]
            return cls(int(body["p"]), int(body["r"]))
        raise RepresentationError(f"unknown group descriptor {data!r}")


KLEIN4 = ElementaryAbelian(2, 2)


class GroupRep:
    """
    X with X_{g_i} = id + γ_i.

    The γ_i commute and (id + γ_i)^p = id; in characteristic p the second
    condition is γ_i^p = 0.
    """

    __slots__ = ("group", "field", "dim", "gamma")

    def __init__(self, group: ElementaryAbelian, field: Field, dim: int, gamma: Sequence[Matrix]):
        gamma = tuple(gamma)
        if len(gamma) != group.r:
            raise RepresentationError(f"expected {group.r} generators, got {len(gamma)}")
        ident = Matrix.identity(field, dim)
        for k, g in enumerate(gamma):
            if g.shape != (dim, dim) or g.field != field:
                raise RepresentationError(f"generator {k + 1} is not a {dim}x{dim} matrix over {field}")
            if (ident + g).power(group.p) != ident:
                raise RepresentationError(f"generator {k + 1} does not have order dividing {group.p}")
        for g, h in itertools.combinations(gamma, 2):
            if g @ h != h @ g:
                raise RepresentationError("generators do not commute")
        self.group = group
        self.field = field
        self.dim = dim
        self.gamma = gamma

    def action(self, g: GroupElement) -> Matrix:
        """X_g = Π (id + γ_i)^{g_i}."""
        ident = Matrix.identity(self.field, self.dim)
        out = ident
        for k, e in enumerate(g):
            out = out @ (ident + self.gamma[k]).power(e)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRep):
            return NotImplemented
        return (self.group, self.field, self.dim, self.gamma) == (other.group, other.field, other.dim, other.gamma)

    def __hash__(self) -> int:
        return hash((self.group, self.field, self.dim))

    def __repr__(self) -> str:
        return f"GroupRep({self.group.p}^{self.group.r}, {self.field}, dim={self.dim})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group.to_json(),
            "field": self.field.describe(),
            "dim": self.dim,
            "gamma": [g.to_strings() for g in self.gamma],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], field: Optional[Field] = None) -> "GroupRep":
        group = ElementaryAbelian.from_json(data["group"])
        k = field or Field.parse(str(data.get("field", "Q")))
        d = int(data["dim"])
        return cls(group, k, d, [Matrix.from_rows(k, rows, (d, d)) for rows in data["gamma"]])


def _require_characteristic(group: ElementaryAbelian, field_: Field, operation: str) -> None:
    if field_.characteristic != group.p:
        raise CharacteristicError(f"{operation} needs characteristic {group.p}", field_.characteristic)


# =============================================================================
# Conversion to the r-loop quiver
# =============================================================================


def to_loop_rep(x: GroupRep) -> Representation:
    labels = loop_labels(x.group.r)
    return Representation(loop_quiver(x.group.r), x.field, [x.dim], dict(zip(labels, x.gamma)))


def from_loop_rep(y: Representation, group: ElementaryAbelian) -> GroupRep:
    labels = loop_labels(group.r)
    if y.quiver != loop_quiver(group.r):
        raise RepresentationError(f"expected a representation of the {group.r}-loop quiver")
    return GroupRep(group, y.field, y.dims[0], [y.matrix(lbl) for lbl in labels])


def group_hom_basis(x: GroupRep, y: GroupRep) -> List[Matrix]:
    """Linear maps f with f X_g = Y_g f for all g."""
    if x.group != y.group:
        raise RepresentationError("representations of different groups")
    return [m.components[0] for m in hom_basis(to_loop_rep(x), to_loop_rep(y))]


# =============================================================================
# Standard representations
# =============================================================================


def trivial_rep(group: ElementaryAbelian, field_: Field) -> GroupRep:
    return GroupRep(group, field_, 1, [Matrix.zeros(field_, 1, 1)] * group.r)


def regular_group_rep(group: ElementaryAbelian, field_: Field) -> GroupRep:
    """k[G] with basis G (in ``group.elements()`` order) and left translation."""
    elements = group.elements()
    index = {g: k for k, g in enumerate(elements)}
    n = len(elements)
    gamma = []
    for k in range(group.r):
        gen = group.generator(k)
        rows = [[field_.zero] * n for _ in range(n)]
        for col, g in enumerate(elements):
            rows[index[group.multiply(gen, g)]][col] = field_.one
        gamma.append(Matrix(field_, rows, (n, n)) - Matrix.identity(field_, n))
    return GroupRep(group, field_, n, gamma)


def dual_group_rep(x: GroupRep) -> GroupRep:
    """X*_g = (X_{g⁻¹})ᵀ."""
    ident = Matrix.identity(x.field, x.dim)
    gamma = [(ident + g).inverse().T - ident for g in x.gamma]
    return GroupRep(x.group, x.field, x.dim, gamma)


def regular_self_duality(group: ElementaryAbelian, field_: Field) -> Morphism:
    """k[G] -> k[G]*, Σ a_g g ↦ Σ a_g g*, as a morphism of loop-quiver reps."""
    reg = regular_group_rep(group, field_)
    return Morphism(to_loop_rep(reg), to_loop_rep(dual_group_rep(reg)), [Matrix.identity(field_, reg.dim)])


def free_generator_map(x: GroupRep, v: Matrix) -> Morphism:
    """The morphism k[G] -> X with 1 ↦ v, so e_g ↦ X_g v."""
    reg = regular_group_rep(x.group, x.field)
    columns = [x.action(g) @ v for g in x.group.elements()]
    return Morphism(to_loop_rep(reg), to_loop_rep(x), [Matrix.hstack(x.field, columns, nrows=x.dim)])


def is_invariant(x: GroupRep, u: Matrix) -> bool:
    return all(solve(u, g @ u) is not None for g in x.gamma) if u.ncols else True


def maschke_complement(x: GroupRep, u: Matrix) -> Matrix:
    """
    A basis of an invariant complement of the invariant subspace spanned by u.

    π' = |G|⁻¹ Σ_g X_g π X_{g⁻¹} for any projection π onto U; the
    complement is Ker π'.
    """
    if x.field.characteristic == x.group.p:
        raise CharacteristicError("Maschke needs |G| invertible in the field", x.field.characteristic)
    if not is_invariant(x, u):
        raise RepresentationError("subspace is not a subrepresentation")
    f = x.field
    extra = complement_basis(u)
    change = Matrix.hstack(f, [u, extra], nrows=x.dim)
    coords = change.inverse().extract(range(u.ncols), range(x.dim))
    pi = u @ coords
    total = Matrix.zeros(f, x.dim, x.dim)
    for g in x.group.elements():
        total = total + x.action(g) @ pi @ x.action(x.group.inverse(g))
    averaged = total.scale(f.fraction(1, x.group.order))
    complement = kernel_basis(averaged)
    if Matrix.hstack(f, [u, complement], nrows=x.dim).rank() != x.dim:
        raise RepresentationError("averaged projection does not split the subspace")
    logger.debug("maschke: dim %d = %d + %d", x.dim, u.ncols, complement.ncols)
    return complement


# =============================================================================
# Elementary abelian T functor and the Klein four group
# =============================================================================


def elabel_T(y: Representation, p: int) -> GroupRep:
    """(TY)_{γ_i} = [[0, 0], [Y_{α_i}, 0]] on Y_1 ⊕ Y_2 for a K_r representation Y."""
    r = len(y.quiver.arrows)
    group = KLEIN4 if (p, r) == (2, 2) else ElementaryAbelian(p, r)
    _require_characteristic(group, y.field, "elabel_T")
    if y.quiver != kronecker(r):
        raise RepresentationError(f"elabel_T expects a representation of K_{r}")
    return from_loop_rep(separated_T(y.with_quiver(loop_quiver(r).separated()), loop_quiver(r)), group)


def elabel_S(x: GroupRep) -> Representation:
    """The K_r representation X/Σ Im γ_i => Σ Im γ_i; requires γ_iγ_j = 0."""
    _require_characteristic(x.group, x.field, "elabel_S")
    return separated_S(to_loop_rep(x)).with_quiver(kronecker(x.group.r))


def klein_T(y: Representation) -> GroupRep:
    if y.quiver != KRONECKER:
        raise RepresentationError("klein_T expects a Kronecker representation")
    return elabel_T(y, 2)


@dataclass(frozen=True)
class KleinSummand:
    """k[G] (kind is None) or T applied to a Kronecker indecomposable."""

    multiplicity: int
    kind: Optional[KroneckerIndec] = None

    @property
    def label(self) -> str:
        return "k[G]" if self.kind is None else "T" + self.kind.label()

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"label": self.label, "multiplicity": self.multiplicity}
        if self.kind is not None:
            out["kronecker"] = self.kind.to_dict()
        return out


def has_regular_summand(x: GroupRep) -> bool:
    """Whether k[G] is a summand of a Klein four representation: γ₁γ₂ != 0."""
    return not (x.gamma[0] @ x.gamma[1]).is_zero()


def split_regular_summands(x: GroupRep) -> Tuple[int, GroupRep]:
    """
    Split off copies of k[G] while γ₁γ₂ != 0, scanning standard basis vectors
    for v with γ₁γ₂v != 0; 1 ↦ v is then a split monomorphism k[G] -> X.
    """
    count = 0
    while has_regular_summand(x):
        product = x.gamma[0] @ x.gamma[1]
        col = next(j for j in range(x.dim) if not product.column(j).is_zero())
        phi = free_generator_map(x, Matrix.unit_column(x.field, x.dim, col))
        retraction = find_retraction(phi)
        if retraction is None:
            raise RepresentationError("k[G] embedding does not split")
        x = from_loop_rep(kernel(retraction).rep, x.group)
        count += 1
    return count, x


def klein_classify(x: GroupRep, seed: int = 0) -> List[KleinSummand]:
    """
    Indecomposable summands of a Klein four representation in characteristic 2:
    k[G] copies first, then the rest through S and the Kronecker classifier.
    """
    if not x.group.is_klein:
        raise RepresentationError("klein_classify expects a Klein four representation")
    _require_characteristic(x.group, x.field, "klein_classify")
    count, rest = split_regular_summands(x)
    out = [KleinSummand(count)] if count else []
    if rest.dim:
        for kind, mult in kronecker_classify(elabel_S(rest), seed=seed):
            out.append(KleinSummand(mult, kind))
    logger.debug("klein_classify dim %d: %s", x.dim, [(s.label, s.multiplicity) for s in out])
    return out


__all__ = [
    "ElementaryAbelian",
    "GroupRep",
    "KLEIN4",
    "KleinSummand",
    "dual_group_rep",
    "elabel_S",
    "elabel_T",
    "free_generator_map",
    "from_loop_rep",
    "group_hom_basis",
    "has_regular_summand",
    "is_invariant",
    "klein_T",
    "klein_classify",
    "maschke_complement",
    "regular_group_rep",
    "regular_self_duality",
    "split_regular_summands",
    "to_loop_rep",
    "trivial_rep",
]
