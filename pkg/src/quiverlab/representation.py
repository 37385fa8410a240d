"""
Representations of quivers and their morphisms.

A representation stores one matrix per arrow label, of shape
dim X_{t(α)} x dim X_{s(α)}. Morphism components are indexed by vertex.
Every constructed Morphism is checked against the intertwining law
Y_α φ_{s(α)} = φ_{t(α)} X_α unless the caller already proved it.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from quiverlab.exceptions import (
    CyclicQuiverError,
    FieldError,
    MorphismError,
    QuiverError,
    RepresentationError,
)
from quiverlab.forms import DimVector, euler_form
from quiverlab.linalg import (
    Field,
    Matrix,
    cokernel_projection,
    coordinates,
    image_basis,
    kernel_basis,
    right_inverse,
    solve,
    sparse_kernel,
)
from quiverlab.quiver import Arrow, Quiver

logger = logging.getLogger(__name__)


# =============================================================================
# Representation
# =============================================================================


class Representation:
    """
    A finite-dimensional representation X of a quiver over an exact field.

    Attributes:
        quiver: The quiver Q.
        field: The ground field.
        dims: dim X_i for i = 1..n.
        matrices: X_α keyed by arrow label.
    """

    __slots__ = ("quiver", "field", "dims", "matrices")

    def __init__(self, quiver: Quiver, field: Field, dims: Sequence[int], matrices: Mapping[str, Matrix]):
        dims = tuple(int(d) for d in dims)
        if len(dims) != quiver.vertex_count or any(d < 0 for d in dims):
            raise RepresentationError("dimension vector does not fit the quiver", dims=list(dims))
        mats: Dict[str, Matrix] = {}
        for a in quiver.arrows:
            if a.label not in matrices:
                raise RepresentationError(f"missing matrix for arrow {a.label}", arrow=a.label)
            m = matrices[a.label]
            expected = (dims[a.target - 1], dims[a.source - 1])
            if m.shape != expected:
                raise RepresentationError(
                    f"matrix for {a.label} has shape {m.shape}, expected {expected}", arrow=a.label
                )
            if m.field != field:
                raise FieldError(f"matrix for {a.label} is over {m.field}, not {field}")
            mats[a.label] = m
        extra = set(matrices) - set(mats)
        if extra:
            raise RepresentationError(f"matrices for unknown arrows {sorted(extra)}")
        self.quiver = quiver
        self.field = field
        self.dims = dims
        self.matrices = mats

    def dim(self, i: int) -> int:
        return self.dims[i - 1]

    def matrix(self, label: str) -> Matrix:
        return self.matrices[label]

    def arrow_matrix(self, a: Arrow) -> Matrix:
        return self.matrices[a.label]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.field == other.field
            and self.dims == other.dims
            and self.matrices == other.matrices
        )

    def __hash__(self) -> int:
        return hash((self.quiver, self.field, self.dims))

    def __repr__(self) -> str:
        return f"Representation({self.quiver.name or self.quiver.vertex_count}, {self.field}, dims={list(self.dims)})"

    def with_quiver(self, quiver: Quiver) -> "Representation":
        """Same data over an equal-shaped quiver (e.g. one with a different name)."""
        return Representation(quiver, self.field, self.dims, self.matrices)

    def to_dict(self, inline_quiver: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "field": self.field.describe(),
            "dims": list(self.dims),
            "matrices": {lbl: self.matrices[lbl].to_strings() for lbl in sorted(self.matrices)},
        }
        if inline_quiver:
            data["quiver"] = self.quiver.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], quiver: Optional[Quiver] = None, field: Optional[Field] = None) -> "Representation":
        q = quiver or Quiver.from_dict(data["quiver"])
        k = field or Field.parse(str(data.get("field", "Q")))
        dims = [int(d) for d in data["dims"]]
        raw = data.get("matrices", {})
        mats = {}
        for a in q.arrows:
            rows = raw.get(a.label, [])
            mats[a.label] = Matrix.from_rows(k, rows, (dims[a.target - 1], dims[a.source - 1]))
        return cls(q, k, dims, mats)


def zero_rep(q: Quiver, field: Field) -> Representation:
    return Representation(q, field, [0] * q.vertex_count, {a.label: Matrix.zeros(field, 0, 0) for a in q.arrows})


def _same_space(x: Representation, y: Representation) -> None:
    if x.quiver != y.quiver:
        raise QuiverError("representations live over different quivers")
    if x.field != y.field:
        raise FieldError(f"representations live over {x.field} and {y.field}")


# =============================================================================
# Morphism
# =============================================================================


class Morphism:
    """
    A morphism φ: X -> Y given by per-vertex matrices φ_i (dim Y_i x dim X_i).
    """

    __slots__ = ("source", "target", "components")

    def __init__(self, source: Representation, target: Representation, components: Sequence[Matrix], check: bool = True):
        _same_space(source, target)
        comps = tuple(components)
        if len(comps) != source.quiver.vertex_count:
            raise MorphismError("one component per vertex is required")
        for i, c in enumerate(comps):
            if c.shape != (target.dims[i], source.dims[i]):
                raise MorphismError(f"component at vertex {i + 1} has shape {c.shape}")
        self.source = source
        self.target = target
        self.components = comps
        if check:
            bad = self.failing_arrow()
            if bad is not None:
                raise MorphismError(f"intertwining law fails at arrow {bad}", arrow=bad)

    @property
    def field(self) -> Field:
        return self.source.field

    def component(self, i: int) -> Matrix:
        return self.components[i - 1]

    def failing_arrow(self) -> Optional[str]:
        for a in self.source.quiver.arrows:
            lhs = self.target.arrow_matrix(a) @ self.components[a.source - 1]
            rhs = self.components[a.target - 1] @ self.source.arrow_matrix(a)
            if lhs != rhs:
                return a.label
        return None

    # -- algebra -----------------------------------------------------------

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """self after other."""
        if other.target != self.source:
            raise MorphismError("morphisms are not composable")
        comps = [a @ b for a, b in zip(self.components, other.components)]
        return Morphism(other.source, self.target, comps, check=False)

    def __add__(self, other: "Morphism") -> "Morphism":
        self._parallel(other)
        return Morphism(self.source, self.target, [a + b for a, b in zip(self.components, other.components)], check=False)

    def __sub__(self, other: "Morphism") -> "Morphism":
        self._parallel(other)
        return Morphism(self.source, self.target, [a - b for a, b in zip(self.components, other.components)], check=False)

    def __neg__(self) -> "Morphism":
        return self.scale(-1)

    def scale(self, c: Any) -> "Morphism":
        return Morphism(self.source, self.target, [m.scale(c) for m in self.components], check=False)

    def _parallel(self, other: "Morphism") -> None:
        if other.source != self.source or other.target != self.target:
            raise MorphismError("morphisms are not parallel")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.source, self.target))

    def __repr__(self) -> str:
        return f"Morphism({list(self.source.dims)} -> {list(self.target.dims)})"

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def is_mono(self) -> bool:
        return all(c.rank() == c.ncols for c in self.components)

    def is_epi(self) -> bool:
        return all(c.rank() == c.nrows for c in self.components)

    def is_iso(self) -> bool:
        return all(c.is_invertible() for c in self.components)

    def inverse(self) -> "Morphism":
        if not self.is_iso():
            raise MorphismError("inverse of a non-isomorphism")
        return Morphism(self.target, self.source, [c.inverse() for c in self.components], check=False)

    def vector(self) -> List[Any]:
        """All component entries, vertex by vertex, row-major."""
        return [v for c in self.components for v in c.flatten()]

    def ranks(self) -> DimVector:
        return tuple(c.rank() for c in self.components)


def identity(x: Representation) -> Morphism:
    return Morphism(x, x, [Matrix.identity(x.field, d) for d in x.dims], check=False)


def zero_morphism(x: Representation, y: Representation) -> Morphism:
    return Morphism(x, y, [Matrix.zeros(x.field, dy, dx) for dx, dy in zip(x.dims, y.dims)], check=False)


def linear_combination(morphisms: Sequence[Morphism], coeffs: Sequence[Any], source: Optional[Representation] = None, target: Optional[Representation] = None) -> Morphism:
    if not morphisms:
        if source is None or target is None:
            raise MorphismError("empty combination needs source and target")
        return zero_morphism(source, target)
    out = zero_morphism(morphisms[0].source, morphisms[0].target)
    for m, c in zip(morphisms, coeffs):
        if c != m.field.zero:
            out = out + m.scale(c)
    return out


def solve_combination(morphisms: Sequence[Morphism], target: Morphism) -> Optional[List[Any]]:
    """Coefficients c with Σ c_k morphisms[k] = target, or None."""
    field = target.field
    rhs = Matrix(field, [[v] for v in target.vector()], (len(target.vector()), 1))
    if not morphisms:
        return [] if target.is_zero() else None
    cols = [m.vector() for m in morphisms]
    lhs = Matrix(field, [[c[r] for c in cols] for r in range(len(cols[0]))], (len(cols[0]), len(cols)))
    x = solve(lhs, rhs)
    return None if x is None else x.column_values(0)


# =============================================================================
# Standard representations
# =============================================================================


def simple(q: Quiver, i: int, field: Field) -> Representation:
    """S(i): k at vertex i, zero elsewhere, all maps zero."""
    q.check_vertex(i)
    dims = [1 if v == i else 0 for v in q.vertices]
    mats = {a.label: Matrix.zeros(field, dims[a.target - 1], dims[a.source - 1]) for a in q.arrows}
    return Representation(q, field, dims, mats)


def projective(q: Quiver, i: int, field: Field) -> Representation:
    """P(i): P(i)_j has basis Q(i, j); arrows act by post-composition."""
    if not q.is_acyclic():
        raise CyclicQuiverError("projective")
    paths = q.paths_from(i)
    bases = {j: [p for p in paths if p.end == j] for j in q.vertices}
    index = {j: {p.arrows: k for k, p in enumerate(bases[j])} for j in q.vertices}
    mats = {}
    for a in q.arrows:
        rows = [[field.zero] * len(bases[a.source]) for _ in bases[a.target]]
        for col, p in enumerate(bases[a.source]):
            rows[index[a.target][p.arrows + (a,)]][col] = field.one
        mats[a.label] = Matrix(field, rows, (len(bases[a.target]), len(bases[a.source])))
    return Representation(q, field, [len(bases[j]) for j in q.vertices], mats)


def projective_basis(q: Quiver, i: int) -> Dict[int, List[Any]]:
    """The ordered path basis of each P(i)_j."""
    paths = q.paths_from(i)
    return {j: [p for p in paths if p.end == j] for j in q.vertices}


def injective(q: Quiver, i: int, field: Field) -> Representation:
    """I(i) = D P̄(i), the dual of the opposite-quiver projective."""
    if not q.is_acyclic():
        raise CyclicQuiverError("injective")
    return dual(projective(q.opposite(), i, field)).with_quiver(q)


def dual(x: Representation) -> Representation:
    """DX over the opposite quiver: transposed matrices, reversed arrows."""
    return Representation(x.quiver.opposite(), x.field, x.dims, {lbl: m.T for lbl, m in x.matrices.items()})


def dual_morphism(phi: Morphism) -> Morphism:
    """Dφ: DY -> DX."""
    return Morphism(dual(phi.target), dual(phi.source), [c.T for c in phi.components], check=False)


# =============================================================================
# Hom spaces
# =============================================================================


def _hom_equations(x: Representation, y: Representation) -> Tuple[List[Dict[int, Any]], List[int], int]:
    """Sparse equations of the intertwining system and the unknown offsets."""
    offsets = []
    total = 0
    for dx, dy in zip(x.dims, y.dims):
        offsets.append(total)
        total += dx * dy
    equations: List[Dict[int, Any]] = []
    for a in x.quiver.arrows:
        s, t = a.source - 1, a.target - 1
        xa, ya = x.arrow_matrix(a), y.arrow_matrix(a)
        for r in range(y.dims[t]):
            for c in range(x.dims[s]):
                eq: Dict[int, Any] = {}
                for k in range(y.dims[s]):
                    coeff = ya.entry(r, k)
                    if coeff:
                        key = offsets[s] + k * x.dims[s] + c
                        eq[key] = eq.get(key, x.field.zero) + coeff
                for k in range(x.dims[t]):
                    coeff = xa.entry(k, c)
                    if coeff:
                        key = offsets[t] + r * x.dims[t] + k
                        eq[key] = eq.get(key, x.field.zero) - coeff
                equations.append(eq)
    return equations, offsets, total


def _vector_to_morphism(x: Representation, y: Representation, vec: Mapping[int, Any], offsets: Sequence[int]) -> Morphism:
    comps = []
    for i, (dx, dy) in enumerate(zip(x.dims, y.dims)):
        rows = [[vec.get(offsets[i] + r * dx + c, x.field.zero) for c in range(dx)] for r in range(dy)]
        comps.append(Matrix(x.field, rows, (dy, dx)))
    return Morphism(x, y, comps, check=False)


def hom_basis(x: Representation, y: Representation) -> List[Morphism]:
    """A basis of Hom(X, Y), deterministic for fixed inputs."""
    _same_space(x, y)
    equations, offsets, total = _hom_equations(x, y)
    if total == 0:
        return []
    kernel = sparse_kernel(x.field, total, equations)
    return [_vector_to_morphism(x, y, v, offsets) for v in kernel]


def hom_dim(x: Representation, y: Representation) -> int:
    _same_space(x, y)
    equations, _, total = _hom_equations(x, y)
    if total == 0:
        return 0
    return len(sparse_kernel(x.field, total, equations))


def end_basis(x: Representation) -> List[Morphism]:
    return hom_basis(x, x)


def ext_dim(z: Representation, x: Representation) -> int:
    """
    dim Ext(Z, X): the cokernel of Hom(P⁰, X) -> Hom(P¹, X) for the standard
    presentation ⊕_α P(t α)^{dim Z_{s α}} -> ⊕_i P(i)^{dim Z_i} -> Z -> 0.

    Hom(P⁰, X) = ⊕ Hom(Z_i, X_i) maps to Hom(P¹, X) = ⊕_α Hom(Z_{sα}, X_{tα})
    by (f_i) ↦ (X_α f_{sα} - f_{tα} Z_α), whose kernel is Hom(Z, X).
    """
    _same_space(z, x)
    if not z.quiver.is_acyclic():
        raise CyclicQuiverError("ext_dim")
    equations, _, total = _hom_equations(z, x)
    rows = sum(z.dim(a.source) * x.dim(a.target) for a in z.quiver.arrows)
    nullity = len(sparse_kernel(z.field, total, equations)) if total else 0
    rank = total - nullity
    result = rows - rank
    assert nullity - result == euler_form(z.quiver, z.dims, x.dims)
    return result


# =============================================================================
# Kernels, images, cokernels, subrepresentations
# =============================================================================


@dataclass(frozen=True)
class Subobject:
    """A representation together with its canonical map (inclusion or projection)."""

    rep: Representation
    map: Morphism


def subrepresentation(x: Representation, bases: Sequence[Matrix]) -> Subobject:
    """
    The subrepresentation spanned by per-vertex column bases.

    Raises:
        RepresentationError: If the spaces are not stable under the arrows.
    """
    mats = {}
    for a in x.quiver.arrows:
        image = x.arrow_matrix(a) @ bases[a.source - 1]
        coords = solve(bases[a.target - 1], image)
        if coords is None:
            raise RepresentationError(f"subspaces are not stable under arrow {a.label}", arrow=a.label)
        mats[a.label] = coords
    sub = Representation(x.quiver, x.field, [b.ncols for b in bases], mats)
    return Subobject(sub, Morphism(sub, x, list(bases), check=False))


def quotient(x: Representation, bases: Sequence[Matrix]) -> Subobject:
    """X / U for a subrepresentation U given by column bases; returns the projection."""
    projections = [cokernel_projection(b) for b in bases]
    mats = {}
    for a in x.quiver.arrows:
        p_s, p_t = projections[a.source - 1], projections[a.target - 1]
        mats[a.label] = p_t @ x.arrow_matrix(a) @ right_inverse(p_s) if p_s.nrows else Matrix.zeros(x.field, p_t.nrows, 0)
    q = Representation(x.quiver, x.field, [p.nrows for p in projections], mats)
    return Subobject(q, Morphism(x, q, projections, check=False))


def kernel(phi: Morphism) -> Subobject:
    """Ker φ with its inclusion into the source."""
    return subrepresentation(phi.source, [kernel_basis(c) for c in phi.components])


def image(phi: Morphism) -> Subobject:
    """Im φ with its inclusion into the target."""
    return subrepresentation(phi.target, [image_basis(c) for c in phi.components])


def coimage_map(phi: Morphism) -> Morphism:
    """The epimorphism X -> Im φ."""
    inc = image(phi)
    comps = [coordinates(b, c) for b, c in zip(inc.map.components, phi.components)]
    return Morphism(phi.source, inc.rep, comps, check=False)


def cokernel(phi: Morphism) -> Subobject:
    """Coker φ with the projection from the target."""
    return quotient(phi.target, [image_basis(c) for c in phi.components])


def is_exact_at(f: Morphism, g: Morphism) -> bool:
    """Im f = Ker g."""
    if f.target != g.source:
        raise MorphismError("sequence is not composable")
    for fi, gi, d in zip(f.components, g.components, f.target.dims):
        if not (gi @ fi).is_zero() or fi.rank() + gi.rank() != d:
            return False
    return True


def is_short_exact(f: Morphism, g: Morphism) -> bool:
    """0 -> X -f-> E -g-> Z -> 0 is exact."""
    return f.is_mono() and g.is_epi() and is_exact_at(f, g)


def find_retraction(f: Morphism) -> Optional[Morphism]:
    """Some r with r ∘ f = id, when f is a split monomorphism."""
    basis = hom_basis(f.target, f.source)
    coeffs = solve_combination([h @ f for h in basis], identity(f.source))
    if coeffs is None:
        return None
    return linear_combination(basis, coeffs, f.target, f.source)


def find_section(g: Morphism) -> Optional[Morphism]:
    """Some s with g ∘ s = id, when g is a split epimorphism."""
    basis = hom_basis(g.target, g.source)
    coeffs = solve_combination([g @ h for h in basis], identity(g.target))
    if coeffs is None:
        return None
    return linear_combination(basis, coeffs, g.target, g.source)


def sequence_splits(f: Morphism, g: Morphism) -> bool:
    """Whether the short exact sequence (f, g) splits."""
    if not is_short_exact(f, g):
        raise MorphismError("sequence is not short exact")
    return find_retraction(f) is not None


# =============================================================================
# Direct sums and base change
# =============================================================================


@dataclass(frozen=True)
class DirectSum:
    """X = ⊕ X_k with injections ι_k and projections π_k."""

    rep: Representation
    injections: Tuple[Morphism, ...]
    projections: Tuple[Morphism, ...]


def direct_sum(parts: Sequence[Representation], quiver: Optional[Quiver] = None, field: Optional[Field] = None) -> DirectSum:
    """Block-diagonal direct sum; an empty list gives the zero representation."""
    if not parts:
        if quiver is None or field is None:
            raise RepresentationError("empty direct sum needs a quiver and a field")
        return DirectSum(zero_rep(quiver, field), (), ())
    q, k = parts[0].quiver, parts[0].field
    for p in parts[1:]:
        _same_space(parts[0], p)
    dims = [sum(p.dims[i] for p in parts) for i in range(q.vertex_count)]
    mats = {a.label: Matrix.block_diag(k, [p.arrow_matrix(a) for p in parts]) for a in q.arrows}
    total = Representation(q, k, dims, mats)
    injections, projections = [], []
    offsets = [0] * q.vertex_count
    for p in parts:
        inj, proj = [], []
        for i in range(q.vertex_count):
            ident = Matrix.identity(k, dims[i])
            cols = list(range(offsets[i], offsets[i] + p.dims[i]))
            inj.append(ident.extract(range(dims[i]), cols))
            proj.append(ident.extract(cols, range(dims[i])))
            offsets[i] += p.dims[i]
        injections.append(Morphism(p, total, inj, check=False))
        projections.append(Morphism(total, p, proj, check=False))
    return DirectSum(total, tuple(injections), tuple(projections))


def base_change(x: Representation, changes: Sequence[Matrix]) -> Tuple[Representation, Morphism]:
    """Y with Y_α = g_t X_α g_s⁻¹ and the isomorphism g: X -> Y."""
    inverses = [g.inverse() for g in changes]
    mats = {a.label: changes[a.target - 1] @ x.arrow_matrix(a) @ inverses[a.source - 1] for a in x.quiver.arrows}
    y = Representation(x.quiver, x.field, x.dims, mats)
    return y, Morphism(x, y, list(changes), check=False)


def change_field(x: Representation, field: Field) -> Representation:
    """Convert a representation into another field (lossless conversions only)."""
    if field == x.field:
        return x
    mats = {
        lbl: Matrix(field, [[field.convert_from(x.field, v) for v in row] for row in m.rows], m.shape)
        for lbl, m in x.matrices.items()
    }
    return Representation(x.quiver, field, x.dims, mats)


# =============================================================================
# Random data
# =============================================================================


def random_matrix(field: Field, m: int, n: int, rng: random.Random, spread: int = 3) -> Matrix:
    if field.p:
        rows = [[field.scalar(rng.randrange(field.p)) for _ in range(n)] for _ in range(m)]
    else:
        rows = [[field.scalar(rng.randint(-spread, spread)) for _ in range(n)] for _ in range(m)]
    return Matrix(field, rows, (m, n))


def random_invertible(field: Field, n: int, rng: random.Random) -> Matrix:
    while True:
        g = random_matrix(field, n, n, rng)
        if g.is_invertible():
            return g


def random_representation(q: Quiver, dims: Sequence[int], field: Field, rng: random.Random) -> Representation:
    mats = {a.label: random_matrix(field, dims[a.target - 1], dims[a.source - 1], rng) for a in q.arrows}
    return Representation(q, field, dims, mats)


def random_base_change(x: Representation, rng: random.Random) -> Tuple[Representation, Morphism]:
    return base_change(x, [random_invertible(x.field, d, rng) for d in x.dims])
