"""
Endomorphism algebras, Fitting splitting and Krull-Remak-Schmidt decomposition.

Splittings are manufactured from endomorphisms whose minimal polynomial has two
coprime factors. When no candidate splits, a locality certificate for End(X)
(every basis element is a scalar plus a nilpotent, and those nilpotents span a
nilpotent ideal) proves indecomposability. If neither succeeds the search stops
with DecompositionIncompleteError instead of answering.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import Poly

from quiverlab.config import get_settings
from quiverlab.exceptions import (
    DecomposableInputError,
    DecompositionIncompleteError,
    MorphismError,
    RepresentationError,
)
from quiverlab.forms import DimVector
from quiverlab.linalg import T, Field, Matrix, evaluate, minimal_poly
from quiverlab.representation import (
    DirectSum,
    Morphism,
    Representation,
    direct_sum,
    end_basis,
    hom_basis,
    identity,
    image,
    kernel,
    linear_combination,
    solve_combination,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Endomorphism algebra
# =============================================================================


def endo_minimal_poly(f: Morphism) -> Poly:
    """Minimal polynomial of an endomorphism: lcm of the vertex-wise ones."""
    result = Poly.from_list([1], T, domain=f.field.domain)
    for c in f.components:
        if c.nrows:
            result = result.lcm(minimal_poly(c))
    return result.monic()


def evaluate_at(poly: Poly, f: Morphism) -> Morphism:
    """poly(f), again an endomorphism."""
    return Morphism(f.source, f.target, [evaluate(poly, c) for c in f.components], check=False)


def _factors(poly: Poly) -> List[Tuple[Poly, int]]:
    return [(p.monic(), e) for p, e in poly.factor_list()[1]]


def span_basis(morphisms: Sequence[Morphism], source: Representation, target: Representation) -> List[Morphism]:
    """An independent subfamily spanning the same space."""
    if not morphisms:
        return []
    vectors = [m.vector() for m in morphisms]
    length = len(vectors[0])
    if length == 0:
        return []
    mat = Matrix(source.field, [[v[r] for v in vectors] for r in range(length)], (length, len(vectors)))
    _, pivots = mat.rref()
    return [morphisms[p] for p in pivots]


@dataclass
class EndAlgebra:
    """
    End(X) with a fixed basis.

    The multiplication table is computed on first use: ``table()[i][j]`` holds
    the coordinates of basis[i] ∘ basis[j].
    """

    rep: Representation
    basis: List[Morphism]
    _table: Optional[List[List[List[Any]]]] = field(default=None, repr=False)

    @classmethod
    def of(cls, x: Representation) -> "EndAlgebra":
        return cls(x, end_basis(x))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, f: Morphism) -> List[Any]:
        coeffs = solve_combination(self.basis, f)
        if coeffs is None:
            raise MorphismError("morphism is not an endomorphism of this representation")
        return coeffs

    def element(self, coeffs: Sequence[Any]) -> Morphism:
        return linear_combination(self.basis, coeffs, self.rep, self.rep)

    def table(self) -> List[List[List[Any]]]:
        if self._table is None:
            self._table = [[self.coordinates(a @ b) for b in self.basis] for a in self.basis]
        return self._table

    def identity_coordinates(self) -> List[Any]:
        return self.coordinates(identity(self.rep))

    def local_radical(self) -> Optional[List[Morphism]]:
        """
        A basis of the maximal ideal when End(X) is local with residue field k,
        else None.
        """
        shifted = []
        for b in self.basis:
            parts = _factors(endo_minimal_poly(b))
            if len(parts) != 1 or parts[0][0].degree() != 1:
                return None
            c = -parts[0][0].all_coeffs()[-1]
            scalar = self.rep.field.domain.from_sympy(c)
            shifted.append(b - identity(self.rep).scale(scalar))
        ideal = span_basis(shifted, self.rep, self.rep)
        if len(ideal) != self.dim - 1:
            return None
        layer = ideal
        for _ in range(self.dim):
            if not layer:
                return ideal
            products = [a @ b for a in layer for b in ideal]
            if any(solve_combination(ideal, p) is None for p in products):
                return None
            layer = span_basis([p for p in products if not p.is_zero()], self.rep, self.rep)
        return ideal if not layer else None


# =============================================================================
# Fitting splitting
# =============================================================================


@dataclass(frozen=True)
class Splitting:
    """X = U ⊕ V with the inclusions of both parts."""

    first: Morphism
    second: Morphism

    def witness(self) -> Morphism:
        """The isomorphism U ⊕ V -> X."""
        total = direct_sum([self.first.source, self.second.source]).rep
        comps = [
            Matrix.hstack(total.field, [a, b], nrows=a.nrows)
            for a, b in zip(self.first.components, self.second.components)
        ]
        return Morphism(total, self.first.target, comps, check=False)


def fitting_split(x: Representation, phi: Morphism) -> Optional[Splitting]:
    """
    X = Im φ^r ⊕ Ker φ^r for the least r where the images stabilize.

    Returns None when φ is an automorphism or nilpotent.
    """
    if phi.source != x or phi.target != x:
        raise MorphismError("fitting_split needs an endomorphism of x")
    power = phi
    ranks = power.ranks()
    while True:
        nxt = power @ phi
        if nxt.ranks() == ranks:
            break
        power, ranks = nxt, nxt.ranks()
    if sum(ranks) in (0, x.total_dim):
        return None
    split = Splitting(image(power).map, kernel(power).map)
    logger.debug("fitting split %s -> %s + %s", x.dims, split.first.source.dims, split.second.source.dims)
    return split


def polynomial_split(f: Morphism) -> Optional[Splitting]:
    """Split X along two coprime factors of the minimal polynomial of f."""
    parts = _factors(endo_minimal_poly(f))
    if len(parts) < 2:
        return None
    g = parts[0][0] ** parts[0][1]
    h = Poly.from_list([1], T, domain=f.field.domain)
    for p, e in parts[1:]:
        h = h * p ** e
    return Splitting(kernel(evaluate_at(g, f)).map, kernel(evaluate_at(h, f)).map)


# =============================================================================
# Candidate search
# =============================================================================


def _scalar_pool(field_: Field) -> List[Any]:
    if field_.p:
        return list(field_.elements())
    return field_.small_scalars(7)


def _combinations(basis: Sequence[Morphism], rng: random.Random, limit: int) -> Iterator[Morphism]:
    pool = _scalar_pool(basis[0].field)
    for _ in range(limit):
        coeffs = [rng.choice(pool) for _ in basis]
        yield linear_combination(basis, coeffs)


def _candidates(basis: Sequence[Morphism], rng: random.Random, products: bool = True) -> Iterator[Morphism]:
    limit = get_settings().search_limit
    yield from basis
    pairs = list(itertools.combinations(range(len(basis)), 2))
    if products:
        for i, j in pairs[:limit]:
            yield basis[i] @ basis[j]
    for i, j in pairs[:limit]:
        yield basis[i] + basis[j]
    yield from _combinations(basis, rng, limit)


def _try_split(x: Representation, f: Morphism) -> Optional[Splitting]:
    return polynomial_split(f) or fitting_split(x, f)


def _split_once(x: Representation, rng: random.Random) -> Optional[Splitting]:
    """A non-trivial splitting, or None after certifying that End(X) is local."""
    algebra = EndAlgebra.of(x)
    if algebra.dim == 1:
        return None
    for b in algebra.basis:
        split = _try_split(x, b)
        if split is not None:
            return split
    if algebra.local_radical() is not None:
        return None
    basis = list(algebra.basis)
    rng.shuffle(basis)
    for candidate in _candidates(basis, rng):
        split = _try_split(x, candidate)
        if split is not None:
            return split
    raise DecompositionIncompleteError(list(x.dims), algebra.dim)


def is_indecomposable(x: Representation) -> bool:
    if x.is_zero():
        raise RepresentationError("the zero representation is not indecomposable", dims=list(x.dims))
    return _split_once(x, random.Random(0)) is None


def require_indecomposable(x: Representation, operation: str) -> None:
    if x.is_zero() or not is_indecomposable(x):
        raise DecomposableInputError(operation, list(x.dims))


# =============================================================================
# Isomorphism
# =============================================================================


def is_isomorphic(x: Representation, y: Representation) -> Optional[Morphism]:
    """An isomorphism X -> Y, or None."""
    if x.quiver != y.quiver or x.field != y.field or x.dims != y.dims:
        return None
    if x.is_zero():
        return Morphism(x, y, identity(x).components, check=False)
    basis = hom_basis(x, y)
    if not basis:
        return None
    if len(basis) != len(end_basis(x)):
        return None
    limit = get_settings().search_limit
    rng = random.Random(len(basis))
    candidates = itertools.chain(
        basis,
        (a + b for a, b in itertools.islice(itertools.combinations(basis, 2), limit)),
        _combinations(basis, rng, limit),
    )
    for f in candidates:
        if f.is_iso():
            return f
    return None


# =============================================================================
# Krull-Remak-Schmidt
# =============================================================================


@dataclass
class Summand:
    """One isomorphism class of indecomposable summands."""

    rep: Representation
    multiplicity: int
    tag: Optional[str] = None

    @property
    def dims(self) -> DimVector:
        return self.rep.dims


@dataclass
class Decomposition:
    """
    X ≅ ⊕ Xᵢ^{aᵢ}.

    ``witness`` maps the direct sum of the representatives, each repeated by
    its multiplicity in summand order, isomorphically onto X.
    """

    rep: Representation
    summands: List[Summand]
    witness: Morphism
    total: DirectSum

    def pieces(self) -> List[Tuple[int, Representation]]:
        """(summand index, representative) in witness order."""
        return [(k, s.rep) for k, s in enumerate(self.summands) for _ in range(s.multiplicity)]

    def injections(self) -> List[Morphism]:
        return [self.witness @ inj for inj in self.total.injections]

    def projections(self) -> List[Morphism]:
        inverse = self.witness.inverse()
        return [proj @ inverse for proj in self.total.projections]

    def multiset(self) -> List[Tuple[DimVector, int]]:
        return sorted((s.dims, s.multiplicity) for s in self.summands)

    def to_dict(self) -> Dict[str, Any]:
        summands = []
        for s in self.summands:
            entry: Dict[str, Any] = {"dims": list(s.dims), "multiplicity": s.multiplicity}
            if s.tag:
                entry["tag"] = s.tag
            entry["matrices"] = {lbl: m.to_strings() for lbl, m in sorted(s.rep.matrices.items())}
            summands.append(entry)
        return {
            "summands": summands,
            "witness": [c.to_strings() for c in self.witness.components],
        }


def _split_all(x: Representation, rng: random.Random) -> List[Morphism]:
    """Inclusions of indecomposable pieces whose images span X directly."""
    if x.is_zero():
        return []
    split = _split_once(x, rng)
    if split is None:
        return [identity(x)]
    out = []
    for inc in (split.first, split.second):
        out.extend(inc @ sub for sub in _split_all(inc.source, rng))
    return out


def krs_decompose(x: Representation, seed: int = 0) -> Decomposition:
    """
    Decompose X into pairwise non-isomorphic indecomposables with multiplicities.

    ``seed`` only reorders the internal search; the resulting multiset does not
    depend on it.
    """
    rng = random.Random(seed)
    inclusions = _split_all(x, rng)
    classes: List[Tuple[Representation, List[Morphism]]] = []
    for inc in inclusions:
        piece = inc.source
        for rep, members in classes:
            w = is_isomorphic(rep, piece)
            if w is not None:
                members.append(inc @ w)
                break
        else:
            classes.append((piece, [inc]))
    classes.sort(key=lambda c: (c[0].dims, -len(c[1])))
    summands = [Summand(rep, len(members)) for rep, members in classes]
    parts = [rep for rep, members in classes for _ in members]
    total = direct_sum(parts, x.quiver, x.field)
    maps = [m for _, members in classes for m in members]
    comps = [
        Matrix.hstack(x.field, [m.components[i] for m in maps], nrows=x.dims[i])
        for i in range(x.quiver.vertex_count)
    ]
    witness = Morphism(total.rep, x, comps, check=False)
    if not witness.is_iso():
        raise DecompositionIncompleteError(list(x.dims), len(maps))
    logger.debug("decomposed %s into %s", x.dims, [(s.dims, s.multiplicity) for s in summands])
    return Decomposition(x, summands, witness, total)


# =============================================================================
# Radical of Hom and the Rad^n filtration
# =============================================================================


def _local_radical(x: Representation) -> List[Morphism]:
    ideal = EndAlgebra.of(x).local_radical()
    if ideal is None:
        raise DecompositionIncompleteError(list(x.dims), len(end_basis(x)))
    return ideal


def _indecomposable_rad(x: Representation, y: Representation) -> List[Morphism]:
    w = is_isomorphic(x, y)
    if w is None:
        return hom_basis(x, y)
    return [w @ n for n in _local_radical(x)]


def rad_hom(x: Representation, y: Representation) -> List[Morphism]:
    """
    A basis of Rad(X, Y): blockwise via decompositions of X and Y, with all of
    Hom between non-isomorphic indecomposables and the maximal ideal between
    isomorphic ones.
    """
    if x.is_zero() or y.is_zero():
        return []
    dx, dy = krs_decompose(x), krs_decompose(y)
    out: List[Morphism] = []
    for (_, xa), p in zip(dx.pieces(), dx.projections()):
        for (_, yb), i in zip(dy.pieces(), dy.injections()):
            out.extend(i @ r @ p for r in _indecomposable_rad(xa, yb))
    return span_basis(out, x, y)


def radn_hom(
    x: Representation,
    y: Representation,
    n: int,
    universe: Optional[Sequence[Representation]] = None,
) -> List[Morphism]:
    """
    A basis of Rad^n(X, Y) = Σ_Z Rad^{n-1}(Z, Y) ∘ Rad(X, Z), Z ranging over
    a finite universe of indecomposables.
    """
    if n < 0:
        raise RepresentationError("radical power must be nonnegative")
    if n == 0:
        return hom_basis(x, y)
    if n == 1:
        return rad_hom(x, y)
    if universe is None:
        raise RepresentationError("Rad^n for n >= 2 needs a universe of indecomposables")
    return _RadicalTower(y, universe).through(x, n)


class _RadicalTower:
    """Memoized Rad^m(Z, Y) for Z in a fixed universe."""

    def __init__(self, y: Representation, universe: Sequence[Representation]):
        self.y = y
        self.universe = list(universe)
        self._upper: Dict[Tuple[int, int], List[Morphism]] = {}
        self._lower: Dict[Tuple[int, int], List[Morphism]] = {}

    def into_y(self, k: int, level: int) -> List[Morphism]:
        key = (k, level)
        if key not in self._upper:
            z = self.universe[k]
            self._upper[key] = rad_hom(z, self.y) if level == 1 else self.through(z, level)
        return self._upper[key]

    def _rad(self, x: Representation, k: int) -> List[Morphism]:
        key = (id(x), k)
        if key not in self._lower:
            self._lower[key] = rad_hom(x, self.universe[k])
        return self._lower[key]

    def through(self, x: Representation, n: int) -> List[Morphism]:
        out: List[Morphism] = []
        for k in range(len(self.universe)):
            upper = self.into_y(k, n - 1)
            if not upper:
                continue
            out.extend(g @ f for g in upper for f in self._rad(x, k))
        return span_basis([m for m in out if not m.is_zero()], x, self.y)


def irr_dim(x: Representation, y: Representation, universe: Sequence[Representation]) -> int:
    """dim Irr(X, Y) = dim Rad(X, Y) - dim Rad²(X, Y) for indecomposables."""
    require_indecomposable(x, "irr_dim")
    require_indecomposable(y, "irr_dim")
    return len(rad_hom(x, y)) - len(radn_hom(x, y, 2, universe))


def summand_multiplicity(x: Representation, y: Representation) -> int:
    """Multiplicity of the indecomposable Y in X from Hom/Rad dimensions."""
    top = len(hom_basis(x, y)) - len(rad_hom(x, y))
    bottom = len(end_basis(y)) - len(_local_radical(y))
    return top // bottom


def harada_sai_check(chain: Sequence[Morphism]) -> bool:
    """Whether the composite φ_m ... φ_1 of a composable chain is zero."""
    if not chain:
        raise MorphismError("empty chain")
    composite = chain[0]
    for phi in chain[1:]:
        if phi.source != composite.target:
            raise MorphismError("chain is not composable")
        composite = phi @ composite
    return composite.is_zero()


def harada_sai_bound(n: int) -> int:
    """2^n - 1: chains of this length between indecomposables of length <= n vanish."""
    return 2 ** n - 1


def length(x: Representation) -> int:
    return x.total_dim


__all__ = [
    "Decomposition",
    "EndAlgebra",
    "Splitting",
    "Summand",
    "endo_minimal_poly",
    "fitting_split",
    "harada_sai_bound",
    "harada_sai_check",
    "irr_dim",
    "is_indecomposable",
    "is_isomorphic",
    "krs_decompose",
    "length",
    "polynomial_split",
    "rad_hom",
    "radn_hom",
    "require_indecomposable",
    "span_basis",
    "summand_multiplicity",
]
