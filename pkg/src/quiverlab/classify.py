"""
Classification drivers: Dynkin indecomposables from roots, the Euclidean
preprojective and preinjective series, the defect trichotomy, the Ã cycle
family, infinite chains of non-isomorphisms and the ℤQ mesh computation of Hom
dimensions between preprojectives.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from quiverlab.config import get_settings
from quiverlab.decomposition import is_indecomposable
from quiverlab.exceptions import (
    CyclicQuiverError,
    DecomposableInputError,
    GraphTypeError,
    MeshWindowError,
    QuiverError,
    StepBudgetExceededError,
)
from quiverlab.forms import (
    DimVector,
    classify_graph,
    defect,
    is_positive,
    positive_roots,
    reflection,
)
from quiverlab.linalg import Field, Matrix, jordan_block, sparse_rank
from quiverlab.quiver import Quiver
from quiverlab.reflection import (
    ReflectionWord,
    canonical_sequences,
    coxeter_minus,
    coxeter_morphism,
    coxeter_plus,
)
from quiverlab.representation import (
    Morphism,
    Representation,
    hom_basis,
    identity,
    injective,
    linear_combination,
    projective,
    simple,
    solve_combination,
)

logger = logging.getLogger(__name__)

_QQ = Field.rationals()


# =============================================================================
# Records
# =============================================================================


@dataclass(frozen=True)
class Tag:
    """Preprojective(i, r) ≅ C^r P(i), Preinjective(i, r) ≅ C^r I(i), or Regular."""

    kind: str
    vertex: Optional[int] = None
    r: Optional[int] = None

    @classmethod
    def preprojective(cls, vertex: int, r: int) -> "Tag":
        return cls("preprojective", vertex, r)

    @classmethod
    def preinjective(cls, vertex: int, r: int) -> "Tag":
        return cls("preinjective", vertex, r)

    @classmethod
    def regular(cls) -> "Tag":
        return cls("regular")

    def label(self) -> str:
        if self.kind == "regular":
            return "Regular"
        return f"{self.kind.capitalize()}({self.vertex}, {self.r})"

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == "regular":
            return {"kind": "regular"}
        return {"kind": self.kind, "vertex": self.vertex, "r": self.r}


@dataclass
class ClassificationRecord:
    """An indecomposable built by replaying ``word`` on S(start_vertex)."""

    dims: DimVector
    start_vertex: int
    word: ReflectionWord
    tag: Tag
    rep: Optional[Representation] = field(default=None, compare=False, repr=False)

    def to_dict(self, include_matrices: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "dims": list(self.dims),
            "start": self.start_vertex,
            "word": self.word.to_list(),
            "tag": self.tag.to_dict(),
        }
        if include_matrices and self.rep is not None:
            out["matrices"] = {lbl: m.to_strings() for lbl, m in sorted(self.rep.matrices.items())}
        return out


def replay_word(q: Quiver, start_vertex: int, word: ReflectionWord, field_: Field = _QQ) -> Representation:
    """
    Apply ``word`` to S(start_vertex) on the quiver the word starts from, so
    that the result lives over q.
    """
    start_quiver = q.sigma_word([v for _, v in reversed(word.steps)])
    start_quiver.check_vertex(start_vertex)
    out = word.apply(simple(start_quiver, start_vertex, field_))
    if out.quiver != q:
        raise QuiverError("reflection word does not end on the given quiver")
    return out.with_quiver(q)


def _ordering(q: Quiver, operation: str) -> List[int]:
    order = q.admissible_ordering()
    if order is None:
        raise CyclicQuiverError(operation)
    return order


# =============================================================================
# Dynkin quivers
# =============================================================================


def _shortest_word(q: Quiver, order: Sequence[int], x: DimVector) -> Tuple[List[int], int]:
    """Vertices reflected while x stays positive, and the vertex where it fails."""
    n = len(order)
    budget = get_settings().step_budget * max(n, 1)
    current = tuple(x)
    applied: List[int] = []
    for step in range(budget):
        v = order[step % n]
        nxt = reflection(q, v, current)
        if not is_positive(nxt):
            return applied, v
        applied.append(v)
        current = nxt
    raise StepBudgetExceededError("dynkin_indecomposables", budget)


def dynkin_indecomposables(q: Quiver, field_: Field = _QQ) -> List[ClassificationRecord]:
    """
    One indecomposable per positive root, sorted by root.

    For a root x the admissible ordering is cycled until a reflection makes x
    non-positive at some vertex v; x is then the image of e_v and the
    representation is S⁻ along the applied vertices (in reverse) of S(v).
    """
    gt = classify_graph(q)
    if not gt.is_dynkin:
        raise GraphTypeError("dynkin_indecomposables requires a Dynkin quiver", found=gt.label())
    order = _ordering(q, "dynkin_indecomposables")
    n = len(order)
    records = []
    for root in positive_roots(q):
        applied, v = _shortest_word(q, order, root)
        word = ReflectionWord(tuple(("-", w) for w in reversed(applied)))
        rep = replay_word(q, v, word, field_)
        if rep.dims != tuple(root):
            raise QuiverError(f"replayed dimension {rep.dims} differs from root {root}")
        tag = Tag.preprojective(v, -(len(applied) // n))
        records.append(ClassificationRecord(tuple(root), v, word, tag, rep))
    logger.debug("%s: %d indecomposables", gt.label(), len(records))
    return records


# =============================================================================
# Euclidean quivers
# =============================================================================


def _require_euclidean(q: Quiver, operation: str):
    gt = classify_graph(q)
    if not gt.is_euclidean:
        raise GraphTypeError(f"{operation} requires a Euclidean quiver", found=gt.label())
    return gt


def projective_word(q: Quiver, i: int, r: int = 0) -> ReflectionWord:
    """Word building C^{-r} P(i) from a simple: S⁻ back to Q, then r rounds of C⁻."""
    order = _ordering(q, "projective_word")
    before = order[: order.index(i)]
    steps = [("-", v) for v in reversed(before)]
    steps += [("-", v) for v in reversed(order)] * r
    return ReflectionWord(tuple(steps))


def injective_word(q: Quiver, i: int, r: int = 0) -> ReflectionWord:
    """Word building C^r I(i) from a simple: S⁺ forward to Q, then r rounds of C⁺."""
    order = _ordering(q, "injective_word")
    after = order[order.index(i) + 1:]
    steps = [("+", v) for v in after]
    steps += [("+", v) for v in order] * r
    return ReflectionWord(tuple(steps))


def euclidean_series(q: Quiver, r_max: int, field_: Field = _QQ, preinjective: bool = True) -> List[ClassificationRecord]:
    """C^{-r}P(i) and (optionally) C^r I(i) for every vertex i and 0 <= r <= r_max."""
    _require_euclidean(q, "euclidean_series")
    _ordering(q, "euclidean_series")
    records = []
    for r in range(r_max + 1):
        for i in q.vertices:
            word = projective_word(q, i, r)
            rep = replay_word(q, i, word, field_)
            records.append(ClassificationRecord(rep.dims, i, word, Tag.preprojective(i, -r), rep))
    if preinjective:
        for r in range(r_max + 1):
            for i in q.vertices:
                word = injective_word(q, i, r)
                rep = replay_word(q, i, word, field_)
                records.append(ClassificationRecord(rep.dims, i, word, Tag.preinjective(i, r), rep))
    return records


def trichotomy(q: Quiver, x: Representation) -> Tag:
    """
    Regular when the defect vanishes; otherwise Coxeter functors are applied
    until a projective (negative defect) or injective (positive defect) is
    reached, which recovers (i, r).
    """
    _require_euclidean(q, "trichotomy")
    if x.is_zero() or not is_indecomposable(x):
        raise DecomposableInputError("trichotomy", list(x.dims))
    d = defect(q, x.dims)
    if d == 0:
        return Tag.regular()
    budget = get_settings().step_budget
    preprojective = d < 0
    step = coxeter_plus if preprojective else coxeter_minus
    build = projective if preprojective else injective
    targets = {build(q, i, x.field).dims: i for i in q.vertices}
    y = x
    for r in range(budget + 1):
        nxt = step(y)
        if nxt.is_zero():
            i = targets.get(y.dims)
            if i is None:
                raise QuiverError(f"Coxeter orbit of {x.dims} ended at unexpected dims {y.dims}")
            return Tag.preprojective(i, -r) if preprojective else Tag.preinjective(i, r)
        y = nxt
    raise StepBudgetExceededError("trichotomy", budget)


# =============================================================================
# The Ã cycle family and infinite chains
# =============================================================================


def _cycle_arrow(q: Quiver, label: Optional[str]) -> str:
    gt = classify_graph(q)
    if not (gt.is_euclidean and gt.family == "A~"):
        raise GraphTypeError("cycle family requires an Ã quiver", found=gt.label())
    if label is not None:
        return q.arrow(label).label
    labels = [a.label for a in q.arrows]
    return "a0" if "a0" in labels else labels[0]


def a_tilde_cycle_family(q: Quiver, p: int, field_: Field = _QQ, arrow: Optional[str] = None) -> Representation:
    """X(p): k^p everywhere, J(p, 0) on the designated arrow, identity elsewhere."""
    if p < 1:
        raise QuiverError("cycle family needs p >= 1")
    special = _cycle_arrow(q, arrow)
    mats = {a.label: jordan_block(field_, p, 0) if a.label == special else Matrix.identity(field_, p) for a in q.arrows}
    return Representation(q, field_, [p] * q.vertex_count, mats)


def cycle_family_chain(q: Quiver, length: int, field_: Field = _QQ, arrow: Optional[str] = None) -> List[Morphism]:
    """The monomorphisms X(p) -> X(p+1), p = 1..length, induced by k^p ⊂ k^{p+1}."""
    chain = []
    for p in range(1, length + 1):
        src = a_tilde_cycle_family(q, p, field_, arrow)
        tgt = a_tilde_cycle_family(q, p + 1, field_, arrow)
        inc = Matrix.identity(field_, p + 1).extract(range(p + 1), range(p))
        chain.append(Morphism(src, tgt, [inc] * q.vertex_count))
    return chain


@dataclass(frozen=True)
class ChainLink:
    """φ: C^r P(i) -> next term of the chain."""

    vertex: int
    r: int
    morphism: Morphism


def preprojective_chain(q: Quiver, length: int, field_: Field = _QQ, start: Optional[int] = None) -> List[ChainLink]:
    """
    Non-isomorphisms φ_p between preprojectives with φ_n ... φ_1 != 0 for all n.

    Starting from a nonzero χ: P(i) -> I(i), each step factors χ through the
    monomorphism C^r μ(i) into the middle term of the mesh sequence and keeps
    a component on which the composite stays nonzero.
    """
    _require_euclidean(q, "preprojective_chain")
    order = _ordering(q, "preprojective_chain")
    vertex = start if start is not None else order[0]
    target = injective(q, vertex, field_)
    x = projective(q, vertex, field_)
    chi = hom_basis(x, target)[0]
    psi = identity(x)
    r = 0
    sequences: Dict[int, Any] = {}
    links: List[ChainLink] = []
    for _ in range(length):
        if vertex not in sequences:
            sequences[vertex] = canonical_sequences(q, vertex, field_)["mesh"]
        seq = sequences[vertex]
        mu = seq.left
        components = []
        for (nxt_vertex, shift), proj in zip(_mesh_summands(q, vertex), seq.middle.projections):
            components.append((nxt_vertex, r + shift, coxeter_morphism(proj @ mu, r)))
        candidates, owners = [], []
        for k, (_, _, comp) in enumerate(components):
            for h in hom_basis(comp.target, target):
                candidates.append(h @ comp)
                owners.append((k, h))
        coeffs = solve_combination(candidates, chi)
        if coeffs is None:
            raise QuiverError("injective factorization failed")
        chosen = None
        for k, (nxt_vertex, nxt_r, comp) in enumerate(components):
            parts = [(h, c) for (owner, h), c in zip(owners, coeffs) if owner == k]
            chi_k = linear_combination([h for h, _ in parts], [c for _, c in parts], comp.target, target)
            if not (chi_k @ comp @ psi).is_zero():
                chosen = (nxt_vertex, nxt_r, comp, chi_k)
                break
        if chosen is None:
            raise QuiverError("no component keeps the composite nonzero")
        nxt_vertex, nxt_r, comp, chi = chosen
        links.append(ChainLink(vertex, r, comp))
        psi = comp @ psi
        vertex, r = nxt_vertex, nxt_r
    return links


def _mesh_summands(q: Quiver, i: int) -> List[Tuple[int, int]]:
    """(vertex, Coxeter shift) of each summand of the mesh middle term at i."""
    return [(a.source, 0) for a in q.arrows_into(i)] + [(b.target, -1) for b in q.arrows_out_of(i)]


# =============================================================================
# The translation quiver ℤQ and mesh relations
# =============================================================================

ZVertex = Tuple[int, int]


@dataclass(frozen=True)
class ZArrow:
    """α*[r]: j[r] -> i[r] or α_*[r]: i[r] -> j[r-1] for α: i -> j."""

    name: str
    source: ZVertex
    target: ZVertex


class ZQuiver:
    """
    The window r ∈ [-depth, 0] of ℤQ. Vertex i[r] is the pair (i, r) and
    corresponds to C^r P(i).
    """

    def __init__(self, base: Quiver, depth: int):
        gt = classify_graph(base)
        if not gt.is_dynkin:
            raise GraphTypeError("ℤQ mesh computations require a Dynkin quiver", found=gt.label())
        if depth < 1:
            raise MeshWindowError("window depth must be at least 1", depth)
        self.base = base
        self.depth = depth
        self.vertices: List[ZVertex] = [(i, r) for r in range(0, -depth - 1, -1) for i in base.vertices]
        arrows: List[ZArrow] = []
        for r in range(0, -depth - 1, -1):
            for a in base.arrows:
                arrows.append(ZArrow(f"{a.label}*[{r}]", (a.target, r), (a.source, r)))
                if r - 1 >= -depth:
                    arrows.append(ZArrow(f"{a.label}_*[{r}]", (a.source, r), (a.target, r - 1)))
        self.arrows = arrows
        self._out: Dict[ZVertex, List[ZArrow]] = {v: [] for v in self.vertices}
        for z in arrows:
            self._out[z.source].append(z)

    def contains(self, v: ZVertex) -> bool:
        i, r = v
        return 1 <= i <= self.base.vertex_count and -self.depth <= r <= 0

    def arrows_from(self, v: ZVertex) -> List[ZArrow]:
        return self._out.get(v, [])

    def paths(self, start: ZVertex, end: ZVertex) -> List[Tuple[ZArrow, ...]]:
        """All paths start -> end; arrows in traversal order."""
        found: List[Tuple[ZArrow, ...]] = []
        stack: List[Tuple[ZVertex, Tuple[ZArrow, ...]]] = [(start, ())]
        while stack:
            here, path = stack.pop()
            if here == end:
                found.append(path)
            if here[1] < end[1]:
                continue
            for z in self.arrows_from(here):
                if z.target[1] >= end[1]:
                    stack.append((z.target, path + (z,)))
        return sorted(found, key=lambda p: [z.name for z in p])

    def mesh(self, l: int, t: int) -> List[Tuple[ZArrow, ZArrow]]:
        """The length-two paths l[t] -> l[t-1] whose sum is the mesh element at l[t]."""
        out = []
        for first in self.arrows_from((l, t)):
            for second in self.arrows_from(first.target):
                if second.target == (l, t - 1):
                    out.append((first, second))
        return out


def mesh_hom_dim(zq: ZQuiver, start: ZVertex, end: ZVertex) -> int:
    """
    dim k[ℤQ(i[r], j[s])] modulo the mesh elements τ·m(l[t])·σ; equals
    dim Hom(C^r P(i), C^s P(j)).
    """
    for v in (start, end):
        if not zq.contains(v):
            raise MeshWindowError(f"vertex {v} lies outside the window", zq.depth)
    if end[1] <= -zq.depth:
        raise MeshWindowError("the target needs one spare column below it", zq.depth)
    paths = zq.paths(start, end)
    if not paths:
        return 0
    index = {p: k for k, p in enumerate(paths)}
    one = _QQ.one
    relations: List[Dict[int, Any]] = []
    for t in range(start[1], end[1], -1):
        for l in zq.base.vertices:
            terms = zq.mesh(l, t)
            if not terms:
                continue
            for sigma in zq.paths(start, (l, t)):
                for tau in zq.paths((l, t - 1), end):
                    eq: Dict[int, Any] = {}
                    for first, second in terms:
                        k = index[sigma + (first, second) + tau]
                        eq[k] = eq.get(k, _QQ.zero) + one
                    relations.append(eq)
    dim = len(paths) - sparse_rank(_QQ, len(paths), relations)
    logger.debug("mesh hom %s -> %s: %d paths, %d relations", start, end, len(paths), len(relations))
    return dim


__all__ = [
    "ChainLink",
    "ClassificationRecord",
    "Tag",
    "ZArrow",
    "ZQuiver",
    "a_tilde_cycle_family",
    "cycle_family_chain",
    "dynkin_indecomposables",
    "euclidean_series",
    "injective_word",
    "mesh_hom_dim",
    "preprojective_chain",
    "projective_word",
    "replay_word",
    "trichotomy",
]
