"""
Reflection functors S±ᵢ, the natural maps ιᵢ and πᵢ, Coxeter functors and the
irreducible maps α* and α_* between (pre)projectives.

Direct sums over the arrows at a vertex are ordered by arrow label.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from quiverlab.decomposition import is_isomorphic
from quiverlab.exceptions import (
    CyclicQuiverError,
    MorphismError,
    RepresentationError,
    VertexConditionError,
)
from quiverlab.linalg import (
    Matrix,
    cokernel_projection,
    coordinates,
    kernel_basis,
    right_inverse,
)
from quiverlab.quiver import Arrow, Path, Quiver
from quiverlab.representation import (
    Morphism,
    DirectSum,
    Representation,
    direct_sum,
    is_short_exact,
    projective,
    projective_basis,
    simple,
    zero_morphism,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Single reflections
# =============================================================================


def _require_sink(q: Quiver, i: int) -> List[Arrow]:
    q.check_vertex(i)
    if not q.is_sink(i):
        raise VertexConditionError(i, "sink")
    return q.arrows_into(i)


def _require_source(q: Quiver, i: int) -> List[Arrow]:
    q.check_vertex(i)
    if not q.is_source(i):
        raise VertexConditionError(i, "source")
    return q.arrows_out_of(i)


def _block_ranges(x: Representation, vertices: Sequence[int]) -> List[range]:
    out, start = [], 0
    for v in vertices:
        out.append(range(start, start + x.dim(v)))
        start += x.dim(v)
    return out


def _sink_map(x: Representation, arrows: Sequence[Arrow]) -> Matrix:
    """ξ = (X_α): ⊕ X_{s(α)} -> X_i."""
    i = arrows[0].target if arrows else None
    rows = x.dim(i) if i is not None else 0
    return Matrix.hstack(x.field, [x.arrow_matrix(a) for a in arrows], nrows=rows)


def _source_map(x: Representation, arrows: Sequence[Arrow]) -> Matrix:
    """η = (X_α)ᵀ: X_i -> ⊕ X_{t(α)}."""
    i = arrows[0].source if arrows else None
    cols = x.dim(i) if i is not None else 0
    return Matrix.vstack(x.field, [x.arrow_matrix(a) for a in arrows], ncols=cols)


def _sink_kernel(x: Representation, i: int) -> Tuple[List[Arrow], Matrix]:
    arrows = _require_sink(x.quiver, i)
    xi = _sink_map(x, arrows) if arrows else Matrix.zeros(x.field, x.dim(i), 0)
    return arrows, kernel_basis(xi)


def _source_cokernel(x: Representation, i: int) -> Tuple[List[Arrow], Matrix]:
    arrows = _require_source(x.quiver, i)
    eta = _source_map(x, arrows) if arrows else Matrix.zeros(x.field, 0, x.dim(i))
    return arrows, cokernel_projection(eta)


def reflect_plus(x: Representation, i: int) -> Representation:
    """
    S⁺ᵢX over σᵢQ for a sink i: Yᵢ = Ker(⊕ X_{s(α)} -> Xᵢ), the reversed
    arrows act by inclusion followed by projection onto each summand.
    """
    arrows, k = _sink_kernel(x, i)
    blocks = _block_ranges(x, [a.source for a in arrows])
    dims = list(x.dims)
    dims[i - 1] = k.ncols
    mats = dict(x.matrices)
    for a, rng in zip(arrows, blocks):
        mats[a.label] = k.extract(rng, range(k.ncols))
    return Representation(x.quiver.sigma(i), x.field, dims, mats)


def reflect_minus(x: Representation, i: int) -> Representation:
    """
    S⁻ᵢX over σᵢQ for a source i: Yᵢ = Coker(Xᵢ -> ⊕ X_{t(α)}), the reversed
    arrows act by the restrictions of the cokernel map.
    """
    arrows, c = _source_cokernel(x, i)
    blocks = _block_ranges(x, [a.target for a in arrows])
    dims = list(x.dims)
    dims[i - 1] = c.nrows
    mats = dict(x.matrices)
    for a, rng in zip(arrows, blocks):
        mats[a.label] = c.extract(range(c.nrows), rng)
    return Representation(x.quiver.sigma(i), x.field, dims, mats)


def _block_diag_at(phi: Morphism, vertices: Sequence[int]) -> Matrix:
    return Matrix.block_diag(phi.field, [phi.component(v) for v in vertices])


def reflect_morphism_plus(phi: Morphism, i: int) -> Morphism:
    """S⁺ᵢφ: the restriction of ⊕ φ_{s(α)} to the kernels at i."""
    arrows, k_src = _sink_kernel(phi.source, i)
    _, k_tgt = _sink_kernel(phi.target, i)
    d = _block_diag_at(phi, [a.source for a in arrows])
    comps = list(phi.components)
    comps[i - 1] = coordinates(k_tgt, d @ k_src) if k_src.ncols else Matrix.zeros(phi.field, k_tgt.ncols, 0)
    return Morphism(reflect_plus(phi.source, i), reflect_plus(phi.target, i), comps)


def reflect_morphism_minus(phi: Morphism, i: int) -> Morphism:
    """S⁻ᵢφ: the map induced by ⊕ φ_{t(α)} on the cokernels at i."""
    arrows, c_src = _source_cokernel(phi.source, i)
    _, c_tgt = _source_cokernel(phi.target, i)
    d = _block_diag_at(phi, [a.target for a in arrows])
    comps = list(phi.components)
    if c_src.nrows:
        comps[i - 1] = c_tgt @ d @ right_inverse(c_src)
    else:
        comps[i - 1] = Matrix.zeros(phi.field, c_tgt.nrows, 0)
    return Morphism(reflect_minus(phi.source, i), reflect_minus(phi.target, i), comps)


def iota(x: Representation, i: int) -> Morphism:
    """ιᵢX: S⁻ᵢS⁺ᵢX -> X for a sink i; identity away from i, a monomorphism."""
    arrows, k = _sink_kernel(x, i)
    back = reflect_minus(reflect_plus(x, i), i)
    xi = _sink_map(x, arrows) if arrows else Matrix.zeros(x.field, x.dim(i), 0)
    c = cokernel_projection(k)
    comps = [Matrix.identity(x.field, d) for d in x.dims]
    comps[i - 1] = xi @ right_inverse(c) if c.nrows else Matrix.zeros(x.field, x.dim(i), 0)
    return Morphism(back, x, comps)


def pi(x: Representation, i: int) -> Morphism:
    """πᵢX: X -> S⁺ᵢS⁻ᵢX for a source i; identity away from i, an epimorphism."""
    arrows, c = _source_cokernel(x, i)
    there = reflect_plus(reflect_minus(x, i), i)
    eta = _source_map(x, arrows) if arrows else Matrix.zeros(x.field, 0, x.dim(i))
    k = kernel_basis(c)
    comps = [Matrix.identity(x.field, d) for d in x.dims]
    comps[i - 1] = coordinates(k, eta) if k.ncols else Matrix.zeros(x.field, 0, x.dim(i))
    return Morphism(x, there, comps)


# =============================================================================
# Words
# =============================================================================


@dataclass(frozen=True)
class ReflectionWord:
    """
    A sequence of reflections, first step first. Each ``+`` step applies at a
    sink of the current quiver, each ``-`` step at a source.
    """

    steps: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        for sign, vertex in self.steps:
            if sign not in ("+", "-"):
                raise RepresentationError(f"reflection sign must be + or -, got {sign!r}")
            if int(vertex) < 1:
                raise RepresentationError(f"bad reflection vertex {vertex}")

    @classmethod
    def from_list(cls, data: Sequence[Sequence[Any]]) -> "ReflectionWord":
        return cls(tuple((str(s), int(v)) for s, v in data))

    def to_list(self) -> List[List[Any]]:
        return [[s, v] for s, v in self.steps]

    def __len__(self) -> int:
        return len(self.steps)

    def then(self, sign: str, vertex: int) -> "ReflectionWord":
        return ReflectionWord(self.steps + ((sign, vertex),))

    def apply(self, x: Representation) -> Representation:
        for sign, vertex in self.steps:
            x = reflect_plus(x, vertex) if sign == "+" else reflect_minus(x, vertex)
        return x

    def apply_morphism(self, phi: Morphism) -> Morphism:
        for sign, vertex in self.steps:
            phi = reflect_morphism_plus(phi, vertex) if sign == "+" else reflect_morphism_minus(phi, vertex)
        return phi

    def target_quiver(self, q: Quiver) -> Quiver:
        return q.sigma_word([v for _, v in self.steps])


# =============================================================================
# Coxeter functors
# =============================================================================


def _ordering(q: Quiver, operation: str) -> List[int]:
    order = q.admissible_ordering()
    if order is None:
        raise CyclicQuiverError(operation)
    return order


def coxeter_word(q: Quiver, sign: str) -> ReflectionWord:
    """C⁺ = S⁺_{i_n} ... S⁺_{i_1}; C⁻ = S⁻_{i_1} ... S⁻_{i_n}."""
    order = _ordering(q, "coxeter")
    if sign == "+":
        return ReflectionWord(tuple(("+", v) for v in order))
    return ReflectionWord(tuple(("-", v) for v in reversed(order)))


def coxeter_plus(x: Representation) -> Representation:
    return coxeter_word(x.quiver, "+").apply(x)


def coxeter_minus(x: Representation) -> Representation:
    return coxeter_word(x.quiver, "-").apply(x)


def coxeter_power(x: Representation, r: int) -> Representation:
    """(C⁺)^r for r > 0, X for r = 0, (C⁻)^{-r} for r < 0."""
    if not x.quiver.is_acyclic():
        raise CyclicQuiverError("coxeter_power")
    word = coxeter_word(x.quiver, "+" if r >= 0 else "-")
    for _ in range(abs(r)):
        x = word.apply(x)
    return x


def coxeter_morphism(phi: Morphism, r: int) -> Morphism:
    """The Coxeter power applied to a morphism."""
    if not phi.source.quiver.is_acyclic():
        raise CyclicQuiverError("coxeter_morphism")
    word = coxeter_word(phi.source.quiver, "+" if r >= 0 else "-")
    for _ in range(abs(r)):
        phi = word.apply_morphism(phi)
    return phi


# =============================================================================
# Irreducible maps between projectives
# =============================================================================


def alpha_star(q: Quiver, label: str, field) -> Morphism:
    """α*: P(t(α)) -> P(s(α)), precomposition of paths with α."""
    a = q.arrow(label)
    src = projective(q, a.target, field)
    tgt = projective(q, a.source, field)
    src_basis = projective_basis(q, a.target)
    tgt_basis = projective_basis(q, a.source)
    comps = []
    for l in q.vertices:
        index = {p.arrows: k for k, p in enumerate(tgt_basis[l])}
        rows = [[field.zero] * len(src_basis[l]) for _ in tgt_basis[l]]
        for col, p in enumerate(src_basis[l]):
            composed = Path(a.source, (a,) + p.arrows)
            rows[index[composed.arrows]][col] = field.one
        comps.append(Matrix(field, rows, (len(tgt_basis[l]), len(src_basis[l]))))
    return Morphism(src, tgt, comps)


def _identify(x: Representation, y: Representation, what: str) -> Morphism:
    w = is_isomorphic(x, y)
    if w is None:
        raise MorphismError(f"could not identify {what}")
    return w


def alpha_lower_star(q: Quiver, label: str, field) -> Morphism:
    """
    α_*: P(s(α)) -> C⁻P(t(α)).

    With i = s(α) at position m of the admissible ordering, α becomes an arrow
    α̃: t(α) -> i of Q̃ = σ_{i_{m-1}}...σ_{i_1}Q and α_* is
    S⁻_{i_1}...S⁻_{i_{m-1}} α̃*, transported along explicit isomorphisms onto
    P(i) and C⁻P(t(α)).
    """
    a = q.arrow(label)
    order = _ordering(q, "alpha_lower_star")
    before = order[: order.index(a.source)]
    q_tilde = q.sigma_word(before)
    back = ReflectionWord(tuple(("-", v) for v in reversed(before)))
    raw = back.apply_morphism(alpha_star(q_tilde, label, field))
    u = _identify(projective(q, a.source, field), raw.source, f"P({a.source})")
    v = _identify(raw.target, coxeter_minus(projective(q, a.target, field)), f"C⁻P({a.target})")
    return v @ raw @ u


# =============================================================================
# Canonical exact sequences
# =============================================================================


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> X -left-> E -right-> Z -> 0."""

    name: str
    left: Morphism
    right: Morphism
    middle: Optional[DirectSum] = None

    def is_exact(self) -> bool:
        return is_short_exact(self.left, self.right)

    def composite(self) -> Morphism:
        return self.right @ self.left


def _assemble_into(parts: Sequence[Representation], maps: Sequence[Morphism], source: Representation, q: Quiver, field) -> Tuple[DirectSum, Morphism]:
    """The map source -> ⊕ parts with components ``maps``."""
    total = direct_sum(list(parts), q, field)
    out = zero_morphism(source, total.rep)
    for inj, m in zip(total.injections, maps):
        out = out + inj @ m
    return total, out


def _assemble_from(total: DirectSum, maps: Sequence[Morphism], target: Representation) -> Morphism:
    out = zero_morphism(total.rep, target)
    for proj, m in zip(total.projections, maps):
        out = out + m @ proj
    return out


def _normalize(terms: Sequence[Morphism], what: str) -> List[Any]:
    """Scalars c, all nonzero, with Σ c_k terms[k] = 0."""
    if not terms:
        return []
    vectors = [t.vector() for t in terms]
    field = terms[0].field
    length = len(vectors[0])
    if length == 0:
        return [field.one] * len(terms)
    mat = Matrix(field, [[v[r] for v in vectors] for r in range(length)], (length, len(vectors)))
    basis = kernel_basis(mat)
    for j in range(basis.ncols):
        coeffs = basis.column_values(j)
        if all(c != field.zero for c in coeffs):
            return coeffs
    combined = [sum(basis.column_values(j)[k] for j in range(basis.ncols)) for k in range(len(terms))] if basis.ncols else []
    if combined and all(c != field.zero for c in combined):
        return combined
    raise MorphismError(f"no nonzero scalars make the {what} sequence vanish")


def canonical_sequences(q: Quiver, i: int, field) -> Dict[str, ShortExactSequence]:
    """
    The three canonical sequences at vertex i:

    ``radical``: 0 -> ⊕_{α: i->j} P(j) -> P(i) -> S(i) -> 0;
    ``sink`` (i a sink only): 0 -> P(i) -> ⊕_{α: j->i} P(j) -> C⁻P(i) -> 0;
    ``mesh``: 0 -> P(i) -> ⊕_{α: j->i} P(j) ⊕ ⊕_{β: i->j} C⁻P(j) -> C⁻P(i) -> 0.

    The maps α_* and β_* are rescaled so that each composite vanishes. When
    P(i) is also injective, C⁻P(i) = 0 and neither ``sink`` nor ``mesh`` is
    returned. Every returned sequence is checked to be short exact.
    """
    if not q.is_acyclic():
        raise CyclicQuiverError("canonical_sequences")
    q.check_vertex(i)
    p_i = projective(q, i, field)
    out: Dict[str, ShortExactSequence] = {}

    outgoing = q.arrows_out_of(i)
    incoming = q.arrows_into(i)

    stars_out = [alpha_star(q, b.label, field) for b in outgoing]
    total = direct_sum([s.source for s in stars_out], q, field)
    left = _assemble_from(total, stars_out, p_i)
    top = simple(q, i, field)
    comps = [Matrix.zeros(field, top.dims[v - 1], p_i.dims[v - 1]) for v in q.vertices]
    comps[i - 1] = Matrix.identity(field, 1)
    out["radical"] = ShortExactSequence("radical", left, Morphism(p_i, top, comps), total)

    c_p_i = coxeter_minus(p_i)
    if c_p_i.is_zero():
        logger.debug("P(%d) is injective; only the radical sequence exists", i)
        return _checked(out)
    stars_in = [alpha_star(q, a.label, field) for a in incoming]
    lowers_in = [alpha_lower_star(q, a.label, field) for a in incoming]
    lowers_out = [alpha_lower_star(q, b.label, field) for b in outgoing]
    shifted_out = [coxeter_morphism(s, -1) for s in stars_out]

    if not outgoing:
        scalars = _normalize([lo @ st for lo, st in zip(lowers_in, stars_in)], "sink")
        scaled = [lo.scale(c) for lo, c in zip(lowers_in, scalars)]
        total, left = _assemble_into([s.target for s in stars_in], stars_in, p_i, q, field)
        out["sink"] = ShortExactSequence("sink", left, _assemble_from(total, scaled, c_p_i), total)

    terms = [lo @ st for lo, st in zip(lowers_in, stars_in)] + [
        sh @ lo for sh, lo in zip(shifted_out, lowers_out)
    ]
    scalars = _normalize(terms, "mesh")
    lam, mu = scalars[: len(incoming)], scalars[len(incoming):]
    first = list(stars_in) + [lo.scale(c) for lo, c in zip(lowers_out, mu)]
    second = [lo.scale(c) for lo, c in zip(lowers_in, lam)] + list(shifted_out)
    total, left = _assemble_into([m.target for m in first], first, p_i, q, field)
    out["mesh"] = ShortExactSequence("mesh", left, _assemble_from(total, second, c_p_i), total)
    logger.debug("canonical sequences at vertex %d: %s", i, sorted(out))
    return _checked(out)


def _checked(sequences: Dict[str, ShortExactSequence]) -> Dict[str, ShortExactSequence]:
    for name, seq in sequences.items():
        if not seq.is_exact():
            raise MorphismError(f"the {name} sequence is not short exact")
    return sequences


def mesh_relation(q: Quiver, i: int, r: int, field) -> Morphism:
    """
    Σ C^r α_* C^r α* + Σ C^{r-1} β* C^r β_* as a morphism C^r P(i) -> C^{r-1} P(i);
    it vanishes for every vertex i and integer r.
    """
    seq = canonical_sequences(q, i, field).get("mesh")
    if seq is None:
        # P(i) projective-injective: C^{r-1}P(i) and the relation are zero
        p_i = projective(q, i, field)
        return zero_morphism(coxeter_power(p_i, r), coxeter_power(p_i, r - 1))
    return coxeter_morphism(seq.right, r) @ coxeter_morphism(seq.left, r)


__all__ = [
    "ReflectionWord",
    "ShortExactSequence",
    "alpha_lower_star",
    "alpha_star",
    "canonical_sequences",
    "coxeter_minus",
    "coxeter_morphism",
    "coxeter_plus",
    "coxeter_power",
    "coxeter_word",
    "iota",
    "mesh_relation",
    "pi",
    "reflect_minus",
    "reflect_morphism_minus",
    "reflect_morphism_plus",
    "reflect_plus",
]
