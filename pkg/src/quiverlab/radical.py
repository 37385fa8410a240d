"""
The radical filtration and the separated quiver.

Rad X is the vertex-wise sum of arrow images. For radical square zero
representations the functors S: Rep(Q) -> Rep(Q^s) and T: Rep(Q^s) -> Rep(Q)
are mutually inverse on isomorphism classes (separated reps on the Q^s side).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from quiverlab.exceptions import NonNilpotentRadicalError, QuiverError, RadicalSquareError
from quiverlab.forms import DimVector
from quiverlab.linalg import Matrix, complement_basis, coordinates, image_basis, right_inverse, span_sum
from quiverlab.quiver import Arrow, Quiver
from quiverlab.representation import (
    Morphism,
    Representation,
    Subobject,
    identity,
    quotient,
    subrepresentation,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Radical filtration
# =============================================================================


def radical_subobject(x: Representation) -> Subobject:
    """Rad X with its inclusion; (Rad X)_i = Σ_{α: j -> i} Im X_α."""
    bases = []
    for i in x.quiver.vertices:
        images = [image_basis(x.arrow_matrix(a)) for a in x.quiver.arrows_into(i)]
        bases.append(span_sum(x.field, x.dim(i), images))
    return subrepresentation(x, bases)


def radical(x: Representation) -> Representation:
    return radical_subobject(x).rep


def radical_power_subobject(x: Representation, n: int) -> Subobject:
    """Rad^n X with its inclusion into X."""
    if n < 0:
        raise QuiverError("radical power must be nonnegative", n=n)
    current = Subobject(x, identity(x))
    for _ in range(n):
        step = radical_subobject(current.rep)
        current = Subobject(step.rep, current.map @ step.map)
    return current


def radical_power(x: Representation, n: int) -> Representation:
    return radical_power_subobject(x, n).rep


@dataclass
class RadicalFiltration:
    """X ⊇ Rad X ⊇ Rad² X ⊇ ..., stopped at the first repeated term."""

    terms: List[Subobject] = field(default_factory=list)

    @property
    def dims(self) -> List[DimVector]:
        return [t.rep.dims for t in self.terms]

    def is_nilpotent(self) -> bool:
        return self.terms[-1].rep.is_zero()

    def __len__(self) -> int:
        return len(self.terms)


def radical_filtration(x: Representation) -> RadicalFiltration:
    current = Subobject(x, identity(x))
    filtration = RadicalFiltration([current])
    while True:
        step = radical_subobject(current.rep)
        if step.rep.dims == current.rep.dims:
            break
        current = Subobject(step.rep, current.map @ step.map)
        filtration.terms.append(current)
    logger.debug("radical filtration of %s: %s", x.dims, filtration.dims)
    return filtration


def jacobson_radical(x: Representation) -> Representation:
    """
    rad X, computed as Rad X. The two agree once Rad^n X = 0; otherwise
    NonNilpotentRadicalError is raised.
    """
    filtration = radical_filtration(x)
    if not filtration.is_nilpotent():
        raise NonNilpotentRadicalError(filtration.terms[-1].rep.dims)
    return radical(x)


def has_radical_square_zero(x: Representation) -> bool:
    return radical_power(x, 2).is_zero()


# =============================================================================
# Separated quiver
# =============================================================================


def unseparated_quiver(qs: Quiver) -> Quiver:
    """The Q with Q^s == qs, read back from the primed targets."""
    if qs.vertex_count % 2:
        raise QuiverError("a separated quiver has an even number of vertices")
    n = qs.vertex_count // 2
    arrows = []
    for a in qs.arrows:
        if not (a.source <= n < a.target):
            raise QuiverError(f"arrow {a.label} does not run from an unprimed to a primed vertex", arrow=a.label)
        arrows.append(Arrow(a.label, a.source, a.target - n))
    return Quiver(n, tuple(arrows))


def separated_S(x: Representation) -> Representation:
    """
    (SX)_i = X_i / Rad X_i and (SX)_{i'} = Rad X_i, with (SX)_ᾱ induced by X_α.

    Raises:
        RadicalSquareError: If Rad² X != 0.
    """
    rad = radical_subobject(x)
    rad2 = radical(rad.rep)
    if not rad2.is_zero():
        raise RadicalSquareError(rad2.dims)
    q = x.quiver
    top = quotient(x, rad.map.components)
    mats = {}
    for a in q.arrows:
        proj = top.map.components[a.source - 1]
        incl = rad.map.components[a.target - 1]
        if incl.ncols and proj.nrows:
            mats[a.label] = coordinates(incl, x.arrow_matrix(a) @ right_inverse(proj))
        else:
            mats[a.label] = Matrix.zeros(x.field, incl.ncols, proj.nrows)
    out = Representation(q.separated(), x.field, list(top.rep.dims) + list(rad.rep.dims), mats)
    logger.debug("S(%s) = %s", x.dims, out.dims)
    return out


def separated_T(y: Representation, q: Optional[Quiver] = None) -> Representation:
    """(TY)_i = Y_i ⊕ Y_{i'} and (TY)_α = [[0, 0], [Y_ᾱ, 0]]."""
    q = q or unseparated_quiver(y.quiver)
    if q.separated() != y.quiver:
        raise QuiverError("representation does not live on the separated quiver of q")
    n = q.vertex_count
    f = y.field
    dims = [y.dim(i) + y.dim(n + i) for i in q.vertices]
    mats = {}
    for a in q.arrows:
        s, s2, t, t2 = y.dim(a.source), y.dim(n + a.source), y.dim(a.target), y.dim(n + a.target)
        mats[a.label] = Matrix.blocks(f, [
            [Matrix.zeros(f, t, s), Matrix.zeros(f, t, s2)],
            [y.matrix(a.label), Matrix.zeros(f, t2, s2)],
        ])
    return Representation(q, f, dims, mats)


def separated_T_morphism(phi: Morphism, q: Optional[Quiver] = None) -> Morphism:
    """Tφ = diag(φ_i, φ_{i'}) at each vertex i."""
    q = q or unseparated_quiver(phi.source.quiver)
    n = q.vertex_count
    comps = [Matrix.block_diag(phi.field, [phi.component(i), phi.component(n + i)]) for i in q.vertices]
    return Morphism(separated_T(phi.source, q), separated_T(phi.target, q), comps)


def is_separated(y: Representation) -> bool:
    """(Rad Y)_i = Y_i at every sink i."""
    rad = radical(y)
    return all(rad.dim(i) == y.dim(i) for i in y.quiver.sinks())


@dataclass
class SinkSplitting:
    """X = X' ⊕ ⊕_{i sink} S(i)^{m_i} with X' separated."""

    separated: Subobject
    simples: Dict[int, int]
    complements: Dict[int, Matrix]


def split_sink_simples(x: Representation) -> SinkSplitting:
    """The unique decomposition splitting off copies of simples at sinks."""
    rad = radical_subobject(x)
    sinks = set(x.quiver.sinks())
    bases, simples, complements = [], {}, {}
    for i in x.quiver.vertices:
        if i in sinks:
            inside = rad.map.components[i - 1]
            extra = complement_basis(inside)
            bases.append(inside)
            if extra.ncols:
                simples[i] = extra.ncols
                complements[i] = extra
        else:
            bases.append(Matrix.identity(x.field, x.dim(i)))
    return SinkSplitting(subrepresentation(x, bases), simples, complements)


__all__ = [
    "RadicalFiltration",
    "SinkSplitting",
    "has_radical_square_zero",
    "is_separated",
    "jacobson_radical",
    "radical",
    "radical_filtration",
    "radical_power",
    "radical_power_subobject",
    "radical_subobject",
    "separated_S",
    "separated_T",
    "separated_T_morphism",
    "split_sink_simples",
    "unseparated_quiver",
]
