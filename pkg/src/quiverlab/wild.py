"""
Total representations and representation embeddings.

E: Rep(Q) -> Rep(Γ) (Γ the 2-loop quiver with loops σ = ``a``, τ = ``b``),
F: Rep(Γ) -> Rep(K₃), F_Q = F∘E, and F_r: Rep(K_r) -> Rep(Λ_{r+2}). Each
induces an isomorphism on Hom spaces.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from quiverlab.catalogue import kronecker, loop_quiver, subspace
from quiverlab.exceptions import QuiverError, TotalRepError
from quiverlab.linalg import Field, Matrix, coordinates, image_basis, sparse_kernel
from quiverlab.quiver import Quiver
from quiverlab.representation import Morphism, Representation

logger = logging.getLogger(__name__)

GAMMA = loop_quiver(2)
K3 = kronecker(3)


# =============================================================================
# Total representations
# =============================================================================


@dataclass(frozen=True)
class TotalRep:
    """
    A space V with idempotents φ_i (one per vertex) and maps φ_α (one per
    arrow) such that Σ φ_i = id, φ_iφ_j = δ_ij φ_i and φ_{t(α)} φ_α φ_{s(α)} = φ_α.
    """

    quiver: Quiver
    field: Field
    dim: int
    idempotents: Tuple[Matrix, ...]
    maps: Dict[str, Matrix]

    def violations(self) -> List[str]:
        n = self.dim
        ident = Matrix.identity(self.field, n)
        problems = []
        total = Matrix.zeros(self.field, n, n)
        for e in self.idempotents:
            total = total + e
        if total != ident:
            problems.append("idempotents do not sum to the identity")
        for i, e in enumerate(self.idempotents):
            for j, f in enumerate(self.idempotents):
                expected = e if i == j else Matrix.zeros(self.field, n, n)
                if e @ f != expected:
                    problems.append(f"idempotents {i + 1} and {j + 1} are not orthogonal")
        for a in self.quiver.arrows:
            m = self.maps[a.label]
            if self.idempotents[a.target - 1] @ m @ self.idempotents[a.source - 1] != m:
                problems.append(f"map {a.label} does not run from vertex {a.source} to {a.target}")
        return problems

    def check(self) -> None:
        problems = self.violations()
        if problems:
            raise TotalRepError("; ".join(problems))


def _offsets(dims: Sequence[int]) -> List[int]:
    out, acc = [], 0
    for d in dims:
        out.append(acc)
        acc += d
    return out


def _place(field_: Field, size: int, block: Matrix, row: int, col: int) -> Matrix:
    rows = [[field_.zero] * size for _ in range(size)]
    for i, r in enumerate(block.rows):
        rows[row + i][col: col + block.ncols] = r
    return Matrix(field_, rows, (size, size))


def total(x: Representation) -> TotalRep:
    """X̄ = ⊕ X_i with the canonical idempotents X̄_i and maps X̄_α."""
    n = x.total_dim
    offsets = _offsets(x.dims)
    idempotents = tuple(
        _place(x.field, n, Matrix.identity(x.field, x.dim(i)), offsets[i - 1], offsets[i - 1])
        for i in x.quiver.vertices
    )
    maps = {
        a.label: _place(x.field, n, x.arrow_matrix(a), offsets[a.target - 1], offsets[a.source - 1])
        for a in x.quiver.arrows
    }
    return TotalRep(x.quiver, x.field, n, idempotents, maps)


def untotal(t: TotalRep) -> Representation:
    """X_i = Im φ_i and X_α = φ_α restricted to X_{s(α)} in the basis of X_{t(α)}."""
    t.check()
    bases = [image_basis(e) for e in t.idempotents]
    mats = {}
    for a in t.quiver.arrows:
        src, tgt = bases[a.source - 1], bases[a.target - 1]
        if src.ncols and tgt.ncols:
            mats[a.label] = coordinates(tgt, t.maps[a.label] @ src)
        else:
            mats[a.label] = Matrix.zeros(t.field, tgt.ncols, src.ncols)
    return Representation(t.quiver, t.field, [b.ncols for b in bases], mats)


def total_morphism(phi: Morphism) -> Matrix:
    """φ̄ = diag(φ_i)."""
    return Matrix.block_diag(phi.field, list(phi.components))


def _commuting_equations(field_: Field, size_in: int, size_out: int, pairs: Sequence[Tuple[Matrix, Matrix]]) -> List[Dict[int, Any]]:
    """Entrywise equations ψA - Bψ = 0 for an unknown size_out x size_in matrix ψ."""
    equations = []
    for a, b in pairs:
        for r in range(size_out):
            for c in range(size_in):
                eq: Dict[int, Any] = {}
                for k in range(size_in):
                    v = a.entry(k, c)
                    if v != field_.zero:
                        eq[r * size_in + k] = eq.get(r * size_in + k, field_.zero) + v
                for k in range(size_out):
                    v = b.entry(r, k)
                    if v != field_.zero:
                        eq[k * size_in + c] = eq.get(k * size_in + c, field_.zero) - v
                if eq:
                    equations.append(eq)
    return equations


def equivariant_hom_dim(tx: TotalRep, ty: TotalRep) -> int:
    """dim of linear maps ψ: V_x -> V_y commuting with every φ_i and φ_α."""
    if tx.quiver != ty.quiver or tx.field != ty.field:
        raise TotalRepError("total representations over different quivers or fields")
    pairs = list(zip(tx.idempotents, ty.idempotents))
    pairs += [(tx.maps[a.label], ty.maps[a.label]) for a in tx.quiver.arrows]
    unknowns = tx.dim * ty.dim
    if unknowns == 0:
        return 0
    return len(sparse_kernel(tx.field, unknowns, _commuting_equations(tx.field, tx.dim, ty.dim, pairs)))


# =============================================================================
# E: Rep(Q) -> Rep(Γ)
# =============================================================================


def _block_count(q: Quiver) -> int:
    return q.vertex_count + len(q.arrows) + 2


def embed_E(x: Representation) -> Representation:
    """
    Γ-representation on X̄^{n+r+2}: σ is the block shift (id above the
    diagonal); τ has id below the diagonal, then X̄_1..X̄_n and X̄_{α_1}..X̄_{α_r}
    two blocks below it.
    """
    q = x.quiver
    n, blocks = q.vertex_count, _block_count(q)
    t = total(x)
    d = t.dim
    f = x.field
    zero = Matrix.zeros(f, d, d)
    ident = Matrix.identity(f, d)
    sigma = [[zero] * blocks for _ in range(blocks)]
    tau = [[zero] * blocks for _ in range(blocks)]
    for k in range(blocks - 1):
        sigma[k][k + 1] = ident
        tau[k + 1][k] = ident
    for k in range(1, n + 1):
        tau[k + 1][k - 1] = t.idempotents[k - 1]
    for j, a in enumerate(q.arrows, start=1):
        tau[n + 1 + j][n + j - 1] = t.maps[a.label]
    size = d * blocks
    mats = {"a": Matrix.blocks(f, sigma) if d else Matrix.zeros(f, 0, 0),
            "b": Matrix.blocks(f, tau) if d else Matrix.zeros(f, 0, 0)}
    logger.debug("E(%s): %d blocks of size %d", x.dims, blocks, d)
    return Representation(GAMMA, f, [size], mats)


def embed_E_morphism(phi: Morphism) -> Morphism:
    """Eφ = diag(φ̄, ..., φ̄)."""
    bar = total_morphism(phi)
    comp = Matrix.block_diag(phi.field, [bar] * _block_count(phi.source.quiver))
    return Morphism(embed_E(phi.source), embed_E(phi.target), [comp])


# =============================================================================
# F: Rep(Γ) -> Rep(K₃) and F_Q
# =============================================================================


def embed_F(x: Representation) -> Representation:
    """The parallel triple (X_σ, X_τ, id) on X => X."""
    if x.quiver != GAMMA:
        raise QuiverError("embed_F expects a representation of the 2-loop quiver")
    d = x.dims[0]
    mats = {"a": x.matrix("a"), "b": x.matrix("b"), "c": Matrix.identity(x.field, d)}
    return Representation(K3, x.field, [d, d], mats)


def embed_F_morphism(phi: Morphism) -> Morphism:
    comp = phi.components[0]
    return Morphism(embed_F(phi.source), embed_F(phi.target), [comp, comp])


def embed_FQ(x: Representation) -> Representation:
    return embed_F(embed_E(x))


def embed_FQ_morphism(phi: Morphism) -> Morphism:
    return embed_F_morphism(embed_E_morphism(phi))


# =============================================================================
# F_r: Rep(K_r) -> Rep(Λ_{r+2})
# =============================================================================


def _require_kronecker_r(x: Representation) -> int:
    q = x.quiver
    if q.vertex_count != 2 or any((a.source, a.target) != (1, 2) for a in q.arrows):
        raise QuiverError("embed_Fr expects a representation of a Kronecker quiver K_r")
    return len(q.arrows)


def embed_Fr(x: Representation) -> Representation:
    """
    The (r+2)-subspace system in X_1 × X_2: X_1 × 0, 0 × X_2 and the graphs
    of X_{α_1}, ..., X_{α_r}, each stored as its inclusion matrix.
    """
    r = _require_kronecker_r(x)
    f = x.field
    d1, d2 = x.dims
    ident1, ident2 = Matrix.identity(f, d1), Matrix.identity(f, d2)
    first = Matrix.vstack(f, [ident1, Matrix.zeros(f, d2, d1)], ncols=d1)
    second = Matrix.vstack(f, [Matrix.zeros(f, d1, d2), ident2], ncols=d2)
    graphs = [Matrix.vstack(f, [ident1, x.arrow_matrix(a)], ncols=d1) for a in x.quiver.arrows]
    target = subspace(r + 2)
    labels = [a.label for a in target.arrows]
    mats = dict(zip(labels, [first, second] + graphs))
    return Representation(target, f, [d1, d2] + [d1] * r + [d1 + d2], mats)


def embed_Fr_morphism(phi: Morphism) -> Morphism:
    r = _require_kronecker_r(phi.source)
    p1, p2 = phi.components
    centre = Matrix.block_diag(phi.field, [p1, p2])
    return Morphism(embed_Fr(phi.source), embed_Fr(phi.target), [p1, p2] + [p1] * r + [centre])


__all__ = [
    "GAMMA",
    "K3",
    "TotalRep",
    "embed_E",
    "embed_E_morphism",
    "embed_F",
    "embed_FQ",
    "embed_FQ_morphism",
    "embed_F_morphism",
    "embed_Fr",
    "embed_Fr_morphism",
    "equivariant_hom_dim",
    "total",
    "total_morphism",
    "untotal",
]
