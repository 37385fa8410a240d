"""
Euler, symmetric and quadratic forms; Dynkin/Euclidean classification;
reflections, the Coxeter transformation, the defect and root enumeration.

Dimension vectors are plain integer tuples indexed by vertex (position k holds
vertex k + 1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from quiverlab.config import get_settings
from quiverlab.exceptions import (
    CyclicQuiverError,
    GraphTypeError,
    LoopReflectionError,
    ShapeMismatchError,
    StepBudgetExceededError,
)
from quiverlab.linalg import Field, Matrix, kernel_basis
from quiverlab.quiver import Quiver

logger = logging.getLogger(__name__)

DimVector = Tuple[int, ...]

_QQ = Field.rationals()


# =============================================================================
# Graphs and forms
# =============================================================================


@dataclass(frozen=True)
class Graph:
    """
    An undirected multigraph on vertices 1..n.

    Attributes:
        vertex_count: n.
        edges: Multiplicity d_ij for i <= j; loops stored at (i, i).
    """

    vertex_count: int
    edges: Dict[Tuple[int, int], int] = field(default_factory=dict, hash=False)

    @classmethod
    def from_quiver(cls, q: Quiver) -> "Graph":
        return cls(q.vertex_count, q.underlying_graph())

    def neighbours(self, i: int) -> List[int]:
        out = []
        for (u, v), d in self.edges.items():
            if u == i and v != i:
                out.extend([v] * d)
            elif v == i and u != i:
                out.extend([u] * d)
        return sorted(out)

    def degree(self, i: int) -> int:
        return len(self.neighbours(i)) + 2 * self.edges.get((i, i), 0)

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        seen, frontier = {1}, [1]
        while frontier:
            for v in self.neighbours(frontier.pop()):
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
        return len(seen) == self.vertex_count


@dataclass(frozen=True)
class FormData:
    """
    Euler form E (⟨x, y⟩ = xᵀ E y) and its symmetrization S = E + Eᵀ.

    E_ii = 1 - loops at i; E_ij = -(number of arrows i -> j) for i != j.
    """

    euler: Tuple[Tuple[int, ...], ...]
    loops: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.euler)

    @property
    def symmetric(self) -> Tuple[Tuple[int, ...], ...]:
        e = self.euler
        return tuple(tuple(e[i][j] + e[j][i] for j in range(self.n)) for i in range(self.n))

    @classmethod
    def from_quiver(cls, q: Quiver) -> "FormData":
        n = q.vertex_count
        e = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        loops = [0] * n
        for a in q.arrows:
            e[a.source - 1][a.target - 1] -= 1
            if a.is_loop:
                loops[a.source - 1] += 1
        return cls(tuple(map(tuple, e)), tuple(loops))

    @classmethod
    def from_graph(cls, g: Graph) -> "FormData":
        """Orient each edge i -> j with i <= j; the symmetric form does not depend on it."""
        n = g.vertex_count
        e = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        loops = [0] * n
        for (u, v), d in g.edges.items():
            e[u - 1][v - 1] -= d
            if u == v:
                loops[u - 1] += d
        return cls(tuple(map(tuple, e)), tuple(loops))

    def _check(self, *vectors: Sequence[int]) -> None:
        for x in vectors:
            if len(x) != self.n:
                raise ShapeMismatchError("dimension vector length mismatch", left=[len(x)], right=[self.n])


def _forms(f: Union[FormData, Quiver]) -> FormData:
    return FormData.from_quiver(f) if isinstance(f, Quiver) else f


def euler_form(f: Union[FormData, Quiver], x: Sequence[int], y: Sequence[int]) -> int:
    """⟨x, y⟩ = Σ x_i y_i - Σ_α x_s(α) y_t(α)."""
    f = _forms(f)
    f._check(x, y)
    return sum(x[i] * f.euler[i][j] * y[j] for i in range(f.n) for j in range(f.n))


def symmetric_form(f: Union[FormData, Quiver], x: Sequence[int], y: Sequence[int]) -> int:
    """(x, y) = ⟨x, y⟩ + ⟨y, x⟩."""
    f = _forms(f)
    return euler_form(f, x, y) + euler_form(f, y, x)


def quadratic(f: Union[FormData, Quiver], x: Sequence[int]) -> int:
    """q(x) = ⟨x, x⟩ = (x, x) / 2."""
    return euler_form(f, x, x)


def unit(n: int, i: int) -> DimVector:
    """e_i for vertex i (1-based)."""
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def is_positive(x: Sequence[int]) -> bool:
    """x > 0: nonzero with all entries nonnegative."""
    return any(x) and all(v >= 0 for v in x)


def add(x: Sequence[int], y: Sequence[int], scale: int = 1) -> DimVector:
    return tuple(a + scale * b for a, b in zip(x, y))


# =============================================================================
# Classification
# =============================================================================


@dataclass(frozen=True)
class GraphType:
    """Dynkin(A|D|E, n), Euclidean(Ã|D̃|Ẽ, m) with δ, or Other."""

    kind: str
    family: Optional[str] = None
    rank: Optional[int] = None
    delta: Optional[DimVector] = None

    @property
    def is_dynkin(self) -> bool:
        return self.kind == "dynkin"

    @property
    def is_euclidean(self) -> bool:
        return self.kind == "euclidean"

    def label(self) -> str:
        if self.kind == "other":
            return "other"
        return f"{self.family}{self.rank}"

    def to_dict(self) -> Dict[str, object]:
        if self.kind == "dynkin":
            return {"type": "dynkin", "family": self.family, "n": self.rank}
        if self.kind == "euclidean":
            return {"type": "euclidean", "family": self.family, "m": self.rank, "delta": list(self.delta or ())}
        return {"type": "other"}


OTHER = GraphType("other")


def _arms(g: Graph, centre: int) -> List[int]:
    """Lengths of the simple paths leaving a branch vertex in a tree."""
    lengths = []
    for start in g.neighbours(centre):
        length, prev, here = 1, centre, start
        while True:
            nxt = [v for v in g.neighbours(here) if v != prev]
            if len(nxt) != 1:
                break
            prev, here = here, nxt[0]
            length += 1
        lengths.append(length)
    return sorted(lengths)


def _shape_type(g: Graph) -> Tuple[str, Optional[str], Optional[int]]:
    n = g.vertex_count
    loops = sum(d for (u, v), d in g.edges.items() if u == v)
    if loops:
        if n == 1 and g.edges == {(1, 1): 1}:
            return "euclidean", "A~", 0
        return "other", None, None
    if any(d > 1 for d in g.edges.values()):
        if n == 2 and g.edges == {(1, 2): 2}:
            return "euclidean", "A~", 1
        return "other", None, None
    edge_count = len(g.edges)
    degrees = [g.degree(i) for i in range(1, n + 1)]
    if edge_count == n:
        if n >= 3 and all(d == 2 for d in degrees):
            return "euclidean", "A~", n - 1
        return "other", None, None
    if edge_count != n - 1:
        return "other", None, None
    branch = [i for i in range(1, n + 1) if degrees[i - 1] >= 3]
    if not branch:
        return "dynkin", "A", n
    if max(degrees) > 4:
        return "other", None, None
    if len(branch) == 1:
        arms = _arms(g, branch[0])
        if arms == [1, 1, 1, 1]:
            return "euclidean", "D~", 4
        if len(arms) != 3:
            return "other", None, None
        if arms[:2] == [1, 1]:
            return "dynkin", "D", n
        table = {
            (1, 2, 2): ("dynkin", "E", 6),
            (1, 2, 3): ("dynkin", "E", 7),
            (1, 2, 4): ("dynkin", "E", 8),
            (2, 2, 2): ("euclidean", "E~", 6),
            (1, 3, 3): ("euclidean", "E~", 7),
            (1, 2, 5): ("euclidean", "E~", 8),
        }
        return table.get(tuple(arms), ("other", None, None))
    if len(branch) == 2 and all(degrees[b - 1] == 3 for b in branch):
        leaves_ok = all(
            sum(1 for v in g.neighbours(b) if g.degree(v) == 1) >= 2 for b in branch
        )
        if leaves_ok:
            return "euclidean", "D~", n - 1
    return "other", None, None


def _leading_minors_positive(s: Sequence[Sequence[int]], keep: Sequence[int]) -> bool:
    sub = Matrix.from_rows(_QQ, [[s[i][j] for j in keep] for i in keep]) if keep else None
    if sub is None:
        return True
    for k in range(1, len(keep) + 1):
        if sub.extract(range(k), range(k)).determinant() <= 0:
            return False
    return True


def primitive_radical_vector(s: Sequence[Sequence[int]]) -> Optional[DimVector]:
    """The positive primitive generator of ker S, when ker S is a line with such a vector."""
    n = len(s)
    k = kernel_basis(Matrix.from_rows(_QQ, s))
    if k.ncols != 1:
        return None
    fracs = [_QQ.to_fraction(v) for v in k.column_values(0)]
    den = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fracs), 1)
    ints = [int(f * den) for f in fracs]
    g = reduce(gcd, (abs(v) for v in ints), 0) or 1
    ints = [v // g for v in ints]
    if all(v <= 0 for v in ints):
        ints = [-v for v in ints]
    if not all(v > 0 for v in ints) or len(ints) != n:
        return None
    return tuple(ints)


def _minor_type(f: FormData) -> Tuple[str, Optional[DimVector]]:
    s = f.symmetric
    n = f.n
    if _leading_minors_positive(s, list(range(n))):
        return "dynkin", None
    delta = primitive_radical_vector(s)
    if delta is None:
        return "other", None
    e = min(i for i in range(n) if delta[i] != 0)
    rest = [i for i in range(n) if i != e]
    if _leading_minors_positive(s, rest):
        return "euclidean", delta
    return "other", None


def classify_graph(g: Union[Graph, Quiver]) -> GraphType:
    """
    Dynkin iff q is positive definite, Euclidean iff positive semi-definite
    but not definite (with the positive generator δ of rad q), Other otherwise.

    Shape matching against the diagram tables and the minor test run
    independently and must agree.

    Raises:
        GraphTypeError: For a disconnected graph or when the tests disagree.
    """
    if isinstance(g, Quiver):
        g = Graph.from_quiver(g)
    if not g.is_connected():
        raise GraphTypeError("classification requires a connected graph")
    kind, family, rank = _shape_type(g)
    minor_kind, delta = _minor_type(FormData.from_graph(g))
    if kind != minor_kind:
        raise GraphTypeError(
            f"shape test says {kind} but minor test says {minor_kind}", found=f"{family}{rank}"
        )
    logger.debug("classified graph on %d vertices as %s %s%s", g.vertex_count, kind, family, rank)
    if kind == "other":
        return OTHER
    return GraphType(kind, family, rank, delta)


def _require(q: Union[Quiver, Graph], *kinds: str) -> GraphType:
    gt = classify_graph(q)
    if gt.kind not in kinds:
        raise GraphTypeError(f"requires a {' or '.join(kinds)} graph", found=gt.label())
    return gt


# =============================================================================
# Reflections and the Coxeter transformation
# =============================================================================


def reflection(f: Union[FormData, Quiver], i: int, x: Sequence[int]) -> DimVector:
    """σ_i(x) = x - (x, e_i) e_i (requires no loop at i)."""
    f = _forms(f)
    f._check(x)
    if f.loops[i - 1]:
        raise LoopReflectionError(i)
    s = f.symmetric
    pairing = sum(x[j] * s[j][i - 1] for j in range(f.n))
    return tuple(v - pairing if k == i - 1 else v for k, v in enumerate(x))


def reflect_word(f: Union[FormData, Quiver], vertices: Sequence[int], x: Sequence[int]) -> DimVector:
    """Apply σ at each vertex in order (first listed acts first)."""
    f = _forms(f)
    out = tuple(x)
    for v in vertices:
        out = reflection(f, v, out)
    return out


def _ordering(q: Quiver) -> List[int]:
    order = q.admissible_ordering()
    if order is None:
        raise CyclicQuiverError("coxeter_transform")
    return order


def coxeter_transform(q: Quiver, x: Sequence[int]) -> DimVector:
    """c(x) = σ_{i_n} ... σ_{i_1}(x) along the admissible ordering."""
    return reflect_word(q, _ordering(q), x)


def coxeter_inverse(q: Quiver, x: Sequence[int]) -> DimVector:
    """c^{-1}(x) = σ_{i_1} ... σ_{i_n}(x)."""
    return reflect_word(q, list(reversed(_ordering(q))), x)


def coxeter_iterate(q: Quiver, x: Sequence[int], r: int) -> DimVector:
    """c^r(x) for any integer r."""
    out = tuple(x)
    step = coxeter_transform if r >= 0 else coxeter_inverse
    for _ in range(abs(r)):
        out = step(q, out)
    return out


def in_radical(f: Union[FormData, Quiver], x: Sequence[int]) -> bool:
    """(x, e_i) = 0 for all i."""
    f = _forms(f)
    s = f.symmetric
    return all(sum(x[j] * s[j][i] for j in range(f.n)) == 0 for i in range(f.n))


def coxeter_order(q: Quiver, limit: int = 10_000) -> int:
    """Least h > 0 with c^h = identity on Z^n / rad q (iterating on the e_i)."""
    _require(q, "dynkin", "euclidean")
    f = FormData.from_quiver(q)
    n = q.vertex_count
    current = [unit(n, i) for i in q.vertices]
    for h in range(1, limit + 1):
        current = [coxeter_transform(q, x) for x in current]
        if all(in_radical(f, add(x, unit(n, i), -1)) for i, x in zip(q.vertices, current)):
            return h
    raise StepBudgetExceededError("coxeter_order", limit)


def defect(q: Quiver, x: Sequence[int]) -> int:
    """∂x = ⟨δ, x⟩ for a Euclidean quiver; equals -⟨x, δ⟩."""
    gt = _require(q, "euclidean")
    delta = gt.delta or ()
    value = euler_form(q, delta, x)
    assert value == -euler_form(q, x, delta), "defect is not antisymmetric in δ"
    return value


def euclidean_delta(q: Union[Quiver, Graph]) -> DimVector:
    gt = _require(q, "euclidean")
    return gt.delta or ()


# =============================================================================
# Roots
# =============================================================================


def _schur_bounds(s: Sequence[Sequence[int]]) -> List[Tuple[int, Tuple[Tuple[int, ...], ...]]]:
    """
    For each prefix length k, an integer matrix M_k and scale D_k so that
    min over real completions of (x, x) with x_1..x_k fixed equals
    aᵀ M_k a / D_k (Schur complement of the trailing block).
    """
    n = len(s)
    out: List[Tuple[int, Tuple[Tuple[int, ...], ...]]] = []
    for k in range(n + 1):
        if k == 0:
            out.append((1, ()))
            continue
        a = Matrix.from_rows(_QQ, [[s[i][j] for j in range(k)] for i in range(k)])
        if k == n:
            schur = a
        else:
            b = Matrix.from_rows(_QQ, [[s[i][j] for j in range(k, n)] for i in range(k)])
            c = Matrix.from_rows(_QQ, [[s[i][j] for j in range(k, n)] for i in range(k, n)])
            schur = a - b @ c.inverse() @ b.T
        fracs = [[_QQ.to_fraction(v) for v in row] for row in schur.rows]
        den = reduce(lambda u, v: u * v // gcd(u, v), (fr.denominator for row in fracs for fr in row), 1)
        out.append((den, tuple(tuple(int(fr * den) for fr in row) for row in fracs)))
    return out


def _search(s: Sequence[Sequence[int]], lower: Sequence[int], upper: Sequence[int]) -> List[DimVector]:
    n = len(s)
    bounds = _schur_bounds(s)
    found: List[DimVector] = []
    x = [0] * n

    def bound_ok(k: int) -> bool:
        den, m = bounds[k]
        if k == 0:
            return True
        value = sum(x[i] * m[i][j] * x[j] for i in range(k) for j in range(k))
        return value <= 2 * den

    def walk(k: int) -> None:
        if k == n:
            if any(x):
                found.append(tuple(x))
            return
        for v in range(lower[k], upper[k] + 1):
            x[k] = v
            if bound_ok(k + 1):
                walk(k + 1)
        x[k] = 0

    walk(0)
    return found


def enumerate_roots(g: Union[Quiver, Graph], positive: bool = True) -> List[DimVector]:
    """
    Roots {x != 0 : q(x) <= 1}, sorted lexicographically.

    Dynkin: the positive roots (with their negatives unless ``positive``).
    Euclidean: the finite representative set -δ <= x <= δ (positive part
    only when ``positive``); every root is one of these plus a multiple of δ.
    """
    gt = _require(g, "dynkin", "euclidean")
    graph = Graph.from_quiver(g) if isinstance(g, Quiver) else g
    s = FormData.from_graph(graph).symmetric
    n = graph.vertex_count
    if gt.is_dynkin:
        box = get_settings().root_box
        roots = _search(s, [0] * n, [box] * n)
        if not positive:
            roots = roots + [tuple(-v for v in r) for r in roots]
    else:
        delta = gt.delta or ()
        lower = [0] * n if positive else [-d for d in delta]
        roots = _search(s, lower, list(delta))
        if positive:
            roots = [r for r in roots if is_positive(r)]
    logger.debug("enumerated %d roots for %s", len(roots), gt.label())
    return sorted(roots)


def positive_roots(g: Union[Quiver, Graph]) -> List[DimVector]:
    return enumerate_roots(g, positive=True)
