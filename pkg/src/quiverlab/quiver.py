"""
Quivers, paths and orientation surgery.

Vertices are the integers 1..n. Arrows carry unique string labels that survive
every surgery (sigma, opposite), so matrices can always be looked up by label.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from quiverlab.exceptions import CyclicQuiverError, QuiverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Arrow:
    label: str
    source: int
    target: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def reversed(self) -> "Arrow":
        return Arrow(self.label, self.target, self.source)


@dataclass(frozen=True)
class Path:
    """
    A path from ``start`` to ``end``; ``arrows`` are listed in traversal order.

    The trivial path at i has no arrows and start == end == i.
    """

    start: int
    arrows: Tuple[Arrow, ...] = ()
    end: Optional[int] = None

    def __post_init__(self) -> None:
        end = self.arrows[-1].target if self.arrows else self.start
        if self.end is None:
            object.__setattr__(self, "end", end)
        elif self.end != end:
            raise QuiverError("path end does not match its last arrow")
        here = self.start
        for a in self.arrows:
            if a.source != here:
                raise QuiverError("arrows in path are not composable", path=self.labels)
            here = a.target

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(a.label for a in self.arrows)

    def then(self, arrow: Arrow) -> "Path":
        """Post-compose with an arrow leaving the end vertex."""
        return Path(self.start, self.arrows + (arrow,))

    def sort_key(self) -> Tuple[int, Tuple[str, ...]]:
        return (self.length, self.labels)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e{self.start}"
        return "".join(reversed(self.labels))


@dataclass(frozen=True)
class Quiver:
    """
    A finite quiver.

    Attributes:
        vertex_count: n, vertices are 1..n.
        arrows: Arrow tuple; labels are unique.
        name: Display name only; ignored by equality.
    """

    vertex_count: int
    arrows: Tuple[Arrow, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise QuiverError("vertex count must be nonnegative")
        labels = set()
        for a in self.arrows:
            if not (1 <= a.source <= self.vertex_count and 1 <= a.target <= self.vertex_count):
                raise QuiverError(f"arrow {a.label} has an endpoint outside 1..{self.vertex_count}", arrow=a.label)
            if a.label in labels:
                raise QuiverError(f"duplicate arrow label {a.label}", arrow=a.label)
            labels.add(a.label)
        object.__setattr__(self, "arrows", tuple(self.arrows))

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Tuple[str, int, int]], name: str = "") -> "Quiver":
        return cls(vertex_count, tuple(Arrow(lbl, s, t) for lbl, s, t in edges), name)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Quiver":
        arrows = tuple(Arrow(str(a["label"]), int(a["from"]), int(a["to"])) for a in data.get("arrows", []))
        return cls(int(data["vertices"]), arrows, str(data.get("name", "")))

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "vertices": self.vertex_count,
            "arrows": [{"label": a.label, "from": a.source, "to": a.target} for a in self.arrows],
        }
        if self.name:
            out["name"] = self.name
        return out

    # -- queries -----------------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise QuiverError(f"unknown arrow {label}", arrow=label)

    def check_vertex(self, i: int) -> None:
        if not 1 <= i <= self.vertex_count:
            raise QuiverError(f"vertex {i} outside 1..{self.vertex_count}", vertex=i)

    def arrows_into(self, i: int) -> List[Arrow]:
        return sorted((a for a in self.arrows if a.target == i), key=lambda a: a.label)

    def arrows_out_of(self, i: int) -> List[Arrow]:
        return sorted((a for a in self.arrows if a.source == i), key=lambda a: a.label)

    def loops_at(self, i: int) -> List[Arrow]:
        return [a for a in self.arrows if a.source == i and a.target == i]

    def has_loops(self) -> bool:
        return any(a.is_loop for a in self.arrows)

    def is_sink(self, i: int) -> bool:
        return not any(a.source == i for a in self.arrows)

    def is_source(self, i: int) -> bool:
        return not any(a.target == i for a in self.arrows)

    def sinks(self) -> List[int]:
        return [i for i in self.vertices if self.is_sink(i)]

    def sources(self) -> List[int]:
        return [i for i in self.vertices if self.is_source(i)]

    def is_acyclic(self) -> bool:
        """True iff no non-trivial path returns to its start."""
        return self.topological_order() is not None

    def topological_order(self) -> Optional[List[int]]:
        indegree = {i: 0 for i in self.vertices}
        for a in self.arrows:
            indegree[a.target] += 1
        order: List[int] = []
        ready = sorted(i for i, d in indegree.items() if d == 0)
        while ready:
            i = ready.pop(0)
            order.append(i)
            for a in self.arrows_out_of(i):
                indegree[a.target] -= 1
                if indegree[a.target] == 0:
                    ready.append(a.target)
                    ready.sort()
        return order if len(order) == self.vertex_count else None

    def require_acyclic(self, operation: str) -> None:
        if not self.is_acyclic():
            raise CyclicQuiverError(operation)

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        seen = {1}
        frontier = [1]
        while frontier:
            i = frontier.pop()
            for a in self.arrows:
                for u, v in ((a.source, a.target), (a.target, a.source)):
                    if u == i and v not in seen:
                        seen.add(v)
                        frontier.append(v)
        return len(seen) == self.vertex_count

    def paths_from(self, i: int) -> List[Path]:
        """All paths starting at i, sorted by (length, labels)."""
        self.require_acyclic("paths_from")
        self.check_vertex(i)
        result: List[Path] = []
        layer = [Path(i)]
        while layer:
            result.extend(layer)
            layer = [p.then(a) for p in layer for a in self.arrows_out_of(p.end)]
        return sorted(result, key=Path.sort_key)

    def paths_between(self, i: int, j: int) -> List[Path]:
        """Q(i, j) in (length, label) order; ε_i included when i == j."""
        self.check_vertex(j)
        return [p for p in self.paths_from(i) if p.end == j]

    def longest_path_length(self) -> int:
        self.require_acyclic("longest_path_length")
        return max((p.length for i in self.vertices for p in self.paths_from(i)), default=0)

    # -- derived quivers ---------------------------------------------------

    def sigma(self, i: int) -> "Quiver":
        """σ_i Q: every arrow incident to i reversed, labels and order kept."""
        self.check_vertex(i)
        arrows = tuple(a.reversed() if i in (a.source, a.target) and not a.is_loop else a for a in self.arrows)
        return Quiver(self.vertex_count, arrows, self.name)

    def sigma_word(self, vertices: Sequence[int]) -> "Quiver":
        q = self
        for v in vertices:
            q = q.sigma(v)
        return q

    def admissible_ordering(self) -> Optional[List[int]]:
        """
        Sinks-first ordering i_1..i_n with each i_p a sink of
        σ_{i_{p-1}}...σ_{i_1} Q; None when Q has an oriented cycle.
        """
        if not self.is_acyclic():
            return None
        remaining = set(self.vertices)
        order: List[int] = []
        while remaining:
            sink = min(
                i for i in remaining
                if not any(a.source == i and a.target in remaining and a.target != i for a in self.arrows)
            )
            order.append(sink)
            remaining.remove(sink)
        return order

    def opposite(self) -> "Quiver":
        return Quiver(self.vertex_count, tuple(a.reversed() for a in self.arrows), f"{self.name}^op" if self.name else "")

    def separated(self) -> "Quiver":
        """Q^s: vertices 1..n and n+1..2n (i' = n + i), one arrow i -> j' per arrow i -> j."""
        n = self.vertex_count
        arrows = tuple(Arrow(a.label, a.source, n + a.target) for a in self.arrows)
        return Quiver(2 * n, arrows, f"{self.name}^s" if self.name else "")

    def underlying_graph(self) -> Dict[Tuple[int, int], int]:
        """Edge multiplicities d_ij (i <= j); loops counted at (i, i)."""
        edges: Dict[Tuple[int, int], int] = {}
        for a in self.arrows:
            key = (min(a.source, a.target), max(a.source, a.target))
            edges[key] = edges.get(key, 0) + 1
        return edges

    def __str__(self) -> str:
        body = ", ".join(f"{a.label}:{a.source}->{a.target}" for a in self.arrows)
        return f"{self.name or 'Quiver'}({self.vertex_count}; {body})"
