"""Named quivers: Dynkin and Euclidean diagrams with fixed orientations, plus the
Kronecker, subspace, Jordan and loop quivers."""

from __future__ import annotations

import re
from typing import List, Tuple

from quiverlab.exceptions import QuiverError
from quiverlab.quiver import Quiver


def loop_labels(r: int) -> List[str]:
    """Arrow labels shared by K_r and the r-loop quiver: a, b, c, then a1..ar."""
    if r <= 3:
        return list("abc"[:r])
    return [f"a{k}" for k in range(1, r + 1)]


def _chain(vertices: List[int], prefix: str = "a") -> List[Tuple[str, int, int]]:
    return [(f"{prefix}{k}", u, v) for k, (u, v) in enumerate(zip(vertices, vertices[1:]), start=1)]


def linear_a(n: int) -> Quiver:
    """A_n oriented 1 -> 2 -> ... -> n."""
    if n < 1:
        raise QuiverError("A_n needs n >= 1")
    return Quiver.from_edges(n, _chain(list(range(1, n + 1))), name=f"A{n}")


def d_type(n: int) -> Quiver:
    """D_n: chain 1 -> ... -> n-2 with n-1 and n pointing into n-2."""
    if n < 4:
        raise QuiverError("D_n needs n >= 4")
    edges = _chain(list(range(1, n - 1)))
    edges += [("b", n - 1, n - 2), ("c", n, n - 2)]
    return Quiver.from_edges(n, edges, name=f"D{n}")


def e_type(n: int) -> Quiver:
    """E_n (n = 6, 7, 8): chain 1 -> ... -> n-1 with n pointing into 3."""
    if n not in (6, 7, 8):
        raise QuiverError("E_n needs n in 6, 7, 8")
    edges = _chain(list(range(1, n))) + [("b", n, 3)]
    return Quiver.from_edges(n, edges, name=f"E{n}")


def kronecker(r: int = 2) -> Quiver:
    """K_r: r parallel arrows 1 -> 2."""
    return Quiver.from_edges(2, [(lbl, 1, 2) for lbl in loop_labels(r)], name=f"K{r}")


def jordan() -> Quiver:
    """One vertex with one loop."""
    return Quiver.from_edges(1, [("a", 1, 1)], name="Jordan")


def loop_quiver(r: int = 2) -> Quiver:
    """One vertex with r loops (the quiver Γ when r = 2)."""
    return Quiver.from_edges(1, [(lbl, 1, 1) for lbl in loop_labels(r)], name=f"L{r}")


def a_tilde(m: int, oriented: bool = False) -> Quiver:
    """
    Ã_m: a cycle on m + 1 vertices. Ã_0 is the Jordan loop and Ã_1 the
    Kronecker quiver. For m >= 2 the last arrow runs 1 -> m+1 unless
    ``oriented`` asks for the oriented cycle.
    """
    if m == 0:
        return Quiver.from_edges(1, [("a0", 1, 1)], name="A~0")
    if m == 1:
        return Quiver.from_edges(2, [("a0", 1, 2), ("a1", 1, 2)], name="A~1")
    edges = [(f"a{k}", k, k + 1) for k in range(1, m + 1)]
    edges.append(("a0", m + 1, 1) if oriented else ("a0", 1, m + 1))
    return Quiver.from_edges(m + 1, edges, name=f"A~{m}")


def d_tilde(m: int) -> Quiver:
    """D̃_m (m >= 4): chain 1..m-3, leaves m-2, m-1 at 1 and m, m+1 at m-3."""
    if m < 4:
        raise QuiverError("D~_m needs m >= 4")
    edges = _chain(list(range(1, m - 2)))
    edges += [("b1", m - 2, 1), ("b2", m - 1, 1), ("c1", m, m - 3), ("c2", m + 1, m - 3)]
    return Quiver.from_edges(m + 1, edges, name=f"D~{m}")


def e_tilde(n: int) -> Quiver:
    """
    Ẽ_n (n = 6, 7, 8).

    Ẽ6: line 1..5, branch 6 -> 3 and 7 -> 6.
    Ẽ7: line 1..7, branch 8 -> 4.
    Ẽ8: line 1..8, branch 9 -> 3, so δ = (2,4,6,5,4,3,2,1; 3).
    """
    if n == 6:
        edges = _chain([1, 2, 3, 4, 5]) + [("b1", 6, 3), ("b2", 7, 6)]
        return Quiver.from_edges(7, edges, name="E~6")
    if n == 7:
        return Quiver.from_edges(8, _chain(list(range(1, 8))) + [("b", 8, 4)], name="E~7")
    if n == 8:
        return Quiver.from_edges(9, _chain(list(range(1, 9))) + [("b", 9, 3)], name="E~8")
    raise QuiverError("E~_n needs n in 6, 7, 8")


def subspace(n: int) -> Quiver:
    """Λ_n: outer vertices 1..n each pointing to the centre n + 1."""
    return Quiver.from_edges(n + 1, [(f"e{i}", i, n + 1) for i in range(1, n + 1)], name=f"L{n}sub")


_PATTERNS = [
    (re.compile(r"^A(\d+)$"), lambda m: linear_a(int(m.group(1)))),
    (re.compile(r"^D(\d+)$"), lambda m: d_type(int(m.group(1)))),
    (re.compile(r"^E([678])$"), lambda m: e_type(int(m.group(1)))),
    (re.compile(r"^K(\d+)$"), lambda m: kronecker(int(m.group(1)))),
    (re.compile(r"^A~(\d+)$"), lambda m: a_tilde(int(m.group(1)))),
    (re.compile(r"^D~(\d+)$"), lambda m: d_tilde(int(m.group(1)))),
    (re.compile(r"^E~([678])$"), lambda m: e_tilde(int(m.group(1)))),
    (re.compile(r"^SUBSPACE(\d+)$"), lambda m: subspace(int(m.group(1)))),
    (re.compile(r"^L(\d+)$"), lambda m: loop_quiver(int(m.group(1)))),
]


def by_name(name: str) -> Quiver:
    """
    Look up a catalogue quiver: ``A3``, ``D4``, ``E8``, ``K2``, ``A~2``,
    ``D~4``, ``E~8``, ``subspace4``, ``L2``, ``kronecker``, ``jordan``, ``gamma``.
    """
    key = name.strip().upper()
    aliases = {"KRONECKER": "K2", "GAMMA": "L2"}
    if key == "JORDAN":
        return jordan()
    key = aliases.get(key, key)
    for pattern, build in _PATTERNS:
        match = pattern.match(key)
        if match:
            return build(match)
    raise QuiverError(f"unknown catalogue quiver {name!r}")


__all__ = [
    "a_tilde",
    "by_name",
    "d_tilde",
    "d_type",
    "e_tilde",
    "e_type",
    "jordan",
    "kronecker",
    "linear_a",
    "loop_labels",
    "loop_quiver",
    "subspace",
]
