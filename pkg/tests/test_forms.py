"""Tests for forms, graph classification and roots (src/quiverlab/forms.py)."""

import random

import pytest

from quiverlab.catalogue import (
    a_tilde,
    d_tilde,
    d_type,
    e_tilde,
    e_type,
    jordan,
    kronecker,
    linear_a,
    subspace,
)
from quiverlab.exceptions import GraphTypeError, LoopReflectionError, ShapeMismatchError
from quiverlab.forms import (
    Graph,
    classify_graph,
    coxeter_inverse,
    coxeter_iterate,
    coxeter_order,
    coxeter_transform,
    defect,
    enumerate_roots,
    euclidean_delta,
    euler_form,
    positive_roots,
    quadratic,
    reflection,
    symmetric_form,
    unit,
)
from quiverlab.linalg import Field
from quiverlab.quiver import Quiver
from quiverlab.representation import injective, projective

QQ = Field.rationals()


def _random_non_ade(rng):
    """A connected graph with a vertex of degree five or a doubled edge."""
    n = rng.randint(6, 9)
    edges = [(f"t{k}", rng.randint(1, k - 1), k) for k in range(2, n + 1)]
    if rng.random() < 0.5:
        edges += [(f"x{k}", 1, k) for k in range(2, 7) if all(e[1:] != (1, k) for e in edges)]
    else:
        edges.append(("dup", edges[0][1], edges[0][2]))
        edges.append(("dup2", edges[0][1], edges[0][2]))
    return Quiver.from_edges(n, edges)


# ---------------------------------------------------------------------------
# Forms
# ---------------------------------------------------------------------------
class TestForms:
    def test_euler_form_kronecker(self, kron):
        assert euler_form(kron, (1, 0), (0, 1)) == -2
        assert euler_form(kron, (0, 1), (1, 0)) == 0

    def test_symmetric_form(self, kron):
        assert symmetric_form(kron, (1, 0), (0, 1)) == -2
        assert symmetric_form(kron, (1, 1), (1, 1)) == 0

    def test_quadratic_of_simple_roots(self, d4):
        for i in d4.vertices:
            assert quadratic(d4, unit(4, i)) == 1

    def test_loop_lowers_diagonal(self):
        assert quadratic(jordan(), (1,)) == 0

    def test_length_mismatch(self, a2):
        with pytest.raises(ShapeMismatchError):
            euler_form(a2, (1,), (1, 1))

    @pytest.mark.parametrize("q", [kronecker(2), linear_a(3), d_type(4), subspace(4)])
    def test_projectives_detect_coordinates(self, q):
        for i in q.vertices:
            p = projective(q, i, QQ).dims
            basis = [unit(q.vertex_count, j) for j in q.vertices]
            for x in basis + [tuple(range(1, q.vertex_count + 1))]:
                assert euler_form(q, p, x) == x[i - 1]


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------
class TestClassifyGraph:
    def test_kronecker_is_a_tilde_one(self, kron):
        assert classify_graph(kron).to_dict() == {"type": "euclidean", "family": "A~", "m": 1, "delta": [1, 1]}

    @pytest.mark.parametrize(
        "q,family,n",
        [(linear_a(1), "A", 1), (linear_a(6), "A", 6), (d_type(4), "D", 4), (d_type(7), "D", 7),
         (e_type(6), "E", 6), (e_type(7), "E", 7), (e_type(8), "E", 8)],
    )
    def test_dynkin(self, q, family, n):
        gt = classify_graph(q)
        assert gt.is_dynkin
        assert (gt.family, gt.rank) == (family, n)

    @pytest.mark.parametrize(
        "q,delta",
        [(jordan(), (1,)), (a_tilde(3), (1, 1, 1, 1)), (subspace(4), (1, 1, 1, 1, 2)),
         (d_tilde(5), (2, 2, 1, 1, 1, 1)), (e_tilde(6), (1, 2, 3, 2, 1, 2, 1)),
         (e_tilde(8), (2, 4, 6, 5, 4, 3, 2, 1, 3))],
    )
    def test_euclidean_delta(self, q, delta):
        gt = classify_graph(q)
        assert gt.is_euclidean
        assert gt.delta == delta
        assert euclidean_delta(q) == delta

    def test_other(self):
        assert classify_graph(kronecker(3)).kind == "other"
        assert classify_graph(subspace(5)).kind == "other"

    def test_random_non_ade_graphs(self):
        rng = random.Random(7)
        for _ in range(20):
            assert classify_graph(_random_non_ade(rng)).kind == "other"

    def test_disconnected(self):
        with pytest.raises(GraphTypeError):
            classify_graph(Quiver(2))

    def test_orientation_does_not_matter(self, d4):
        assert classify_graph(d4.sigma(3)) == classify_graph(d4)

    def test_graph_input(self):
        g = Graph(3, {(1, 2): 1, (2, 3): 1})
        assert classify_graph(g).label() == "A3"


# ---------------------------------------------------------------------------
# Reflections and Coxeter
# ---------------------------------------------------------------------------
class TestCoxeter:
    def test_reflection_of_simple(self, a2):
        assert reflection(a2, 1, (1, 0)) == (-1, 0)
        assert reflection(a2, 2, (1, 0)) == (1, 1)

    def test_loop_reflection_rejected(self):
        with pytest.raises(LoopReflectionError):
            reflection(jordan(), 1, (1,))

    @pytest.mark.parametrize("q", [kronecker(2), linear_a(3), d_type(4), subspace(4)])
    def test_projective_to_negative_injective(self, q):
        for i in q.vertices:
            p = projective(q, i, QQ).dims
            inj = injective(q, i, QQ).dims
            assert coxeter_transform(q, p) == tuple(-v for v in inj)

    @pytest.mark.parametrize("q", [kronecker(2), linear_a(3), d_type(4), subspace(4)])
    def test_coxeter_preserves_euler_form(self, q):
        n = q.vertex_count
        vectors = [unit(n, i) for i in q.vertices]
        for x in vectors:
            for y in vectors:
                assert euler_form(q, x, y) == euler_form(q, coxeter_transform(q, x), coxeter_transform(q, y))

    def test_inverse(self, d4):
        x = (1, 2, 0, 1)
        assert coxeter_inverse(d4, coxeter_transform(d4, x)) == x
        assert coxeter_iterate(d4, coxeter_iterate(d4, x, 3), -3) == x

    @pytest.mark.parametrize("q,h", [(linear_a(2), 3), (linear_a(3), 4), (d_type(4), 6), (e_type(6), 12)])
    def test_coxeter_number(self, q, h):
        assert coxeter_order(q) == h


# ---------------------------------------------------------------------------
# Defect
# ---------------------------------------------------------------------------
class TestDefect:
    @pytest.mark.parametrize("q", [kronecker(2), subspace(4)])
    def test_projective_and_injective_defects(self, q):
        delta = euclidean_delta(q)
        for i in q.vertices:
            assert defect(q, projective(q, i, QQ).dims) == -delta[i - 1]
            assert defect(q, injective(q, i, QQ).dims) == delta[i - 1]

    def test_delta_has_defect_zero(self, sub4):
        assert defect(sub4, euclidean_delta(sub4)) == 0

    def test_requires_euclidean(self, a3):
        with pytest.raises(GraphTypeError):
            defect(a3, (1, 0, 0))


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------
class TestRoots:
    def test_a2_positive_roots(self, a2):
        assert enumerate_roots(a2, positive=True) == [(0, 1), (1, 0), (1, 1)]

    def test_negatives_included(self, a2):
        roots = enumerate_roots(a2, positive=False)
        assert len(roots) == 6
        assert (-1, -1) in roots

    @pytest.mark.parametrize("n", range(1, 9))
    def test_type_a_counts(self, n):
        assert len(positive_roots(linear_a(n))) == n * (n + 1) // 2

    @pytest.mark.parametrize("q,count", [(d_type(4), 12), (d_type(5), 20), (e_type(6), 36)])
    def test_dynkin_counts(self, q, count):
        roots = positive_roots(q)
        assert len(roots) == count
        assert all(quadratic(q, r) == 1 for r in roots)

    @pytest.mark.slow
    @pytest.mark.parametrize("q,count", [(e_type(7), 63), (e_type(8), 120)])
    def test_exceptional_counts(self, q, count):
        assert len(positive_roots(q)) == count

    def test_kronecker_representatives(self, kron):
        assert enumerate_roots(kron, positive=True) == [(0, 1), (1, 0), (1, 1)]

    def test_wild_rejected(self):
        with pytest.raises(GraphTypeError):
            enumerate_roots(kronecker(3))
