"""Tests for reflection and Coxeter functors (src/quiverlab/reflection.py)."""

import random

import pytest

from quiverlab.catalogue import d_type, jordan, linear_a
from quiverlab.decomposition import is_isomorphic
from quiverlab.exceptions import CyclicQuiverError, RepresentationError, VertexConditionError
from quiverlab.forms import coxeter_transform, reflection
from quiverlab.linalg import Field
from quiverlab.quiver import Quiver
from quiverlab.reflection import (
    ReflectionWord,
    alpha_lower_star,
    alpha_star,
    canonical_sequences,
    coxeter_minus,
    coxeter_morphism,
    coxeter_plus,
    coxeter_power,
    iota,
    mesh_relation,
    pi,
    reflect_minus,
    reflect_morphism_minus,
    reflect_morphism_plus,
    reflect_plus,
)
from quiverlab.representation import (
    hom_basis,
    hom_dim,
    injective,
    projective,
    random_representation,
    simple,
)


# ---------------------------------------------------------------------------
# Single reflections
# ---------------------------------------------------------------------------
class TestReflect:
    def test_simple_at_sink_vanishes(self, QQ, a3):
        assert reflect_plus(simple(a3, 3, QQ), 3).is_zero()

    def test_simple_at_source_vanishes(self, QQ, a3):
        assert reflect_minus(simple(a3, 1, QQ), 1).is_zero()

    def test_quiver_is_reflected(self, QQ, a2):
        y = reflect_plus(projective(a2, 1, QQ), 2)
        assert y.quiver == a2.sigma(2)
        assert y.dims == (1, 0)

    def test_dimension_vector_follows_reflection(self, QQ, d4):
        # vertex 2 is the sink at the centre of D4
        for x in [projective(d4, 1, QQ), injective(d4, 2, QQ), injective(d4, 3, QQ)]:
            assert reflect_plus(x, 2).dims == reflection(d4, 2, x.dims)

    def test_reflection_needs_sink(self, QQ, a3):
        with pytest.raises(VertexConditionError):
            reflect_plus(simple(a3, 1, QQ), 1)
        with pytest.raises(VertexConditionError):
            reflect_minus(simple(a3, 3, QQ), 3)

    def test_round_trip_without_simple_summand(self, QQ, d4):
        x = injective(d4, 2, QQ)
        back = reflect_minus(reflect_plus(x, 2), 2)
        assert is_isomorphic(back, x) is not None

    @pytest.mark.parametrize("seed", range(5))
    def test_non_adjacent_sinks_commute(self, QQ, seed):
        # D4 with the centre 2 as a source: 1, 3 and 4 are pairwise non-adjacent sinks
        q = Quiver.from_edges(4, [("a", 2, 1), ("b", 2, 3), ("c", 2, 4)], name="D4")
        x = random_representation(q, [1, 2, 1, 1], QQ, random.Random(seed))
        for i, j in [(1, 3), (1, 4), (3, 4)]:
            assert reflect_plus(reflect_plus(x, i), j) == reflect_plus(reflect_plus(x, j), i)


# ---------------------------------------------------------------------------
# Functoriality and the natural maps
# ---------------------------------------------------------------------------
class TestFunctoriality:
    def test_composition_preserved(self, QQ, rng, a3):
        x = random_representation(a3, [1, 2, 2], QQ, rng)
        y = random_representation(a3, [1, 1, 2], QQ, rng)
        z = random_representation(a3, [2, 1, 1], QQ, rng)
        for f in hom_basis(x, y)[:3]:
            for g in hom_basis(y, z)[:3]:
                lhs = reflect_morphism_plus(g @ f, 3)
                rhs = reflect_morphism_plus(g, 3) @ reflect_morphism_plus(f, 3)
                assert lhs == rhs

    def test_minus_on_morphisms(self, QQ, rng, a3):
        x = random_representation(a3, [2, 1, 1], QQ, rng)
        y = random_representation(a3, [1, 1, 2], QQ, rng)
        for f in hom_basis(x, y):
            phi = reflect_morphism_minus(f, 1)
            assert phi.failing_arrow() is None

    def test_iota_is_mono(self, QQ, rng, a3):
        x = random_representation(a3, [1, 1, 2], QQ, rng)
        assert iota(x, 3).is_mono()
        assert not iota(simple(a3, 3, QQ), 3).is_iso()
        assert iota(projective(a3, 2, QQ), 3).is_iso()

    def test_pi_is_epi(self, QQ, rng, a3):
        x = random_representation(a3, [2, 1, 1], QQ, rng)
        assert pi(x, 1).is_epi()
        assert pi(injective(a3, 2, QQ), 1).is_iso()

    def test_iota_is_natural(self, QQ, rng, a3):
        x = random_representation(a3, [1, 2, 2], QQ, rng)
        y = random_representation(a3, [2, 1, 2], QQ, rng)
        for phi in hom_basis(x, y):
            back = reflect_morphism_minus(reflect_morphism_plus(phi, 3), 3)
            assert iota(y, 3) @ back == phi @ iota(x, 3)


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------
class TestReflectionWord:
    def test_list_round_trip(self):
        word = ReflectionWord.from_list([["+", 2], ["-", 1]])
        assert word.to_list() == [["+", 2], ["-", 1]]
        assert len(word.then("+", 3)) == 3

    def test_bad_sign(self):
        with pytest.raises(RepresentationError):
            ReflectionWord.from_list([["*", 1]])

    def test_bad_vertex(self):
        with pytest.raises(RepresentationError):
            ReflectionWord((("+", 0),))

    def test_apply_and_target_quiver(self, QQ, a3):
        word = ReflectionWord.from_list([["+", 3], ["+", 2]])
        y = word.apply(projective(a3, 1, QQ))
        assert y.quiver == word.target_quiver(a3)
        assert y.dims == (1, 0, 0)

    def test_apply_morphism(self, QQ, rng, a3):
        word = ReflectionWord.from_list([["+", 3], ["+", 2]])
        x = random_representation(a3, [1, 2, 1], QQ, rng)
        for f in hom_basis(x, x):
            assert word.apply_morphism(f).source == word.apply(x)


# ---------------------------------------------------------------------------
# Coxeter functors
# ---------------------------------------------------------------------------
class TestCoxeterFunctors:
    @pytest.mark.parametrize("i", [1, 2])
    def test_kills_projectives_and_injectives(self, QQ, kron, i):
        assert coxeter_plus(projective(kron, i, QQ)).is_zero()
        assert coxeter_minus(injective(kron, i, QQ)).is_zero()

    def test_dimension_vector(self, QQ, kron):
        x = injective(kron, 2, QQ)
        assert coxeter_plus(x).dims == coxeter_transform(kron, x.dims)

    def test_inverse_up_to_isomorphism(self, QQ, kron):
        x = injective(kron, 2, QQ)
        assert is_isomorphic(coxeter_minus(coxeter_plus(x)), x) is not None

    def test_power(self, QQ, kron):
        p2 = projective(kron, 2, QQ)
        assert coxeter_power(p2, 0) == p2
        assert coxeter_power(p2, -1).dims == (2, 3)
        assert coxeter_power(p2, -2).dims == (4, 5)

    def test_power_needs_acyclic(self, QQ):
        with pytest.raises(CyclicQuiverError):
            coxeter_power(simple(jordan(), 1, QQ), 1)

    def test_hom_preserved_on_preprojectives(self, QQ, kron):
        p1, p2 = projective(kron, 1, QQ), projective(kron, 2, QQ)
        assert hom_dim(coxeter_power(p2, -1), coxeter_power(p1, -1)) == hom_dim(p2, p1)
        for f in hom_basis(p2, p1):
            assert coxeter_morphism(f, -1).failing_arrow() is None


# ---------------------------------------------------------------------------
# Irreducible maps and canonical sequences
# ---------------------------------------------------------------------------
class TestCanonicalSequences:
    def test_alpha_star(self, QQ, kron):
        a, b = alpha_star(kron, "a", QQ), alpha_star(kron, "b", QQ)
        assert a.source.dims == (0, 1)
        assert a.target.dims == (1, 2)
        assert a.is_mono()
        assert a != b

    def test_alpha_lower_star(self, QQ, kron):
        f = alpha_lower_star(kron, "a", QQ)
        assert f.source == projective(kron, 1, QQ)
        assert f.target.dims == (2, 3)
        assert not f.is_zero()

    def test_radical_sequence(self, QQ, sub4):
        for i in sub4.vertices:
            seq = canonical_sequences(sub4, i, QQ)["radical"]
            assert seq.is_exact()
            assert seq.right.target == simple(sub4, i, QQ)

    @pytest.mark.parametrize("i", [1, 2])
    def test_mesh_sequence(self, QQ, kron, i):
        seqs = canonical_sequences(kron, i, QQ)
        mesh = seqs["mesh"]
        assert mesh.composite().is_zero()
        assert mesh.is_exact()
        assert ("sink" in seqs) == (i == 2)

    def test_sink_sequence_dims(self, QQ, kron):
        sink = canonical_sequences(kron, 2, QQ)["sink"]
        assert sink.middle.rep.dims == (2, 4)
        assert sink.right.target.dims == (2, 3)

    @pytest.mark.parametrize("r", [0, -1])
    def test_mesh_relation_vanishes(self, QQ, kron, r):
        assert mesh_relation(kron, 1, r, QQ).is_zero()

    @pytest.mark.parametrize("q", [linear_a(3), d_type(4)], ids=["A3", "D4"])
    @pytest.mark.parametrize("p", [0, 2, 3])
    def test_every_sequence_is_exact(self, q, p):
        field_ = Field.prime(p) if p else Field.rationals()
        for i in q.vertices:
            for seq in canonical_sequences(q, i, field_).values():
                assert seq.is_exact()

    def test_projective_injective_has_no_mesh(self, QQ, a3):
        # P(1) = I(3) on A3, so C⁻P(1) = 0
        seqs = canonical_sequences(a3, 1, QQ)
        assert set(seqs) == {"radical"}
        assert mesh_relation(a3, 1, 0, QQ).is_zero()

    def test_needs_acyclic(self, QQ):
        with pytest.raises(CyclicQuiverError):
            canonical_sequences(jordan(), 1, QQ)
