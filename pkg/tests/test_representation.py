"""Tests for representations and morphisms (src/quiverlab/representation.py)."""

import pytest

from quiverlab.catalogue import d_type, jordan, linear_a, subspace
from quiverlab.exceptions import CyclicQuiverError, FieldError, MorphismError, RepresentationError
from quiverlab.linalg import Matrix
from quiverlab.representation import (
    Morphism,
    Representation,
    base_change,
    change_field,
    cokernel,
    coimage_map,
    direct_sum,
    dual,
    end_basis,
    ext_dim,
    find_retraction,
    find_section,
    hom_basis,
    hom_dim,
    identity,
    image,
    injective,
    is_short_exact,
    kernel,
    projective,
    quotient,
    random_base_change,
    random_representation,
    sequence_splits,
    simple,
    subrepresentation,
    zero_morphism,
)


def M(field, rows, shape=None):
    return Matrix.from_rows(field, rows, shape)


def _a2_sequence(QQ, a2):
    """0 -> S(2) -> P(1) -> S(1) -> 0, which does not split."""
    p1, s1, s2 = projective(a2, 1, QQ), simple(a2, 1, QQ), simple(a2, 2, QQ)
    f = Morphism(s2, p1, [Matrix.zeros(QQ, 1, 0), Matrix.identity(QQ, 1)])
    g = Morphism(p1, s1, [Matrix.identity(QQ, 1), Matrix.zeros(QQ, 0, 1)])
    return f, g


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------
class TestRepresentation:
    def test_shape_checked(self, QQ, a2):
        with pytest.raises(RepresentationError):
            Representation(a2, QQ, [1, 2], {"a1": Matrix.identity(QQ, 1)})

    def test_missing_matrix(self, QQ, kron):
        with pytest.raises(RepresentationError):
            Representation(kron, QQ, [1, 1], {"a": Matrix.identity(QQ, 1)})

    def test_unknown_matrix(self, QQ, a2):
        mats = {"a1": Matrix.identity(QQ, 1), "zz": Matrix.identity(QQ, 1)}
        with pytest.raises(RepresentationError):
            Representation(a2, QQ, [1, 1], mats)

    def test_field_checked(self, QQ, GF5, a2):
        with pytest.raises(FieldError):
            Representation(a2, QQ, [1, 1], {"a1": Matrix.identity(GF5, 1)})

    def test_wrong_dimension_count(self, QQ, a2):
        with pytest.raises(RepresentationError):
            Representation(a2, QQ, [1], {"a1": Matrix.zeros(QQ, 0, 1)})

    def test_dict_round_trip(self, QQ, kron):
        x = Representation(kron, QQ, [1, 2], {"a": M(QQ, [["1/2"], [0]]), "b": M(QQ, [[0], [3]])})
        data = x.to_dict()
        assert data["field"] == "Q"
        assert data["matrices"]["a"] == [["1/2"], ["0"]]
        assert Representation.from_dict(data) == x

    def test_total_dim(self, QQ, sub4):
        assert projective(sub4, 1, QQ).total_dim == 2


# ---------------------------------------------------------------------------
# Standard representations
# ---------------------------------------------------------------------------
class TestStandardRepresentations:
    def test_simple(self, QQ, a3):
        s = simple(a3, 2, QQ)
        assert s.dims == (0, 1, 0)

    def test_projective_kronecker(self, QQ, kron):
        p1 = projective(kron, 1, QQ)
        assert p1.dims == (1, 2)
        assert p1.matrix("a").to_strings() == [["1"], ["0"]]
        assert p1.matrix("b").to_strings() == [["0"], ["1"]]

    def test_injective_kronecker(self, QQ, kron):
        assert injective(kron, 2, QQ).dims == (2, 1)
        assert injective(kron, 1, QQ).dims == (1, 0)

    def test_projective_needs_acyclic(self, QQ):
        with pytest.raises(CyclicQuiverError):
            projective(jordan(), 1, QQ)

    def test_double_dual(self, QQ, rng, d4):
        x = random_representation(d4, [1, 2, 1, 1], QQ, rng)
        assert dual(dual(x)) == x


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------
class TestMorphism:
    def test_intertwining_checked(self, QQ, a2):
        x = projective(a2, 1, QQ)
        y = Representation(a2, QQ, [1, 1], {"a1": Matrix.zeros(QQ, 1, 1)})
        with pytest.raises(MorphismError) as exc:
            Morphism(x, y, [Matrix.identity(QQ, 1), Matrix.identity(QQ, 1)])
        assert exc.value.details["arrow"] == "a1"

    def test_component_shape_checked(self, QQ, a2):
        x = projective(a2, 1, QQ)
        with pytest.raises(MorphismError):
            Morphism(x, x, [Matrix.identity(QQ, 2), Matrix.identity(QQ, 1)])

    def test_composition_order(self, QQ, rng, a3):
        x = random_representation(a3, [1, 2, 1], QQ, rng)
        y, g = random_base_change(x, rng)
        assert g.inverse() @ g == identity(x)
        assert g @ g.inverse() == identity(y)

    def test_not_composable(self, QQ, a2):
        x, y = projective(a2, 1, QQ), projective(a2, 2, QQ)
        with pytest.raises(MorphismError):
            identity(x) @ identity(y)

    def test_arithmetic(self, QQ, a2):
        x = projective(a2, 1, QQ)
        ident = identity(x)
        assert (ident + ident) - ident == ident
        assert (ident - ident).is_zero()
        assert (-ident).scale(-1) == ident
        assert zero_morphism(x, x).is_zero()

    def test_predicates(self, QQ, a2):
        f, g = _a2_sequence(QQ, a2)
        assert f.is_mono() and not f.is_epi()
        assert g.is_epi() and not g.is_mono()
        assert not f.is_iso()

    def test_inverse_of_non_iso(self, QQ, a2):
        f, _ = _a2_sequence(QQ, a2)
        with pytest.raises(MorphismError):
            f.inverse()


# ---------------------------------------------------------------------------
# Hom and Ext
# ---------------------------------------------------------------------------
class TestHomExt:
    @pytest.mark.parametrize("q,dims", [(linear_a(3), [2, 1, 2]), (d_type(4), [1, 2, 1, 1]), (subspace(4), [1, 1, 0, 1, 2])])
    def test_projectives_represent_vertices(self, QQ, rng, q, dims):
        x = random_representation(q, dims, QQ, rng)
        for i in q.vertices:
            assert hom_dim(projective(q, i, QQ), x) == x.dim(i)
            assert hom_dim(x, injective(q, i, QQ)) == x.dim(i)

    def test_basis_elements_are_morphisms(self, GF5, rng, kron):
        x = random_representation(kron, [2, 3], GF5, rng)
        y = random_representation(kron, [3, 3], GF5, rng)
        for phi in hom_basis(x, y):
            assert phi.failing_arrow() is None

    def test_hom_between_simples(self, QQ, kron):
        s1, s2 = simple(kron, 1, QQ), simple(kron, 2, QQ)
        assert hom_dim(s1, s2) == 0
        assert len(end_basis(s1)) == 1

    def test_ext_kronecker_simples(self, QQ, kron):
        s1, s2 = simple(kron, 1, QQ), simple(kron, 2, QQ)
        assert ext_dim(s1, s2) == 2
        assert ext_dim(s2, s1) == 0

    def test_projectives_and_injectives_have_no_ext(self, QQ, rng, d4):
        x = random_representation(d4, [1, 1, 2, 1], QQ, rng)
        for i in d4.vertices:
            assert ext_dim(projective(d4, i, QQ), x) == 0
            assert ext_dim(x, injective(d4, i, QQ)) == 0

    def test_ext_needs_acyclic(self, QQ):
        s = simple(jordan(), 1, QQ)
        with pytest.raises(CyclicQuiverError):
            ext_dim(s, s)

    def test_different_fields_rejected(self, QQ, GF5, a2):
        with pytest.raises(FieldError):
            hom_dim(simple(a2, 1, QQ), simple(a2, 1, GF5))


# ---------------------------------------------------------------------------
# Kernels, images and exact sequences
# ---------------------------------------------------------------------------
class TestSubobjects:
    def test_kernel_image_dimensions(self, QQ, rng, a3):
        x = random_representation(a3, [2, 2, 1], QQ, rng)
        y = random_representation(a3, [1, 2, 2], QQ, rng)
        for phi in hom_basis(x, y):
            ker, im = kernel(phi), image(phi)
            assert all(k + i == d for k, i, d in zip(ker.rep.dims, im.rep.dims, x.dims))
            assert (phi @ ker.map).is_zero()
            assert (cokernel(phi).map @ phi).is_zero()
            assert im.map @ coimage_map(phi) == phi

    def test_unstable_subspace(self, QQ, a2):
        p1 = projective(a2, 1, QQ)
        with pytest.raises(RepresentationError):
            subrepresentation(p1, [Matrix.identity(QQ, 1), Matrix.zeros(QQ, 1, 0)])

    def test_quotient(self, QQ, a2):
        p1 = projective(a2, 1, QQ)
        top = quotient(p1, [Matrix.zeros(QQ, 1, 0), Matrix.identity(QQ, 1)])
        assert top.rep == simple(a2, 1, QQ)

    def test_non_split_sequence(self, QQ, a2):
        f, g = _a2_sequence(QQ, a2)
        assert is_short_exact(f, g)
        assert not sequence_splits(f, g)
        assert find_retraction(f) is None
        assert find_section(g) is None

    def test_split_sequence(self, QQ, rng, a3):
        x = random_representation(a3, [1, 1, 0], QQ, rng)
        y = random_representation(a3, [0, 1, 1], QQ, rng)
        ds = direct_sum([x, y])
        f, g = ds.injections[0], ds.projections[1]
        assert is_short_exact(f, g)
        assert sequence_splits(f, g)
        r = find_retraction(f)
        assert r @ f == identity(x)


# ---------------------------------------------------------------------------
# Direct sums and base change
# ---------------------------------------------------------------------------
class TestDirectSum:
    def test_structure_maps(self, QQ, kron):
        parts = [projective(kron, 1, QQ), simple(kron, 1, QQ), projective(kron, 2, QQ)]
        ds = direct_sum(parts)
        assert ds.rep.dims == (2, 3)
        for k, (inj, proj) in enumerate(zip(ds.injections, ds.projections)):
            assert proj @ inj == identity(parts[k])

    def test_empty_sum(self, QQ, kron):
        assert direct_sum([], kron, QQ).rep.is_zero()
        with pytest.raises(RepresentationError):
            direct_sum([])

    def test_base_change_is_iso(self, QQ, rng, d4):
        x = random_representation(d4, [2, 1, 1, 1], QQ, rng)
        y, g = random_base_change(x, rng)
        checked = Morphism(x, y, list(g.components))
        assert checked.is_iso()

    def test_base_change_identity(self, QQ, kron):
        x = projective(kron, 1, QQ)
        y, g = base_change(x, [Matrix.identity(QQ, d) for d in x.dims])
        assert y == x

    def test_change_field(self, QQ, GF5, kron):
        x = Representation(kron, QQ, [1, 1], {"a": M(QQ, [["1/2"]]), "b": M(QQ, [[7]])})
        y = change_field(x, GF5)
        assert y.matrix("a").to_strings() == [["3"]]
        assert y.matrix("b").to_strings() == [["2"]]
        with pytest.raises(FieldError):
            change_field(y, QQ)
