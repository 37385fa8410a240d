"""Tests for radical filtrations and the separated quiver (src/quiverlab/radical.py)."""

import pytest

from quiverlab.catalogue import jordan
from quiverlab.decomposition import is_isomorphic
from quiverlab.exceptions import NonNilpotentRadicalError, QuiverError, RadicalSquareError
from quiverlab.linalg import jordan_block
from quiverlab.quiver import Arrow, Quiver
from quiverlab.radical import (
    has_radical_square_zero,
    is_separated,
    jacobson_radical,
    radical,
    radical_filtration,
    radical_power,
    radical_power_subobject,
    separated_S,
    separated_T,
    separated_T_morphism,
    split_sink_simples,
    unseparated_quiver,
)
from quiverlab.representation import (
    Representation,
    direct_sum,
    identity,
    injective,
    projective,
    random_representation,
    simple,
)


def _jordan_rep(field, p, lam):
    return Representation(jordan(), field, [p], {"a": jordan_block(field, p, lam)})


# ---------------------------------------------------------------------------
# Radical filtration
# ---------------------------------------------------------------------------
class TestRadical:
    def test_radical_of_projective(self, QQ, a3):
        assert radical(projective(a3, 1, QQ)).dims == (0, 1, 1)

    def test_radical_of_injective(self, QQ, a3):
        assert radical(injective(a3, 3, QQ)).dims == (0, 1, 1)

    def test_simple_has_zero_radical(self, QQ, kron):
        assert radical(simple(kron, 1, QQ)).is_zero()

    def test_powers(self, QQ, a3):
        p1 = projective(a3, 1, QQ)
        assert radical_power(p1, 0) == p1
        assert radical_power(p1, 2).dims == (0, 0, 1)
        assert radical_power(p1, 3).is_zero()
        assert radical_power_subobject(p1, 2).map.is_mono()

    def test_negative_power(self, QQ, a3):
        with pytest.raises(QuiverError):
            radical_power(simple(a3, 1, QQ), -1)

    def test_filtration(self, QQ, a3):
        filtration = radical_filtration(projective(a3, 1, QQ))
        assert filtration.dims == [(1, 1, 1), (0, 1, 1), (0, 0, 1), (0, 0, 0)]
        assert filtration.is_nilpotent()
        assert len(filtration) == 4

    def test_jacobson_radical_nilpotent(self, QQ):
        assert jacobson_radical(_jordan_rep(QQ, 2, 0)).dims == (1,)

    def test_jacobson_radical_not_nilpotent(self, QQ):
        with pytest.raises(NonNilpotentRadicalError):
            jacobson_radical(_jordan_rep(QQ, 1, 1))

    def test_radical_square_zero(self, QQ, a3, kron):
        assert has_radical_square_zero(projective(kron, 1, QQ))
        assert not has_radical_square_zero(projective(a3, 1, QQ))


# ---------------------------------------------------------------------------
# Separated quiver
# ---------------------------------------------------------------------------
class TestSeparated:
    def test_unseparated_round_trip(self, a3, kron, d4):
        for q in (a3, kron, d4):
            assert unseparated_quiver(q.separated()) == q

    def test_unseparated_rejects_odd(self):
        with pytest.raises(QuiverError):
            unseparated_quiver(Quiver(3))

    def test_unseparated_rejects_backwards_arrow(self):
        with pytest.raises(QuiverError):
            unseparated_quiver(Quiver(2, (Arrow("a", 2, 1),)))

    def test_s_of_projective(self, QQ, kron):
        y = separated_S(projective(kron, 1, QQ))
        assert y.quiver == kron.separated()
        assert y.dims == (1, 0, 0, 2)

    def test_t_inverts_s(self, QQ, rng, kron):
        x = random_representation(kron, [2, 3], QQ, rng)
        x = direct_sum([x, projective(kron, 1, QQ)]).rep
        assert has_radical_square_zero(x)
        assert is_isomorphic(separated_T(separated_S(x)), x) is not None

    def test_s_needs_radical_square_zero(self, QQ, a3):
        with pytest.raises(RadicalSquareError):
            separated_S(projective(a3, 1, QQ))

    def test_t_checks_quiver(self, QQ, a2, kron):
        y = separated_S(projective(kron, 1, QQ))
        with pytest.raises(QuiverError):
            separated_T(y, a2)

    def test_t_on_morphisms(self, QQ, kron):
        y = separated_S(projective(kron, 1, QQ))
        phi = separated_T_morphism(identity(y))
        assert phi.is_iso()
        assert phi.source == separated_T(y)


# ---------------------------------------------------------------------------
# Simples at sinks
# ---------------------------------------------------------------------------
class TestSinkSplitting:
    def test_is_separated(self, QQ, a2):
        assert is_separated(projective(a2, 1, QQ))
        assert not is_separated(simple(a2, 2, QQ))

    def test_split_counts_simples(self, QQ, a2):
        s2 = simple(a2, 2, QQ)
        x = direct_sum([projective(a2, 1, QQ), s2, s2]).rep
        split = split_sink_simples(x)
        assert split.simples == {2: 2}
        assert split.separated.rep.dims == (1, 1)
        assert is_separated(split.separated.rep)
        assert split.complements[2].ncols == 2

    def test_nothing_to_split(self, QQ, a2):
        split = split_sink_simples(projective(a2, 1, QQ))
        assert split.simples == {}
        assert split.complements == {}
