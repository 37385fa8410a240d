"""Tests for quivers, paths and the catalogue (src/quiverlab/quiver.py, catalogue.py)."""

import pytest

from quiverlab.catalogue import (
    a_tilde,
    by_name,
    d_tilde,
    e_tilde,
    e_type,
    jordan,
    kronecker,
    linear_a,
    loop_quiver,
    subspace,
)
from quiverlab.exceptions import CyclicQuiverError, QuiverError
from quiverlab.quiver import Arrow, Path, Quiver


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------
class TestQuiverConstruction:
    def test_endpoint_out_of_range(self):
        with pytest.raises(QuiverError):
            Quiver.from_edges(2, [("a", 1, 3)])

    def test_duplicate_label(self):
        with pytest.raises(QuiverError) as exc:
            Quiver.from_edges(2, [("a", 1, 2), ("a", 2, 1)])
        assert exc.value.error_code == "QUIVER_001"

    def test_negative_vertex_count(self):
        with pytest.raises(QuiverError):
            Quiver(-1)

    def test_dict_round_trip(self, kron):
        data = kron.to_dict()
        assert data["arrows"][0] == {"label": "a", "from": 1, "to": 2}
        assert Quiver.from_dict(data) == kron

    def test_name_ignored_by_equality(self):
        q1 = Quiver.from_edges(2, [("a", 1, 2)], name="one")
        q2 = Quiver.from_edges(2, [("a", 1, 2)], name="two")
        assert q1 == q2

    def test_unknown_arrow(self, a2):
        with pytest.raises(QuiverError):
            a2.arrow("zz")


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------
class TestQuiverQueries:
    def test_sinks_and_sources(self, a3, sub4):
        assert a3.sinks() == [3]
        assert a3.sources() == [1]
        assert sub4.sinks() == [5]
        assert sub4.sources() == [1, 2, 3, 4]

    def test_acyclic(self, a3):
        assert a3.is_acyclic()
        assert not jordan().is_acyclic()
        assert not a_tilde(2, oriented=True).is_acyclic()

    def test_require_acyclic(self):
        with pytest.raises(CyclicQuiverError):
            jordan().require_acyclic("paths")

    def test_connected(self, d4):
        assert d4.is_connected()
        assert not Quiver(2).is_connected()

    def test_paths_from_sorted(self, a3):
        paths = a3.paths_from(1)
        assert [p.length for p in paths] == [0, 1, 2]
        assert [p.end for p in paths] == [1, 2, 3]

    def test_paths_between(self, kron):
        assert [p.labels for p in kron.paths_between(1, 2)] == [("a",), ("b",)]
        assert kron.paths_between(2, 1) == []

    def test_paths_need_acyclic(self):
        with pytest.raises(CyclicQuiverError):
            jordan().paths_from(1)

    def test_longest_path(self, a3, kron):
        assert a3.longest_path_length() == 2
        assert kron.longest_path_length() == 1

    def test_underlying_graph(self, kron):
        assert kron.underlying_graph() == {(1, 2): 2}


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------
class TestPath:
    def test_trivial_path(self):
        p = Path(3)
        assert p.end == 3
        assert p.length == 0
        assert str(p) == "e3"

    def test_composable(self):
        a, b = Arrow("a", 1, 2), Arrow("b", 2, 3)
        p = Path(1).then(a).then(b)
        assert p.end == 3
        assert str(p) == "ba"

    def test_not_composable(self):
        with pytest.raises(QuiverError):
            Path(1, (Arrow("a", 2, 3),))


# ---------------------------------------------------------------------------
# Surgery
# ---------------------------------------------------------------------------
class TestSurgery:
    def test_sigma_reverses_incident_arrows(self, a3):
        q = a3.sigma(3)
        assert q.arrow("a2") == Arrow("a2", 3, 2)
        assert q.arrow("a1") == Arrow("a1", 1, 2)

    def test_sigma_is_involution(self, d4):
        for i in d4.vertices:
            assert d4.sigma(i).sigma(i) == d4

    def test_sink_becomes_source(self, a3):
        assert a3.sigma(3).is_source(3)

    def test_admissible_ordering(self, a3):
        order = a3.admissible_ordering()
        assert order == [3, 2, 1]
        q = a3
        for i in order:
            assert q.is_sink(i)
            q = q.sigma(i)
        assert q == a3

    def test_no_ordering_for_cycle(self):
        assert a_tilde(2, oriented=True).admissible_ordering() is None

    def test_opposite(self, kron):
        assert kron.opposite().sinks() == [1]

    def test_separated(self, a2):
        qs = a2.separated()
        assert qs.vertex_count == 4
        assert qs.arrows == (Arrow("a1", 1, 4),)

    def test_loop_quiver_separates_to_kronecker(self):
        assert loop_quiver(2).separated() == kronecker(2)


# ---------------------------------------------------------------------------
# Catalogue
# ---------------------------------------------------------------------------
class TestCatalogue:
    def test_sizes(self):
        assert linear_a(5).vertex_count == 5
        assert e_type(8).vertex_count == 8
        assert d_tilde(4).vertex_count == 5
        assert e_tilde(8).vertex_count == 9
        assert subspace(5).vertex_count == 6

    def test_kronecker_labels(self):
        assert [a.label for a in kronecker(3).arrows] == ["a", "b", "c"]
        assert [a.label for a in kronecker(4).arrows] == ["a1", "a2", "a3", "a4"]

    @pytest.mark.parametrize(
        "name,expected",
        [("A3", linear_a(3)), ("kronecker", kronecker(2)), ("K3", kronecker(3)),
         ("subspace4", subspace(4)), ("jordan", jordan()), ("gamma", loop_quiver(2)),
         ("E~8", e_tilde(8))],
    )
    def test_by_name(self, name, expected):
        assert by_name(name) == expected

    def test_unknown_name(self):
        with pytest.raises(QuiverError):
            by_name("Z9")

    def test_invalid_parameters(self):
        with pytest.raises(QuiverError):
            e_type(5)
        with pytest.raises(QuiverError):
            d_tilde(3)
