"""Tests for the command line (interface/quiver_cli.py)."""

import io
import json

import pytest

from interface import quiver_cli
from interface.quiver_cli import build_parser, parse_indec, parse_word, run
from quiverlab.catalogue import jordan
from quiverlab.exceptions import SchemaError
from quiverlab.groups import KLEIN4, trivial_rep
from quiverlab.kronecker import KroneckerIndec, ProjectivePoint
from quiverlab.linalg import Matrix
from quiverlab.representation import Representation, direct_sum, projective, simple


def invoke_json(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    assert code == 0, err.getvalue()
    return json.loads(out.getvalue())


def invoke_error(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    assert out.getvalue() == ""
    return code, json.loads(err.getvalue())


# ---------------------------------------------------------------------------
# Argument parsing helpers
# ---------------------------------------------------------------------------
class TestParsing:
    def test_inline_word(self):
        assert parse_word("+2,-1").to_list() == [["+", 2], ["-", 1]]
        assert parse_word('[["-", 3]]').to_list() == [["-", 3]]

    def test_bad_word(self):
        with pytest.raises(SchemaError):
            parse_word("2,-1")

    def test_indec_labels(self, QQ):
        assert parse_indec("P2", QQ) == KroneckerIndec.P(2)
        assert parse_indec("i_0", QQ) == KroneckerIndec.I(0)
        assert parse_indec("R3@1/2:1", QQ) == KroneckerIndec.R(3, ProjectivePoint.of(QQ, "1/2"))
        assert parse_indec("R1@1:0", QQ).point.is_infinity

    def test_bad_indec(self, QQ):
        with pytest.raises(SchemaError):
            parse_indec("Q7", QQ)

    def test_global_flags_precede_verb(self):
        args = build_parser().parse_args(["--field", "GF(3)", "roots", "A2"])
        assert args.field == "GF(3)"
        assert args.verb == "roots"


# ---------------------------------------------------------------------------
# Graphs, roots and classification
# ---------------------------------------------------------------------------
class TestGraphVerbs:
    def test_classify_graph(self):
        assert invoke_json("classify-graph", "K2") == {"type": "euclidean", "family": "A~", "m": 1, "delta": [1, 1]}

    def test_roots(self):
        assert invoke_json("roots", "A2", "--positive") == [[0, 1], [1, 0], [1, 1]]

    def test_indecomposables(self):
        records = invoke_json("indecomposables", "A2")
        assert [r["dims"] for r in records] == [[0, 1], [1, 0], [1, 1]]
        assert records[1]["tag"] == {"kind": "preprojective", "vertex": 2, "r": -1}
        assert "matrices" in records[0]

    def test_indecomposables_over_prime_field(self):
        records = invoke_json("--field", "GF(2)", "indecomposables", "D4")
        assert len(records) == 12

    def test_series(self):
        records = invoke_json("series", "K2", "--max-r", "1")
        assert len(records) == 4
        assert all(r["tag"]["kind"] == "preprojective" for r in records)

    def test_mesh_hom(self):
        assert invoke_json("mesh-hom", "A2", "--from", "2,0", "--to", "1,0") == {"dim": 1}
        assert invoke_json("mesh-hom", "A2", "--from", "1,0", "--to", "2,-1") == {"dim": 1}

    def test_separated_quiver(self):
        data = invoke_json("separated", "A2")
        assert data["vertices"] == 4
        assert data["arrows"] == [{"label": "a1", "from": 1, "to": 4}]


# ---------------------------------------------------------------------------
# Representation files
# ---------------------------------------------------------------------------
class TestRepresentationVerbs:
    def test_reflect(self, QQ, a2, write_json):
        path = write_json("p1.json", projective(a2, 1, QQ).to_dict())
        assert invoke_json("reflect", "A2", path, "--word", "+2")["dims"] == [1, 0]

    def test_coxeter(self, QQ, kron, write_json):
        path = write_json("p2.json", projective(kron, 2, QQ).to_dict())
        assert invoke_json("coxeter", "K2", path, "--power", "-1")["dims"] == [2, 3]

    def test_decompose(self, QQ, kron, write_json):
        x = direct_sum([projective(kron, 1, QQ), simple(kron, 1, QQ), projective(kron, 1, QQ)]).rep
        data = invoke_json("decompose", write_json("x.json", x.to_dict()))
        assert [(s["dims"], s["multiplicity"]) for s in data["summands"]] == [([1, 0], 1), ([1, 2], 2)]

    def test_decompose_with_quiver_flag(self, QQ, a2, write_json):
        path = write_json("s.json", simple(a2, 1, QQ).to_dict(inline_quiver=False))
        data = invoke_json("decompose", path, "--quiver", "A2")
        assert data["summands"][0]["dims"] == [1, 0]

    def test_hom(self, QQ, a2, write_json):
        x = write_json("p1.json", projective(a2, 1, QQ).to_dict())
        y = write_json("s1.json", simple(a2, 1, QQ).to_dict())
        data = invoke_json("hom", x, y)
        assert data["dim"] == 1
        assert data["basis"] == [[[["1"]], []]]

    def test_rad_hom_with_universe(self, QQ, a2, tmp_path, write_json):
        universe = tmp_path / "universe"
        universe.mkdir()
        for name, rep in [("s1", simple(a2, 1, QQ)), ("s2", simple(a2, 2, QQ)), ("p1", projective(a2, 1, QQ))]:
            (universe / f"{name}.json").write_text(json.dumps(rep.to_dict()), encoding="utf-8")
        x = write_json("s2.json", simple(a2, 2, QQ).to_dict())
        y = write_json("s1.json", simple(a2, 1, QQ).to_dict())
        assert invoke_json("hom", x, y, "--rad", "2", "--universe", str(universe))["dim"] == 0

    def test_ext(self, QQ, kron, write_json):
        s1 = write_json("s1.json", simple(kron, 1, QQ).to_dict())
        s2 = write_json("s2.json", simple(kron, 2, QQ).to_dict())
        assert invoke_json("ext", s1, s2) == {"dim": 2}
        assert invoke_json("ext", s2, s1) == {"dim": 0}

    def test_field_override(self, QQ, a2, write_json):
        x = Representation(a2, QQ, [1, 1], {"a1": Matrix.from_rows(QQ, [["1/2"]])})
        path = write_json("x.json", x.to_dict())
        data = invoke_json("--field", "GF(5)", "reflect", "A2", path, "--word", "+2")
        assert data["field"] == "GF(5)"

    def test_wild_embed(self, QQ, a2, write_json):
        path = write_json("s1.json", simple(a2, 1, QQ).to_dict())
        assert invoke_json("wild", "embed", "A2", path, "--target", "gamma2")["dims"] == [5]
        assert invoke_json("wild", "embed", "A2", path, "--target", "k3")["dims"] == [5, 5]


# ---------------------------------------------------------------------------
# Kronecker, Jordan and Klein verbs
# ---------------------------------------------------------------------------
class TestFamilyVerbs:
    def test_kronecker_make(self):
        data = invoke_json("kronecker", "make", "R2@3:1")
        assert data["dims"] == [2, 2]
        assert data["matrices"]["b"] == [["1", "0"], ["0", "1"]]

    def test_kronecker_classify(self, QQ, kron, write_json):
        x = direct_sum([projective(kron, 1, QQ), simple(kron, 2, QQ)]).rep
        data = invoke_json("kronecker", "classify", write_json("x.json", x.to_dict()))
        assert [(d["label"], d["multiplicity"]) for d in data] == [("P_0", 1), ("P_1", 1)]

    def test_jordan(self):
        assert invoke_json("jordan", "make", "--p", "2", "--lam", "5")["matrices"]["a"] == [["5", "1"], ["0", "5"]]
        assert invoke_json("jordan", "hom", "--p", "2", "--lam", "5", "--q", "3", "--mu", "5")["dim"] == 2

    def test_klein(self, GF2, write_json):
        made = invoke_json("klein", "make", "trivial")
        assert made == trivial_rep(KLEIN4, GF2).to_dict()
        data = invoke_json("klein", "classify", write_json("t.json", made))
        assert data == [{"label": "TI_0", "multiplicity": 1, "kronecker": {"kind": "I", "r": 0}}]

    def test_klein_regular(self, write_json):
        made = invoke_json("klein", "make", "regular")
        data = invoke_json("klein", "classify", write_json("r.json", made))
        assert data == [{"label": "k[G]", "multiplicity": 1}]


# ---------------------------------------------------------------------------
# Exit codes and output modes
# ---------------------------------------------------------------------------
class TestExitCodes:
    def test_unknown_quiver(self):
        code, err = invoke_error("roots", "Z9")
        assert code == 2
        assert err["error"] == "SchemaError"

    def test_not_dynkin(self):
        code, err = invoke_error("indecomposables", "K2")
        assert code == 2
        assert err["error"] == "GraphTypeError"

    def test_cyclic_coxeter(self, QQ, write_json):
        x = Representation(jordan(), QQ, [1], {"a": Matrix.identity(QQ, 1)})
        code, err = invoke_error("coxeter", "L1", write_json("j.json", x.to_dict()), "--power", "1")
        assert code == 2

    def test_irrational_parameter(self, QQ, kron, write_json):
        rotation = Matrix.from_rows(QQ, [[0, -1], [1, 0]])
        x = Representation(kron, QQ, [2, 2], {"a": rotation, "b": Matrix.identity(QQ, 2)})
        code, err = invoke_error("kronecker", "classify", write_json("x.json", x.to_dict()))
        assert code == 3

    def test_bad_arguments(self):
        out, err = io.StringIO(), io.StringIO()
        assert run(["roots"], stdout=out, stderr=err) == 2

    def test_pretty_table(self):
        out, err = io.StringIO(), io.StringIO()
        assert run(["--pretty", "roots", "A2", "--positive"], stdout=out, stderr=err) == 0
        text = out.getvalue()
        assert "roots" in text
        assert "[1, 1]" in text

    def test_run_log(self, tmp_path):
        log_dir = tmp_path / "runs"
        assert invoke_json("--run-log", str(log_dir), "roots", "A2", "--positive") == [[0, 1], [1, 0], [1, 1]]
        assert (log_dir / "runs.db").exists()
        assert len(list(log_dir.glob("run_*.md"))) == 1

    def test_run_log_closed_as_failed(self, tmp_path, mocker):
        spy = mocker.spy(quiver_cli, "close_run_logger")
        code, err = invoke_error("--run-log", str(tmp_path / "runs"), "roots", "Z9")
        assert code == 2
        spy.assert_called_once_with("failed")

    def test_unexpected_failure(self, mocker):
        mocker.patch.object(quiver_cli, "enumerate_roots", side_effect=RuntimeError("boom"))
        code, err = invoke_error("roots", "A2")
        assert code == 1
        assert err == {"error": "RuntimeError", "message": "boom"}

    def test_log_level_flag(self, mocker):
        setup = mocker.patch.object(quiver_cli, "setup_logging")
        invoke_json("--log-level", "DEBUG", "roots", "A2", "--positive")
        setup.assert_called_once_with("DEBUG")
