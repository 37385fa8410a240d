"""Tests for the quiverlab exception hierarchy (src/quiverlab/exceptions.py)."""

import pytest

from quiverlab.exceptions import (
    CharacteristicError,
    ConfigurationError,
    CyclicQuiverError,
    DecomposableInputError,
    DecompositionIncompleteError,
    FieldError,
    GraphTypeError,
    IncompleteComputationError,
    IrrationalParameterError,
    LoopReflectionError,
    MeshWindowError,
    MorphismError,
    NonNilpotentRadicalError,
    QuiverError,
    QuiverLabError,
    RadicalSquareError,
    RepresentationError,
    SchemaError,
    ShapeMismatchError,
    StepBudgetExceededError,
    TotalRepError,
    ValidationError,
    VertexConditionError,
)


# ---------------------------------------------------------------------------
# Base class
# ---------------------------------------------------------------------------
class TestQuiverLabError:
    def test_basic_construction(self):
        err = QuiverLabError("something broke")
        assert str(err) == "something broke"
        assert err.message == "something broke"
        assert err.error_code is None
        assert err.details == {}
        assert err.exit_code == 1

    def test_with_error_code(self):
        err = QuiverLabError("fail", error_code="E001")
        assert str(err) == "[E001] fail"

    def test_to_dict_minimal(self):
        d = QuiverLabError("boom").to_dict()
        assert d == {"error": "QuiverLabError", "message": "boom"}

    def test_to_dict_full(self):
        d = QuiverLabError("boom", error_code="E001", details={"x": 1}).to_dict()
        assert d["error_code"] == "E001"
        assert d["details"] == {"x": 1}


# ---------------------------------------------------------------------------
# Validation errors
# ---------------------------------------------------------------------------
class TestValidationErrors:
    def test_field_error(self):
        err = FieldError("unknown field", descriptor="R")
        assert err.details == {"descriptor": "R"}
        assert err.error_code == "FIELD_001"

    def test_shape_mismatch(self):
        err = ShapeMismatchError("bad product", left=(2, 3), right=(2, 3))
        assert err.details == {"left": [2, 3], "right": [2, 3]}

    def test_quiver_error_details(self):
        err = QuiverError("bad arrow", arrow="a")
        assert err.details == {"arrow": "a"}
        assert QuiverError("plain").details == {}

    def test_cyclic(self):
        err = CyclicQuiverError("coxeter_power")
        assert "coxeter_power" in str(err)
        assert err.error_code == "QUIVER_002"

    def test_vertex_condition(self):
        err = VertexConditionError(3, "sink")
        assert err.message == "vertex 3 is not a sink"
        assert err.details == {"vertex": 3, "expected": "sink"}

    def test_morphism_error(self):
        err = MorphismError("not a morphism", arrow="b")
        assert err.error_code == "REP_002"
        assert err.details["arrow"] == "b"
        assert "arrow" not in MorphismError("plain").details

    def test_decomposable_input(self):
        err = DecomposableInputError("reg_sub_find", (2, 2))
        assert err.details == {"operation": "reg_sub_find", "dims": [2, 2]}

    def test_configuration_error(self):
        err = ConfigurationError("bad config", config_key="step_budget", expected_type="int")
        assert err.config_key == "step_budget"
        assert err.expected_type == "int"
        assert err.error_code == "CONFIG_001"

    def test_configuration_error_minimal(self):
        err = ConfigurationError("bad config")
        assert err.config_key is None
        assert err.details == {}

    def test_schema_error(self):
        err = SchemaError("invalid", errors=["dims: missing"])
        assert err.to_dict()["details"] == {"errors": ["dims: missing"]}


# ---------------------------------------------------------------------------
# Declared incompleteness
# ---------------------------------------------------------------------------
class TestIncompleteComputation:
    def test_decomposition_incomplete(self):
        err = DecompositionIncompleteError((2,), 2)
        assert err.dims == [2]
        assert err.end_dim == 2
        assert err.exit_code == 3

    def test_irrational_parameter(self):
        err = IrrationalParameterError("Q", "t**2 + 1")
        assert err.details == {"field": "Q", "polynomial": "t**2 + 1"}
        assert IrrationalParameterError("Q").details == {"field": "Q"}

    def test_step_budget(self):
        err = StepBudgetExceededError("trichotomy", 64)
        assert "64" in str(err)
        assert err.error_code == "CLASSIFY_001"


# ---------------------------------------------------------------------------
# Hierarchy checks
# ---------------------------------------------------------------------------
class TestExceptionHierarchy:
    @pytest.mark.parametrize(
        "child,parent",
        [
            (ValidationError, QuiverLabError),
            (FieldError, ValidationError),
            (ShapeMismatchError, ValidationError),
            (QuiverError, ValidationError),
            (CyclicQuiverError, QuiverError),
            (VertexConditionError, QuiverError),
            (RepresentationError, ValidationError),
            (MorphismError, RepresentationError),
            (GraphTypeError, ValidationError),
            (LoopReflectionError, ValidationError),
            (DecomposableInputError, ValidationError),
            (MeshWindowError, ValidationError),
            (CharacteristicError, ValidationError),
            (NonNilpotentRadicalError, ValidationError),
            (RadicalSquareError, ValidationError),
            (TotalRepError, ValidationError),
            (SchemaError, ValidationError),
            (ConfigurationError, ValidationError),
            (IncompleteComputationError, QuiverLabError),
            (DecompositionIncompleteError, IncompleteComputationError),
            (IrrationalParameterError, IncompleteComputationError),
            (StepBudgetExceededError, IncompleteComputationError),
        ],
    )
    def test_inheritance(self, child, parent):
        assert issubclass(child, parent)

    @pytest.mark.parametrize(
        "err,code",
        [
            (FieldError("x"), 2),
            (LoopReflectionError(1), 2),
            (MeshWindowError("x", 2), 2),
            (TotalRepError("x"), 2),
            (DecompositionIncompleteError((1,), 1), 3),
            (StepBudgetExceededError("x", 1), 3),
        ],
    )
    def test_exit_codes(self, err, code):
        assert err.exit_code == code

    def test_catch_all_with_base(self):
        with pytest.raises(QuiverLabError):
            raise CyclicQuiverError("paths_from")
        with pytest.raises(QuiverLabError):
            raise IrrationalParameterError("Q")
