"""Shared pytest fixtures for quiverlab tests.

This module provides fields, catalogue quivers, seeded random sources and
file helpers used across unit and integration tests.
"""

import json
import random
import sys
from pathlib import Path

import pytest

# Add project root and src directory to path for imports
_project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, _project_root)
sys.path.insert(0, str(Path(_project_root) / "src"))

from quiverlab import config  # noqa: E402
from quiverlab.catalogue import d_type, kronecker, linear_a, subspace  # noqa: E402
from quiverlab.linalg import Field  # noqa: E402


# ============================================
# CONFIGURATION
# ============================================


@pytest.fixture(autouse=True)
def default_settings():
    """Run every test against default settings, whatever the shell exports."""
    config.reset_settings(config.load_settings({}))
    yield
    config._settings = None


# ============================================
# FIELDS
# ============================================


@pytest.fixture
def QQ():
    return Field.rationals()


@pytest.fixture
def GF2():
    return Field.prime(2)


@pytest.fixture
def GF3():
    return Field.prime(3)


@pytest.fixture
def GF5():
    return Field.prime(5)


@pytest.fixture
def GF101():
    return Field.prime(101)


# ============================================
# QUIVERS
# ============================================


@pytest.fixture
def a2():
    """1 -> 2."""
    return linear_a(2)


@pytest.fixture
def a3():
    return linear_a(3)


@pytest.fixture
def d4():
    return d_type(4)


@pytest.fixture
def kron():
    """The Kronecker quiver: arrows a, b from 1 to 2."""
    return kronecker(2)


@pytest.fixture
def sub4():
    """Four outer vertices pointing at the centre 5."""
    return subspace(4)


# ============================================
# RANDOMNESS AND FILES
# ============================================


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document under tmp_path and return its path as a string.

    Args:
        tmp_path: pytest's temporary path fixture
    """

    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write
