"""Pytest configuration and shared fixtures."""

from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

from pfcft.context import RunContext, set_overrides
from pfcft.field import FieldCtx, make_field
from pfcft.utils.config import CseConfig


@pytest.fixture
def runner():
    """Provide a Typer CLI test runner."""
    return CliRunner()


@pytest.fixture
def gf16() -> FieldCtx:
    return make_field(4)


@pytest.fixture
def gf64() -> FieldCtx:
    return make_field(6)


@pytest.fixture
def gf256() -> FieldCtx:
    return make_field(8)


@pytest.fixture
def fast_cse() -> CseConfig:
    """Few restarts, so optimized plans build quickly."""
    return CseConfig(seed=0, restarts=2)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def workspace(tmp_path: Path, monkeypatch) -> Path:
    """Run the test from an empty temporary directory."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def run_context(workspace: Path) -> RunContext:
    """Run context over the temporary workspace with a fast CSE setting."""
    return RunContext(start_path=workspace, restarts=2)


@pytest.fixture(autouse=True)
def mock_get_context(run_context, monkeypatch):
    """Automatically hand every command the temporary run context."""

    def _mock_get_context(start_path=None):
        return run_context

    monkeypatch.setattr("pfcft.commands.plan.get_context", _mock_get_context)
    monkeypatch.setattr("pfcft.commands.verify.get_context", _mock_get_context)
    monkeypatch.setattr("pfcft.commands.bench.get_context", _mock_get_context)
    monkeypatch.setattr("pfcft.commands.tables.get_context", _mock_get_context)
    monkeypatch.setattr("pfcft.commands.factor.get_context", _mock_get_context)


@pytest.fixture(autouse=True)
def reset_overrides():
    """Global CLI flags must not leak between tests."""
    set_overrides()
    yield
    set_overrides()
