"""Tests for the run context."""

from pathlib import Path

import pytest
import typer

from pfcft.context import RunContext, get_context, set_overrides
from pfcft.field import make_field


class TestRunContext:
    """Test suite for RunContext class."""

    def test_defaults(self, tmp_path: Path):
        """Test an empty workspace gives the default configuration."""
        context = RunContext(start_path=tmp_path)

        assert context.workspace_root == tmp_path
        assert context.cse.restarts == 8
        assert context.max_factor == 200
        assert context.threads == 1
        assert len(context.plans) == 0

    def test_env_file_is_read(self, tmp_path: Path):
        """Test values from the workspace .env file."""
        (tmp_path / ".env").write_text("PFCFT_SEED=11\nPFCFT_MAX_FACTOR=90\n")

        context = RunContext(start_path=tmp_path)

        assert context.cse.seed == 11
        assert context.max_factor == 90

    def test_overrides_beat_env_file(self, tmp_path: Path):
        """Test explicit overrides take precedence over .env values."""
        (tmp_path / ".env").write_text("PFCFT_SEED=11\n")

        context = RunContext(start_path=tmp_path, seed=5, threads=2)

        assert context.cse.seed == 5
        assert context.threads == 2
        assert context.cse.threads == 2

    def test_global_overrides(self, tmp_path: Path):
        """Test values registered by the CLI callback reach new contexts."""
        set_overrides(restarts=3, seed=None)

        context = RunContext(start_path=tmp_path)

        assert context.cse.restarts == 3
        assert context.cse.seed == 0

    def test_invalid_override_exits(self, tmp_path: Path):
        """Test an out-of-range override ends the command."""
        with pytest.raises(typer.Exit) as exc_info:
            RunContext(start_path=tmp_path, restarts=0)

        assert exc_info.value.exit_code == 1

    def test_field(self, tmp_path: Path):
        """Test fields come from the shared cache."""
        context = RunContext(start_path=tmp_path)

        assert context.field(8) is make_field(8)

    def test_unsupported_field_exits(self, tmp_path: Path):
        """Test an unsupported degree ends the command."""
        context = RunContext(start_path=tmp_path)

        with pytest.raises(typer.Exit) as exc_info:
            context.field(13)

        assert exc_info.value.exit_code == 1


class TestGetContext:
    """Test suite for get_context."""

    def test_uses_current_directory(self, workspace: Path):
        """Test the default workspace is the current directory."""
        assert get_context().workspace_root.resolve() == workspace.resolve()
