"""Tests for plan and transform commands."""

from pathlib import Path

import pytest
import typer

from pfcft.commands import plan as plan_cmd
from pfcft.plan_io import read_plan


class TestParseFactors:
    """Test suite for parse_factors."""

    @pytest.mark.parametrize("text", ["3,85", "3x85", " 3 , 85 "])
    def test_accepted_forms(self, text):
        """Test comma and x separators."""
        assert plan_cmd.parse_factors(text) == (3, 85)

    def test_none(self):
        """Test an omitted list stays None."""
        assert plan_cmd.parse_factors(None) is None

    @pytest.mark.parametrize("text", ["a,b", "", ","])
    def test_rejected(self, text):
        """Test malformed or empty lists."""
        with pytest.raises(typer.Exit) as exc_info:
            plan_cmd.parse_factors(text)

        assert exc_info.value.exit_code == 1


class TestPlanCommand:
    """Test suite for the plan command."""

    def test_plan_default_output(self, workspace: Path):
        """Test the plan file is written under its default name."""
        plan_cmd.plan(n=15, l=4, factors=None, output=None)

        path = workspace / "pfcft_15_l4.plan"
        assert path.exists()
        assert read_plan(path).factors == (3, 5)

    def test_plan_forced_factors(self, workspace: Path):
        """Test a forced decomposition of 255."""
        output = workspace / "forced.plan"

        plan_cmd.plan(n=255, l=8, factors="3,85", output=output)

        loaded = read_plan(output)
        assert loaded.factors == (3, 85)
        assert loaded.report.mult == 85 * 1 + 3 * 195

    def test_plan_single_cfft(self, workspace: Path):
        """Test a prime length gives a one-factor plan."""
        output = workspace / "prime.plan"

        plan_cmd.plan(n=31, l=5, factors=None, output=output)

        assert read_plan(output).factors == (31,)

    @pytest.mark.parametrize(
        "n,l,factors", [(16, 4, None), (15, 13, None), (15, 4, "3,3"), (15, 4, "15,1")]
    )
    def test_plan_invalid(self, workspace: Path, n, l, factors):
        """Test bad lengths, fields and factor lists."""
        with pytest.raises(typer.Exit) as exc_info:
            plan_cmd.plan(n=n, l=l, factors=factors, output=workspace / "x.plan")

        assert exc_info.value.exit_code == 1

    def test_plan_unwritable_output(self, workspace: Path):
        """Test a path in a missing directory."""
        with pytest.raises(typer.Exit) as exc_info:
            plan_cmd.plan(n=15, l=4, factors=None, output=workspace / "no" / "x.plan")

        assert exc_info.value.exit_code == 1


class TestTransformCommand:
    """Test suite for the transform command."""

    @pytest.fixture
    def plan_file(self, workspace: Path) -> Path:
        path = workspace / "p.plan"
        plan_cmd.plan(n=15, l=4, factors="3,5", output=path)
        return path

    def test_delta_gives_all_ones(self, workspace: Path, plan_file: Path):
        """Test (1, 0, ..., 0) transforms to all ones."""
        source = workspace / "in.txt"
        source.write_text("1\n" + "0\n" * 14)
        target = workspace / "out.txt"

        plan_cmd.transform(plan_file=plan_file, input_file=source, output=target)

        assert target.read_text() == "1\n" * 15

    def test_zero_input(self, workspace: Path, plan_file: Path, capsys):
        """Test zero input prints zero output."""
        source = workspace / "in.txt"
        source.write_text("0\n" * 15)
        capsys.readouterr()

        plan_cmd.transform(plan_file=plan_file, input_file=source, output=None)

        assert capsys.readouterr().out.split() == ["0"] * 15

    def test_length_mismatch(self, workspace: Path, plan_file: Path):
        """Test an input of the wrong length."""
        source = workspace / "in.txt"
        source.write_text("1\n2\n")

        with pytest.raises(typer.Exit) as exc_info:
            plan_cmd.transform(plan_file=plan_file, input_file=source, output=None)

        assert exc_info.value.exit_code == 1

    def test_corrupt_plan(self, workspace: Path, plan_file: Path):
        """Test a damaged plan file."""
        plan_file.write_text(plan_file.read_text().replace("factors=3x5", "factors=5x5"))
        source = workspace / "in.txt"
        source.write_text("0\n" * 15)

        with pytest.raises(typer.Exit) as exc_info:
            plan_cmd.transform(plan_file=plan_file, input_file=source, output=None)

        assert exc_info.value.exit_code == 1

    def test_missing_input(self, workspace: Path, plan_file: Path):
        """Test an input file that does not exist."""
        with pytest.raises(typer.Exit):
            plan_cmd.transform(
                plan_file=plan_file, input_file=workspace / "absent.txt", output=None
            )
