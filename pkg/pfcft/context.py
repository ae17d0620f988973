"""Per-invocation run context for pfcft commands."""

from pathlib import Path
from typing import Optional

import typer

from pfcft.engine import PlanCache
from pfcft.errors import PfcftError
from pfcft.field import FieldCtx, make_field
from pfcft.utils.config import Config, CseConfig, apply_overrides, load_config
from pfcft.utils.display import display_error

# Values from the global command-line flags, set by the CLI callback.
_overrides: dict[str, Optional[int]] = {}


def set_overrides(**values: Optional[int]) -> None:
    """Record the global command-line values; None entries are dropped."""
    _overrides.clear()
    _overrides.update({k: v for k, v in values.items() if v is not None})


class RunContext:
    """Configuration and shared caches for the current command."""

    def __init__(self, start_path: Optional[Path] = None, **overrides: Optional[int]):
        """Initialize run context.

        Args:
            start_path: Directory holding the .env file (defaults to cwd)
            overrides: Command-line values that take precedence over .env
        """
        self.workspace_root = Path(start_path or Path.cwd())
        merged = {**_overrides, **{k: v for k, v in overrides.items() if v is not None}}
        try:
            self.config: Config = apply_overrides(
                load_config(self.workspace_root), **merged
            )
        except ValueError as e:
            display_error(f"Invalid option: {e}")
            raise typer.Exit(1)
        self.plans = PlanCache(self.config.cse)

    @property
    def cse(self) -> CseConfig:
        """CSE settings."""
        return self.config.cse

    @property
    def max_factor(self) -> int:
        """Largest factor in decompositions."""
        return self.config.plan.max_factor

    @property
    def threads(self) -> int:
        """Worker threads."""
        return self.config.plan.threads

    def field(self, l: int) -> FieldCtx:
        """GF(2^l), or exit with an error if l is unsupported."""
        try:
            return make_field(l)
        except PfcftError as e:
            display_error(str(e))
            raise typer.Exit(1)


def get_context(start_path: Optional[Path] = None) -> RunContext:
    """Get the run context for the current command."""
    return RunContext(start_path)
