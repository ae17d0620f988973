"""Configuration from the workspace .env file."""

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from pfcft.structure import DEFAULT_MAX_FACTOR
from pfcft.utils.display import display_warning
from pfcft.utils.env import read_env_file


class CseConfig(BaseModel):
    """Knobs for the randomized common-subexpression pass."""

    model_config = ConfigDict(frozen=True)

    seed: int = 0
    restarts: int = Field(default=8, ge=1)
    max_passes: int = Field(default=0, ge=0)  # 0 = run until no pair repeats
    pair_budget: int = Field(default=2_000_000, ge=1)
    threads: int = Field(default=1, ge=1)


class PlanSettings(BaseModel):
    """Plan construction settings."""

    model_config = ConfigDict(frozen=True)

    max_factor: int = Field(default=DEFAULT_MAX_FACTOR, ge=2)
    threads: int = Field(default=1, ge=1)


class Config(BaseModel):
    """Main configuration."""

    cse: CseConfig = CseConfig()
    plan: PlanSettings = PlanSettings()


# .env key -> (section, field)
ENV_KEYS: dict[str, tuple[str, str]] = {
    "PFCFT_SEED": ("cse", "seed"),
    "PFCFT_RESTARTS": ("cse", "restarts"),
    "PFCFT_MAX_PASSES": ("cse", "max_passes"),
    "PFCFT_PAIR_BUDGET": ("cse", "pair_budget"),
    "PFCFT_MAX_FACTOR": ("plan", "max_factor"),
    "PFCFT_THREADS": ("plan", "threads"),
}


def _section_values(env: dict[str, str]) -> dict[str, dict[str, int]]:
    sections: dict[str, dict[str, int]] = {"cse": {}, "plan": {}}
    for key, (section, field) in ENV_KEYS.items():
        if key not in env:
            continue
        try:
            sections[section][field] = int(env[key])
        except ValueError:
            display_warning(f"Ignoring {key}={env[key]!r}: not an integer")
    # One thread setting drives both CSE restarts and axis transforms.
    if "threads" in sections["plan"]:
        sections["cse"]["threads"] = sections["plan"]["threads"]
    return sections


def _build_section(model: type[BaseModel], values: dict[str, int]) -> BaseModel:
    accepted: dict[str, int] = {}
    for field, value in values.items():
        try:
            model(**{field: value})
        except ValidationError:
            display_warning(f"Ignoring out-of-range {field}={value}")
            continue
        accepted[field] = value
    return model(**accepted)


def load_config(workspace_root: Path) -> Config:
    """Load configuration from `workspace_root/.env`.

    Recognized keys: PFCFT_SEED, PFCFT_RESTARTS, PFCFT_MAX_PASSES,
    PFCFT_PAIR_BUDGET, PFCFT_MAX_FACTOR, PFCFT_THREADS. Malformed values
    fall back to the defaults with a warning.
    """
    sections = _section_values(read_env_file(workspace_root / ".env"))
    return Config(
        cse=_build_section(CseConfig, sections["cse"]),
        plan=_build_section(PlanSettings, sections["plan"]),
    )


def apply_overrides(
    config: Config,
    seed: Optional[int] = None,
    restarts: Optional[int] = None,
    max_passes: Optional[int] = None,
    max_factor: Optional[int] = None,
    threads: Optional[int] = None,
) -> Config:
    """Return a copy of config with command-line values taking precedence."""
    cse_updates = {
        key: value
        for key, value in {
            "seed": seed,
            "restarts": restarts,
            "max_passes": max_passes,
            "threads": threads,
        }.items()
        if value is not None
    }
    plan_updates = {
        key: value
        for key, value in {"max_factor": max_factor, "threads": threads}.items()
        if value is not None
    }
    # Validate through the constructors so bad flags raise ValidationError.
    cse = CseConfig(**{**config.cse.model_dump(), **cse_updates})
    plan = PlanSettings(**{**config.plan.model_dump(), **plan_updates})
    return Config(cse=cse, plan=plan)
