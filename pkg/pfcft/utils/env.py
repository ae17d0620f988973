""".env file reading."""

from pathlib import Path
from typing import Optional

ENV_PREFIX = "PFCFT_"


def read_env_file(env_path: Path, prefix: Optional[str] = ENV_PREFIX) -> dict[str, str]:
    """Read KEY=VALUE pairs from a .env file.

    Args:
        env_path: Path to the .env file; a missing file yields {}
        prefix: Keep only keys starting with this prefix (None keeps all)
    """
    env_vars: dict[str, str] = {}

    if not env_path.is_file():
        return env_vars

    for line in env_path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, value = line.split("=", 1)
        key = key.strip()
        if key.startswith("export "):
            key = key[len("export ") :].strip()
        if prefix is not None and not key.startswith(prefix):
            continue
        # Remove quotes if present
        env_vars[key] = value.strip().strip('"').strip("'")

    return env_vars
