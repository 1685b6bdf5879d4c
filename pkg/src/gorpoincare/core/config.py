"""Configuration loading: packaged defaults, run files and the check catalog."""

from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml

from gorpoincare.core.errors import ConfigError
from gorpoincare.core.models import RunConfig

DATA_DIR = Path(__file__).parent.parent / "data"

RUN_FIELDS = (
    "e",
    "s",
    "prime",
    "seed",
    "steps",
    "degree_cap",
    "suites",
    "maps",
    "output_format",
    "exploration",
    "max_retries",
    "workers",
    "timings",
)


def _load_yaml(path: Path) -> dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except (IOError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping")
    return data


@lru_cache(maxsize=None)
def load_defaults() -> dict[str, Any]:
    """Packaged defaults from data/defaults.yaml."""
    return _load_yaml(DATA_DIR / "defaults.yaml")


@lru_cache(maxsize=None)
def load_anchors() -> dict[str, dict[str, Any]]:
    """The check catalog from data/anchors.yaml."""
    return _load_yaml(DATA_DIR / "anchors.yaml")


def default_steps(e: int) -> int:
    """Default homological truncation N for embedding dimension e."""
    defaults = load_defaults()
    table = {int(k): int(v) for k, v in defaults.get("steps", {}).items()}
    return table.get(e, int(defaults.get("default_steps", 3)))


def load_run_file(path: str | Path) -> dict[str, Any]:
    """Read a YAML run file, keeping only known RunConfig fields.

    Raises:
        ConfigError: if the file is unreadable or names unknown fields
    """
    data = _load_yaml(Path(path))
    unknown = sorted(set(data) - set(RUN_FIELDS))
    if unknown:
        raise ConfigError(f"unknown fields in {path}: {', '.join(unknown)}")
    return data


def build_config(overrides: dict[str, Any], run_file: str | Path | None = None) -> RunConfig:
    """Merge defaults, run file and explicit overrides (None means not given).

    Raises:
        ConfigError: if e or s is missing or the merged settings are invalid
    """
    defaults = load_defaults()
    # defaults.yaml keys steps by e; default_steps resolves it below
    merged: dict[str, Any] = {
        k: defaults[k] for k in RUN_FIELDS if k in defaults and k != "steps"
    }
    if run_file is not None:
        merged.update(load_run_file(run_file))
    merged.update({k: v for k, v in overrides.items() if v is not None})
    if "e" not in merged or "s" not in merged:
        raise ConfigError("both e and s must be given")
    config = RunConfig(**{k: merged[k] for k in RUN_FIELDS if k in merged})
    if config.steps is None:
        config.steps = default_steps(config.e)
    return config.validate()
