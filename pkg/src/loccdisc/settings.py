from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, model_validator

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent / "config.yml"
DEFAULT_TOL = 1e-9
TOL_ENV_VAR = "LOCC_TOL"

_BUILTIN: Dict[str, Any] = {
    "run": {
        "d": 4,
        "k": 4,
        "tol": DEFAULT_TOL,
        "format": "text",
        "threads": None,
        "output_root": "data/output",
    },
    "protocols": {"verify_tol": 1e-9, "zero_probability": 1e-12},
    "logging": {"level": "WARNING", "format": "%(levelname)s %(name)s: %(message)s"},
}


class RunConfig(BaseModel):
    """Validated parameters for one CLI or batch run."""

    d: int = Field(4, ge=2, le=8)
    k: int = Field(4, ge=1)
    tol: float = Field(DEFAULT_TOL, ge=1e-14, le=1e-3)
    format: Literal["json", "csv", "text"] = "text"
    out: Optional[Path] = None
    threads: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def _k_within_index_space(self) -> "RunConfig":
        if self.k > self.d * self.d:
            raise ValueError(f"k={self.k} exceeds d*d={self.d * self.d}")
        return self


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = {**base}
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_config(path: Optional[Path] = None) -> Dict[str, Any]:
    """Package defaults from YAML layered over built-in values; a missing file is not an error."""
    config_path = Path(path) if path else DEFAULT_CONFIG_PATH
    try:
        with open(config_path, "r") as fh:
            loaded = yaml.safe_load(fh) or {}
    except FileNotFoundError:
        logger.debug(f"no config at {config_path}, using built-in defaults")
        loaded = {}
    return _merge(_BUILTIN, loaded)


def resolve_tol(flag: Optional[float], cfg: Dict[str, Any]) -> float:
    """--tol flag, then LOCC_TOL (after .env loading), then config.yml, then 1e-9."""
    if flag is not None:
        return float(flag)
    load_dotenv()
    env = os.getenv(TOL_ENV_VAR)
    if env:
        try:
            return float(env)
        except ValueError:
            raise ValueError(f"{TOL_ENV_VAR}={env!r} is not a number") from None
    return float(cfg.get("run", {}).get("tol", DEFAULT_TOL))


def build_run_config(cfg: Dict[str, Any], **overrides: Any) -> RunConfig:
    """RunConfig from the config ``run`` section plus non-None overrides.

    Raises:
        pydantic.ValidationError: on out-of-range values.
    """
    run = cfg.get("run", {})
    values = {key: run[key] for key in ("d", "k", "format", "threads") if key in run}
    values["tol"] = resolve_tol(overrides.pop("tol", None), cfg)
    values.update({key: value for key, value in overrides.items() if value is not None})
    return RunConfig(**values)
