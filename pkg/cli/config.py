"""
Run Configuration - One validated configuration per subcommand, merged from
an optional JSON config file and command-line flags (flags win)
"""

import json
import logging
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from checks import CHECKS_REGISTRY
from cli.settings import Settings
from ensembles.models import CouplingLaw, EnsembleSpec
from errors import ParameterError

logger = logging.getLogger(__name__)

ENSEMBLE_KEYS = ("kind", "beta", "n", "m")
COUPLING_KEYS = ("sigma", "shape", "scale")
RUN_KEYS = ("samples", "seed", "format", "out", "suite", "input", "threads", "method")


class RunConfig(BaseModel):
    """Everything a subcommand needs; built before any work starts."""

    model_config = ConfigDict(frozen=True)

    subcommand: Literal["sample", "density", "verify", "roundtrip"]
    ensemble: EnsembleSpec
    coupling: CouplingLaw = Field(default_factory=CouplingLaw)
    samples: Optional[int] = Field(default=None, ge=0)
    seed: int = Field(..., ge=0)
    out: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    suite: List[str] = Field(default_factory=lambda: ["all"])
    input: Optional[str] = None
    threads: int = Field(default=1, ge=1)
    method: Literal["ratio", "importance"] = "ratio"

    @field_validator("suite")
    @classmethod
    def _known_suites(cls, value: List[str]) -> List[str]:
        unknown = [s for s in value if s != "all" and s not in CHECKS_REGISTRY]
        if unknown:
            raise ValueError(f"unknown suite(s) {unknown}; choose from {['all', *CHECKS_REGISTRY]}")
        if not value:
            raise ValueError("at least one suite is required")
        return value


def load_config_file(path: str) -> Dict[str, Any]:
    """
    Read a JSON config file.

    Accepts the ensemble either flat ({"kind": "gaussian", "beta": 2, "n": 8})
    or nested under "ensemble"; the coupling law sits under "coupling".

    Raises:
        OSError: the file cannot be read
        ParameterError: the file is not a JSON object
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParameterError(f"config file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ParameterError(f"config file {path} must hold a JSON object")
    return data


def build_run_config(
    subcommand: str,
    flags: Dict[str, Any],
    settings: Settings,
    file_data: Optional[Dict[str, Any]] = None,
) -> RunConfig:
    """
    Merge config-file values, flags and environment defaults into a RunConfig.

    Args:
        subcommand: sample, density, verify or roundtrip
        flags: Parsed command-line flags; None means "not given"
        settings: Environment settings supplying seed and thread defaults
        file_data: Parsed JSON config file, if any

    Returns:
        Validated RunConfig

    Raises:
        pydantic.ValidationError: the merged values break a model constraint
    """
    file_data = dict(file_data or {})
    given = {k: v for k, v in flags.items() if v is not None}

    ensemble = dict(file_data.get("ensemble", {}))
    ensemble.update({k: file_data[k] for k in ENSEMBLE_KEYS if k in file_data})
    ensemble.update({k: given[k] for k in ENSEMBLE_KEYS if k in given})

    coupling = file_data.get("coupling", {})
    coupling = {"kind": coupling} if isinstance(coupling, str) else dict(coupling)
    if "coupling" in given:
        coupling["kind"] = given["coupling"]
    coupling.update({k: given[k] for k in COUPLING_KEYS if k in given})

    run = {k: file_data[k] for k in RUN_KEYS if k in file_data}
    run.update({k: given[k] for k in RUN_KEYS if k in given})
    if isinstance(run.get("suite"), str):
        run["suite"] = [s.strip() for s in run["suite"].split(",") if s.strip()]
    run.setdefault("seed", settings.default_seed)
    run.setdefault("threads", settings.threads)

    config = RunConfig(subcommand=subcommand, ensemble=ensemble, coupling=coupling, **run)
    logger.debug(f"Run configuration: {config.model_dump()}")
    return config
