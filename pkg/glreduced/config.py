"""
Runtime settings.
Precedence: command-line flags > JSON config file > environment > defaults.
The environment only supplies the cache directory (GLREDUCED_CACHE_DIR).
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from .schemas import SolverConfig

load_dotenv()

CACHE_DIR_ENV = "GLREDUCED_CACHE_DIR"
DEFAULT_CACHE_DIR = ".glreduced_cache"


class Settings(BaseModel):
    cache_dir: str = DEFAULT_CACHE_DIR
    output_dir: str = "results"
    jobs: int = Field(default=1, ge=1)
    use_cache: bool = True
    solver: SolverConfig = SolverConfig()


def load_settings(config_path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> Settings:
    """Merge defaults, environment, an optional JSON file and flag overrides.

    The JSON file mirrors Settings: top-level keys plus a nested "solver" object.
    Overrides whose value is None are ignored; solver overrides go under "solver".
    """
    data: Dict[str, Any] = {}
    env_cache = os.getenv(CACHE_DIR_ENV)
    if env_cache:
        data["cache_dir"] = env_cache

    if config_path:
        path = Path(config_path)
        with path.open("r", encoding="utf-8") as handle:
            file_data = json.load(handle)
        solver = file_data.pop("solver", None)
        data.update(file_data)
        if solver is not None:
            data["solver"] = solver

    overrides = dict(overrides or {})
    solver_overrides = {k: v for k, v in overrides.pop("solver", {}).items() if v is not None}
    data.update({k: v for k, v in overrides.items() if v is not None})

    settings = Settings(**data)
    if solver_overrides:
        settings = settings.model_copy(update={"solver": settings.solver.with_updates(**solver_overrides)})
    return settings
