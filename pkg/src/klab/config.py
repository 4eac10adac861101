"""Runtime configuration.

Resolution order, lowest to highest: built-in defaults, then config.json in
the cache directory, then the KLAB_* environment variables, then
command-line flags.  The cache directory itself is resolved from flag or
KLAB_CACHE_DIR before the config file is consulted.

config.json keys (all optional): "default_cap" (int), "guard_size" (int),
"threads" (int).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidInputError

ENV_CACHE_DIR = "KLAB_CACHE_DIR"
ENV_THREADS = "KLAB_THREADS"
ENV_DEFAULT_CAP = "KLAB_DEFAULT_CAP"


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "klab"


@dataclass
class RunConfig:
    cache_dir: Path
    cache_enabled: bool = True
    default_cap: int | None = None
    guard_size: int = 8
    threads: int = 1
    json_output: bool = False

    @classmethod
    def load(
        cls,
        cache_dir=None,
        no_cache: bool = False,
        default_cap: int | None = None,
        guard_size: int | None = None,
        threads: int | None = None,
        json_output: bool = False,
        env=None,
    ) -> RunConfig:
        env = os.environ if env is None else env
        directory = Path(cache_dir or env.get(ENV_CACHE_DIR) or default_cache_dir())

        values = {"default_cap": None, "guard_size": 8, "threads": 1}
        config_path = directory / "config.json"
        if config_path.is_file():
            try:
                file_values = json.loads(config_path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise InvalidInputError(f"unreadable config file {config_path}: {exc}") from None
            for key in values:
                if key in file_values:
                    values[key] = file_values[key]

        def env_int(name):
            raw = env.get(name)
            if raw is None:
                return None
            try:
                return int(raw)
            except ValueError:
                raise InvalidInputError(f"{name} must be an integer, got {raw!r}") from None

        if (cap := env_int(ENV_DEFAULT_CAP)) is not None:
            values["default_cap"] = cap
        if (thr := env_int(ENV_THREADS)) is not None:
            values["threads"] = thr

        if default_cap is not None:
            values["default_cap"] = default_cap
        if guard_size is not None:
            values["guard_size"] = guard_size
        if threads is not None:
            values["threads"] = threads

        return cls(
            cache_dir=directory,
            cache_enabled=not no_cache,
            default_cap=values["default_cap"],
            guard_size=int(values["guard_size"]),
            threads=int(values["threads"]),
            json_output=json_output,
        )
