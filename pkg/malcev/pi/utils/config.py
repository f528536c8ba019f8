import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

_DEFAULTS_FILE = Path(__file__).resolve().parent.parent / "defaults" / "settings.yaml"

_ENVIRONMENT = {
    "MALCEV_CACHE_DIR": "cache_dir",
    "MALCEV_MAX_DEGREE": "max_degree",
    "MALCEV_LOG_LEVEL": "log_level",
}


@dataclass(frozen=True)
class Settings:
    max_degree: int = 7
    cache_dir: str = "~/.cache/malcev"
    cache_format_version: int = 1
    log_level: str = "WARNING"
    self_test: bool = True

    @property
    def cache_path(self) -> Path:
        return Path(os.path.expanduser(self.cache_dir))

    def override(self, **changes: Any) -> "Settings":
        """Return a copy with the non-None ``changes`` applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _read_yaml(path: Path) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"Settings file '{path}' must contain a mapping.")
    return data


def load_settings(path: Optional[str] = None, environ: Optional[Dict[str, str]] = None) -> Settings:
    """
    Load settings from the packaged defaults, a user YAML file and the environment.

    :param path: Optional YAML file; defaults to ``$MALCEV_CONFIG`` when set.
    :param environ: Environment mapping, ``os.environ`` by default.
    :return: The merged, immutable Settings.
    """
    environ = os.environ if environ is None else environ
    values = _read_yaml(_DEFAULTS_FILE)

    user_file = path or environ.get("MALCEV_CONFIG")
    if user_file:
        values.update(_read_yaml(Path(user_file)))

    for variable, key in _ENVIRONMENT.items():
        if environ.get(variable):
            values[key] = environ[variable]

    known = Settings.__dataclass_fields__
    unknown = set(values) - set(known)
    if unknown:
        raise ValueError(f"Unknown settings: {', '.join(sorted(unknown))}")

    values["max_degree"] = int(values.get("max_degree", 7))
    values["cache_format_version"] = int(values.get("cache_format_version", 1))
    values["self_test"] = bool(values.get("self_test", True))
    return Settings(**values)
