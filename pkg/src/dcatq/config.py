"""Pipeline configuration from a properties-format text file.

Unknown keys are collected as warnings, never errors, so configs can carry
deployment-specific extras. Required keys are checked by the command that
needs them, not at parse time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .properties import PropertiesError, load_properties
from .rdf import Iri

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


KNOWN_KEYS = {
    "io.input",
    "io.output",
    "index.output",
    "pipeline.workers",
    "catfish.enabled",
    "catfish.removeEmpty",
    "catfish.normalizeFormats",
    "catfish.allowedLanguages",
    "catfish.catalogId",
    "refine.enabled",
    "refine.languageThreshold",
    "refine.detectLanguages",
    "refine.annotatePlaces",
    "refine.gazetteer",
    "civet.enabled",
    "civet.includeLongRunning",
    "civet.logIfNotComputed",
    "civet.removeMeasurements",
    "civet.evaluationTime",
    "civet.descriptionMinWords",
    "dedup.enabled",
    "dedup.threshold",
    "report.figures",
    "service.port",
    "service.cors_origin",
    "service.synonyms",
}


@dataclass
class PipelineConfig:
    values: dict[str, str] = field(default_factory=dict)
    unknown_keys: list[str] = field(default_factory=list)
    base_dir: Path = field(default_factory=Path.cwd)

    @classmethod
    def from_file(cls, path) -> "PipelineConfig":
        path = Path(path)
        try:
            values = load_properties(path)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}")
        except PropertiesError as exc:
            raise ConfigError(f"{path}: {exc}")
        config = cls(values=values, base_dir=path.parent.resolve())
        config.unknown_keys = sorted(set(values) - KNOWN_KEYS)
        for key in config.unknown_keys:
            log.warning("unknown config key ignored: %s", key)
        return config

    # -- typed accessors --

    def _get(self, key: str) -> Optional[str]:
        value = self.values.get(key)
        return value if value not in (None, "") else None

    def string(self, key: str, default: Optional[str] = None) -> Optional[str]:
        value = self._get(key)
        return value if value is not None else default

    def path(self, key: str, default: Optional[str] = None) -> Optional[Path]:
        value = self.string(key, default)
        if value is None:
            return None
        p = Path(value)
        return p if p.is_absolute() else self.base_dir / p

    def required_path(self, key: str) -> Path:
        p = self.path(key)
        if p is None:
            raise ConfigError(f"missing required config key: {key}")
        return p

    def boolean(self, key: str, default: bool) -> bool:
        value = self._get(key)
        if value is None:
            return default
        if value.lower() in ("true", "yes", "1"):
            return True
        if value.lower() in ("false", "no", "0"):
            return False
        raise ConfigError(f"{key}: expected true/false, got {value!r}")

    def number(self, key: str, default: float) -> float:
        value = self._get(key)
        if value is None:
            return default
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {value!r}")

    def integer(self, key: str, default: int) -> int:
        value = self._get(key)
        if value is None:
            return default
        try:
            return int(value)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {value!r}")

    def languages(self, key: str) -> frozenset[str]:
        value = self._get(key)
        if value is None:
            return frozenset()
        return frozenset(t.strip().lower() for t in value.split(",") if t.strip())

    def iri(self, key: str) -> Optional[Iri]:
        value = self._get(key)
        if value is None:
            return None
        try:
            return Iri(value)
        except ValueError as exc:
            raise ConfigError(f"{key}: {exc}")
