"""Scenario documents for the command line.

A scenario is a flat JSON object. Every key carries its unit as a suffix
(``_dbm``, ``_db``, ``_hz``, ``_m``, ``_k``) except the element counts and
the inequality coefficient. Values are resolved with the precedence
default < config file < command-line flag, and each effective value keeps a
record of where it came from.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from .errors import ConfigError

logger = logging.getLogger(__name__)

KEYS = (
    "ptx_dbm",
    "snr_db",
    "nf_db",
    "temp_k",
    "freq_hz",
    "distance_m",
    "dmin_m",
    "dmax_m",
    "mobility_m",
    "ineq_l",
    "d2_max_m",
    "bandwidth_hz",
    "d1_m",
    "d2_m",
    "n1",
    "n2",
)

# stem -> expected unit suffix, used to tell a wrong unit from an unknown key
_UNIT_OF_STEM = {
    "ptx": "dbm",
    "snr": "db",
    "nf": "db",
    "temp": "k",
    "freq": "hz",
    "distance": "m",
    "dmin": "m",
    "dmax": "m",
    "d2_max": "m",
    "bandwidth": "hz",
    "d1": "m",
    "d2": "m",
}

DEFAULTS: dict[str, Optional[float]] = {
    "ptx_dbm": 23.0,
    "snr_db": 20.0,
    "nf_db": 10.0,
    "temp_k": 296.0,
    "freq_hz": 300e9,
    "distance_m": None,
    "dmin_m": 10.0,
    "dmax_m": None,  # falls back to dmin_m
    "mobility_m": 1.0,
    "ineq_l": 1.0,
    "d2_max_m": None,
    "bandwidth_hz": 1e10,
    "d1_m": None,
    "d2_m": None,
    "n1": None,
    "n2": None,
}


def check_key(key: str) -> None:
    if key in KEYS:
        return
    stem, _, suffix = key.rpartition("_")
    if stem in _UNIT_OF_STEM:
        raise ConfigError(
            f"unit-suffix mismatch for key {key!r}: {stem!r} is expressed in "
            f"{_UNIT_OF_STEM[stem]!r}, use {stem + '_' + _UNIT_OF_STEM[stem]!r}"
        )
    raise ConfigError(f"unknown key {key!r}; allowed keys: {', '.join(KEYS)}")


@dataclass
class ScenarioConfig:
    values: dict[str, float] = field(default_factory=dict)
    path: Optional[str] = None

    @classmethod
    def from_mapping(cls, doc: Mapping[str, Any], path: Optional[str] = None) -> "ScenarioConfig":
        if not isinstance(doc, Mapping):
            raise ConfigError(f"{path or 'config'}: top level must be a JSON object")
        values = {}
        for key, value in doc.items():
            check_key(key)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigError(f"key {key!r}: expected a finite number, got {value!r}")
            values[key] = float(value)
        return cls(values, path)


def parse_json(text: str, path: str = "<string>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None


def read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
    return parse_json(text, path)


def load_config(path: str) -> ScenarioConfig:
    """Read and validate a JSON scenario document."""
    return ScenarioConfig.from_mapping(read_json(path), path)


@dataclass(frozen=True)
class Effective:
    """Resolved parameters plus the provenance of each value."""

    values: dict[str, Optional[float]]
    provenance: dict[str, dict[str, Any]]

    def __getitem__(self, key: str) -> Optional[float]:
        return self.values[key]

    def require(self, *keys: str) -> list[float]:
        missing = [k for k in keys if self.values.get(k) is None]
        if missing:
            flags = ", ".join("--" + k.replace("_", "-") for k in missing)
            raise ConfigError(f"missing required parameter(s): {flags}")
        return [self.values[k] for k in keys]

    def given(self, key: str) -> bool:
        return self.provenance[key]["source"] in ("flag", "config")

    def echo(self, keys) -> dict[str, dict[str, Any]]:
        return {k: self.provenance[k] for k in keys if self.values.get(k) is not None}


def resolve(config: Optional[ScenarioConfig], flags: Mapping[str, Optional[float]]) -> Effective:
    """Merge defaults, config values and flag values (highest precedence last)."""
    config = config or ScenarioConfig()
    values: dict[str, Optional[float]] = {}
    provenance: dict[str, dict[str, Any]] = {}
    for key in KEYS:
        value, source = DEFAULTS[key], "default"
        entry: dict[str, Any] = {}
        if key in config.values:
            value, source = config.values[key], "config"
        if flags.get(key) is not None:
            if key in config.values:
                entry["config_value"] = config.values[key]
                logger.info(
                    "%s: flag value %r overrides config value %r", key, flags[key], config.values[key]
                )
            value, source = float(flags[key]), "flag"
        values[key] = value
        entry.update({"value": value, "source": source})
        provenance[key] = entry
    if values["dmax_m"] is None and values["dmin_m"] is not None:
        values["dmax_m"] = values["dmin_m"]
        provenance["dmax_m"] = {"value": values["dmax_m"], "source": "default (= dmin_m)"}
    return Effective(values, provenance)
