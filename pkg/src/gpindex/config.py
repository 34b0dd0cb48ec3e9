"""Engine configuration: the full scoring policy as reviewable data.

One JSON file declares every mapping curve (keyed by metric id) and every
persona profile (sub-metric weights per main index plus main-index
weights). Nothing about how scores come out of the engine is hard-coded;
overriding the file overrides the policy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib.resources import files

from .errors import ConfigError, CurveError, EngineError, WeightError
from .indices import IndexProfile, MainIndex
from .metrics import METRIC_IDS
from .scoring import MappingCurve, validate_curve

CONFIG_SCHEMA_VERSION = 1

_INDEX_BY_VALUE = {index.value: index for index in MainIndex}


@dataclass(frozen=True)
class EngineConfig:
    schema_version: int
    curves: dict[str, MappingCurve]
    profiles: dict[str, IndexProfile]


def load_config(data: bytes) -> EngineConfig:
    """Parse and validate a config document; any problem raises ConfigError."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config top level must be an object")
    if doc.get("schema_version") != CONFIG_SCHEMA_VERSION:
        raise ConfigError(f"config schema_version must be {CONFIG_SCHEMA_VERSION}")

    curves_obj = doc.get("curves")
    if not isinstance(curves_obj, dict) or not curves_obj:
        raise ConfigError("config must declare a non-empty curves object")
    curves: dict[str, MappingCurve] = {}
    for metric_id, breakpoints in curves_obj.items():
        if metric_id not in METRIC_IDS:
            raise ConfigError(f"curves: unknown metric '{metric_id}'")
        if not isinstance(breakpoints, list):
            raise ConfigError(f"curves.{metric_id}: expected an array of [value, score] pairs")
        try:
            curves[metric_id] = validate_curve(
                metric_id, [(float(p[0]), float(p[1])) for p in breakpoints]
            )
        except (CurveError, TypeError, ValueError, IndexError) as exc:
            raise ConfigError(f"curves.{metric_id}: {exc}") from exc

    profiles_obj = doc.get("profiles")
    if not isinstance(profiles_obj, dict) or not profiles_obj:
        raise ConfigError("config must declare a non-empty profiles object")
    profiles: dict[str, IndexProfile] = {}
    for name, body in profiles_obj.items():
        if not isinstance(body, dict):
            raise ConfigError(f"profiles.{name}: expected object")
        main_obj = body.get("main_weights")
        if not isinstance(main_obj, dict):
            raise ConfigError(f"profiles.{name}.main_weights: expected object")
        main_weights = {}
        for index_id, weight in main_obj.items():
            if index_id not in _INDEX_BY_VALUE:
                raise ConfigError(f"profiles.{name}.main_weights: unknown index '{index_id}'")
            main_weights[_INDEX_BY_VALUE[index_id]] = float(weight)
        sub_obj = body.get("sub_weights", {})
        if not isinstance(sub_obj, dict):
            raise ConfigError(f"profiles.{name}.sub_weights: expected object")
        sub_weights = {}
        for index_id, weights in sub_obj.items():
            if index_id not in _INDEX_BY_VALUE:
                raise ConfigError(f"profiles.{name}.sub_weights: unknown index '{index_id}'")
            if not isinstance(weights, dict):
                raise ConfigError(f"profiles.{name}.sub_weights.{index_id}: expected object")
            sub_weights[_INDEX_BY_VALUE[index_id]] = {m: float(w) for m, w in weights.items()}
        try:
            profiles[name] = IndexProfile(name, main_weights, sub_weights)
        except (WeightError, EngineError) as exc:
            raise ConfigError(f"profiles.{name}: {exc}") from exc

    for name, profile in profiles.items():
        for index, weights in profile.sub_weights.items():
            for metric_id in weights:
                if metric_id not in curves:
                    raise ConfigError(
                        f"profiles.{name}: metric '{metric_id}' has no curve in config"
                    )

    return EngineConfig(CONFIG_SCHEMA_VERSION, curves, profiles)


def load_config_file(path: str) -> EngineConfig:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return load_config(data)


def default_config() -> EngineConfig:
    """The packaged default curves and persona profiles."""
    return load_config(files("gpindex.data").joinpath("default_config.json").read_bytes())
