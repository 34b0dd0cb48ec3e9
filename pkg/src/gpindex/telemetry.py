"""Session telemetry data model and parser.

One gameplay session is one structured-text (JSON) document holding
device/game metadata plus time-stamped event streams: frame-present
timestamps, battery level, temperature, touch latency and scene loads.
Timestamps are session-relative integer milliseconds.

Parsing is total over the error taxonomy: any byte string yields either
a fully validated :class:`SessionTelemetry` or exactly one of
``SessionSyntaxError`` / ``SchemaError`` / ``ValidationError``.
"""

from __future__ import annotations

import json
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

from .errors import (
    EmptyInputError,
    SchemaError,
    SessionSyntaxError,
    ValidationError,
)

SCHEMA_VERSION = 1

# Battery level may wobble upward by at most this much between consecutive
# samples (sensor noise); anything larger means the device was charging.
BATTERY_RISE_TOLERANCE_PP = 0.5

GAME_TIER_FIELDS = ("texture_tier", "effects_tier", "aa_tier", "dynamic_range_tier")


class UnknownKeyWarning(UserWarning):
    """Emitted when a session document carries keys the schema ignores."""


class LaunchEvent(NamedTuple):
    t_start_ms: int
    t_first_frame_ms: int


class BatterySample(NamedTuple):
    t_ms: int
    level_pct: float


class TempSample(NamedTuple):
    t_ms: int
    value_c: float
    sensor: str


class TouchEvent(NamedTuple):
    t_ms: int
    latency_ms: float


class SceneLoad(NamedTuple):
    t_start_ms: int
    t_end_ms: int


@dataclass(frozen=True)
class DeviceMeta:
    """Identity and display/battery properties of the recorded device."""

    device_id: str
    battery_capacity_mah: int | None = None
    display_ppi: float | None = None
    display_resolution: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if not self.device_id:
            raise ValidationError("device_id must be non-empty")
        if self.battery_capacity_mah is not None and self.battery_capacity_mah <= 0:
            raise ValidationError("battery_capacity_mah must be positive")
        if self.display_ppi is not None and not self.display_ppi > 0:
            raise ValidationError("display_ppi must be positive")
        if self.display_resolution is not None:
            object.__setattr__(self, "display_resolution", tuple(self.display_resolution))
            w, h = self.display_resolution
            if w <= 0 or h <= 0:
                raise ValidationError("display_resolution must be positive")


@dataclass(frozen=True)
class GameSettings:
    """In-game rendering settings active during the session."""

    game_id: str
    render_scale: float
    texture_tier: int
    effects_tier: int
    aa_tier: int
    dynamic_range_tier: int

    def __post_init__(self) -> None:
        if not self.game_id:
            raise ValidationError("game_id must be non-empty")
        if not 0 < self.render_scale <= 1:
            raise ValidationError(
                f"render_scale must be in (0, 1], got {self.render_scale}"
            )
        for name in GAME_TIER_FIELDS:
            tier = getattr(self, name)
            if tier not in (0, 1, 2, 3):
                raise ValidationError(f"{name} must be in 0..3, got {tier}")

    @property
    def tiers(self) -> tuple[int, int, int, int]:
        return (self.texture_tier, self.effects_tier, self.aa_tier, self.dynamic_range_tier)


@dataclass(frozen=True)
class SessionTelemetry:
    """One recorded gameplay session, fully validated.

    All event streams are immutable and sorted (non-decreasing in t);
    the constructor enforces every invariant, so any instance that
    exists is valid.
    """

    schema_version: int
    device: DeviceMeta
    settings: GameSettings
    frames: tuple[int, ...]
    battery: tuple[BatterySample, ...] = ()
    temperature: tuple[TempSample, ...] = ()
    touch: tuple[TouchEvent, ...] = ()
    scene_loads: tuple[SceneLoad, ...] = ()
    launch: LaunchEvent | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "frames", tuple(self.frames))
        object.__setattr__(self, "battery", tuple(BatterySample(*s) for s in self.battery))
        object.__setattr__(self, "temperature", tuple(TempSample(*s) for s in self.temperature))
        object.__setattr__(self, "touch", tuple(TouchEvent(*s) for s in self.touch))
        object.__setattr__(self, "scene_loads", tuple(SceneLoad(*s) for s in self.scene_loads))
        if self.launch is not None:
            object.__setattr__(self, "launch", LaunchEvent(*self.launch))
        self._validate()

    def _validate(self) -> None:
        if self.schema_version != SCHEMA_VERSION:
            raise ValidationError(
                f"schema_version must be {SCHEMA_VERSION}, got {self.schema_version}"
            )
        if len(self.frames) < 2:
            raise ValidationError("frames must contain at least 2 timestamps")
        for prev, cur in zip(self.frames, self.frames[1:]):
            if cur < prev:
                raise ValidationError(f"frames not non-decreasing at t={cur}ms")
        if self.duration_ms <= 0:
            raise ValidationError("session duration (last frame - first frame) must be > 0")

        prev_sample: BatterySample | None = None
        for sample in self.battery:
            if not 0 <= sample.level_pct <= 100:
                raise ValidationError(
                    f"battery level out of [0, 100] at t={sample.t_ms}ms"
                )
            if prev_sample is not None:
                if sample.t_ms < prev_sample.t_ms:
                    raise ValidationError(f"battery not non-decreasing in t at t={sample.t_ms}ms")
                if sample.level_pct > prev_sample.level_pct + BATTERY_RISE_TOLERANCE_PP:
                    raise ValidationError(
                        f"battery increased by >{BATTERY_RISE_TOLERANCE_PP}pp "
                        f"at t={sample.t_ms}ms (charging sessions are rejected)"
                    )
            prev_sample = sample

        for name, stream in (("temperature", self.temperature), ("touch", self.touch)):
            ts = [s[0] for s in stream]
            for prev, cur in zip(ts, ts[1:]):
                if cur < prev:
                    raise ValidationError(f"{name} not non-decreasing in t at t={cur}ms")

        for event in self.touch:
            if event.latency_ms < 0:
                raise ValidationError(f"negative touch latency at t={event.t_ms}ms")

        prev_start: int | None = None
        for load in self.scene_loads:
            if load.t_end_ms < load.t_start_ms:
                raise ValidationError(
                    f"scene_load ends before it starts at t={load.t_start_ms}ms"
                )
            if prev_start is not None and load.t_start_ms < prev_start:
                raise ValidationError(
                    f"scene_loads not non-decreasing in t at t={load.t_start_ms}ms"
                )
            prev_start = load.t_start_ms

        if self.launch is not None and self.launch.t_first_frame_ms < self.launch.t_start_ms:
            raise ValidationError("launch t_first_frame must be >= t_start")

    @property
    def duration_ms(self) -> int:
        return self.frames[-1] - self.frames[0]


# --- parsing -----------------------------------------------------------

_TOP_KEYS = {"schema_version", "device", "game", "events"}
_DEVICE_KEYS = {"device_id", "battery_capacity_mah", "display_ppi", "display_resolution"}
_GAME_KEYS = {"game_id", "render_scale"} | set(GAME_TIER_FIELDS)
_EVENT_KEYS = {"launch", "frames", "battery", "temperature", "touch", "scene_loads"}


def _warn_unknown(obj: dict, known: set[str], path: str) -> None:
    for key in obj:
        if key not in known:
            where = f"{path}.{key}" if path else key
            warnings.warn(f"ignoring unknown key '{where}'", UnknownKeyWarning, stacklevel=3)


def _require(obj: dict, key: str, path: str) -> Any:
    if key not in obj or obj[key] is None:
        where = f"{path}.{key}" if path else key
        raise SchemaError(f"{where}: missing required field")
    return obj[key]


def _as_obj(value: Any, where: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(f"{where}: expected object, got {type(value).__name__}")
    return value


def _as_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: expected integer, got {type(value).__name__}")
    return value


def _as_real(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected number, got {type(value).__name__}")
    return float(value)


def _as_str(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{where}: expected string, got {type(value).__name__}")
    return value


def _as_list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected array, got {type(value).__name__}")
    return value


def _as_pair(value: Any, where: str) -> list:
    pair = _as_list(value, where)
    if len(pair) != 2:
        raise SchemaError(f"{where}: expected a 2-element array")
    return pair


def _opt_list(obj: dict, key: str, where: str) -> list:
    value = obj.get(key)
    if value is None:  # absent and explicit null both mean "not recorded"
        return []
    return _as_list(value, where)


def _parse_device(obj: dict) -> DeviceMeta:
    _warn_unknown(obj, _DEVICE_KEYS, "device")
    device_id = _as_str(_require(obj, "device_id", "device"), "device.device_id")
    capacity = obj.get("battery_capacity_mah")
    if capacity is not None:
        capacity = _as_int(capacity, "device.battery_capacity_mah")
    ppi = obj.get("display_ppi")
    if ppi is not None:
        ppi = _as_real(ppi, "device.display_ppi")
    resolution = obj.get("display_resolution")
    if resolution is not None:
        pair = _as_pair(resolution, "device.display_resolution")
        resolution = (
            _as_int(pair[0], "device.display_resolution[0]"),
            _as_int(pair[1], "device.display_resolution[1]"),
        )
    return DeviceMeta(device_id, capacity, ppi, resolution)


def _parse_game(obj: dict) -> GameSettings:
    _warn_unknown(obj, _GAME_KEYS, "game")
    kwargs: dict[str, Any] = {
        "game_id": _as_str(_require(obj, "game_id", "game"), "game.game_id"),
        "render_scale": _as_real(_require(obj, "render_scale", "game"), "game.render_scale"),
    }
    for name in GAME_TIER_FIELDS:
        kwargs[name] = _as_int(_require(obj, name, "game"), f"game.{name}")
    return GameSettings(**kwargs)


def _parse_events(obj: dict) -> dict[str, Any]:
    _warn_unknown(obj, _EVENT_KEYS, "events")
    frames = [
        _as_int(v, f"events.frames[{i}]")
        for i, v in enumerate(_as_list(_require(obj, "frames", "events"), "events.frames"))
    ]

    launch = None
    if obj.get("launch") is not None:
        pair = _as_pair(obj["launch"], "events.launch")
        launch = LaunchEvent(
            _as_int(pair[0], "events.launch[0]"), _as_int(pair[1], "events.launch[1]")
        )

    battery = []
    for i, entry in enumerate(_opt_list(obj, "battery", "events.battery")):
        where = f"events.battery[{i}]"
        pair = _as_pair(entry, where)
        battery.append(
            BatterySample(_as_int(pair[0], where + "[0]"), _as_real(pair[1], where + "[1]"))
        )

    temperature = []
    for i, entry in enumerate(_opt_list(obj, "temperature", "events.temperature")):
        where = f"events.temperature[{i}]"
        triple = _as_list(entry, where)
        if len(triple) != 3:
            raise SchemaError(f"{where}: expected a 3-element array")
        temperature.append(
            TempSample(
                _as_int(triple[0], where + "[0]"),
                _as_real(triple[1], where + "[1]"),
                _as_str(triple[2], where + "[2]"),
            )
        )

    touch = []
    for i, entry in enumerate(_opt_list(obj, "touch", "events.touch")):
        where = f"events.touch[{i}]"
        pair = _as_pair(entry, where)
        touch.append(
            TouchEvent(_as_int(pair[0], where + "[0]"), _as_real(pair[1], where + "[1]"))
        )

    scene_loads = []
    for i, entry in enumerate(_opt_list(obj, "scene_loads", "events.scene_loads")):
        where = f"events.scene_loads[{i}]"
        pair = _as_pair(entry, where)
        scene_loads.append(
            SceneLoad(_as_int(pair[0], where + "[0]"), _as_int(pair[1], where + "[1]"))
        )

    return {
        "frames": tuple(frames),
        "battery": tuple(battery),
        "temperature": tuple(temperature),
        "touch": tuple(touch),
        "scene_loads": tuple(scene_loads),
        "launch": launch,
    }


def parse_session(data: bytes) -> SessionTelemetry:
    """Parse and validate one session document.

    Raises ``SessionSyntaxError`` for malformed text, ``SchemaError`` for
    missing/mistyped fields (naming the field path) and ``ValidationError``
    for invariant violations (naming the invariant).
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SessionSyntaxError(f"session document is not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SessionSyntaxError(f"malformed session document: {exc}") from exc

    root = _as_obj(doc, "top level")
    _warn_unknown(root, _TOP_KEYS, "")
    version = _as_int(_require(root, "schema_version", ""), "schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"schema_version: expected {SCHEMA_VERSION}, got {version}")
    device = _parse_device(_as_obj(_require(root, "device", ""), "device"))
    settings = _parse_game(_as_obj(_require(root, "game", ""), "game"))
    events = _parse_events(_as_obj(_require(root, "events", ""), "events"))
    return SessionTelemetry(
        schema_version=version, device=device, settings=settings, **events
    )


def parse_session_file(path: str) -> SessionTelemetry:
    with open(path, "rb") as fh:
        return parse_session(fh.read())


# --- comparability -----------------------------------------------------

# Fields a fair cross-device comparison controls for. Session length and
# general device settings are deliberately not checked here.
COMPARABILITY_FIELDS = ("game_id",) + GAME_TIER_FIELDS


class ComparabilityFlag(NamedTuple):
    session_index: int
    field: str
    value: Any
    modal: Any


@dataclass(frozen=True)
class ComparabilityReport:
    flags: tuple[ComparabilityFlag, ...]

    @property
    def ok(self) -> bool:
        return not self.flags


def validate_comparability(sessions: Sequence[SessionTelemetry]) -> ComparabilityReport:
    """Flag sessions whose game or settings tiers differ from the modal values.

    Purely advisory: nothing is mutated or rejected. Modal ties break
    toward the smallest value so the report is deterministic.
    """
    if not sessions:
        raise EmptyInputError("validate_comparability requires at least one session")
    flags = []
    for field_name in COMPARABILITY_FIELDS:
        values = [getattr(s.settings, field_name) for s in sessions]
        counts = Counter(values)
        modal = min(counts, key=lambda v: (-counts[v], v))
        for i, value in enumerate(values):
            if value != modal:
                flags.append(ComparabilityFlag(i, field_name, value, modal))
    flags.sort(key=lambda f: (f.session_index, f.field))
    return ComparabilityReport(tuple(flags))
