"""Synthetic session generator.

Generates telemetry from a parametric device model whose true values are
known in closed form, so the extraction pipeline can be checked against
ground truth, and ships the demo corpus manifest used for the example
device comparison.

Randomness comes from SplitMix64, a fixed 64-bit generator simple enough
to reimplement bit-exactly anywhere, which keeps generated fixtures and
golden files portable. Draw order per session is fixed: one frame-jitter
draw per interval (none when frame_jitter_sd_ms is 0), then one latency
draw per touch event.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib.resources import files
from typing import Any

from .errors import ModelError, SchemaError
from .telemetry import (
    BatterySample,
    DeviceMeta,
    GameSettings,
    LaunchEvent,
    SessionTelemetry,
    TempSample,
    TouchEvent,
)

_MASK64 = (1 << 64) - 1

BATTERY_SAMPLE_PERIOD_MS = 30_000
TEMP_SAMPLE_PERIOD_MS = 30_000
TOUCH_PERIOD_MS = 2_000
TOUCH_JITTER_FRACTION = 0.10
MIN_DURATION_S = 120.0

# Keeps the frame count stable when the frame time divides the duration
# exactly (float accumulation would otherwise sit on the boundary).
_BOUNDARY_EPS_MS = 1e-6


class SplitMix64:
    """SplitMix64: state advances by a fixed odd constant, output is a
    finalizing hash of the state. Reference constants per the original
    public-domain algorithm."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_float()


@dataclass(frozen=True)
class DeviceModel:
    """Parametric ground truth for one synthetic device.

    Frame intervals are base_frame_time_ms plus zero-mean uniform noise
    with standard deviation frame_jitter_sd_ms, inflated by
    throttle_factor once the session passes throttle_onset_s.
    """

    device_id: str
    base_frame_time_ms: float
    drain_rate_pct_per_hour: float
    temp_start_c: float
    temp_peak_c: float
    touch_latency_ms: float
    launch_s: float
    seed: int
    frame_jitter_sd_ms: float = 0.0
    throttle_onset_s: float | None = None
    throttle_factor: float = 1.0
    game_id: str = "demo_game"
    render_scale: float = 1.0
    texture_tier: int = 3
    effects_tier: int = 3
    aa_tier: int = 3
    dynamic_range_tier: int = 3
    display_ppi: float | None = None
    battery_capacity_mah: int | None = None

    def __post_init__(self) -> None:
        if self.base_frame_time_ms <= 0:
            raise ModelError("base_frame_time_ms must be > 0")
        if self.frame_jitter_sd_ms < 0:
            raise ModelError("frame_jitter_sd_ms must be >= 0")
        if self.throttle_factor < 1:
            raise ModelError("throttle_factor must be >= 1")
        if self.throttle_onset_s is not None and self.throttle_onset_s <= 0:
            raise ModelError("throttle_onset_s must be > 0")
        if self.drain_rate_pct_per_hour < 0:
            raise ModelError("drain_rate_pct_per_hour must be >= 0")
        if self.temp_peak_c < self.temp_start_c:
            raise ModelError("temp_peak_c must be >= temp_start_c")
        if self.touch_latency_ms < 0:
            raise ModelError("touch_latency_ms must be >= 0")
        if self.launch_s < 0:
            raise ModelError("launch_s must be >= 0")


def generate_session(model: DeviceModel, duration_s: float) -> SessionTelemetry:
    """Generate one session of the given duration; deterministic per seed.

    The output always satisfies every telemetry invariant.
    """
    if duration_s < MIN_DURATION_S:
        raise ModelError(f"duration must be >= {MIN_DURATION_S:.0f} s, got {duration_s}")
    rng = SplitMix64(model.seed)
    duration_ms = duration_s * 1000.0

    # Zero-mean uniform noise with sd -> half-width sd * sqrt(3).
    jitter_half_width = model.frame_jitter_sd_ms * math.sqrt(3.0)
    onset_ms = None if model.throttle_onset_s is None else model.throttle_onset_s * 1000.0

    frames = []
    t = 0.0
    while t < duration_ms - _BOUNDARY_EPS_MS:
        frames.append(round(t))
        dt = model.base_frame_time_ms
        if onset_ms is not None and t >= onset_ms:
            dt *= model.throttle_factor
        if jitter_half_width > 0:
            dt += rng.uniform(-jitter_half_width, jitter_half_width)
        t += max(dt, 0.001)

    battery = []
    t_ms = 0
    while t_ms <= duration_ms:
        level = 100.0 - model.drain_rate_pct_per_hour * (t_ms / 3_600_000.0)
        battery.append(BatterySample(t_ms, max(0.0, level)))
        t_ms += BATTERY_SAMPLE_PERIOD_MS

    saturation_s = duration_s
    if model.throttle_onset_s is not None:
        saturation_s = min(3.0 * model.throttle_onset_s, duration_s)
    temperature = []
    t_ms = 0
    while t_ms <= duration_ms:
        frac = min(1.0, (t_ms / 1000.0) / saturation_s)
        value = model.temp_start_c + (model.temp_peak_c - model.temp_start_c) * frac
        temperature.append(TempSample(t_ms, value, "soc"))
        t_ms += TEMP_SAMPLE_PERIOD_MS

    touch = []
    t_ms = TOUCH_PERIOD_MS
    while t_ms <= duration_ms:
        latency = model.touch_latency_ms * (
            1.0 + rng.uniform(-TOUCH_JITTER_FRACTION, TOUCH_JITTER_FRACTION)
        )
        touch.append(TouchEvent(t_ms, latency))
        t_ms += TOUCH_PERIOD_MS

    return SessionTelemetry(
        schema_version=1,
        device=DeviceMeta(
            device_id=model.device_id,
            battery_capacity_mah=model.battery_capacity_mah,
            display_ppi=model.display_ppi,
        ),
        settings=GameSettings(
            game_id=model.game_id,
            render_scale=model.render_scale,
            texture_tier=model.texture_tier,
            effects_tier=model.effects_tier,
            aa_tier=model.aa_tier,
            dynamic_range_tier=model.dynamic_range_tier,
        ),
        frames=tuple(frames),
        battery=tuple(battery),
        temperature=tuple(temperature),
        touch=tuple(touch),
        launch=LaunchEvent(0, round(model.launch_s * 1000.0)),
    )


# --- corpus manifests --------------------------------------------------


@dataclass(frozen=True)
class CorpusDevice:
    model: DeviceModel
    sessions: int
    session_duration_s: float


_MODEL_FIELDS = {
    "device_id": str,
    "base_frame_time_ms": (int, float),
    "drain_rate_pct_per_hour": (int, float),
    "temp_start_c": (int, float),
    "temp_peak_c": (int, float),
    "touch_latency_ms": (int, float),
    "launch_s": (int, float),
    "seed": int,
}
_OPTIONAL_MODEL_FIELDS = {
    "frame_jitter_sd_ms": (int, float),
    "throttle_onset_s": (int, float),
    "throttle_factor": (int, float),
    "game_id": str,
    "render_scale": (int, float),
    "texture_tier": int,
    "effects_tier": int,
    "aa_tier": int,
    "dynamic_range_tier": int,
    "display_ppi": (int, float),
    "battery_capacity_mah": int,
}


def _model_from_json(obj: dict, where: str) -> DeviceModel:
    kwargs: dict[str, Any] = {}
    for name, types in _MODEL_FIELDS.items():
        if name not in obj:
            raise SchemaError(f"{where}.{name}: missing required field")
        value = obj[name]
        if isinstance(value, bool) or not isinstance(value, types):
            raise SchemaError(f"{where}.{name}: wrong type {type(value).__name__}")
        kwargs[name] = value
    for name, types in _OPTIONAL_MODEL_FIELDS.items():
        if name in obj and obj[name] is not None:
            value = obj[name]
            if isinstance(value, bool) or not isinstance(value, types):
                raise SchemaError(f"{where}.{name}: wrong type {type(value).__name__}")
            kwargs[name] = value
    unknown = set(obj) - set(_MODEL_FIELDS) - set(_OPTIONAL_MODEL_FIELDS)
    if unknown:
        raise SchemaError(f"{where}: unknown model fields {sorted(unknown)}")
    return DeviceModel(**kwargs)


def load_manifest(data: bytes) -> tuple[CorpusDevice, ...]:
    """Parse a corpus manifest (same JSON syntax family as session files)."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"malformed manifest: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema_version") != 1:
        raise SchemaError("manifest schema_version must be 1")
    devices = doc.get("devices")
    if not isinstance(devices, list) or not devices:
        raise SchemaError("manifest must declare a non-empty devices array")
    corpus = []
    for i, entry in enumerate(devices):
        where = f"devices[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where}: expected object")
        sessions = entry.get("sessions")
        if isinstance(sessions, bool) or not isinstance(sessions, int) or sessions < 1:
            raise SchemaError(f"{where}.sessions: expected positive integer")
        duration = entry.get("session_duration_s")
        if isinstance(duration, bool) or not isinstance(duration, (int, float)):
            raise SchemaError(f"{where}.session_duration_s: expected number")
        model_obj = entry.get("model")
        if not isinstance(model_obj, dict):
            raise SchemaError(f"{where}.model: expected object")
        corpus.append(
            CorpusDevice(
                model=_model_from_json(model_obj, f"{where}.model"),
                sessions=sessions,
                session_duration_s=float(duration),
            )
        )
    return tuple(corpus)


def default_demo_manifest() -> tuple[CorpusDevice, ...]:
    """The shipped 9-device demo corpus manifest."""
    return load_manifest(files("gpindex.data").joinpath("demo_manifest.json").read_bytes())


def generate_corpus(
    corpus: tuple[CorpusDevice, ...] | list[CorpusDevice],
) -> dict[str, list[SessionTelemetry]]:
    """Generate every session of a corpus; session i uses seed + i."""
    out: dict[str, list[SessionTelemetry]] = {}
    for device in corpus:
        sessions = []
        for i in range(device.sessions):
            model = DeviceModel(
                **{**_model_kwargs(device.model), "seed": device.model.seed + i}
            )
            sessions.append(generate_session(model, device.session_duration_s))
        out[device.model.device_id] = sessions
    return out


def _model_kwargs(model: DeviceModel) -> dict[str, Any]:
    return {name: getattr(model, name) for name in model.__dataclass_fields__}
