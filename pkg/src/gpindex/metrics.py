"""Raw metric extraction from session telemetry.

Each function computes the raw measures of one performance category;
:func:`extract_metrics` composes them into a :class:`MetricSet`. All
functions are pure, and every rule is deliberately simple enough to
check against a brute-force oracle:

  - avg_fps            (N-1) / span_seconds
  - low1_fps           nearest-rank 1st percentile of per-interval FPS
  - fps_stability      fraction of intervals within +/-20% of the median interval
  - drain_pct_per_hour endpoint battery delta per hour, floored at 0
  - peak_temp_c        max over all sensors; temp_rise_c = peak - first sample
  - launch_s           first-frame delay; scene_load_s = mean scene-load time
  - touch_latency_ms   median latency (even count: mean of the two middle)
  - gfx_points         0.5*mean(tier/3) + 0.3*render_scale + 0.2*ppi_factor
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateInputError, EngineError, InsufficientSamplesError
from .telemetry import (
    BatterySample,
    DeviceMeta,
    GameSettings,
    LaunchEvent,
    SceneLoad,
    SessionTelemetry,
    TempSample,
    TouchEvent,
)

LOW_PERCENTILE = 1.0
STABILITY_BAND = 0.20
MIN_BATTERY_SPAN_MS = 60_000

GFX_TIER_WEIGHT = 0.5
GFX_RENDER_WEIGHT = 0.3
GFX_PPI_WEIGHT = 0.2
GFX_PPI_REFERENCE = 500.0
GFX_PPI_DEFAULT_FACTOR = 0.5

MS_PER_HOUR = 3_600_000.0

# Fixed metric identifiers used by curves, weights and reports.
METRIC_IDS = (
    "avg_fps",
    "low1_fps",
    "fps_stability",
    "drain_pct_per_hour",
    "peak_temp_c",
    "temp_rise_c",
    "launch_s",
    "scene_load_s",
    "touch_latency_ms",
    "gfx_points",
)


@dataclass(frozen=True)
class MetricSet:
    """Raw metric values extracted from one session.

    Optional fields are None exactly when their source event stream is
    absent from the session.
    """

    avg_fps: float
    low_percentile_fps: float
    fps_stability: float
    drain_rate: float
    peak_temp: float
    temp_rise: float
    gfx_quality_points: float
    session_duration: float
    launch_time: float | None = None
    mean_scene_load: float | None = None
    median_touch_latency: float | None = None

    def __post_init__(self) -> None:
        if not self.avg_fps > 0:
            raise ValueError("avg_fps must be positive")
        if not 0 <= self.fps_stability <= 1:
            raise ValueError("fps_stability must be in [0, 1]")
        if self.drain_rate < 0:
            raise ValueError("drain_rate must be >= 0")
        if not 0 <= self.gfx_quality_points <= 1:
            raise ValueError("gfx_quality_points must be in [0, 1]")

    def as_scores(self) -> dict[str, float | None]:
        """Scoreable values keyed by their fixed metric identifier."""
        return {
            "avg_fps": self.avg_fps,
            "low1_fps": self.low_percentile_fps,
            "fps_stability": self.fps_stability,
            "drain_pct_per_hour": self.drain_rate,
            "peak_temp_c": self.peak_temp,
            "temp_rise_c": self.temp_rise,
            "launch_s": self.launch_time,
            "scene_load_s": self.mean_scene_load,
            "touch_latency_ms": self.median_touch_latency,
            "gfx_points": self.gfx_quality_points,
        }


def compute_fps_metrics(frames: Sequence[float]) -> tuple[float, float, float]:
    """(avg_fps, low1_fps, fps_stability) from frame-present timestamps (ms).

    Zero-length intervals (simultaneous presents) merge into the next
    interval, so instantaneous FPS is always defined.
    """
    ts = np.asarray(frames, dtype=np.float64)
    if ts.size < 2:
        raise DegenerateInputError("need at least 2 frame timestamps")
    span_ms = float(ts[-1] - ts[0])
    if span_ms <= 0:
        raise DegenerateInputError("all frame timestamps are equal")

    avg_fps = (ts.size - 1) / (span_ms / 1000.0)

    deltas = np.diff(ts)
    deltas = deltas[deltas > 0]  # merge zero intervals into the next one
    inst_fps = 1000.0 / deltas

    rank = max(1, math.ceil(LOW_PERCENTILE / 100.0 * inst_fps.size))
    low1_fps = float(np.sort(inst_fps)[rank - 1])

    median_delta = float(np.median(deltas))
    within = np.abs(deltas - median_delta) <= STABILITY_BAND * median_delta
    stability = float(np.count_nonzero(within)) / deltas.size

    return float(avg_fps), low1_fps, stability


def compute_battery_metrics(battery: Sequence[BatterySample]) -> float:
    """Endpoint drain rate in percent per hour, floored at 0.

    Endpoints only: intermediate sampling noise within the charging
    tolerance is deliberately ignored.
    """
    if len(battery) < 2:
        raise InsufficientSamplesError("need at least 2 battery samples")
    first, last = battery[0], battery[-1]
    span_ms = last[0] - first[0]
    if span_ms <= MIN_BATTERY_SPAN_MS:
        raise InsufficientSamplesError(
            f"battery samples must span > {MIN_BATTERY_SPAN_MS // 1000} s, got {span_ms / 1000:.1f} s"
        )
    drain = (first[1] - last[1]) / (span_ms / MS_PER_HOUR)
    return max(0.0, drain)


def compute_thermal_metrics(temperature: Sequence[TempSample]) -> tuple[float, float]:
    """(peak_temp, temp_rise): max over all sensors, rise above the first sample."""
    if not temperature:
        raise InsufficientSamplesError("need at least 1 temperature sample")
    peak = max(s[1] for s in temperature)
    return peak, peak - temperature[0][1]


def compute_swiftness_metrics(
    launch: LaunchEvent | None, scene_loads: Sequence[SceneLoad]
) -> tuple[float | None, float | None]:
    """(launch_time_s, mean_scene_load_s); None when the source event is absent."""
    launch_time = None
    if launch is not None:
        launch_time = (launch[1] - launch[0]) / 1000.0
    mean_load = None
    if scene_loads:
        mean_load = sum((end - start) / 1000.0 for start, end in scene_loads) / len(scene_loads)
    return launch_time, mean_load


def compute_responsiveness_metrics(touch: Sequence[TouchEvent]) -> float | None:
    """Median touch latency in ms (even count: mean of the two middle values)."""
    if not touch:
        return None
    return float(statistics.median(event[1] for event in touch))


def compute_gfx_quality(settings: GameSettings, device: DeviceMeta) -> float:
    """Graphics quality points in [0, 1] from settings tiers, render scale and pixel density.

    Pixel density saturates at 500 ppi; devices that do not report ppi
    get the neutral half-point factor.
    """
    tier_mean = sum(t / 3.0 for t in settings.tiers) / 4.0
    if device.display_ppi is None:
        ppi_factor = GFX_PPI_DEFAULT_FACTOR
    else:
        ppi_factor = min(1.0, max(0.0, device.display_ppi / GFX_PPI_REFERENCE))
    points = (
        GFX_TIER_WEIGHT * tier_mean
        + GFX_RENDER_WEIGHT * settings.render_scale
        + GFX_PPI_WEIGHT * ppi_factor
    )
    return min(1.0, max(0.0, points))


def _named(metric_ids: str, fn, *args):
    try:
        return fn(*args)
    except EngineError as exc:
        raise type(exc)(f"{metric_ids}: {exc}") from exc


def extract_metrics(session: SessionTelemetry) -> MetricSet:
    """Compose all per-category computations into one MetricSet.

    Per-metric errors propagate with the metric name attached. Optional
    metrics are None iff the session lacks the corresponding stream.
    """
    avg_fps, low1, stability = _named(
        "avg_fps/low1_fps/fps_stability", compute_fps_metrics, session.frames
    )
    drain = _named("drain_pct_per_hour", compute_battery_metrics, session.battery)
    peak, rise = _named(
        "peak_temp_c/temp_rise_c", compute_thermal_metrics, session.temperature
    )
    launch_time, mean_load = compute_swiftness_metrics(session.launch, session.scene_loads)
    touch_latency = compute_responsiveness_metrics(session.touch)
    gfx = compute_gfx_quality(session.settings, session.device)
    return MetricSet(
        avg_fps=avg_fps,
        low_percentile_fps=low1,
        fps_stability=stability,
        drain_rate=drain,
        peak_temp=peak,
        temp_rise=rise,
        gfx_quality_points=gfx,
        session_duration=session.duration_ms / 1000.0,
        launch_time=launch_time,
        mean_scene_load=mean_load,
        median_touch_latency=touch_latency,
    )
