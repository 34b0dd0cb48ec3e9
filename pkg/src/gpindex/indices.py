"""Upper aggregation levels: sub-index scores -> six main indices -> overall score.

Both levels use a weighted arithmetic mean. Metrics a session did not
measure are never scored as zero: their weight is renormalized over the
measured ones and the renormalization is recorded as a flag, so a device
is not punished for unmeasured behavior.

Repeated sessions aggregate by median (even count: mean of the two
middle values) to absorb the natural deviation between gameplay sessions.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import (
    AllIndicesAbsentError,
    CurveError,
    EmptyInputError,
    MixedDevicesError,
    WeightError,
)
from .metrics import METRIC_IDS, extract_metrics
from .scoring import MappingCurve, SubIndexScore, map_metric
from .telemetry import SessionTelemetry


class MainIndex(Enum):
    """The six fixed performance categories."""

    VISUAL_SMOOTHNESS = "visual_smoothness"
    GRAPHICAL_QUALITY = "graphical_quality"
    BATTERY = "battery"
    TEMPERATURE = "temperature"
    SWIFTNESS = "swiftness"
    RESPONSIVENESS = "responsiveness"


# Static assignment of every metric to exactly one main index.
METRIC_INDEX: dict[str, MainIndex] = {
    "avg_fps": MainIndex.VISUAL_SMOOTHNESS,
    "low1_fps": MainIndex.VISUAL_SMOOTHNESS,
    "fps_stability": MainIndex.VISUAL_SMOOTHNESS,
    "gfx_points": MainIndex.GRAPHICAL_QUALITY,
    "drain_pct_per_hour": MainIndex.BATTERY,
    "peak_temp_c": MainIndex.TEMPERATURE,
    "temp_rise_c": MainIndex.TEMPERATURE,
    "launch_s": MainIndex.SWIFTNESS,
    "scene_load_s": MainIndex.SWIFTNESS,
    "touch_latency_ms": MainIndex.RESPONSIVENESS,
}

INDEX_METRICS: dict[MainIndex, tuple[str, ...]] = {
    index: tuple(m for m in METRIC_IDS if METRIC_INDEX[m] is index) for index in MainIndex
}

assert set(METRIC_INDEX) == set(METRIC_IDS)

# Normalized weights are quantized to this many decimals so that scaling
# a weight vector by any positive constant reproduces the same stored
# weights bit-for-bit (scores are then identical, not merely close).
WEIGHT_DECIMALS = 10


def _normalized(weights: Mapping, what: str) -> dict:
    total = 0.0
    for key, weight in weights.items():
        if weight < 0:
            raise WeightError(f"{what}: negative weight for {key}")
        total += weight
    if total <= 0:
        raise WeightError(f"{what}: weights must not all be zero")
    return {key: round(w / total, WEIGHT_DECIMALS) for key, w in weights.items()}


@dataclass(frozen=True)
class IndexProfile:
    """Named gamer persona: weights over sub-metrics and over main indices.

    Weight maps are normalized (and quantized) at construction; missing
    sub-weight maps default to uniform weights over that index's metrics,
    missing main weights default to zero.
    """

    name: str
    main_weights: dict[MainIndex, float]
    sub_weights: dict[MainIndex, dict[str, float]]

    def __post_init__(self) -> None:
        if not self.name:
            raise WeightError("profile name must be non-empty")
        for index in self.main_weights:
            if not isinstance(index, MainIndex):
                raise WeightError(f"unknown main index {index!r}")
        main = {index: float(self.main_weights.get(index, 0.0)) for index in MainIndex}
        if not any(w > 0 for w in main.values()):
            raise WeightError(f"profile '{self.name}': at least one main weight must be positive")
        object.__setattr__(self, "main_weights", _normalized(main, f"profile '{self.name}' main weights"))

        subs: dict[MainIndex, dict[str, float]] = {}
        for index in MainIndex:
            given = self.sub_weights.get(index)
            if not given:
                members = INDEX_METRICS[index]
                subs[index] = _normalized(
                    {m: 1.0 for m in members}, f"profile '{self.name}' {index.value}"
                )
                continue
            for metric_id in given:
                if metric_id not in METRIC_INDEX:
                    raise WeightError(
                        f"profile '{self.name}': unknown metric '{metric_id}' in sub weights"
                    )
                if METRIC_INDEX[metric_id] is not index:
                    raise WeightError(
                        f"profile '{self.name}': metric '{metric_id}' does not belong to {index.value}"
                    )
            subs[index] = _normalized(
                {m: float(w) for m, w in given.items()},
                f"profile '{self.name}' {index.value}",
            )
        for index in self.sub_weights:
            if index not in subs:
                raise WeightError(f"profile '{self.name}': unknown sub-weight group {index!r}")
        object.__setattr__(self, "sub_weights", subs)


def _weighted_mean(pairs: Sequence[tuple[float, float]]) -> float:
    """Mean of (weight, score) pairs, clamped to [0, 100] against float drift."""
    total_w = sum(w for w, _ in pairs)
    value = sum(w * s for w, s in pairs) / total_w
    return min(100.0, max(0.0, value))


def score_main_index(
    sub_scores: Iterable[SubIndexScore], weights: Mapping[str, float]
) -> tuple[float | None, tuple[str, ...]]:
    """Weighted mean of the present sub-scores of one main index.

    Weights renormalize over the metrics that are present; each absent
    positively-weighted metric produces a flag. Returns (None, flags)
    when nothing is present.
    """
    if not weights:
        raise WeightError("empty weight map")
    indices = set()
    for metric_id in weights:
        if metric_id not in METRIC_INDEX:
            raise WeightError(f"unknown metric '{metric_id}' in weights")
        indices.add(METRIC_INDEX[metric_id])
    if len(indices) > 1:
        raise WeightError("weights span multiple main indices")
    index = indices.pop()

    present = {s.metric_id: s.score for s in sub_scores}
    contributing = [(weights[m], present[m]) for m in weights if m in present]
    if not contributing:
        # Whole index absent; score_overall records that, nothing renormalizes here.
        return None, ()
    flags = []
    missing = sorted(m for m, w in weights.items() if w > 0 and m not in present)
    if missing:
        flags.append(
            f"{index.value}: missing {'+'.join(missing)} (weights renormalized)"
        )
    if sum(w for w, _ in contributing) <= 0:
        # Everything measured carries zero weight; fall back to a plain mean.
        flags.append(f"{index.value}: measured metrics all zero-weighted (uniform fallback)")
        contributing = [(1.0, s) for _, s in contributing]
    return _weighted_mean(contributing), tuple(flags)


def score_overall(
    main_scores: Mapping[MainIndex, float | None], profile: IndexProfile
) -> tuple[float, tuple[str, ...]]:
    """Weighted mean of the present main-index scores under a profile."""
    present = {i: s for i, s in main_scores.items() if s is not None}
    if not present:
        raise AllIndicesAbsentError("no main index could be scored")
    flags = []
    missing = sorted(
        i.value for i, w in profile.main_weights.items() if w > 0 and i not in present
    )
    if missing:
        flags.append(f"overall: missing {'+'.join(missing)} (weights renormalized)")
    contributing = [(profile.main_weights[i], s) for i, s in present.items()]
    if sum(w for w, _ in contributing) <= 0:
        flags.append("overall: measured indices all zero-weighted (uniform fallback)")
        contributing = [(1.0, s) for _, s in contributing]
    return _weighted_mean(contributing), tuple(flags)


def aggregate_sessions(per_session_overalls: Sequence[float]) -> float:
    """Median across sessions; even count takes the mean of the two middle values."""
    if not per_session_overalls:
        raise EmptyInputError("aggregate_sessions requires at least one value")
    return float(statistics.median(per_session_overalls))


@dataclass(frozen=True)
class SessionScores:
    sub_scores: tuple[SubIndexScore, ...]
    main_scores: dict[MainIndex, float | None]
    overall: float
    flags: tuple[str, ...]


@dataclass(frozen=True)
class ScoreCard:
    """Full score tree for one device under one profile."""

    device_id: str
    profile_name: str
    sessions: tuple[SessionScores, ...]
    median_overall: float
    median_main: dict[MainIndex, float | None]
    flags: tuple[str, ...]


def _score_session(
    session: SessionTelemetry,
    profile: IndexProfile,
    curves: Mapping[str, MappingCurve],
) -> SessionScores:
    metric_values = extract_metrics(session).as_scores()
    subs = []
    for metric_id in METRIC_IDS:
        value = metric_values[metric_id]
        if value is None:
            continue
        if metric_id not in curves:
            raise CurveError(f"no mapping curve for metric '{metric_id}'")
        subs.append(map_metric(value, curves[metric_id]))

    mains: dict[MainIndex, float | None] = {}
    flags: list[str] = []
    for index in MainIndex:
        members = [s for s in subs if METRIC_INDEX[s.metric_id] is index]
        score, index_flags = score_main_index(members, profile.sub_weights[index])
        mains[index] = score
        flags.extend(index_flags)
    overall, overall_flags = score_overall(mains, profile)
    flags.extend(overall_flags)
    return SessionScores(tuple(subs), mains, overall, tuple(flags))


def score_device(
    sessions: Sequence[SessionTelemetry],
    profile: IndexProfile,
    curves: Mapping[str, MappingCurve],
) -> ScoreCard:
    """Run the full pipeline per session, then aggregate by median.

    All sessions must come from the same device. Deterministic: identical
    inputs give a bit-identical ScoreCard.
    """
    if not sessions:
        raise EmptyInputError("score_device requires at least one session")
    device_ids = {s.device.device_id for s in sessions}
    if len(device_ids) > 1:
        raise MixedDevicesError(f"sessions span multiple devices: {sorted(device_ids)}")

    scored = tuple(_score_session(s, profile, curves) for s in sessions)
    median_overall = aggregate_sessions([s.overall for s in scored])
    median_main: dict[MainIndex, float | None] = {}
    for index in MainIndex:
        values = [s.main_scores[index] for s in scored if s.main_scores[index] is not None]
        median_main[index] = float(statistics.median(values)) if values else None
    flags = tuple(sorted({flag for s in scored for flag in s.flags}))
    return ScoreCard(
        device_id=device_ids.pop(),
        profile_name=profile.name,
        sessions=scored,
        median_overall=median_overall,
        median_main=median_main,
        flags=flags,
    )
