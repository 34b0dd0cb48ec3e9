"""Device comparison tables and canonical report emission.

Ranking always reads exact (unrounded) scores; integer display rounding is
presentation-only so a half-point display artifact can never reorder
devices. Tied exact scores share a rank and the next rank skips
(competition ranking: 1, 1, 3).

All emitters are canonical: fixed key order, reals with exactly 4
decimal places, "\\n" newlines, UTF-8 — equal tables serialize to
identical bytes on every platform.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import EmptyInputError, MixedProfilesError, SchemaError
from .indices import MainIndex, ScoreCard
from .telemetry import SessionTelemetry

REPORT_SCHEMA_VERSION = 1

# Column code -> main index, in the frozen report order.
INDEX_COLUMNS: tuple[tuple[str, MainIndex], ...] = (
    ("vs", MainIndex.VISUAL_SMOOTHNESS),
    ("gq", MainIndex.GRAPHICAL_QUALITY),
    ("ba", MainIndex.BATTERY),
    ("te", MainIndex.TEMPERATURE),
    ("sw", MainIndex.SWIFTNESS),
    ("re", MainIndex.RESPONSIVENESS),
)

CSV_HEADER = "device_id,profile,rank,overall,vs,gq,ba,te,sw,re,flags"


def round_display(score: float) -> int:
    """Round half away from zero; display-only, never used for ranking."""
    return int(math.copysign(math.floor(abs(score) + 0.5), score))


@dataclass(frozen=True)
class ComparisonRow:
    rank: int
    device_id: str
    overall_exact: float
    overall_display: int
    index_display: dict[MainIndex, int | None]
    flags: tuple[str, ...]


@dataclass(frozen=True)
class ComparisonTable:
    profile_name: str
    rows: tuple[ComparisonRow, ...]


def rank_devices(cards: Sequence[ScoreCard]) -> ComparisonTable:
    """Rank score cards (all for the same profile) into a comparison table.

    Rows sort by exact overall descending, ties broken by device_id
    ascending; equal exact scores receive equal (competition) ranks.
    """
    if not cards:
        raise EmptyInputError("rank_devices requires at least one score card")
    profiles = {c.profile_name for c in cards}
    if len(profiles) > 1:
        raise MixedProfilesError(f"cards span multiple profiles: {sorted(profiles)}")

    ordered = sorted(cards, key=lambda c: (-c.median_overall, c.device_id))
    rows = []
    rank = 1
    for i, card in enumerate(ordered):
        if i > 0 and card.median_overall != ordered[i - 1].median_overall:
            rank = i + 1
        rows.append(
            ComparisonRow(
                rank=rank,
                device_id=card.device_id,
                overall_exact=card.median_overall,
                overall_display=round_display(card.median_overall),
                index_display={
                    index: None if card.median_main[index] is None
                    else round_display(card.median_main[index])
                    for index in MainIndex
                },
                flags=card.flags,
            )
        )
    return ComparisonTable(profile_name=profiles.pop(), rows=tuple(rows))


# --- canonical writers -------------------------------------------------


def _canon(value: Any, indent: int) -> str:
    pad = "  " * indent
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".4f")
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            f"{pad}  {json.dumps(k, ensure_ascii=False)}: {_canon(v, indent + 1)}"
            for k, v in value.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = ",\n".join(f"{pad}  {_canon(v, indent + 1)}" for v in value)
        return "[\n" + items + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _csv_field(value: str) -> str:
    if any(c in value for c in ",\"\n"):
        return '"' + value.replace('"', '""') + '"'
    return value


def emit_report(table: ComparisonTable, format: str = "json") -> bytes:
    """Serialize a comparison table canonically as json or csv."""
    if format == "json":
        doc = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "profile": table.profile_name,
            "rows": [
                {
                    "rank": row.rank,
                    "device_id": row.device_id,
                    "overall_exact": row.overall_exact,
                    "overall_display": row.overall_display,
                    "indices": {
                        code: row.index_display[index] for code, index in INDEX_COLUMNS
                    },
                    "flags": list(row.flags),
                }
                for row in table.rows
            ],
        }
        return (_canon(doc, 0) + "\n").encode("utf-8")
    if format == "csv":
        lines = [CSV_HEADER]
        for row in table.rows:
            cells = [
                _csv_field(row.device_id),
                _csv_field(table.profile_name),
                str(row.rank),
                str(row.overall_display),
            ]
            for _, index in INDEX_COLUMNS:
                display = row.index_display[index]
                cells.append("" if display is None else str(display))
            cells.append(_csv_field("|".join(row.flags)))
            lines.append(",".join(cells))
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format '{format}'")


def parse_report(data: bytes) -> ComparisonTable:
    """Parse a json report back into a ComparisonTable (round-trip of emit_report)."""
    doc = json.loads(data.decode("utf-8"))
    if doc.get("schema_version") != REPORT_SCHEMA_VERSION:
        raise SchemaError(f"report schema_version must be {REPORT_SCHEMA_VERSION}")
    code_index = dict(INDEX_COLUMNS)
    rows = tuple(
        ComparisonRow(
            rank=row["rank"],
            device_id=row["device_id"],
            overall_exact=float(row["overall_exact"]),
            overall_display=row["overall_display"],
            index_display={
                code_index[code]: value for code, value in row["indices"].items()
            },
            flags=tuple(row["flags"]),
        )
        for row in doc["rows"]
    )
    return ComparisonTable(profile_name=doc["profile"], rows=rows)


def emit_plot_data(tables: Sequence[ComparisonTable]) -> bytes:
    """Grouped-bar-chart data: one row per (device, profile) with the display score.

    Rows group by device_id (ascending), profiles in the order the
    tables were given, so any plotting tool can redraw the comparison.
    """
    if not tables:
        raise EmptyInputError("emit_plot_data requires at least one table")
    by_device: dict[str, list[tuple[str, int]]] = {}
    for table in tables:
        for row in table.rows:
            by_device.setdefault(row.device_id, []).append(
                (table.profile_name, row.overall_display)
            )
    lines = ["device_id,profile,overall_display"]
    for device_id in sorted(by_device):
        for profile_name, display in by_device[device_id]:
            lines.append(f"{_csv_field(device_id)},{_csv_field(profile_name)},{display}")
    return ("\n".join(lines) + "\n").encode("utf-8")


# --- session writer ----------------------------------------------------


def serialize_session(session: SessionTelemetry) -> bytes:
    """Canonical session-file bytes; parse_session(serialize_session(s)) == s.

    Floats use shortest round-trip repr (not the 4-decimal report style)
    so values survive the round trip exactly.
    """
    device: dict[str, Any] = {"device_id": session.device.device_id}
    if session.device.battery_capacity_mah is not None:
        device["battery_capacity_mah"] = session.device.battery_capacity_mah
    if session.device.display_ppi is not None:
        device["display_ppi"] = session.device.display_ppi
    if session.device.display_resolution is not None:
        device["display_resolution"] = list(session.device.display_resolution)

    game = {
        "game_id": session.settings.game_id,
        "render_scale": session.settings.render_scale,
        "texture_tier": session.settings.texture_tier,
        "effects_tier": session.settings.effects_tier,
        "aa_tier": session.settings.aa_tier,
        "dynamic_range_tier": session.settings.dynamic_range_tier,
    }

    events: dict[str, Any] = {}
    if session.launch is not None:
        events["launch"] = list(session.launch)
    events["frames"] = list(session.frames)
    if session.battery:
        events["battery"] = [list(s) for s in session.battery]
    if session.temperature:
        events["temperature"] = [list(s) for s in session.temperature]
    if session.touch:
        events["touch"] = [list(s) for s in session.touch]
    if session.scene_loads:
        events["scene_loads"] = [list(s) for s in session.scene_loads]

    doc = {
        "schema_version": session.schema_version,
        "device": device,
        "game": game,
        "events": events,
    }
    return (json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n").encode("utf-8")
