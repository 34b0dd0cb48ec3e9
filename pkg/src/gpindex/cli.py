"""Command-line front end.

Commands:
  validate  parse session files and report diagnostics
  score     score device directories under one profile
  compare   score under every configured profile, write per-profile reports
  demo      generate the 9-device synthetic corpus and its reports

Exit status contract: 0 success, 1 data error, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import EngineConfig, default_config, load_config_file
from .errors import ConfigError, EngineError
from .indices import score_device
from .report import emit_plot_data, emit_report, rank_devices, serialize_session
from .synth import default_demo_manifest, generate_corpus, load_manifest
from .telemetry import parse_session, validate_comparability

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpindex",
        description="Game Performance Index engine: score gameplay session telemetry.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    p_validate = sub.add_parser("validate", help="parse and validate session files")
    p_validate.add_argument("files", nargs="+", metavar="file")
    p_validate.add_argument(
        "--comparability",
        action="store_true",
        help="also flag settings/game divergence across the valid sessions",
    )
    p_validate.set_defaults(handler=cmd_validate)

    p_score = sub.add_parser(
        "score", help="score one or more device directories under a profile"
    )
    p_score.add_argument("device_dirs", nargs="+", metavar="device-dir")
    p_score.add_argument("--config", help="engine config file (default: built-in)")
    p_score.add_argument("--profile", required=True, help="profile name from the config")
    p_score.add_argument("--format", choices=("json", "csv"), default="json")
    p_score.add_argument("--out", help="output file (default: stdout)")
    p_score.set_defaults(handler=cmd_score)

    p_compare = sub.add_parser(
        "compare", help="score under every profile and write per-profile reports"
    )
    p_compare.add_argument("device_dirs", nargs="+", metavar="device-dir")
    p_compare.add_argument("--config", help="engine config file (default: built-in)")
    p_compare.add_argument("--format", choices=("json", "csv"), default="json")
    p_compare.add_argument("--out", required=True, help="output directory")
    p_compare.set_defaults(handler=cmd_compare)

    p_demo = sub.add_parser(
        "demo", help="generate the synthetic demo corpus and score it"
    )
    p_demo.add_argument("--out", required=True, help="output directory")
    p_demo.add_argument("--manifest", help="corpus manifest file (default: built-in)")
    p_demo.set_defaults(handler=cmd_demo)

    return parser


def _load_config(path: str | None) -> EngineConfig:
    return default_config() if path is None else load_config_file(path)


def cmd_validate(args: argparse.Namespace) -> int:
    valid = []
    failures = 0
    for name in args.files:
        try:
            with open(name, "rb") as fh:
                valid.append(parse_session(fh.read()))
        except (OSError, EngineError) as exc:
            print(f"{name}: {exc}", file=sys.stderr)
            failures += 1
    print(f"{len(valid)} valid")
    if args.comparability and valid:
        for flag in validate_comparability(valid).flags:
            print(
                f"comparability: session {flag.session_index} {flag.field}="
                f"{flag.value} differs from modal {flag.modal}",
                file=sys.stderr,
            )
    return EXIT_DATA if failures else EXIT_OK


def _load_device_dirs(device_dirs: list[str]) -> list[list]:
    groups = []
    for dirname in device_dirs:
        path = Path(dirname)
        files = sorted(path.glob("*.json"))
        if not files:
            raise EngineError(f"{dirname}: no session files (*.json) found")
        sessions = []
        for f in files:
            try:
                sessions.append(parse_session(f.read_bytes()))
            except EngineError as exc:
                raise EngineError(f"{f}: {exc}") from exc
        groups.append(sessions)
    return groups


def cmd_score(args: argparse.Namespace) -> int:
    try:
        config = _load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.profile not in config.profiles:
        print(f"unknown profile '{args.profile}'", file=sys.stderr)
        return EXIT_USAGE
    if args.out is not None:
        out_path = Path(args.out).resolve()
        inputs = {
            f.resolve() for d in args.device_dirs for f in Path(d).glob("*.json")
        }
        if out_path in inputs:
            print(f"refusing to overwrite input file {args.out}", file=sys.stderr)
            return EXIT_USAGE
    try:
        groups = _load_device_dirs(args.device_dirs)
        cards = [
            score_device(sessions, config.profiles[args.profile], config.curves)
            for sessions in groups
        ]
        payload = emit_report(rank_devices(cards), args.format)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        if args.out:
            Path(args.out).write_bytes(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.buffer.flush()
    except OSError as exc:
        print(f"i/o error writing {args.out}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    try:
        config = _load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        groups = _load_device_dirs(args.device_dirs)
        tables = []
        for name in sorted(config.profiles):
            cards = [
                score_device(sessions, config.profiles[name], config.curves)
                for sessions in groups
            ]
            tables.append(rank_devices(cards))
        for table in tables:
            target = out_dir / f"report_{table.profile_name}.{args.format}"
            target.write_bytes(emit_report(table, args.format))
            print(f"wrote {target}")
        plot_path = out_dir / "plot_data.csv"
        plot_path.write_bytes(emit_plot_data(tables))
        print(f"wrote {plot_path}")
    except OSError as exc:
        print(f"i/o error under {out_dir}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def cmd_demo(args: argparse.Namespace) -> int:
    try:
        if args.manifest is None:
            corpus = default_demo_manifest()
        else:
            with open(args.manifest, "rb") as fh:
                corpus = load_manifest(fh.read())
    except (OSError, EngineError) as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    out_dir = Path(args.out)
    sessions_dir = out_dir / "sessions"
    try:
        generated = generate_corpus(corpus)
        device_dirs = []
        for device_id, sessions in generated.items():
            device_dir = sessions_dir / device_id
            device_dir.mkdir(parents=True, exist_ok=True)
            for i, session in enumerate(sessions):
                (device_dir / f"session_{i:02d}.json").write_bytes(
                    serialize_session(session)
                )
            device_dirs.append(str(device_dir))

        config = default_config()
        groups = _load_device_dirs(device_dirs)
        tables = []
        for name in sorted(config.profiles):
            cards = [
                score_device(sessions, config.profiles[name], config.curves)
                for sessions in groups
            ]
            tables.append(rank_devices(cards))
        for table in tables:
            (out_dir / f"report_{table.profile_name}.json").write_bytes(
                emit_report(table, "json")
            )
        (out_dir / "plot_data.csv").write_bytes(emit_plot_data(tables))
    except OSError as exc:
        print(f"i/o error under {out_dir}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(f"demo corpus and reports written to {out_dir}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
