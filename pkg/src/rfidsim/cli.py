"""Command line front door: headless runs with exports, or serving the
HTTP control interface for the companion UI.

Every flag can also be set through an RFIDSIM_<FLAG> environment
variable; explicit flags win.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from . import engine, stats
from .errors import InvalidConfig, IoFailure, SimError
from .serialize import scenario_from_dict

EXIT_OK = 0
EXIT_INVALID_SCENARIO = 1
EXIT_IO_FAILURE = 2


def _env(name: str, default=None):
    return os.environ.get(f"RFIDSIM_{name}", default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rfidsim",
        description="Deterministic 2-D RFID localization simulator",
    )
    parser.add_argument("--scenario", default=_env("SCENARIO"), help="scenario JSON file")
    parser.add_argument(
        "--ticks",
        type=int,
        default=int(_env("TICKS", "100")),
        help="number of ticks to simulate (default 100)",
    )
    parser.add_argument("--csv", default=_env("CSV"), help="write trace CSV here")
    parser.add_argument("--json", default=_env("JSON"), help="write trace JSON here")
    parser.add_argument("--seed", type=int, default=None, help="override scenario seed")
    parser.add_argument("--gain", type=float, default=None, help="override obstacle loss gain")
    parser.add_argument("--noise", type=float, default=None, help="override noise sigma (meters)")
    parser.add_argument("--serve", action="store_true", default=_env("SERVE") == "1",
                        help="serve the HTTP control interface instead of a batch run")
    parser.add_argument("--bind", default=_env("BIND", "127.0.0.1:8000"),
                        help="addr:port for --serve (default 127.0.0.1:8000)")
    for name in ("seed", "gain", "noise"):
        env = _env(name.upper())
        if env is not None:
            parser.set_defaults(**{name: (int if name == "seed" else float)(env)})
    return parser


def _load_scenario(path: str) -> engine.Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return scenario_from_dict(doc)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if not args.scenario:
        print("error: --scenario is required (or RFIDSIM_SCENARIO)", file=sys.stderr)
        return EXIT_INVALID_SCENARIO

    try:
        scenario = _load_scenario(args.scenario)
        if args.seed is not None:
            scenario = replace(scenario, seed=args.seed)
        if args.gain is not None:
            scenario = engine.set_gain(scenario, args.gain)
        if args.noise is not None:
            scenario = engine.set_noise(scenario, args.noise)
    except OSError as exc:
        print(f"error: cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_IO_FAILURE
    except SimError as exc:
        print(f"error: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_INVALID_SCENARIO

    if args.serve:
        return _serve(scenario, args.bind)

    if args.ticks < 0:
        print(f"error: --ticks must be >= 0, got {args.ticks}", file=sys.stderr)
        return EXIT_INVALID_SCENARIO

    _, trace = engine.run(scenario, args.ticks)

    try:
        if args.csv:
            stats.export_csv(trace, args.csv)
        if args.json:
            stats.export_json(trace, args.json)
    except IoFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_FAILURE

    for series in stats.error_series(trace):
        s = stats.summarize(series)
        print(f"tag {series.tag_id}: ticks={len(series.points)} fix_rate={s.fix_rate:.3f}", end="")
        if s.mean is not None:
            print(f" mean={s.mean:.6g} m max={s.max:.6g} m rmse={s.rmse:.6g} m")
        else:
            print(" (no fixes)")
    return EXIT_OK


def _serve(scenario: engine.Scenario, bind: str) -> int:
    import uvicorn

    from .service import Session, create_app

    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        print(f"error: --bind must be addr:port, got {bind!r}", file=sys.stderr)
        return EXIT_INVALID_SCENARIO
    app = create_app(Session(scenario))
    uvicorn.run(app, host=host, port=int(port))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
