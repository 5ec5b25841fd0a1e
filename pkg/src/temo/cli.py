"""Command-line front end: ``temo run`` and ``temo scale``.

Flags override values from an optional config file (JSON document or flat
key=value lines). Exit codes: 0 success, 2 configuration error, 3 a scale
cell timed out but partial results were written.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .harness import (
    ALGORITHMS,
    ConfigError,
    RunConfig,
    emit,
    emit_scale,
    run,
    scaling_experiment,
)

_CONFIG_FIELDS = {f.name for f in dataclasses.fields(RunConfig)}


def _load_config_file(path: str) -> dict:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        data = json.loads(text)
    else:
        data = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            data[key.strip()] = value.strip()
    unknown = set(data) - _CONFIG_FIELDS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def _coerce(key: str, value):
    """Cast config-file strings to the RunConfig field types."""
    if not isinstance(value, str):
        return value
    if key in ("indicators",):
        return tuple(v.strip() for v in value.split(","))
    if key in ("time_selection_only",):
        return value.lower() in ("1", "true", "yes", "on")
    if key in ("algorithm", "problem", "hv_ref", "out"):
        return value
    if key in ("pm", "eta_c", "eta_m", "theta", "alpha"):
        return float(value)
    return int(value)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON or key=value config file; flags override it")
    p.add_argument("--algorithm", choices=ALGORITHMS)
    p.add_argument("--problem", help="dtlz1..dtlz7")
    p.add_argument("--objectives", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--pop-size", type=int, dest="pop_size")
    p.add_argument("--generations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--repeats", type=int)
    p.add_argument("--eta-c", type=float, dest="eta_c")
    p.add_argument("--eta-m", type=float, dest="eta_m")
    p.add_argument("--pm", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--neighborhood", type=int)
    p.add_argument("--divisions", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--hv-samples", type=int, dest="hv_samples")
    p.add_argument("--hv-ref", dest="hv_ref", help="'auto' or comma-separated corner")
    p.add_argument(
        "--indicator",
        dest="indicators",
        help="comma-separated subset of igd,hv,eu recorded per generation",
    )
    p.add_argument("--indicator-every", type=int, dest="indicator_every")
    p.add_argument("--ref-front-size", type=int, dest="ref_front_size")
    p.add_argument(
        "--time-selection-only",
        action="store_true",
        default=None,
        dest="time_selection_only",
    )
    p.add_argument("--out", help="output directory for CSV/JSON results")


def _build_config(args: argparse.Namespace, defaults: dict | None = None) -> RunConfig:
    values: dict = {}
    if args.config:
        for key, value in _load_config_file(args.config).items():
            values[key] = _coerce(key, value)
    if defaults:
        for key, value in defaults.items():
            values.setdefault(key, value)
    for key in _CONFIG_FIELDS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = _coerce(key, flag) if isinstance(flag, str) else flag
    if "indicators" in values and isinstance(values["indicators"], str):
        values["indicators"] = tuple(v.strip() for v in values["indicators"].split(","))
    config = RunConfig(**values)
    config.validate()
    return config


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="temo", description="Tensorized EMO benchmark harness"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one configured experiment")
    _add_common(p_run)

    p_scale = sub.add_parser("scale", help="doubling scaling experiment")
    _add_common(p_scale)
    p_scale.add_argument(
        "--kind", choices=("population", "dimension"), required=True
    )
    p_scale.add_argument(
        "--from", type=int, dest="start", help="starting population size or dimension"
    )
    p_scale.add_argument("--steps", type=int, default=6)
    p_scale.add_argument(
        "--timeout", type=float, help="per-cell timeout in seconds; cells over it are missing"
    )

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            config = _build_config(args)
            record = run(config)
            out = config.out or "results"
            paths = emit(record, "csv", out) + emit(record, "json", out)
            print(f"run: {config.algorithm} on {config.problem} "
                  f"median_final_igd={record.summary['median_final_igd']:.6g} "
                  f"mean_gen_time_s={record.summary['mean_gen_time_s']:.6g}")
            for path in paths:
                print(f"wrote {path}")
            return 0

        # scale: indicators off by default, they are not part of the timed loop
        defaults = {"indicator_every": 0, "indicators": ()}
        config = _build_config(args, defaults)
        if args.start is not None:
            if args.kind == "population":
                config = dataclasses.replace(config, pop_size=args.start)
            else:
                config = dataclasses.replace(config, dim=args.start)
        result = scaling_experiment(args.kind, config, args.steps, args.timeout)
        out = config.out or "results"
        for path in emit_scale(result, out):
            print(f"wrote {path}")
        for cell in result.cells:
            print(f"{args.kind}={cell.size}: mean_gen_time_s={cell.mean_gen_time_s:.6g} "
                  f"({cell.status})")
        if any(cell.status == "timeout" for cell in result.cells):
            return 3
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
