"""Command-line interface.

Subcommands:
  run <config.json>        execute a config-driven experiment sweep
  oracle --trace F --config C   offline-optimal schedule and cost for a trace
  bounds <which> [--key value]  evaluate a closed-form theoretical bound
  version

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .arrivals import load_trace
from .metrics import BOUND_KINDS, theoretical_bound
from .model import ArrivalSequence, CostParams, HostingLadder, ValidationError, validate, horizon_cost
from .oracles import offline_optimal_dp
from .runner import ConfigError, ExperimentConfig, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3


def parse_ladder(text: str) -> HostingLadder:
    """Parse "alpha:g,alpha:g,..." into a ladder, e.g. "0:1,0.5:0.45,1:0"."""
    pairs = []
    for item in text.split(","):
        a, _, g = item.partition(":")
        pairs.append((float(a), float(g)))
    return HostingLadder.from_pairs(pairs)


def _load_model_config(path: str) -> tuple[HostingLadder, CostParams]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    ladder = HostingLadder.from_pairs(doc["ladder"])
    cost = doc["cost"]
    params = CostParams(c=float(cost["c"]), M=float(cost["M"]),
                        kappa=float(cost.get("kappa", 1.0)))
    validate(ladder, params)
    return ladder, params


def cmd_run(args) -> int:
    try:
        config = ExperimentConfig.from_file(args.config)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        trials_path, agg_path = run_experiment(config, outdir=args.outdir)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {trials_path}")
    print(f"wrote {agg_path}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        ladder, params = _load_model_config(args.config)
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        arrivals = load_trace(args.trace, params.kappa, args.clip)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    schedule, cost = offline_optimal_dp(arrivals, ladder, params)
    breakdown = horizon_cost(schedule, arrivals, ladder, params)
    print("schedule:", ",".join(str(int(x)) for x in schedule))
    print(f"levels:   {','.join(f'{ladder.alphas[int(x)]:g}' for x in schedule)}")
    print(f"rent:     {breakdown.rent:.9g}")
    print(f"service:  {breakdown.service:.9g}")
    print(f"fetch:    {breakdown.fetch:.9g}")
    print(f"cost:     {cost:.9g}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    inputs = {}
    for key, value in (args.set or []):
        inputs[key.replace("-", "_")] = float(value)
    if args.ladder:
        inputs["ladder"] = parse_ladder(args.ladder)
    try:
        value = theoretical_bound(args.which, **inputs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for key, val in sorted(inputs.items()):
        if key == "ladder":
            print(f"  ladder = {','.join(f'{a}:{g}' for a, g in zip(val.alphas, val.gs))}")
        else:
            print(f"  {key} = {val:.9g}")
    print(f"{args.which} = {value:.9g}")
    return EXIT_OK


class _KeyValue(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        items = getattr(namespace, self.dest) or []
        items.append((option_string.lstrip("-"), values))
        setattr(namespace, self.dest, items)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgehost",
                                     description="Edge service-hosting policy simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute an experiment config")
    p_run.add_argument("config", help="path to the experiment JSON")
    p_run.add_argument("--outdir", default=None, help="override the output directory")
    p_run.set_defaults(func=cmd_run)

    p_oracle = sub.add_parser("oracle", help="offline-optimal schedule for a trace")
    p_oracle.add_argument("--trace", required=True, help="pre-binned per-slot counts")
    p_oracle.add_argument("--config", required=True,
                          help="JSON with the ladder and cost parameters")
    p_oracle.add_argument("--clip", default="clip", choices=("clip", "reject"))
    p_oracle.set_defaults(func=cmd_oracle)

    p_bounds = sub.add_parser("bounds", help="evaluate a closed-form bound")
    p_bounds.add_argument("which", choices=BOUND_KINDS)
    p_bounds.add_argument("--ladder", default=None, help='"alpha:g,..." for the ratio bounds')
    for key in ("T", "K", "alpha", "kappa", "M", "c", "beta", "delta",
                "delta-min", "delta-max", "alpha2"):
        p_bounds.add_argument(f"--{key}", dest="set", action=_KeyValue, metavar="X")
    p_bounds.set_defaults(func=cmd_bounds)

    p_version = sub.add_parser("version", help="print the package version")
    p_version.set_defaults(func=lambda args: print(__version__) or EXIT_OK)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
