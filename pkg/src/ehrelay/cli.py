"""Command-line front end.

Subcommands:
  region    analytic region boundaries -> CSV (and SVG if configured)
  simulate  one rate point in one mode, optional per-slot trace CSV
  sweep     grid stability classification vs analytic memberships -> CSV/SVG
  accept    built-in acceptance suite
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .acceptance import run_acceptance
from .config import ExperimentConfig, load_config
from .params import Region
from .regions import trace_boundary
from .simulator import classify_stability, empirical_rates, run, write_trace_csv
from .svg import emit_region_svg
from .sweep import run_sweep


def _add_common(sub):
    sub.add_argument("--config", required=True, help="path to a key=value config file")
    sub.add_argument("--seed", type=int, default=None, help="override base_seed")
    sub.add_argument("--out", default=None, help="override the csv output path")


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, base_seed=args.seed)
    if getattr(args, "out", None):
        cfg = dataclasses.replace(cfg, csv_out=args.out)
    return cfg


def cmd_region(args) -> int:
    cfg = _load(args)
    if cfg.csv_out:
        with open(cfg.csv_out, "w", newline="") as fh:
            fh.write("region,lambda_s,lambda_r\n")
            for region in (Region.INNER, Region.R1, Region.R2, Region.OUTER):
                for p in trace_boundary(cfg.params, region, args.resolution):
                    fh.write(f"{region.value},{p.lambda_s:.6f},{p.lambda_r:.6f}\n")
        print(f"wrote boundary CSV to {cfg.csv_out}")
    if cfg.svg_out:
        emit_region_svg(cfg.params, args.resolution, None, cfg.svg_out)
        print(f"wrote region SVG to {cfg.svg_out}")
    if not cfg.csv_out and not cfg.svg_out:
        print("nothing to do: set csv_out and/or svg_out (or pass --out)", file=sys.stderr)
        return 2
    return 0


def cmd_simulate(args) -> int:
    cfg = _load(args)
    stats = run(cfg.params, cfg.mode, cfg.base_seed, cfg.sim.n_slots, cfg.sim.stride)
    rates = empirical_rates(stats)
    verdict = classify_stability(cfg.params, cfg.base_seed, cfg.sim, cfg.mode)
    print(f"point lambda_s={cfg.params.lambda_s} lambda_r={cfg.params.lambda_r} mode={cfg.mode.value}")
    print(f"mu_s={rates.mu_s:.6f} mu_r={rates.mu_r:.6f}")
    print(
        f"battery fractions: s={rates.s_battery_fraction:.6f} r={rates.r_battery_fraction:.6f}"
    )
    print(
        f"active fractions: s={rates.s_active_fraction:.6f} r={rates.r_active_fraction:.6f}"
    )
    print(f"verdict={verdict.verdict.value} drift_slope={verdict.drift_slope:.6e}")
    if cfg.csv_out:
        write_trace_csv(stats, cfg.csv_out)
        print(f"wrote trace CSV to {cfg.csv_out}")
    return 0


def cmd_sweep(args) -> int:
    cfg = _load(args)
    rows = run_sweep(cfg, jobs=args.jobs)
    n_stable = sum(r.verdict.value == "stable" for r in rows)
    print(f"swept {len(rows)} grid points ({n_stable} stable)")
    if cfg.csv_out:
        print(f"wrote sweep CSV to {cfg.csv_out}")
    if cfg.svg_out:
        emit_region_svg(cfg.params, 200, rows, cfg.svg_out)
        print(f"wrote sweep SVG to {cfg.svg_out}")
    return 0


def cmd_accept(args) -> int:
    cfg = load_config(args.config) if args.config else None
    _, all_passed = run_acceptance(cfg)
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehrelay",
        description="two-hop energy-harvesting network: simulation and stability regions",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_region = subs.add_parser("region", help="emit analytic region boundaries")
    _add_common(p_region)
    p_region.add_argument("--resolution", type=int, default=200)
    p_region.set_defaults(func=cmd_region)

    p_sim = subs.add_parser("simulate", help="simulate a single rate point")
    _add_common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_sweep = subs.add_parser("sweep", help="classify a grid of rate points")
    _add_common(p_sweep)
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p_sweep.set_defaults(func=cmd_sweep)

    p_accept = subs.add_parser("accept", help="run the acceptance suite")
    p_accept.add_argument("--config", default=None, help="optional config file")
    p_accept.set_defaults(func=cmd_accept)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
