"""Grid sweeps: simulate a lattice of arrival-rate points and compare the
verdicts against the analytic region memberships.

Per-point seeds come from a splitmix64 hash of (base_seed, row, col), so the
output never depends on scheduling; parallel and serial sweeps write the same
bytes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .config import ExperimentConfig
from .params import RatePoint, Region
from .regions import region_contains
from .simulator import Verdict, classify_stability

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

CSV_HEADER = "lambda_s,lambda_r,verdict,drift_slope,mean_q_s,mean_q_r,in_inner,in_r1,in_r2,in_outer"


def _splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def mix_seed(base_seed: int, row: int, col: int) -> int:
    """64-bit per-grid-point seed: three chained splitmix64 steps."""
    x = _splitmix64(base_seed & _MASK)
    x = _splitmix64(x ^ row)
    return _splitmix64(x ^ col)


@dataclass(frozen=True)
class SweepRow:
    lambda_s: float
    lambda_r: float
    verdict: Verdict
    drift_slope: float
    mean_q_s: float
    mean_q_r: float
    in_inner: bool
    in_r1: bool
    in_r2: bool
    in_outer: bool


def grid_points(config: ExperimentConfig) -> list[tuple[int, int, float, float]]:
    """Row-major (row, col, lambda_s, lambda_r); includes the zero lines,
    excludes the exact maxima."""
    g = config.grid
    pts = []
    for i in range(g.steps):
        ls = g.lambda_s_max * i / g.steps
        for j in range(g.steps):
            lr = g.lambda_r_max * j / g.steps
            pts.append((i, j, ls, lr))
    return pts


def _classify_point(args) -> SweepRow:
    params, sim_cfg, mode, seed, ls, lr = args
    point_params = replace(params, lambda_s=ls, lambda_r=lr)
    verdict = classify_stability(point_params, seed, sim_cfg, mode)
    point = RatePoint(ls, lr)
    in_inner = region_contains(params, Region.INNER, point)
    in_r1 = region_contains(params, Region.R1, point)
    in_r2 = region_contains(params, Region.R2, point)
    return SweepRow(
        lambda_s=ls,
        lambda_r=lr,
        verdict=verdict.verdict,
        drift_slope=verdict.drift_slope,
        mean_q_s=verdict.mean_q_s,
        mean_q_r=verdict.mean_q_r,
        in_inner=in_inner,
        in_r1=in_r1,
        in_r2=in_r2,
        in_outer=in_r1 or in_r2,
    )


def run_sweep(config: ExperimentConfig, jobs: int = 1) -> list[SweepRow]:
    """Classify every grid point; writes the CSV if config.csv_out is set."""
    tasks = [
        (config.params, config.sim, config.mode, mix_seed(config.base_seed, i, j), ls, lr)
        for (i, j, ls, lr) in grid_points(config)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_classify_point, tasks, chunksize=1))
    else:
        rows = [_classify_point(t) for t in tasks]
    if config.csv_out:
        write_sweep_csv(rows, config.csv_out)
    return rows


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def format_sweep_csv(rows: list[SweepRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.lambda_s:.6f},{r.lambda_r:.6f},{r.verdict.value},"
            f"{r.drift_slope:.6f},{r.mean_q_s:.6f},{r.mean_q_r:.6f},"
            f"{_fmt_bool(r.in_inner)},{_fmt_bool(r.in_r1)},"
            f"{_fmt_bool(r.in_r2)},{_fmt_bool(r.in_outer)}"
        )
    return "\n".join(lines) + "\n"


def write_sweep_csv(rows: list[SweepRow], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(format_sweep_csv(rows))
