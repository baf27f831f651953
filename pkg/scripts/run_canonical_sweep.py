#!/usr/bin/env python3
"""Sweep a rate grid under the canonical parameters and overlay the verdicts
on the analytic boundaries.

Writes canonical_sweep.csv and canonical_sweep.svg; pass a worker count to
parallelize (default: serial).
"""

import sys

from ehrelay.acceptance import CANONICAL
from ehrelay.config import ExperimentConfig, GridSpec
from ehrelay.simulator import ClassifierConfig
from ehrelay.svg import emit_region_svg
from ehrelay.sweep import run_sweep


def main(jobs: int = 1) -> None:
    config = ExperimentConfig(
        params=CANONICAL,
        grid=GridSpec(lambda_s_max=0.32, lambda_r_max=0.28, steps=8),
        sim=ClassifierConfig(),
        base_seed=2024,
        csv_out="canonical_sweep.csv",
    )
    rows = run_sweep(config, jobs=jobs)
    emit_region_svg(CANONICAL, 300, rows, "canonical_sweep.svg")
    stable = sum(r.verdict.value == "stable" for r in rows)
    print(f"{len(rows)} points swept, {stable} stable")
    print("wrote canonical_sweep.csv and canonical_sweep.svg")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1)
