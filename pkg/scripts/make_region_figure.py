#!/usr/bin/env python3
"""Render the analytic region boundaries for the canonical parameters.

Writes region_bounds.csv and region_bounds.svg into the current directory.
"""

import sys

from ehrelay.acceptance import CANONICAL
from ehrelay.params import Region
from ehrelay.regions import trace_boundary
from ehrelay.svg import emit_region_svg


def main(resolution: int = 300) -> None:
    with open("region_bounds.csv", "w", newline="") as fh:
        fh.write("region,lambda_s,lambda_r\n")
        for region in (Region.INNER, Region.R1, Region.R2, Region.OUTER):
            for p in trace_boundary(CANONICAL, region, resolution):
                fh.write(f"{region.value},{p.lambda_s:.6f},{p.lambda_r:.6f}\n")
    emit_region_svg(CANONICAL, resolution, None, "region_bounds.svg")
    print("wrote region_bounds.csv and region_bounds.svg")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 300)
