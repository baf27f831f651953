"""Hand-emitted SVG region plots: no plotting dependency, stable diffs.

Fixed 800x600 viewport; margins left=70, right=25, top=25, bottom=55. The
plot shows the inner-bound boundary and the two outer-bound pieces, plus
optional sweep markers colored by verdict.
"""

from __future__ import annotations

from .params import Region, SystemParams
from .regions import trace_boundary
from .simulator import Verdict

WIDTH, HEIGHT = 800, 600
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 25, 25, 55

_BOUNDARY_STYLE = {
    Region.INNER: ("inner", "#1f6fb4"),
    Region.R1: ("r1", "#2a9d4e"),
    Region.R2: ("r2", "#d98b12"),
}

_VERDICT_FILL = {
    Verdict.STABLE: "#2a9d4e",
    Verdict.UNSTABLE: "#c63b3b",
    Verdict.INDETERMINATE: "#8a8a8a",
}


def emit_region_svg(params: SystemParams, resolution: int, sweep, path) -> None:
    """Write a self-contained region plot; `sweep` is an optional SweepRow list."""
    boundaries = {
        region: trace_boundary(params, region, resolution) for region in _BOUNDARY_STYLE
    }
    xs = [p.lambda_s for pts in boundaries.values() for p in pts]
    ys = [p.lambda_r for pts in boundaries.values() for p in pts]
    if sweep:
        xs += [r.lambda_s for r in sweep]
        ys += [r.lambda_r for r in sweep]
    x_max = max(max(xs), 1e-9) * 1.08
    y_max = max(max(ys), 1e-9) * 1.08

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x: float) -> float:
        return MARGIN_L + x / x_max * plot_w

    def sy(y: float) -> float:
        return HEIGHT - MARGIN_B - y / y_max * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        # axes
        f'<line class="axis" x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" '
        f'x2="{WIDTH - MARGIN_R}" y2="{HEIGHT - MARGIN_B}" stroke="black"/>',
        f'<line class="axis" x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" '
        f'x2="{MARGIN_L}" y2="{MARGIN_T}" stroke="black"/>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">λ_S</text>',
        f'<text x="18" y="{HEIGHT // 2}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16" transform="rotate(-90 18 {HEIGHT // 2})">λ_R</text>',
        f'<text x="{MARGIN_L}" y="{HEIGHT - MARGIN_B + 20}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">0</text>',
        f'<text x="{WIDTH - MARGIN_R}" y="{HEIGHT - MARGIN_B + 20}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{x_max:.3f}</text>',
        f'<text x="{MARGIN_L - 8}" y="{MARGIN_T + 4}" text-anchor="end" '
        f'font-family="sans-serif" font-size="12">{y_max:.3f}</text>',
    ]

    for idx, (region, (name, color)) in enumerate(_BOUNDARY_STYLE.items()):
        pts = boundaries[region]
        coords = " ".join(f"{sx(p.lambda_s):.2f},{sy(p.lambda_r):.2f}" for p in pts)
        parts.append(
            f'<polyline class="boundary-{name}" points="{coords}" fill="none" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN_R - 8}" y="{MARGIN_T + 16 + 18 * idx}" '
            f'text-anchor="end" font-family="sans-serif" font-size="12" '
            f'fill="{color}">{name}</text>'
        )

    if sweep:
        for r in sweep:
            parts.append(
                f'<circle class="sweep-point" cx="{sx(r.lambda_s):.2f}" '
                f'cy="{sy(r.lambda_r):.2f}" r="3.5" fill="{_VERDICT_FILL[r.verdict]}" '
                f'fill-opacity="0.85"/>'
            )

    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
