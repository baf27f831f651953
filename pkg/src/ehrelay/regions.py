"""Closed-form stability-region analytics for the two-hop network.

Everything here is pure arithmetic on SystemParams: relay traffic bookkeeping,
saturated throughputs, dominant-system active-slot fractions, and the three
half-plane regions (inner bound, and the two outer-bound pieces R1/R2 whose
union is the outer bound).

Membership is strict everywhere: boundary points are outside every region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import DegenerateChannelError, Region, RatePoint, SystemParams


class DomainError(ValueError):
    """An active-fraction formula was evaluated outside its domain."""


@dataclass(frozen=True)
class RelayLoad:
    """Traffic offered to the relay queue.

    branch_prob:     probability a source departure is a relay handover.
    endogenous_rate: handover arrival rate, branch_prob * lambda_s.
    total_rate:      lambda_r + endogenous_rate.
    """

    branch_prob: float
    endogenous_rate: float
    total_rate: float


@dataclass(frozen=True)
class ServiceRates:
    mu_s: float
    mu_r: float


@dataclass(frozen=True)
class HalfPlane:
    """The open constraint coeff_s * lambda_s + coeff_r * lambda_r < bound."""

    coeff_s: float
    coeff_r: float
    bound: float

    def contains(self, point: RatePoint) -> bool:
        return self.coeff_s * point.lambda_s + self.coeff_r * point.lambda_r < self.bound


def _combined_exit_prob(params: SystemParams) -> float:
    """Probability a solo source transmission leaves the source queue."""
    p = params.p_sd + (1.0 - params.p_sd) * params.p_sr
    if p <= 0.0:
        raise DegenerateChannelError(
            "p_sd = 0 and p_sr = 0: no packet can ever leave the source"
        )
    return p


def relay_branch_prob(params: SystemParams) -> float:
    """Probability that a departing source packet is handed over to the relay.

    The relay-idleness factor cancels between the handover and departure
    events, so this depends only on the channel probabilities:
    (1-p_sd) p_sr / [p_sd + (1-p_sd) p_sr].
    """
    exit_prob = _combined_exit_prob(params)
    return (1.0 - params.p_sd) * params.p_sr / exit_prob


def relay_total_arrival(params: SystemParams) -> RelayLoad:
    """Exogenous plus handed-over traffic offered to the relay queue."""
    branch = relay_branch_prob(params)
    endogenous = branch * params.lambda_s
    return RelayLoad(
        branch_prob=branch,
        endogenous_rate=endogenous,
        total_rate=params.lambda_r + endogenous,
    )


def saturated_service_source(params: SystemParams) -> float:
    """Source departure rate when both packet queues never empty.

    min(delta_s,q_s) [1 - min(delta_r,q_r)] [p_sd + (1-p_sd) p_sr].
    """
    t_s = min(params.delta_s, params.q_s)
    t_r = min(params.delta_r, params.q_r)
    return t_s * (1.0 - t_r) * (params.p_sd + (1.0 - params.p_sd) * params.p_sr)


def saturated_service_relay(params: SystemParams) -> float:
    """Relay departure rate when both packet queues never empty.

    min(delta_r,q_r) [1 - min(delta_s,q_s)] p_rd.
    """
    t_s = min(params.delta_s, params.q_s)
    t_r = min(params.delta_r, params.q_r)
    return t_r * (1.0 - t_s) * params.p_rd


def dom1_relay_active_fraction(params: SystemParams, point: RatePoint) -> float:
    """Fraction of slots the relay is active when the source sends dummies.

    lambda_r_total / ([1 - min(delta_s,q_s)] q_r p_rd); only defined while the
    relay queue is stable in that dominant system (result must be <= 1).
    """
    load = relay_total_arrival(
        SystemParams(
            point.lambda_s,
            point.lambda_r,
            params.delta_s,
            params.delta_r,
            params.q_s,
            params.q_r,
            params.p_sd,
            params.p_rd,
            params.p_sr,
        )
    )
    t_s = min(params.delta_s, params.q_s)
    denom = (1.0 - t_s) * params.q_r * params.p_rd
    if denom <= 0.0:
        raise DomainError("relay can never serve: (1 - min(delta_s,q_s)) q_r p_rd = 0")
    frac = load.total_rate / denom
    if frac > 1.0:
        raise DomainError(
            f"relay load {load.total_rate:.6g} exceeds dominant-system service {denom:.6g}"
        )
    return frac


def dom2_source_active_fraction(params: SystemParams, point: RatePoint) -> float:
    """Fraction of slots the source is active when the relay sends dummies.

    lambda_s / (q_s [1 - min(delta_r,q_r)] [p_sd + (1-p_sd) p_sr]).
    """
    exit_prob = _combined_exit_prob(params)
    t_r = min(params.delta_r, params.q_r)
    denom = params.q_s * (1.0 - t_r) * exit_prob
    if denom <= 0.0:
        raise DomainError("source can never depart: q_s (1 - min(delta_r,q_r)) = 0")
    frac = point.lambda_s / denom
    if frac > 1.0:
        raise DomainError(
            f"source load {point.lambda_s:.6g} exceeds dominant-system service {denom:.6g}"
        )
    return frac


def region_halfplanes(params: SystemParams, region: Region) -> list[HalfPlane]:
    """The two open half-plane constraints defining a (non-union) region.

    Coefficient normalization follows the printed inequalities: the lambda_r
    coefficient is 1 for the inner region and R2, and the lambda_s bracket
    leads in R1's first constraint.
    """
    if region is Region.OUTER:
        raise ValueError("the outer bound is the union of R1 and R2, not a half-plane set")
    exit_prob = _combined_exit_prob(params)
    t_s = min(params.delta_s, params.q_s)
    t_r = min(params.delta_r, params.q_r)
    branch = (1.0 - params.p_sd) * params.p_sr / exit_prob

    if region is Region.INNER:
        return [
            HalfPlane(1.0, 0.0, t_s * (1.0 - t_r) * exit_prob),
            HalfPlane(branch, 1.0, t_r * (1.0 - t_s) * params.p_rd),
        ]
    if region is Region.R1:
        denom = (1.0 - t_s) * params.p_rd
        if denom <= 0.0:
            raise DegenerateChannelError(
                "R1 undefined: source battery saturates every slot (min(delta_s,q_s)=1)"
            )
        a = 1.0 + t_s * (1.0 - params.p_sd) * params.p_sr / denom
        b = t_s * exit_prob / denom
        return [
            HalfPlane(a, b, t_s * exit_prob),
            HalfPlane(branch, 1.0, t_r * (1.0 - t_s) * params.p_rd),
        ]
    # Region.R2
    denom = (1.0 - t_r) * exit_prob
    if denom <= 0.0:
        raise DegenerateChannelError(
            "R2 undefined: relay battery saturates every slot (min(delta_r,q_r)=1)"
        )
    a = ((1.0 - t_r) * (1.0 - params.p_sd) * params.p_sr + t_r * params.p_rd) / denom
    return [
        HalfPlane(a, 1.0, t_r * params.p_rd),
        HalfPlane(1.0, 0.0, t_s * (1.0 - t_r) * exit_prob),
    ]


def region_contains(params: SystemParams, region: Region, point: RatePoint) -> bool:
    """Strict membership test; the outer bound is R1-or-R2."""
    if region is Region.OUTER:
        return region_contains(params, Region.R1, point) or region_contains(
            params, Region.R2, point
        )
    return all(hp.contains(point) for hp in region_halfplanes(params, region))


def _lambda_s_intercept(halfplanes: list[HalfPlane]) -> float:
    bounds = [hp.bound / hp.coeff_s for hp in halfplanes if hp.coeff_s > 0.0]
    return min(bounds) if bounds else math.inf


def _boundary_value(halfplanes: list[HalfPlane], lambda_s: float) -> float:
    """Largest lambda_r on the closed boundary at the given lambda_s (>= 0)."""
    ys = [
        (hp.bound - hp.coeff_s * lambda_s) / hp.coeff_r
        for hp in halfplanes
        if hp.coeff_r > 0.0
    ]
    return max(0.0, min(ys)) if ys else 0.0


def _is_degenerate(halfplanes: list[HalfPlane]) -> bool:
    x_max = _lambda_s_intercept(halfplanes)
    return x_max <= 0.0 or _boundary_value(halfplanes, 0.0) <= 0.0


def _push_to_boundary(params: SystemParams, region: Region, pt: RatePoint) -> RatePoint:
    """Nudge a point outward by ulps until strict membership fails.

    Division rounding can land a computed boundary point a hair inside the
    open region; boundary points are contractually non-members.
    """
    while region_contains(params, region, pt):
        pt = RatePoint(
            math.nextafter(pt.lambda_s, math.inf) if pt.lambda_s > 0.0 else pt.lambda_s,
            math.nextafter(pt.lambda_r, math.inf) if pt.lambda_r > 0.0 else pt.lambda_r,
        )
    return pt


def trace_boundary(
    params: SystemParams, region: Region, resolution: int
) -> list[RatePoint]:
    """Sample the upper-right boundary of a region as a polyline.

    `resolution` points are spaced evenly in lambda_s from 0 to the region's
    lambda_s-intercept. For the outer bound the curve is the pointwise max of
    the R1 and R2 boundaries. A region with empty interior collapses to a
    two-point polyline at the origin.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if region is Region.OUTER:
        hps1 = region_halfplanes(params, Region.R1)
        hps2 = region_halfplanes(params, Region.R2)
        deg1, deg2 = _is_degenerate(hps1), _is_degenerate(hps2)
        if deg1 and deg2:
            return [RatePoint(0.0, 0.0), RatePoint(0.0, 0.0)]
        x1 = 0.0 if deg1 else _lambda_s_intercept(hps1)
        x2 = 0.0 if deg2 else _lambda_s_intercept(hps2)
        x_max = max(x1, x2)
        points = []
        for i in range(resolution):
            x = x_max * i / (resolution - 1)
            y1 = _boundary_value(hps1, x) if (not deg1 and x <= x1) else 0.0
            y2 = _boundary_value(hps2, x) if (not deg2 and x <= x2) else 0.0
            points.append(_push_to_boundary(params, region, RatePoint(x, max(y1, y2))))
        return points

    hps = region_halfplanes(params, region)
    if _is_degenerate(hps):
        return [RatePoint(0.0, 0.0), RatePoint(0.0, 0.0)]
    x_max = _lambda_s_intercept(hps)
    points = []
    for i in range(resolution):
        x = x_max * i / (resolution - 1)
        points.append(_push_to_boundary(params, region, RatePoint(x, _boundary_value(hps, x))))
    return points
