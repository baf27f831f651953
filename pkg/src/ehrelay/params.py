"""Model parameters and shared value types for the two-hop energy-harvesting network.

All nine model constants are probabilities or Bernoulli rates and live in [0,1].
The relay is assumed to have the better channel to the destination (p_rd > p_sd).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class DegenerateChannelError(ValueError):
    """No packet can ever leave the source (p_sd = 0 and p_sr = 0)."""


@dataclass(frozen=True)
class SystemParams:
    """Full parameterization of the source/relay/destination network.

    lambda_s, lambda_r: exogenous packet arrival rates (packets/slot).
    delta_s, delta_r:   energy harvesting rates (energy units/slot).
    q_s, q_r:           random-access transmit probabilities.
    p_sd, p_rd, p_sr:   per-link solo-transmission success probabilities.
    """

    lambda_s: float
    lambda_r: float
    delta_s: float
    delta_r: float
    q_s: float
    q_r: float
    p_sd: float
    p_rd: float
    p_sr: float


@dataclass(frozen=True)
class RatePoint:
    """An arrival-rate pair (lambda_s, lambda_r), both nonnegative."""

    lambda_s: float
    lambda_r: float


class Region(Enum):
    INNER = "inner"
    R1 = "r1"
    R2 = "r2"
    OUTER = "outer"  # union of R1 and R2, never stored independently


_UNIT_FIELDS = (
    "lambda_s",
    "lambda_r",
    "delta_s",
    "delta_r",
    "q_s",
    "q_r",
    "p_sd",
    "p_rd",
    "p_sr",
)


def validate(params: SystemParams) -> list[str]:
    """Check every invariant; returns a list of violations (empty means ok).

    Total on any finite or non-finite numeric input: NaN fails the range
    checks, it never raises.
    """
    violations = []
    for name in _UNIT_FIELDS:
        value = getattr(params, name)
        if not (0.0 <= value <= 1.0):
            violations.append(f"{name} out of [0,1]: {value!r}")
    # Relay-advantage assumption; strict so region formulas never degenerate
    # into overlapping boundary cases.
    if not (params.p_rd > params.p_sd):
        violations.append(
            f"p_rd must exceed p_sd (got p_rd={params.p_rd!r}, p_sd={params.p_sd!r})"
        )
    return violations


class InvalidParamsError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


def check(params: SystemParams) -> SystemParams:
    """Raise InvalidParamsError unless all invariants hold; returns params."""
    violations = validate(params)
    if violations:
        raise InvalidParamsError(violations)
    return params


def min_energy_rate(delta: float, q: float) -> float:
    """Effective transmit rate of an always-attempting, energy-limited node.

    The battery behaves as a discrete-time single-server queue with input
    rate delta and service probability q, so the long-run transmission rate
    is q * min(delta/q, 1) = min(delta, q).
    """
    return min(delta, q)
