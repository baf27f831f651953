"""Slotted-time simulator and stability-region analytics for a two-hop
energy-harvesting network (source, relay, destination) under random access."""

from .params import (
    DegenerateChannelError,
    InvalidParamsError,
    RatePoint,
    Region,
    SystemParams,
    min_energy_rate,
    validate,
)
from .regions import (
    HalfPlane,
    RelayLoad,
    ServiceRates,
    dom1_relay_active_fraction,
    dom2_source_active_fraction,
    region_contains,
    region_halfplanes,
    relay_branch_prob,
    relay_total_arrival,
    saturated_service_relay,
    saturated_service_source,
    trace_boundary,
)
from .simulator import (
    ClassifierConfig,
    Mode,
    SimState,
    SimStats,
    SlotOutcome,
    StabilityVerdict,
    Verdict,
    classify_stability,
    empirical_rates,
    run,
    step,
)

__all__ = [
    "ClassifierConfig",
    "DegenerateChannelError",
    "HalfPlane",
    "InvalidParamsError",
    "Mode",
    "RatePoint",
    "Region",
    "RelayLoad",
    "ServiceRates",
    "SimState",
    "SimStats",
    "SlotOutcome",
    "StabilityVerdict",
    "SystemParams",
    "Verdict",
    "classify_stability",
    "dom1_relay_active_fraction",
    "dom2_source_active_fraction",
    "empirical_rates",
    "min_energy_rate",
    "region_contains",
    "region_halfplanes",
    "relay_branch_prob",
    "relay_total_arrival",
    "run",
    "saturated_service_relay",
    "saturated_service_source",
    "step",
    "trace_boundary",
    "validate",
]
