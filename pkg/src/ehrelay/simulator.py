"""Slotted Monte Carlo engine for the source/relay/destination protocol.

One slot, in order: activity check at slot start, independent random-access
transmissions (one energy unit each, real or dummy), collision-channel
resolution with erasures and network-level handover, then Bernoulli packet
and energy arrivals that become usable in the next slot.

Randomness contract (bit-exact): a run draws an (n_slots, 9) array from
numpy's default PCG64 generator seeded with the run seed; row t holds the
nine uniforms for slot t in DRAW_ORDER. Unused draws are still consumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from . import _kernel
from .params import SystemParams

#: Order of the nine per-slot uniform draws.
DRAW_ORDER = (
    "s_transmit",
    "r_transmit",
    "s_to_d_decode",
    "s_to_r_decode",
    "r_to_d_decode",
    "s_packet_arrival",
    "s_harvest",
    "r_packet_arrival",
    "r_harvest",
)

DRAWS_PER_SLOT = len(DRAW_ORDER)

TRACE_CSV_HEADER = "slot,q_s,q_r,b_s,b_r,s_tx,r_tx,collision,s_to_d,s_to_r,r_to_d"


class Mode(Enum):
    ORIGINAL = "original"
    DOM_SOURCE = "dom_source"  # source sends dummies when its queue is empty
    DOM_RELAY = "dom_relay"  # relay sends dummies when its queue is empty
    SATURATED = "saturated"  # both packet queues treated as never empty


_MODE_CODE = {
    Mode.ORIGINAL: _kernel.MODE_ORIGINAL,
    Mode.DOM_SOURCE: _kernel.MODE_DOM_SOURCE,
    Mode.DOM_RELAY: _kernel.MODE_DOM_RELAY,
    Mode.SATURATED: _kernel.MODE_SATURATED,
}


@dataclass(frozen=True)
class SimState:
    q_s: int = 0
    q_r: int = 0
    b_s: int = 0
    b_r: int = 0
    slot: int = 0


@dataclass(frozen=True)
class SlotOutcome:
    s_transmitted: bool
    r_transmitted: bool
    s_dummy: bool
    r_dummy: bool
    collision: bool
    s_to_d: bool
    s_to_r: bool
    r_to_d: bool
    s_pkt_arrival: bool
    r_pkt_arrival: bool
    s_harvest: bool
    r_harvest: bool


def step(
    state: SimState,
    params: SystemParams,
    mode: Mode,
    draws: Sequence[float],
) -> tuple[SimState, SlotOutcome]:
    """Advance one slot. `draws` supplies the nine uniforms in DRAW_ORDER.

    Pure-Python reference for the compiled kernel in _kernel; kept in exact
    lockstep with it.
    """
    sat = mode is Mode.SATURATED
    s_has = state.q_s > 0
    r_has = state.q_r > 0
    s_elig = state.b_s > 0 and (s_has or sat or mode is Mode.DOM_SOURCE)
    r_elig = state.b_r > 0 and (r_has or sat or mode is Mode.DOM_RELAY)
    s_tx = s_elig and draws[0] < params.q_s
    r_tx = r_elig and draws[1] < params.q_r
    s_real = s_tx and (s_has or sat)
    r_real = r_tx and (r_has or sat)

    q_s, q_r = state.q_s, state.q_r
    b_s = state.b_s - (1 if s_tx else 0)
    b_r = state.b_r - (1 if r_tx else 0)

    collision = s_tx and r_tx
    s_to_d = s_to_r = r_to_d = False
    if s_tx and not r_tx and s_real:
        if draws[2] < params.p_sd:
            s_to_d = True
            if not sat:
                q_s -= 1
        elif draws[3] < params.p_sr:
            s_to_r = True
            if not sat:
                q_s -= 1
                q_r += 1
    if r_tx and not s_tx and r_real:
        if draws[4] < params.p_rd:
            r_to_d = True
            if not sat:
                q_r -= 1

    s_pkt = draws[5] < params.lambda_s
    s_harv = draws[6] < params.delta_s
    r_pkt = draws[7] < params.lambda_r
    r_harv = draws[8] < params.delta_r
    if not sat:
        q_s += 1 if s_pkt else 0
        q_r += 1 if r_pkt else 0
    b_s += 1 if s_harv else 0
    b_r += 1 if r_harv else 0

    new_state = SimState(q_s=q_s, q_r=q_r, b_s=b_s, b_r=b_r, slot=state.slot + 1)
    outcome = SlotOutcome(
        s_transmitted=s_tx,
        r_transmitted=r_tx,
        s_dummy=s_tx and not s_real,
        r_dummy=r_tx and not r_real,
        collision=collision,
        s_to_d=s_to_d,
        s_to_r=s_to_r,
        r_to_d=r_to_d,
        s_pkt_arrival=s_pkt,
        r_pkt_arrival=r_pkt,
        s_harvest=s_harv,
        r_harvest=r_harv,
    )
    return new_state, outcome


@dataclass
class SimStats:
    slots: int
    mode: Mode
    s_departures: int
    r_departures: int
    handovers: int
    s_battery_nonempty_slots: int
    r_battery_nonempty_slots: int
    s_active_slots: int
    r_active_slots: int
    s_pkt_arrivals: int
    r_pkt_arrivals: int
    s_harvests: int
    r_harvests: int
    s_transmissions: int
    r_transmissions: int
    collisions: int
    final_q_s: int
    final_q_r: int
    final_b_s: int
    final_b_r: int
    # per-stride samples: state at slot start, that slot's outcome flags, and
    # cumulative counters before the slot (see _kernel column constants)
    trace_state: np.ndarray = field(repr=False, default=None)
    trace_flags: np.ndarray = field(repr=False, default=None)
    trace_cum: np.ndarray = field(repr=False, default=None)

    @property
    def queue_trace(self) -> np.ndarray:
        """(slot, q_s, q_r) rows sampled every trace stride."""
        return self.trace_state[:, [0, 1, 2]]


class ConservationError(AssertionError):
    """A packet or energy conservation identity failed; indicates a bug."""


def _check_conservation(stats: SimStats) -> None:
    if stats.final_b_s != stats.s_harvests - stats.s_transmissions:
        raise ConservationError("source energy accounting broken")
    if stats.final_b_r != stats.r_harvests - stats.r_transmissions:
        raise ConservationError("relay energy accounting broken")
    if stats.mode is Mode.SATURATED:
        return  # packet queues are not tracked under saturation
    if stats.s_pkt_arrivals != stats.s_departures + stats.final_q_s:
        raise ConservationError("source packet conservation broken")
    if stats.r_pkt_arrivals + stats.handovers != stats.r_departures + stats.final_q_r:
        raise ConservationError("relay packet conservation broken")
    # the same identities at every sampled slot
    tc, ts = stats.trace_cum, stats.trace_state
    if not np.array_equal(tc[:, _kernel.TC_SARR], tc[:, _kernel.TC_SDEP] + ts[:, _kernel.TS_QS]):
        raise ConservationError("source packet conservation broken at a sampled slot")
    if not np.array_equal(
        tc[:, _kernel.TC_RARR] + tc[:, _kernel.TC_HAND],
        tc[:, _kernel.TC_RDEP] + ts[:, _kernel.TS_QR],
    ):
        raise ConservationError("relay packet conservation broken at a sampled slot")


def run(
    params: SystemParams,
    mode: Mode,
    seed: int,
    n_slots: int,
    trace_stride: int = 1000,
) -> SimStats:
    """Simulate n_slots from the all-empty state; deterministic in the seed."""
    if n_slots < 1:
        raise ValueError("n_slots must be >= 1")
    if trace_stride < 1:
        raise ValueError("trace_stride must be >= 1")
    rng = np.random.default_rng(seed)
    draws = rng.random((n_slots, DRAWS_PER_SLOT))
    n_trace = (n_slots + trace_stride - 1) // trace_stride
    trace_state = np.zeros((n_trace, 5), dtype=np.int64)
    trace_flags = np.zeros((n_trace, 8), dtype=np.int8)
    trace_cum = np.zeros((n_trace, 9), dtype=np.int64)
    res = _kernel.simulate_slots(
        draws,
        params.lambda_s,
        params.lambda_r,
        params.delta_s,
        params.delta_r,
        params.q_s,
        params.q_r,
        params.p_sd,
        params.p_rd,
        params.p_sr,
        _MODE_CODE[mode],
        trace_stride,
        trace_state,
        trace_flags,
        trace_cum,
    )
    (
        q_s,
        q_r,
        b_s,
        b_r,
        s_dep,
        r_dep,
        hand,
        s_batt,
        r_batt,
        s_act,
        r_act,
        s_arr,
        r_arr,
        s_harv,
        r_harv,
        s_tx_n,
        r_tx_n,
        coll_n,
    ) = res
    stats = SimStats(
        slots=n_slots,
        mode=mode,
        s_departures=s_dep,
        r_departures=r_dep,
        handovers=hand,
        s_battery_nonempty_slots=s_batt,
        r_battery_nonempty_slots=r_batt,
        s_active_slots=s_act,
        r_active_slots=r_act,
        s_pkt_arrivals=s_arr,
        r_pkt_arrivals=r_arr,
        s_harvests=s_harv,
        r_harvests=r_harv,
        s_transmissions=s_tx_n,
        r_transmissions=r_tx_n,
        collisions=coll_n,
        final_q_s=q_s,
        final_q_r=q_r,
        final_b_s=b_s,
        final_b_r=b_r,
        trace_state=trace_state,
        trace_flags=trace_flags,
        trace_cum=trace_cum,
    )
    _check_conservation(stats)
    return stats


@dataclass(frozen=True)
class EmpiricalRates:
    mu_s: float
    mu_r: float
    s_battery_fraction: float
    r_battery_fraction: float
    s_active_fraction: float
    r_active_fraction: float
    mu_s_per_active: float  # departures per source-active slot
    mu_r_per_active: float  # departures per relay-active slot


def empirical_rates(stats: SimStats) -> EmpiricalRates:
    n = stats.slots
    return EmpiricalRates(
        mu_s=stats.s_departures / n,
        mu_r=stats.r_departures / n,
        s_battery_fraction=stats.s_battery_nonempty_slots / n,
        r_battery_fraction=stats.r_battery_nonempty_slots / n,
        s_active_fraction=stats.s_active_slots / n,
        r_active_fraction=stats.r_active_slots / n,
        mu_s_per_active=(
            stats.s_departures / stats.s_active_slots if stats.s_active_slots else 0.0
        ),
        mu_r_per_active=(
            stats.r_departures / stats.r_active_slots if stats.r_active_slots else 0.0
        ),
    )


class Verdict(Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ClassifierConfig:
    n_slots: int = 1_000_000
    burn_in: int = 100_000
    stride: int = 1_000
    slope_stable: float = 1e-4  # packets/slot
    slope_unstable: float = 1e-3
    queue_cap: int = 10_000

    def __post_init__(self):
        if self.slope_stable >= self.slope_unstable:
            raise ValueError("slope_stable threshold must be below slope_unstable")
        if self.burn_in >= self.n_slots:
            raise ValueError("burn_in must be below n_slots")


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: Verdict
    drift_slope: float
    mean_q_s: float
    mean_q_r: float


def classify_stability(
    params: SystemParams,
    seed: int,
    config: ClassifierConfig | None = None,
    mode: Mode = Mode.ORIGINAL,
) -> StabilityVerdict:
    """Drift-based stability test: least-squares slope of q_s+q_r vs slot.

    Stable needs a near-zero slope and a bounded final queue; a clearly
    positive slope is unstable; anything in between is indeterminate, which
    is the honest answer near a region boundary.
    """
    cfg = config or ClassifierConfig()
    stats = run(params, mode, seed, cfg.n_slots, cfg.stride)
    trace = stats.trace_state
    keep = trace[:, 0] >= cfg.burn_in
    slots = trace[keep, 0].astype(float)
    q_s = trace[keep, 1].astype(float)
    q_r = trace[keep, 2].astype(float)
    total = q_s + q_r
    if len(slots) >= 2 and np.ptp(total) > 0:
        slope = float(np.polyfit(slots, total, 1)[0])
    else:
        slope = 0.0
    final_total = stats.final_q_s + stats.final_q_r
    if slope < cfg.slope_stable and final_total < cfg.queue_cap:
        verdict = Verdict.STABLE
    elif slope > cfg.slope_unstable:
        verdict = Verdict.UNSTABLE
    else:
        verdict = Verdict.INDETERMINATE
    return StabilityVerdict(
        verdict=verdict,
        drift_slope=slope,
        mean_q_s=float(q_s.mean()) if len(q_s) else 0.0,
        mean_q_r=float(q_r.mean()) if len(q_r) else 0.0,
    )


def write_trace_csv(stats: SimStats, path) -> None:
    """Per-stride trace rows: slot-start state plus that slot's outcome flags."""
    k = _kernel
    with open(path, "w", newline="") as fh:
        fh.write(TRACE_CSV_HEADER + "\n")
        for ts, tf in zip(stats.trace_state, stats.trace_flags):
            fh.write(
                f"{ts[k.TS_SLOT]},{ts[k.TS_QS]},{ts[k.TS_QR]},{ts[k.TS_BS]},{ts[k.TS_BR]},"
                f"{tf[k.TF_STX]},{tf[k.TF_RTX]},{tf[k.TF_COLL]},"
                f"{tf[k.TF_STD]},{tf[k.TF_STR]},{tf[k.TF_RTD]}\n"
            )
