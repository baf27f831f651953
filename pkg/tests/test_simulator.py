from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ehrelay import (
    ClassifierConfig,
    Mode,
    SimState,
    SystemParams,
    Verdict,
    classify_stability,
    empirical_rates,
    run,
    step,
)
from ehrelay.simulator import DRAWS_PER_SLOT, SimStats

CANONICAL = SystemParams(
    lambda_s=0.1,
    lambda_r=0.05,
    delta_s=0.6,
    delta_r=0.3,
    q_s=0.5,
    q_r=0.5,
    p_sd=0.4,
    p_rd=0.8,
    p_sr=0.5,
)

# draw indices: s_tx, r_tx, s_to_d, s_to_r, r_to_d, s_pkt, s_harv, r_pkt, r_harv
NO_ARRIVALS = [0.99, 0.99, 0.99, 0.99]


def draws(s_tx=0.99, r_tx=0.99, sd=0.99, sr=0.99, rd=0.99, arrivals=NO_ARRIVALS):
    return [s_tx, r_tx, sd, sr, rd, *arrivals]


class TestStep:
    def test_collision_when_both_transmit(self):
        state = SimState(q_s=2, q_r=1, b_s=1, b_r=1)
        new, out = step(state, CANONICAL, Mode.ORIGINAL, draws(s_tx=0.0, r_tx=0.0, sd=0.0, rd=0.0))
        assert out.collision and out.s_transmitted and out.r_transmitted
        assert not (out.s_to_d or out.s_to_r or out.r_to_d)
        assert (new.q_s, new.q_r) == (2, 1)  # queues unchanged
        assert (new.b_s, new.b_r) == (0, 0)  # energy spent anyway

    def test_direct_delivery(self):
        state = SimState(q_s=1, q_r=0, b_s=1, b_r=5)
        new, out = step(state, CANONICAL, Mode.ORIGINAL, draws(s_tx=0.0, sd=0.0))
        assert out.s_to_d and not out.s_to_r
        assert new.q_s == 0 and new.b_s == 0

    def test_relay_handover(self):
        state = SimState(q_s=1, q_r=0, b_s=1, b_r=5)
        new, out = step(state, CANONICAL, Mode.ORIGINAL, draws(s_tx=0.0, sd=0.99, sr=0.0))
        assert out.s_to_r and not out.s_to_d
        assert new.q_s == 0 and new.q_r == 1

    def test_no_energy_no_transmission(self):
        state = SimState(q_s=3, q_r=0, b_s=0, b_r=0)
        _, out = step(state, CANONICAL, Mode.ORIGINAL, draws(s_tx=0.0, r_tx=0.0))
        assert not out.s_transmitted and not out.r_transmitted

    def test_failed_transmission_keeps_packet(self):
        state = SimState(q_s=1, b_s=1)
        new, out = step(state, CANONICAL, Mode.ORIGINAL, draws(s_tx=0.0, sd=0.99, sr=0.99))
        assert out.s_transmitted and not (out.s_to_d or out.s_to_r)
        assert new.q_s == 1 and new.b_s == 0

    def test_dummy_never_delivers(self):
        state = SimState(q_s=0, q_r=0, b_s=1, b_r=0)
        new, out = step(state, CANONICAL, Mode.DOM_SOURCE, draws(s_tx=0.0, sd=0.0, sr=0.0))
        assert out.s_transmitted and out.s_dummy
        assert not (out.s_to_d or out.s_to_r)
        assert new.b_s == 0 and new.q_r == 0

    def test_no_dummies_in_original_mode(self):
        state = SimState(q_s=0, b_s=5)
        _, out = step(state, CANONICAL, Mode.ORIGINAL, draws(s_tx=0.0))
        assert not out.s_transmitted

    def test_arrivals_land_after_service(self):
        # arriving packet must not be transmittable in the same slot
        state = SimState(q_s=0, b_s=5)
        new, out = step(
            state, CANONICAL, Mode.ORIGINAL, draws(s_tx=0.0, arrivals=[0.0, 0.99, 0.99, 0.99])
        )
        assert out.s_pkt_arrival and not out.s_transmitted
        assert new.q_s == 1

    def test_relay_overhears_when_not_transmitting(self):
        # relay has packets and energy but its access draw says idle
        state = SimState(q_s=1, q_r=2, b_s=1, b_r=5)
        new, out = step(state, CANONICAL, Mode.ORIGINAL, draws(s_tx=0.0, r_tx=0.99, sd=0.99, sr=0.0))
        assert out.s_to_r
        assert new.q_r == 3


unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, exclude_max=True)
counts = st.integers(min_value=0, max_value=5)


@given(
    q_s=counts,
    q_r=counts,
    b_s=counts,
    b_r=counts,
    mode=st.sampled_from(list(Mode)),
    d=st.lists(unit, min_size=DRAWS_PER_SLOT, max_size=DRAWS_PER_SLOT),
)
@settings(max_examples=500)
def test_step_invariants(q_s, q_r, b_s, b_r, mode, d):
    state = SimState(q_s=q_s, q_r=q_r, b_s=b_s, b_r=b_r)
    new, out = step(state, CANONICAL, mode, d)
    if out.collision:
        assert out.s_transmitted and out.r_transmitted
        assert not (out.s_to_d or out.s_to_r or out.r_to_d)
    if out.s_to_r:
        assert out.s_transmitted and not out.r_transmitted  # half-duplex
    assert not (out.s_to_d and out.s_to_r)
    assert new.b_s >= 0 and new.b_r >= 0
    assert new.q_s >= 0 and new.q_r >= 0
    assert state.b_s - new.b_s <= 1 and state.b_r - new.b_r <= 1
    assert abs(new.q_s - q_s) <= 1
    assert new.q_r - q_r <= 2 and q_r - new.q_r <= 1  # +1 arrival +1 handover
    if out.s_dummy or out.r_dummy:
        assert mode is not Mode.ORIGINAL
    assert new.slot == state.slot + 1


@pytest.mark.parametrize("mode", list(Mode))
def test_kernel_matches_step(mode):
    seed, n = 321, 4000
    rng = np.random.default_rng(seed)
    d = rng.random((n, DRAWS_PER_SLOT))
    state = SimState()
    s_dep = r_dep = hand = coll = s_tx_n = r_tx_n = 0
    for t in range(n):
        state, out = step(state, CANONICAL, mode, d[t])
        s_dep += out.s_to_d or out.s_to_r
        r_dep += out.r_to_d
        hand += out.s_to_r
        coll += out.collision
        s_tx_n += out.s_transmitted
        r_tx_n += out.r_transmitted
    stats = run(CANONICAL, mode, seed, n, trace_stride=100)
    assert (stats.final_q_s, stats.final_q_r) == (state.q_s, state.q_r)
    assert (stats.final_b_s, stats.final_b_r) == (state.b_s, state.b_r)
    assert stats.s_departures == s_dep
    assert stats.r_departures == r_dep
    assert stats.handovers == hand
    assert stats.collisions == coll
    assert (stats.s_transmissions, stats.r_transmissions) == (s_tx_n, r_tx_n)


class TestRun:
    def test_no_arrivals_no_traffic(self):
        params = replace(CANONICAL, lambda_s=0.0, lambda_r=0.0)
        stats = run(params, Mode.ORIGINAL, seed=1, n_slots=10_000)
        assert stats.s_departures == 0 and stats.r_departures == 0
        assert stats.final_q_s == 0 and stats.final_q_r == 0

    def test_always_on_saturated_collides_forever(self):
        params = replace(CANONICAL, delta_s=1.0, delta_r=1.0, q_s=1.0, q_r=1.0)
        n = 10_000
        stats = run(params, Mode.SATURATED, seed=2, n_slots=n)
        # slot 0 has no energy yet (harvests land late); every later slot collides
        assert stats.collisions == n - 1
        assert stats.s_departures == 0 and stats.r_departures == 0

    def test_deterministic_in_seed(self):
        a = run(CANONICAL, Mode.ORIGINAL, seed=9, n_slots=30_000)
        b = run(CANONICAL, Mode.ORIGINAL, seed=9, n_slots=30_000)
        assert a.s_departures == b.s_departures
        assert np.array_equal(a.trace_state, b.trace_state)
        assert np.array_equal(a.trace_flags, b.trace_flags)
        c = run(CANONICAL, Mode.ORIGINAL, seed=10, n_slots=30_000)
        assert not np.array_equal(a.trace_state, c.trace_state)

    def test_saturated_throughput_converges(self):
        stats = run(CANONICAL, Mode.SATURATED, seed=3, n_slots=300_000)
        rates = empirical_rates(stats)
        assert rates.mu_s == pytest.approx(0.245, abs=0.01)
        assert rates.mu_r == pytest.approx(0.12, abs=0.01)

    def test_battery_occupancy_rate_conservation(self):
        params = replace(CANONICAL, delta_s=0.3, q_s=0.6)
        stats = run(params, Mode.SATURATED, seed=4, n_slots=300_000)
        assert empirical_rates(stats).s_battery_fraction == pytest.approx(0.5, abs=0.01)

    def test_validates_inputs(self):
        with pytest.raises(ValueError):
            run(CANONICAL, Mode.ORIGINAL, seed=0, n_slots=0)
        with pytest.raises(ValueError):
            run(CANONICAL, Mode.ORIGINAL, seed=0, n_slots=10, trace_stride=0)


class TestEmpiricalRates:
    def _stats(self, **kw):
        base = dict(
            slots=100,
            mode=Mode.ORIGINAL,
            s_departures=0,
            r_departures=0,
            handovers=0,
            s_battery_nonempty_slots=0,
            r_battery_nonempty_slots=0,
            s_active_slots=0,
            r_active_slots=0,
            s_pkt_arrivals=0,
            r_pkt_arrivals=0,
            s_harvests=0,
            r_harvests=0,
            s_transmissions=0,
            r_transmissions=0,
            collisions=0,
            final_q_s=0,
            final_q_r=0,
            final_b_s=0,
            final_b_r=0,
        )
        base.update(kw)
        return SimStats(**base)

    def test_simple_division(self):
        assert empirical_rates(self._stats(s_departures=24)).mu_s == 0.24

    def test_single_slot_guard(self):
        rates = empirical_rates(self._stats(slots=1))
        assert rates.mu_s == 0.0 and rates.mu_r == 0.0
        assert rates.mu_s_per_active == 0.0 and rates.mu_r_per_active == 0.0


class TestClassifier:
    def test_empty_system_is_stable(self):
        params = replace(CANONICAL, lambda_s=0.0, lambda_r=0.0)
        v = classify_stability(params, seed=0, config=ClassifierConfig(n_slots=50_000, burn_in=5_000))
        assert v.verdict is Verdict.STABLE
        assert v.drift_slope == pytest.approx(0.0, abs=1e-9)

    def test_unpowered_source_diverges_at_arrival_rate(self):
        params = replace(CANONICAL, delta_s=0.0)
        v = classify_stability(
            params, seed=0, config=ClassifierConfig(n_slots=200_000, burn_in=20_000)
        )
        assert v.verdict is Verdict.UNSTABLE
        assert v.drift_slope == pytest.approx(0.1, rel=0.1)

    def test_inner_point_is_stable(self):
        v = classify_stability(
            CANONICAL, seed=0, config=ClassifierConfig(n_slots=300_000, burn_in=30_000)
        )
        assert v.verdict is Verdict.STABLE

    def test_threshold_ordering_enforced(self):
        with pytest.raises(ValueError):
            ClassifierConfig(slope_stable=1e-3, slope_unstable=1e-4)
