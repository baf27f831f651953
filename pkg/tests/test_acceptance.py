"""Acceptance gate: one test per criterion, printed with measured values.

Run with `pytest -v -s tests/test_acceptance.py` to see one line per
criterion, or `ehrelay accept` for the standalone report.
"""

import pytest

from ehrelay.acceptance import (
    CANONICAL,
    check_battery_occupancy,
    check_conservation_determinism,
    check_dominance_direction,
    check_dominant_relay_rate,
    check_inner_sufficiency,
    check_outer_necessity,
    check_region_geometry,
    check_saturated_throughput,
)
from ehrelay.simulator import Mode, run


@pytest.fixture(scope="module", autouse=True)
def warm_kernel():
    # compile the slot kernel outside any timed criterion
    run(CANONICAL, Mode.ORIGINAL, seed=0, n_slots=10, trace_stride=1)


def _assert_passed(result):
    print(result.line())
    assert result.passed, result.line()


def test_criterion_1_battery_occupancy():
    _assert_passed(check_battery_occupancy())


def test_criterion_2_saturated_throughput():
    _assert_passed(check_saturated_throughput())


def test_criterion_3_dominant_relay_rate():
    _assert_passed(check_dominant_relay_rate())


def test_criterion_4_inner_sufficiency():
    _assert_passed(check_inner_sufficiency())


def test_criterion_5_outer_necessity():
    _assert_passed(check_outer_necessity())


def test_criterion_6_region_geometry():
    _assert_passed(check_region_geometry())


def test_criterion_7_conservation_determinism():
    _assert_passed(check_conservation_determinism())


def test_criterion_8_dominance_direction():
    _assert_passed(check_dominance_direction())
