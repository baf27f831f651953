import math
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ehrelay import SystemParams, min_energy_rate, validate

OK = SystemParams(
    lambda_s=0.5,
    lambda_r=0.5,
    delta_s=0.5,
    delta_r=0.5,
    q_s=0.5,
    q_r=0.5,
    p_sd=0.4,
    p_rd=0.8,
    p_sr=0.5,
)


def test_valid_params_pass():
    assert validate(OK) == []


def test_out_of_range_field_is_named():
    violations = validate(replace(OK, q_s=1.2))
    assert len(violations) == 1
    assert "q_s" in violations[0]
    assert "[0,1]" in violations[0]


def test_relay_advantage_is_strict():
    violations = validate(replace(OK, p_rd=0.3, p_sd=0.4))
    assert any("p_rd must exceed p_sd" in v for v in violations)
    # equality is rejected too
    assert validate(replace(OK, p_rd=0.4, p_sd=0.4))


def test_boundary_rates_allowed():
    assert validate(replace(OK, lambda_s=1.0, lambda_r=0.0)) == []


any_float = st.floats(allow_nan=True, allow_infinity=True)


@given(st.lists(any_float, min_size=9, max_size=9))
def test_validate_is_total(fields):
    # never raises, whatever the numbers are
    result = validate(SystemParams(*fields))
    assert isinstance(result, list)


def test_validate_rejects_nan():
    assert validate(replace(OK, delta_s=math.nan))


@pytest.mark.parametrize(
    "delta,q,expected",
    [(0.3, 0.6, 0.3), (0.6, 0.5, 0.5), (0.0, 0.7, 0.0)],
)
def test_min_energy_rate_values(delta, q, expected):
    assert min_energy_rate(delta, q) == expected


unit = st.floats(min_value=0.0, max_value=1.0)


@given(unit, unit, unit)
def test_min_energy_rate_monotone_and_bounded(delta, q, bump):
    base = min_energy_rate(delta, q)
    assert base <= delta and base <= q
    assert min_energy_rate(min(delta + bump, 1.0), q) >= base
    assert min_energy_rate(delta, min(q + bump, 1.0)) >= base
