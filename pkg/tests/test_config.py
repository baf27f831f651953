import pytest

from ehrelay.config import ConfigError, parse_config
from ehrelay.simulator import Mode

MINIMAL = """
# canonical parameter set
delta_s = 0.6
delta_r = 0.3
q_s = 0.5
q_r = 0.5
p_sd = 0.4
p_rd = 0.8
p_sr = 0.5
"""


def test_minimal_config_gets_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.params.delta_s == 0.6
    assert cfg.params.lambda_s == 0.0 and cfg.params.lambda_r == 0.0
    assert cfg.sim.n_slots == 1_000_000
    assert cfg.sim.burn_in == 100_000
    assert cfg.sim.stride == 1_000
    assert cfg.mode is Mode.ORIGINAL
    assert cfg.base_seed == 0
    assert cfg.csv_out is None and cfg.svg_out is None


def test_point_and_outputs():
    cfg = parse_config(MINIMAL + "lambda_s=0.1\nlambda_r=0.05\ncsv_out=out.csv\nmode=saturated\n")
    assert cfg.params.lambda_s == 0.1
    assert cfg.csv_out == "out.csv"
    assert cfg.mode is Mode.SATURATED


def test_range_violation_names_field_and_line():
    text = MINIMAL.replace("q_s = 0.5", "q_s = 1.5")
    with pytest.raises(ConfigError, match=r"q_s out of \[0,1\].*\(line 5\)"):
        parse_config(text)


def test_duplicate_key():
    with pytest.raises(ConfigError, match="duplicate key"):
        parse_config(MINIMAL + "q_s = 0.4\n")


def test_unknown_key():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config(MINIMAL + "qs = 0.4\n")


def test_missing_required_keys():
    with pytest.raises(ConfigError, match="missing required"):
        parse_config("q_s = 0.5\n")


def test_relay_advantage_checked():
    text = MINIMAL.replace("p_rd = 0.8", "p_rd = 0.3")
    with pytest.raises(ConfigError, match="p_rd must exceed p_sd"):
        parse_config(text)


def test_bad_mode():
    with pytest.raises(ConfigError, match="mode must be one of"):
        parse_config(MINIMAL + "mode = turbo\n")


def test_bad_number_reports_line():
    with pytest.raises(ConfigError, match="bad value"):
        parse_config(MINIMAL + "n_slots = many\n")


def test_malformed_line():
    with pytest.raises(ConfigError, match="expected key=value"):
        parse_config(MINIMAL + "this is not a pair\n")


def test_grid_constraints():
    with pytest.raises(ConfigError, match="steps"):
        parse_config(MINIMAL + "steps = 1\n")
    with pytest.raises(ConfigError, match="lambda_s_max"):
        parse_config(MINIMAL + "lambda_s_max = 0\n")
