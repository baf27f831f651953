"""Flat key=value experiment configuration files.

One `key = value` pair per line; `#` starts a comment; unknown and duplicate
keys are errors. Defaults: n_slots=1000000, burn_in=100000, stride=1000,
mode=original, base_seed=0, lambda_s=lambda_r=0, lambda_s_max=lambda_r_max=1,
steps=10.
"""

from __future__ import annotations

from dataclasses import dataclass

from .params import SystemParams, validate
from .simulator import ClassifierConfig, Mode


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    lambda_s_max: float = 1.0
    lambda_r_max: float = 1.0
    steps: int = 10


@dataclass(frozen=True)
class ExperimentConfig:
    params: SystemParams
    grid: GridSpec
    sim: ClassifierConfig
    base_seed: int = 0
    mode: Mode = Mode.ORIGINAL
    csv_out: str | None = None
    svg_out: str | None = None


_FLOAT_KEYS = {
    "lambda_s",
    "lambda_r",
    "delta_s",
    "delta_r",
    "q_s",
    "q_r",
    "p_sd",
    "p_rd",
    "p_sr",
    "lambda_s_max",
    "lambda_r_max",
}
_INT_KEYS = {"steps", "n_slots", "burn_in", "stride", "base_seed"}
_STR_KEYS = {"mode", "csv_out", "svg_out"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS

_REQUIRED = {"delta_s", "delta_r", "q_s", "q_r", "p_sd", "p_rd", "p_sr"}


def parse_config(text: str) -> ExperimentConfig:
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        lines[key] = lineno
        try:
            if key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key in _INT_KEYS:
                values[key] = int(value)
            else:
                values[key] = value
        except ValueError:
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from None

    missing = sorted(_REQUIRED - values.keys())
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")

    params = SystemParams(
        lambda_s=values.get("lambda_s", 0.0),
        lambda_r=values.get("lambda_r", 0.0),
        delta_s=values["delta_s"],
        delta_r=values["delta_r"],
        q_s=values["q_s"],
        q_r=values["q_r"],
        p_sd=values["p_sd"],
        p_rd=values["p_rd"],
        p_sr=values["p_sr"],
    )
    violations = validate(params)
    if violations:
        located = []
        for v in violations:
            name = v.split(" ", 1)[0]
            at = f" (line {lines[name]})" if name in lines else ""
            located.append(v + at)
        raise ConfigError("; ".join(located))

    grid = GridSpec(
        lambda_s_max=values.get("lambda_s_max", 1.0),
        lambda_r_max=values.get("lambda_r_max", 1.0),
        steps=values.get("steps", 10),
    )
    if grid.steps < 2:
        raise ConfigError("steps must be >= 2")
    for axis in ("lambda_s_max", "lambda_r_max"):
        m = getattr(grid, axis)
        if not (0.0 < m <= 1.0):
            raise ConfigError(f"{axis} must lie in (0, 1]")

    try:
        sim = ClassifierConfig(
            n_slots=values.get("n_slots", 1_000_000),
            burn_in=values.get("burn_in", 100_000),
            stride=values.get("stride", 1_000),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    mode_name = values.get("mode", "original")
    try:
        mode = Mode(mode_name)
    except ValueError:
        raise ConfigError(
            f"mode must be one of {[m.value for m in Mode]}, got {mode_name!r}"
        ) from None

    return ExperimentConfig(
        params=params,
        grid=grid,
        sim=sim,
        base_seed=values.get("base_seed", 0),
        mode=mode,
        csv_out=values.get("csv_out"),
        svg_out=values.get("svg_out"),
    )


def load_config(path) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config(fh.read())
