"""Built-in acceptance suite: oracle and property checks at desk scale.

Each check returns a CheckResult; run_acceptance executes all of them against
a configuration (defaulting to the canonical parameter set) and prints one
pass/fail line per check.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .config import ExperimentConfig, GridSpec
from .params import RatePoint, Region, SystemParams
from .regions import (
    region_contains,
    region_halfplanes,
    relay_branch_prob,
    relay_total_arrival,
    saturated_service_relay,
    saturated_service_source,
)
from .simulator import (
    ClassifierConfig,
    Mode,
    Verdict,
    classify_stability,
    empirical_rates,
    run,
)
from .sweep import format_sweep_csv, run_sweep

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


@dataclass
class CheckResult:
    name: str
    measured: float
    tolerance: float
    passed: bool
    seconds: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return (
            f"[{status}] {self.name}: measured={self.measured:.6g} "
            f"tol={self.tolerance:.6g} time={self.seconds:.1f}s{extra}"
        )


def _timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


# ---------------------------------------------------------------------------
# fluid drift prediction for points outside the outer bound


def predict_drift(params: SystemParams, point: RatePoint) -> tuple[float, list[float]]:
    """Self-consistent fluid drift of q_s + q_r at an unstable rate point.

    Solves which queues saturate: each saturated node attempts transmission
    at rate min(delta, q); each stable node's attempt rate is pinned by its
    arrival rate. Returns (best prediction, all consistent predictions).
    """
    t_s = min(params.delta_s, params.q_s)
    t_r = min(params.delta_r, params.q_r)
    exit_prob = params.p_sd + (1.0 - params.p_sd) * params.p_sr
    branch = relay_branch_prob(params)
    ls, lr = point.lambda_s, point.lambda_r
    consistent: list[float] = []

    # both queues saturated
    mu_s = t_s * (1.0 - t_r) * exit_prob
    mu_r = t_r * (1.0 - t_s) * params.p_rd
    d_s = ls - mu_s
    d_r = lr + branch * mu_s - mu_r
    if d_s > 0.0 and d_r > 0.0:
        consistent.append(d_s + d_r)

    # source stable, relay saturated
    if (1.0 - t_r) * exit_prob > 0.0 and ls < mu_s:
        x_s = ls / ((1.0 - t_r) * exit_prob)
        d_r = lr + branch * ls - t_r * (1.0 - x_s) * params.p_rd
        if d_r > 0.0:
            consistent.append(d_r)

    # source saturated, relay stable
    denom = (1.0 - t_s) * params.p_rd + branch * t_s * exit_prob
    if denom > 0.0:
        x_r = (lr + branch * t_s * exit_prob) / denom
        if x_r <= t_r:
            d_s = ls - t_s * (1.0 - x_r) * exit_prob
            if d_s > 0.0:
                consistent.append(d_s)

    if not consistent:
        return max(ls - mu_s, 0.0) + max(lr + branch * min(ls, mu_s) - mu_r, 0.0), []
    return consistent[0], consistent


# ---------------------------------------------------------------------------
# region boundary sampling helpers


def _radial_bound(params: SystemParams, region: Region, angle: float) -> float:
    """Distance from the origin to the region boundary along a direction."""
    cx, cy = math.cos(angle), math.sin(angle)
    if region is Region.OUTER:
        return max(
            _radial_bound(params, Region.R1, angle),
            _radial_bound(params, Region.R2, angle),
        )
    bounds = []
    for hp in region_halfplanes(params, region):
        proj = hp.coeff_s * cx + hp.coeff_r * cy
        if proj > 0.0:
            bounds.append(hp.bound / proj)
    return min(bounds) if bounds else math.inf


def sample_inside(params: SystemParams, region: Region, n: int, shrink: float) -> list[RatePoint]:
    angles = np.linspace(0.05, math.pi / 2 - 0.05, n)
    return [
        RatePoint(
            shrink * _radial_bound(params, region, a) * math.cos(a),
            shrink * _radial_bound(params, region, a) * math.sin(a),
        )
        for a in angles
    ]


def sample_outside(params: SystemParams, region: Region, n: int, grow: float) -> list[RatePoint]:
    angles = np.linspace(0.05, math.pi / 2 - 0.05, n)
    return [
        RatePoint(
            grow * _radial_bound(params, region, a) * math.cos(a),
            grow * _radial_bound(params, region, a) * math.sin(a),
        )
        for a in angles
    ]


# ---------------------------------------------------------------------------
# the eight checks


def check_battery_occupancy(seed: int = 11, n_slots: int = 1_000_000) -> CheckResult:
    """Saturated source with delta_s=0.3, q_s=0.6: battery busy half the time."""
    params = replace(CANONICAL, delta_s=0.3, q_s=0.6)
    expected = params.delta_s / params.q_s

    def body():
        stats = run(params, Mode.SATURATED, seed, n_slots)
        return empirical_rates(stats).s_battery_fraction

    measured, secs = _timed(body)
    err = abs(measured - expected)
    return CheckResult(
        name="battery occupancy (saturated, delta/q = 0.5)",
        measured=measured,
        tolerance=0.005,
        passed=err <= 0.005 and secs < 2.0,
        seconds=secs,
        detail=f"expected {expected:.3f}, |err|={err:.5f}, runtime limit 2s",
    )


def check_saturated_throughput(seed: int = 12, n_slots: int = 1_000_000) -> CheckResult:
    params = CANONICAL
    exp_s = saturated_service_source(params)
    exp_r = saturated_service_relay(params)

    def body():
        stats = run(params, Mode.SATURATED, seed, n_slots)
        rates = empirical_rates(stats)
        return rates.mu_s, rates.mu_r

    (mu_s, mu_r), secs = _timed(body)
    err = max(abs(mu_s - exp_s), abs(mu_r - exp_r))
    return CheckResult(
        name="saturated throughput (mu_s=0.245, mu_r=0.12)",
        measured=err,
        tolerance=0.01,
        passed=err <= 0.01,
        seconds=secs,
        detail=f"mu_s={mu_s:.4f} vs {exp_s:.4f}, mu_r={mu_r:.4f} vs {exp_r:.4f}",
    )


def check_dominant_relay_rate(seed: int = 13, n_slots: int = 1_000_000) -> CheckResult:
    """Source-dummy mode at a relay-stable point: the relay's per-active-slot
    service rate matches its saturated throughput.

    delta_r > q_r keeps the relay battery off the critical path, so the
    measured conditional rate is the full min(delta_r,q_r)[1-min(delta_s,q_s)]p_rd.
    """
    params = replace(CANONICAL, delta_r=0.6, q_r=0.3)
    expected = saturated_service_relay(params)
    load = relay_total_arrival(params)
    assert load.total_rate < expected  # relay-stable point by construction

    def body():
        stats = run(params, Mode.DOM_SOURCE, seed, n_slots)
        return empirical_rates(stats).mu_r_per_active

    measured, secs = _timed(body)
    err = abs(measured - expected)
    return CheckResult(
        name="dominant-system relay service rate",
        measured=measured,
        tolerance=0.01,
        passed=err <= 0.01,
        seconds=secs,
        detail=f"expected {expected:.4f}, relay load {load.total_rate:.4f}",
    )


def check_inner_sufficiency(
    seed: int = 14, n_points: int = 50, sim: ClassifierConfig | None = None
) -> CheckResult:
    params = CANONICAL
    points = sample_inside(params, Region.INNER, n_points, shrink=0.90)
    cfg = sim or ClassifierConfig()

    def body():
        stable = unstable = 0
        for k, pt in enumerate(points):
            assert region_contains(params, Region.INNER, pt)
            p = replace(params, lambda_s=pt.lambda_s, lambda_r=pt.lambda_r)
            v = classify_stability(p, seed + k, cfg)
            stable += v.verdict is Verdict.STABLE
            unstable += v.verdict is Verdict.UNSTABLE
        return stable, unstable

    (stable, unstable), secs = _timed(body)
    frac_stable = stable / n_points
    passed = frac_stable >= 0.95 and unstable == 0
    return CheckResult(
        name="inner bound sufficiency (50 interior points)",
        measured=frac_stable,
        tolerance=0.95,
        passed=passed,
        seconds=secs,
        detail=f"{stable} stable, {unstable} unstable of {n_points}",
    )


def check_outer_necessity(
    seed: int = 15, n_points: int = 50, sim: ClassifierConfig | None = None
) -> CheckResult:
    params = CANONICAL
    points = sample_outside(params, Region.OUTER, n_points, grow=1.10)
    cfg = sim or ClassifierConfig()

    def body():
        n_unstable = 0
        worst_rel_err = 0.0
        for k, pt in enumerate(points):
            assert not region_contains(params, Region.OUTER, pt)
            p = replace(params, lambda_s=pt.lambda_s, lambda_r=pt.lambda_r)
            v = classify_stability(p, seed + k, cfg)
            n_unstable += v.verdict is Verdict.UNSTABLE
            predicted, all_consistent = predict_drift(params, pt)
            candidates = all_consistent or [predicted]
            rel_err = min(abs(v.drift_slope - c) / max(c, 1e-12) for c in candidates)
            worst_rel_err = max(worst_rel_err, rel_err)
        return n_unstable, worst_rel_err

    (n_unstable, worst_rel_err), secs = _timed(body)
    passed = n_unstable == n_points and worst_rel_err <= 0.20
    return CheckResult(
        name="outer bound necessity (50 exterior points)",
        measured=worst_rel_err,
        tolerance=0.20,
        passed=passed,
        seconds=secs,
        detail=f"{n_unstable}/{n_points} unstable, worst drift error {worst_rel_err:.1%}",
    )


def _random_params(rng: np.random.Generator) -> SystemParams:
    a, b = rng.uniform(size=2)
    p_sd, p_rd = (a, b) if a < b else (b, a)
    p_sr = rng.uniform()
    if p_sd + (1 - p_sd) * p_sr <= 0.0:
        p_sr = 0.5  # avoid the measure-zero degenerate channel
    return SystemParams(
        lambda_s=0.0,
        lambda_r=0.0,
        delta_s=rng.uniform(),
        delta_r=rng.uniform(),
        q_s=rng.uniform(),
        q_r=rng.uniform(),
        p_sd=p_sd,
        p_rd=p_rd,
        p_sr=p_sr,
    )


def check_region_geometry(seed: int = 16, n_params: int = 1000, grid: int = 50) -> CheckResult:
    """Sampled geometry properties: down-closedness, inner-within-outer
    (at 1e-9 relative margin), and outer = R1-or-R2."""

    def body():
        rng = np.random.default_rng(seed)
        violations = 0
        for _ in range(n_params):
            params = _random_params(rng)
            hps = {r: region_halfplanes(params, r) for r in (Region.INNER, Region.R1, Region.R2)}
            extent = max(
                (hp.bound / hp.coeff_s for hp_list in hps.values() for hp in hp_list if hp.coeff_s > 0),
                default=0.0,
            )
            extent = max(extent, 1e-6) * 1.2
            xs = np.linspace(0.0, extent, grid)
            X, Y = np.meshgrid(xs, xs, indexing="ij")

            def member(hp_list, margin=0.0):
                m = np.ones_like(X, dtype=bool)
                for hp in hp_list:
                    m &= hp.coeff_s * X + hp.coeff_r * Y < hp.bound * (1.0 - margin)
                return m

            inner = member(hps[Region.INNER])
            r1 = member(hps[Region.R1])
            r2 = member(hps[Region.R2])
            outer = r1 | r2
            for m in (inner, r1, r2, outer):
                # membership must be monotone nonincreasing along each axis
                if np.any(m[1:, :] & ~m[:-1, :]) or np.any(m[:, 1:] & ~m[:, :-1]):
                    violations += 1
            inner_margin = member(hps[Region.INNER], margin=1e-9)
            if np.any(inner_margin & ~outer):
                violations += 1
            # cross-check the membership API against the vectorized grid
            for _ in range(3):
                i, j = rng.integers(grid), rng.integers(grid)
                pt = RatePoint(float(X[i, j]), float(Y[i, j]))
                if region_contains(params, Region.OUTER, pt) != bool(outer[i, j]):
                    violations += 1
        return violations

    violations, secs = _timed(body)
    return CheckResult(
        name="region geometry (1000 params x 50x50 grid)",
        measured=float(violations),
        tolerance=0.0,
        passed=violations == 0 and secs < 10.0,
        seconds=secs,
        detail="down-closedness, inner-in-outer, outer=r1|r2; runtime limit 10s",
    )


def check_conservation_determinism(base_config: ExperimentConfig | None = None) -> CheckResult:
    """Conservation identities are asserted inside every run(); on top of
    that, the same sweep config must produce byte-identical CSV twice."""

    def body():
        # conservation across modes (run() raises ConservationError on any break)
        for mode in Mode:
            for s in (0, 1, 2):
                run(CANONICAL, mode, seed=s, n_slots=20_000, trace_stride=100)
        cfg = base_config or ExperimentConfig(
            params=CANONICAL,
            grid=GridSpec(lambda_s_max=0.3, lambda_r_max=0.2, steps=3),
            sim=ClassifierConfig(n_slots=20_000, burn_in=2_000, stride=100),
            base_seed=7,
        )
        first = format_sweep_csv(run_sweep(cfg))
        second = format_sweep_csv(run_sweep(cfg))
        return first == second

    identical, secs = _timed(body)
    return CheckResult(
        name="conservation and determinism",
        measured=1.0 if identical else 0.0,
        tolerance=1.0,
        passed=bool(identical),
        seconds=secs,
        detail="byte-identical repeated sweep CSV",
    )


def check_dominance_direction(
    seed: int = 17, steps: int = 5, sim: ClassifierConfig | None = None
) -> CheckResult:
    """A point stable under either dummy-packet mode must be stable in the
    original system. The converse is not asserted: dummies drain batteries,
    so the modified systems are not indistinguishable from the original."""
    params = CANONICAL
    cfg = sim or ClassifierConfig()
    ls_max, lr_max = 0.30, 0.25

    def body():
        violations = 0
        checked = 0
        for i in range(steps):
            for j in range(steps):
                ls = ls_max * i / steps
                lr = lr_max * j / steps
                p = replace(params, lambda_s=ls, lambda_r=lr)
                s = seed + 1000 * i + j
                dom_stable = any(
                    classify_stability(p, s, cfg, mode).verdict is Verdict.STABLE
                    for mode in (Mode.DOM_SOURCE, Mode.DOM_RELAY)
                )
                if dom_stable:
                    checked += 1
                    if classify_stability(p, s, cfg).verdict is not Verdict.STABLE:
                        violations += 1
        return violations, checked

    (violations, checked), secs = _timed(body)
    return CheckResult(
        name="dominance direction (dummy-stable implies stable)",
        measured=float(violations),
        tolerance=0.0,
        passed=violations == 0,
        seconds=secs,
        detail=f"{checked} dominant-stable grid points checked",
    )


ALL_CHECKS = (
    check_battery_occupancy,
    check_saturated_throughput,
    check_dominant_relay_rate,
    check_inner_sufficiency,
    check_outer_necessity,
    check_region_geometry,
    check_conservation_determinism,
    check_dominance_direction,
)


def run_acceptance(config: ExperimentConfig | None = None, quiet: bool = False):
    """Run all acceptance checks; returns (results, all_passed).

    The compiled slot kernel is warmed up first so one-time compilation cost
    does not count against per-check runtime limits.
    """
    run(CANONICAL, Mode.ORIGINAL, seed=0, n_slots=10, trace_stride=1)
    results = []
    for check in ALL_CHECKS:
        if check is check_conservation_determinism and config is not None:
            result = check(config)
        else:
            result = check()
        results.append(result)
        if not quiet:
            print(result.line(), flush=True)
    all_passed = all(r.passed for r in results)
    if not quiet:
        n_ok = sum(r.passed for r in results)
        print(f"{n_ok}/{len(results)} acceptance checks passed", flush=True)
    return results, all_passed
