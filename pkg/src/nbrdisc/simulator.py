"""Pairwise discovery engine.

Given two wake-up schedules and an integer clock drift d, a discovery slot
is the first global slot t (on node a's clock) in which a is awake and b is
awake at its local slot t + d.  If the pair is ever going to meet, it meets
inside the joint hyperperiod lcm(T_a, T_b), so that is the default search
horizon.

Two engines compute the same answer.  The scan engine walks the sparser
schedule's wake slots in time order and set-probes the other schedule; its
cost is the discovery latency times the walked duty cycle.  The analytic
engine applies to pure divisibility schedules: for every cross pair (x, y)
of the two divisor sets it solves t = 0 (mod x), t = -d (mod y) and takes
the smallest solvable base.

On top of these sit exhaustive/sampled drift verification, seeded
Monte-Carlo latency trials (drifts drawn per-trial from a counter-based
generator, so results are independent of evaluation order), and CDF
extraction.
"""

from __future__ import annotations

import hashlib
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .numtheory import lcm, solve_congruence_pair
from .protocols import NodeConfig, divisor_set, schedule_period
from .schedule import Schedule


class ScanBudgetError(RuntimeError):
    """Exhaustive drift verification exceeded its work guard."""


@dataclass(frozen=True)
class DriftedPair:
    """Two schedules under an integer clock drift.

    Drift d means node b's local slot index for global slot t is t + d;
    it is normalized into [0, lcm(T_a, T_b)).
    """

    a: Schedule
    b: Schedule
    drift: int

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "drift", self.drift % lcm(self.a.period, self.b.period)
        )


@dataclass(frozen=True)
class DiscoveryResult:
    """First discovery slot, or not-found within the horizon."""

    found: bool
    slot: Optional[int]


_NOT_FOUND = DiscoveryResult(False, None)


def _scan(
    a: Schedule, b: Schedule, drift: int, horizon: int
) -> tuple[DiscoveryResult, int]:
    """Walk wake slots of the sparser schedule; return (result, slots walked)."""
    if not a.active or not b.active:
        return _NOT_FOUND, 0
    if len(a.active) * b.period <= len(b.active) * a.period:
        walk = sorted(a.active)
        walk_period = a.period
        other_active, other_period, offset = b.active, b.period, drift
    else:
        # b's wake slots on the global axis: (s - d) mod T_b + j*T_b
        walk = sorted((s - drift) % b.period for s in b.active)
        walk_period = b.period
        other_active, other_period, offset = a.active, a.period, 0
    cost = 0
    base = 0
    while base < horizon:
        for s in walk:
            t = base + s
            if t >= horizon:
                return _NOT_FOUND, cost
            cost += 1
            if (t + offset) % other_period in other_active:
                return DiscoveryResult(True, t), cost
        base += walk_period
    return _NOT_FOUND, cost


def first_discovery(pair: DriftedPair, horizon: Optional[int] = None) -> DiscoveryResult:
    """Smallest t in [0, horizon) with both nodes awake, or not-found.

    The default horizon is the joint hyperperiod lcm(T_a, T_b).
    """
    if horizon is None:
        horizon = lcm(pair.a.period, pair.b.period)
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    result, _ = _scan(pair.a, pair.b, pair.drift, horizon)
    return result


def first_discovery_analytic(
    na: Iterable[int], nb: Iterable[int], drift: int
) -> DiscoveryResult:
    """First discovery between two divisibility schedules under drift.

    For each cross pair (x, y) solve t = 0 (mod x), t = -drift (mod y);
    the answer is the smallest base over the solvable pairs.  Agrees slot
    for slot with :func:`first_discovery` on the equivalent schedules.
    """
    xs, ys = set(na), set(nb)
    if not xs or not ys:
        raise ValueError("divisor sets must be non-empty")
    best: Optional[int] = None
    for x in xs:
        for y in ys:
            sol = solve_congruence_pair(0, x, -drift, y)
            if sol.solvable and (best is None or sol.base < best):
                best = sol.base
    return DiscoveryResult(best is not None, best)


@dataclass(frozen=True)
class DriftVerification:
    """Outcome of verifying discovery across clock drifts."""

    all_discover: bool
    max_latency: Optional[int]
    mean_latency: Optional[float]
    exhaustive: bool
    drifts_checked: int


def verify_all_drifts(
    a: Schedule,
    b: Schedule,
    *,
    max_work: int = 10**8,
    sample: Optional[int] = None,
    seed: int = 0,
) -> DriftVerification:
    """Check that every drift (or a seeded sample of drifts) yields discovery.

    Exhaustive mode iterates every drift in [0, lcm(T_a, T_b)) and raises
    :class:`ScanBudgetError` once more than ``max_work`` drift-slot probes
    were spent.  Passing ``sample`` switches to seeded sampling instead,
    flagged by ``exhaustive=False`` in the result.
    """
    horizon = lcm(a.period, b.period)
    if sample is None:
        if horizon > max_work:
            raise ScanBudgetError(
                f"{horizon} drifts exceed the work guard {max_work}; "
                "pass sample= to verify a seeded subset"
            )
        drifts: Iterable[int] = range(horizon)
        exhaustive = True
        checked = horizon
    else:
        if sample < 1:
            raise ValueError(f"sample must be >= 1, got {sample}")
        drifts = (trial_drift(seed, i, horizon) for i in range(sample))
        exhaustive = False
        checked = sample
    work = 0
    latencies: list[int] = []
    misses = 0
    for d in drifts:
        result, cost = _scan(a, b, d, horizon)
        work += cost
        if exhaustive and work > max_work:
            raise ScanBudgetError(
                f"drift scan exceeded the work guard {max_work}; "
                "pass sample= to verify a seeded subset"
            )
        if result.found:
            latencies.append(result.slot)
        else:
            misses += 1
    return DriftVerification(
        all_discover=misses == 0,
        max_latency=max(latencies) if latencies else None,
        mean_latency=sum(latencies) / len(latencies) if latencies else None,
        exhaustive=exhaustive,
        drifts_checked=checked,
    )


# --------------------------------------------------------------------------
# Monte-Carlo latency trials
# --------------------------------------------------------------------------


def trial_drift(seed: int, index: int, bound: int) -> int:
    """Deterministic drift for one trial, uniform over [0, bound).

    Counter-based (SHA-256 of seed and trial index), so any subset of
    trials can be evaluated in any order and still agree.
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    digest = hashlib.sha256(b"%d:%d" % (seed, index)).digest()
    return int.from_bytes(digest, "big") % bound


@dataclass(frozen=True)
class TrialResult:
    trial: int
    drift: int
    latency: Optional[int]
    discovered: bool


@dataclass(frozen=True)
class LatencyDistribution:
    """Per-trial discovery latencies of one simulated node pair."""

    latencies: tuple[int, ...]
    trial_count: int
    undiscovered_count: int
    trials: tuple[TrialResult, ...]


def latency_trials(
    cfg_a: NodeConfig, cfg_b: NodeConfig, trials: int, seed: int
) -> LatencyDistribution:
    """Simulate ``trials`` independent drifts and collect first-discovery latencies.

    Each trial draws its drift uniformly from [0, lcm(T_a, T_b)) via
    :func:`trial_drift`, then computes the exact first discovery with
    horizon lcm(T_a, T_b): analytically when both nodes run divisibility
    schedules (whose hyperperiods can make a slot walk infeasible), by
    scanning otherwise.  Identical inputs give identical output.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    div_a, div_b = divisor_set(cfg_a.params), divisor_set(cfg_b.params)
    horizon = lcm(schedule_period(cfg_a.params), schedule_period(cfg_b.params))
    analytic = div_a is not None and div_b is not None
    if not analytic:
        sched_a, sched_b = cfg_a.schedule, cfg_b.schedule
    rows: list[TrialResult] = []
    found: list[int] = []
    misses = 0
    for i in range(trials):
        d = trial_drift(seed, i, horizon)
        if analytic:
            result = first_discovery_analytic(div_a, div_b, d)
        else:
            result, _ = _scan(sched_a, sched_b, d, horizon)
        if result.found:
            found.append(result.slot)
            rows.append(TrialResult(i, d, result.slot, True))
        else:
            misses += 1
            rows.append(TrialResult(i, d, None, False))
    return LatencyDistribution(
        latencies=tuple(sorted(found)),
        trial_count=trials,
        undiscovered_count=misses,
        trials=tuple(rows),
    )


def cdf(
    dist: LatencyDistribution, points: Iterable[int]
) -> list[tuple[int, float]]:
    """Cumulative fractions: share of all trials with latency <= each point.

    Undiscovered trials count toward the denominator but are never <= any
    finite point.
    """
    if dist.trial_count < 1:
        raise ValueError("distribution has no trials")
    lats: Sequence[int] = dist.latencies
    return [(p, bisect_right(lats, p) / dist.trial_count) for p in points]


# --------------------------------------------------------------------------
# CSV rendering
# --------------------------------------------------------------------------

TRIALS_CSV_HEADER = "trial,drift,latency,discovered"
CDF_CSV_HEADER = "latency,fraction"


def trials_csv_rows(dist: LatencyDistribution) -> Iterable[str]:
    """Yield CSV lines (header first), one row per trial."""
    yield TRIALS_CSV_HEADER
    for tr in dist.trials:
        latency = "" if tr.latency is None else str(tr.latency)
        yield f"{tr.trial},{tr.drift},{latency},{int(tr.discovered)}"


def cdf_csv_rows(
    dist: LatencyDistribution, points: Optional[Sequence[int]] = None
) -> Iterable[str]:
    """Yield CSV lines (header first) of the latency CDF.

    Default evaluation points are the observed latencies, giving the full
    step function.
    """
    if points is None:
        points = sorted(set(dist.latencies))
    yield CDF_CSV_HEADER
    for latency, fraction in cdf(dist, points):
        yield f"{latency},{fraction:.10g}"
