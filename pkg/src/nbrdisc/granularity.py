"""Duty-cycle granularity analysis.

How closely can each protocol match an arbitrary requested duty cycle?  The
metric is the relative error |achieved - desired| / desired, computed with
exact rationals.  For todis there is also a closed-form worst-case envelope:
between two consecutive supported duty cycles f(2k-1) and f(2k+1), where
f(n) = 3*(n*n - n - 1) / (n * (n*n - 4)), the error peaks at their midpoint,
and eliminating the midpoint condition yields a quartic in k,

    16*d*k**4 - 24*k**3 + (12 - 40*d)*k**2 + 36*k + 9*d - 9 = 0.

Solving the quartic for the admissible real root k(d) gives the envelope
value (f(2*k - 1) - d) / d, an increasing function that every measured
todis error stays below and touches at the midpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .protocols import (
    ProtocolParams,
    ParameterError,
    SelectionError,
    SelectionOptions,
    as_fraction,
    format_params,
    select_params,
)


class BoundDomainError(ValueError):
    """No admissible envelope root exists for this duty cycle."""


@dataclass(frozen=True)
class GranularityRecord:
    """One sweep cell: protocol, requested duty cycle, and how close it got.

    ``relative_error`` is |achieved - desired| / desired, exact.  A cell
    whose selection failed carries the message in ``error`` and None in the
    numeric fields.
    """

    protocol: str
    desired_delta: Fraction
    achieved_delta: Optional[Fraction]
    relative_error: Optional[Fraction]
    params: Optional[ProtocolParams]
    error: Optional[str] = None


def relative_error(
    protocol: str,
    delta,
    options: Optional[SelectionOptions] = None,
) -> GranularityRecord:
    """Select the best parameter for ``delta`` and report the exact error."""
    delta = as_fraction(delta)
    cfg = select_params(protocol, delta, options)
    err = abs(cfg.achieved_delta - delta) / delta
    return GranularityRecord(protocol, delta, cfg.achieved_delta, err, cfg.params)


def sweep(
    protocols: Sequence[str],
    deltas: Iterable,
    options: Optional[SelectionOptions] = None,
) -> list[GranularityRecord]:
    """Cartesian sweep, protocol-major with duty cycles ascending.

    A failing cell never aborts the sweep; it is recorded in-row with its
    error message.
    """
    protocols = list(protocols)
    ordered = sorted(as_fraction(d) for d in deltas)
    if not protocols or not ordered:
        raise ValueError("sweep needs at least one protocol and one duty cycle")
    records: list[GranularityRecord] = []
    for protocol in protocols:
        for delta in ordered:
            try:
                records.append(relative_error(protocol, delta, options))
            except (SelectionError, ParameterError, ValueError) as exc:
                records.append(
                    GranularityRecord(protocol, delta, None, None, None, str(exc))
                )
    return records


def _f(x: float) -> float:
    """Triple-odd duty-cycle formula extended to real arguments."""
    return 3.0 * (x * x - x - 1.0) / (x * (x * x - 4.0))


# Above this duty cycle the quartic has no root with k >= 2 (the envelope's
# natural domain edge: the quartic at k=2 equals 105*d - 81).
_DOMAIN_SUP = Fraction(81, 105)


def todis_error_upper_bound(delta) -> float:
    """Worst-case relative-error envelope for todis at duty cycle ``delta``.

    Solves the midpoint quartic for the real root k with f(2k-1) >= delta
    >= f(2k+1) by bisection and returns (f(2k-1) - delta) / delta.  Raises
    :class:`BoundDomainError` when no admissible root exists (delta at or
    above 81/105).
    """
    frac = as_fraction(delta)
    if not 0 < frac < 1:
        raise ValueError(f"duty cycle must be in (0, 1), got {frac}")
    if frac >= _DOMAIN_SUP:
        raise BoundDomainError(
            f"no admissible envelope root for duty cycle {frac} >= 81/105"
        )
    d = float(frac)

    def quartic(k: float) -> float:
        return (((16.0 * d * k - 24.0) * k + (12.0 - 40.0 * d)) * k + 36.0) * k + 9.0 * d - 9.0

    # quartic(2) = 105*d - 81 < 0 on the domain; the root of interest is the
    # single sign change before the leading term takes over near 1.5/d.
    lo, hi = 2.0, 1.5 / d + 2.0
    grow = 0
    while quartic(hi) <= 0.0:
        hi *= 1.5
        grow += 1
        if grow > 64:
            raise BoundDomainError(f"no envelope root bracket for duty cycle {frac}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if quartic(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * max(1.0, hi):
            break
    k = 0.5 * (lo + hi)
    return max((_f(2.0 * k - 1.0) - d) / d, 0.0)


# --------------------------------------------------------------------------
# CSV rendering
# --------------------------------------------------------------------------

GRANULARITY_CSV_HEADER = "protocol,desired_delta,achieved_delta,relative_error,params"


def format_rational(value) -> str:
    """Decimal rendering with 12 significant digits."""
    return f"{float(value):.12g}"


def granularity_csv_rows(
    records: Iterable[GranularityRecord],
    include_todis_bound: bool = False,
) -> Iterable[str]:
    """Yield CSV lines (header first) for a list of sweep records.

    With ``include_todis_bound`` a trailing column carries the todis error
    envelope at each row's desired duty cycle (empty outside its domain).
    """
    header = GRANULARITY_CSV_HEADER + (",todis_bound" if include_todis_bound else "")
    yield header
    bound_cache: dict[Fraction, str] = {}
    for rec in records:
        if rec.error is None:
            row = [
                rec.protocol,
                format_rational(rec.desired_delta),
                format_rational(rec.achieved_delta),
                format_rational(rec.relative_error),
                '"%s"' % format_params(rec.params),
            ]
        else:
            message = rec.error.replace(",", ";").replace('"', "'")
            row = [
                rec.protocol,
                format_rational(rec.desired_delta),
                "",
                "",
                '"error:%s"' % message,
            ]
        if include_todis_bound:
            if rec.desired_delta not in bound_cache:
                try:
                    bound_cache[rec.desired_delta] = format_rational(
                        todis_error_upper_bound(rec.desired_delta)
                    )
                except (BoundDomainError, ValueError):
                    bound_cache[rec.desired_delta] = ""
            row.append(bound_cache[rec.desired_delta])
        yield ",".join(row)
