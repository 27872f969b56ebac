"""Schedule generators and duty-cycle parameter selection for five
asynchronous neighbor-discovery protocols.

Two construction families share the machinery here.  Divisibility
("co-primality") schedules wake in every slot whose index is a multiple of
one of the node's chosen integers, so rendezvous between two nodes reduces
to solving a congruence pair: disco uses two distinct primes, todis three
consecutive odd integers n-2, n, n+2.  Grid ("quorum") schedules mix fixed
anchor slots with probing slots that sweep offsets: hedis places anchors at
multiples of n and probes at (n+1)*i + 1 inside an n*(n-1) period, uconnect
combines a prime stride with a half-row of consecutive slots per p**2
hyperperiod, and searchlight strides anchors t**i apart with one striped
probe per sub-period.

:func:`select_params` picks, for a requested duty cycle, the protocol
parameter whose achieved duty cycle lies closest.  All comparisons use
exact rational arithmetic so near-ties resolve identically everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Union

from .numtheory import primes_up_to
from .schedule import Schedule

PROTOCOL_ORDER = ("disco", "uconnect", "searchlight", "hedis", "todis")


class ParameterError(ValueError):
    """Protocol parameter outside its legal range."""


class SelectionError(ValueError):
    """No parameter in the search pool approximates the requested duty cycle."""


class NotationError(ValueError):
    """Malformed textual parameter notation."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --------------------------------------------------------------------------
# Parameter types (validated on construction)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HedisParams:
    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ParameterError(f"hedis needs n >= 3, got {self.n}")


@dataclass(frozen=True)
class TodisParams:
    n: int

    def __post_init__(self) -> None:
        if self.n < 5 or self.n % 2 == 0:
            raise ParameterError(f"todis needs an odd n >= 5, got {self.n}")


@dataclass(frozen=True)
class DiscoParams:
    p1: int
    p2: int

    def __post_init__(self) -> None:
        if self.p1 == self.p2:
            raise ParameterError(f"disco needs distinct primes, got {self.p1} twice")
        for p in (self.p1, self.p2):
            if not _is_prime(p):
                raise ParameterError(f"disco parameter {p} is not prime")


@dataclass(frozen=True)
class UConnectParams:
    p: int

    def __post_init__(self) -> None:
        if self.p == 2 or not _is_prime(self.p):
            raise ParameterError(f"uconnect needs an odd prime, got {self.p}")


@dataclass(frozen=True)
class SearchlightParams:
    t: int
    i: int

    def __post_init__(self) -> None:
        if self.t < 2:
            raise ParameterError(f"searchlight needs t >= 2, got {self.t}")
        if self.i < 1:
            raise ParameterError(f"searchlight needs i >= 1, got {self.i}")


ProtocolParams = Union[
    HedisParams, TodisParams, DiscoParams, UConnectParams, SearchlightParams
]

_TAGS = {
    HedisParams: "hedis",
    TodisParams: "todis",
    DiscoParams: "disco",
    UConnectParams: "uconnect",
    SearchlightParams: "searchlight",
}


def protocol_tag(params: ProtocolParams) -> str:
    """Protocol name ('hedis', 'todis', ...) for a parameter value."""
    return _TAGS[type(params)]


# --------------------------------------------------------------------------
# Schedule construction
# --------------------------------------------------------------------------


def coprimality_schedule(divisors: Iterable[int]) -> Schedule:
    """Divisibility schedule: slot t is active iff some divisor divides t.

    The period is the lcm of the divisors; the duty cycle follows the
    inclusion-exclusion sum over the divisor subsets.
    """
    ds = sorted(set(divisors))
    if not ds:
        raise ValueError("coprimality schedule needs at least one divisor")
    if ds[0] < 1:
        raise ValueError(f"divisors must be positive, got {ds[0]}")
    period = 1
    for d in ds:
        period = period // math.gcd(period, d) * d
    active: set[int] = set()
    for d in ds:
        active.update(range(0, period, d))
    return Schedule(period, frozenset(active))


def hedis_schedule(n: int) -> Schedule:
    """Anchor/probing grid schedule with period n*(n-1) and duty cycle 2/n.

    Anchors sit at multiples of n, probes at (n+1)*i + 1 for i in
    [0, n-2]; the two sets never collide, so exactly 2*(n-1) slots are
    active per period.
    """
    HedisParams(n)  # validate
    period = n * (n - 1)
    anchors = range(0, period, n)
    probes = range(1, (n + 1) * (n - 2) + 2, n + 1)
    return Schedule(period, frozenset(anchors).union(probes))


def todis_schedule(n: int) -> Schedule:
    """Triple-odd divisibility schedule on {n-2, n, n+2} with period (n-2)*n*(n+2).

    The duty cycle is exactly 3*(n*n - n - 1) / (n * (n*n - 4)).
    """
    TodisParams(n)  # validate
    return coprimality_schedule({n - 2, n, n + 2})


def disco_schedule(p1: int, p2: int) -> Schedule:
    """Prime-pair divisibility schedule; duty cycle 1/p1 + 1/p2 - 1/(p1*p2)."""
    DiscoParams(p1, p2)  # validate
    return coprimality_schedule({p1, p2})


def uconnect_schedule(p: int) -> Schedule:
    """Prime-stride schedule plus a half-row of consecutive slots.

    Per p**2 hyperperiod the node wakes at every multiple of p and in the
    first (p+1)/2 slots; slot 0 belongs to both groups and is counted once,
    so the measured duty cycle is (3p - 1) / (2 p**2).
    """
    UConnectParams(p)  # validate
    period = p * p
    active = set(range(0, period, p))
    active.update(range((p + 1) // 2))
    return Schedule(period, frozenset(active))


def searchlight_schedule(t: int, i: int) -> Schedule:
    """Anchor/striped-probe schedule with stride T = t**i and duty cycle 2/T.

    The hyperperiod holds ceil(T/2) sub-periods of length T.  Sub-period j
    wakes at its anchor j*T and at offset 1 + (j mod ceil(T/2)) past the
    anchor, sweeping every offset a probe may need to meet a drifted
    neighbor.
    """
    SearchlightParams(t, i)  # validate
    stride = t**i
    half = (stride + 1) // 2
    active: set[int] = set()
    for j in range(half):
        active.add(j * stride)
        offset = 1 + (j % half)
        if offset < stride:
            active.add(j * stride + offset)
    return Schedule(stride * half, frozenset(active))


_BUILDERS = {
    HedisParams: lambda p: hedis_schedule(p.n),
    TodisParams: lambda p: todis_schedule(p.n),
    DiscoParams: lambda p: disco_schedule(p.p1, p.p2),
    UConnectParams: lambda p: uconnect_schedule(p.p),
    SearchlightParams: lambda p: searchlight_schedule(p.t, p.i),
}


def build_schedule(params: ProtocolParams) -> Schedule:
    """Construct the wake-up schedule for any parameter value."""
    return _BUILDERS[type(params)](params)


def todis_duty(n: int) -> Fraction:
    """Closed-form todis duty cycle 3*(n*n - n - 1) / (n * (n*n - 4))."""
    return Fraction(3 * (n * n - n - 1), n * (n * n - 4))


def achieved_duty(params: ProtocolParams) -> Fraction:
    """Exact duty cycle implied by the parameters, without building the schedule."""
    if isinstance(params, HedisParams):
        return Fraction(2, params.n)
    if isinstance(params, TodisParams):
        return todis_duty(params.n)
    if isinstance(params, DiscoParams):
        return Fraction(params.p1 + params.p2 - 1, params.p1 * params.p2)
    if isinstance(params, UConnectParams):
        return Fraction(3 * params.p - 1, 2 * params.p * params.p)
    if isinstance(params, SearchlightParams):
        return Fraction(2, params.t**params.i)
    raise TypeError(f"unknown parameter type {type(params).__name__}")


def schedule_period(params: ProtocolParams) -> int:
    """Schedule period implied by the parameters, without building the schedule."""
    if isinstance(params, HedisParams):
        return params.n * (params.n - 1)
    if isinstance(params, TodisParams):
        return (params.n - 2) * params.n * (params.n + 2)
    if isinstance(params, DiscoParams):
        return params.p1 * params.p2
    if isinstance(params, UConnectParams):
        return params.p * params.p
    if isinstance(params, SearchlightParams):
        stride = params.t**params.i
        return stride * ((stride + 1) // 2)
    raise TypeError(f"unknown parameter type {type(params).__name__}")


def divisor_set(params: ProtocolParams) -> Optional[frozenset[int]]:
    """Divisors of a pure divisibility schedule, or None for grid schedules.

    Only todis and disco wake exactly at multiples of their parameter set;
    uconnect's extra half-row disqualifies it even though it carries a
    prime parameter.
    """
    if isinstance(params, TodisParams):
        return frozenset({params.n - 2, params.n, params.n + 2})
    if isinstance(params, DiscoParams):
        return frozenset({params.p1, params.p2})
    return None


def parameter_set(params: ProtocolParams) -> Optional[frozenset[int]]:
    """Integer set entering the co-primality rendezvous bound, if any."""
    if isinstance(params, UConnectParams):
        return frozenset({params.p})
    return divisor_set(params)


# --------------------------------------------------------------------------
# Parameter selection
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SelectionOptions:
    """Knobs for :func:`select_params`.

    ``hedis_parity`` is a deployment-wide setting: keeping every node's n
    on one parity is what guarantees hedis rendezvous network-wide.  The
    pool limits keep searched periods desk-sized while comfortably covering
    duty cycles down to 1%.
    """

    hedis_parity: str = "even"
    searchlight_t: int = 2
    disco_prime_limit: int = 10_000
    uconnect_prime_limit: int = 10_000
    todis_max_n: int = 1201

    def __post_init__(self) -> None:
        if self.hedis_parity not in ("even", "odd"):
            raise ValueError(f"hedis_parity must be 'even' or 'odd', got {self.hedis_parity!r}")
        if self.searchlight_t < 2:
            raise ValueError(f"searchlight_t must be >= 2, got {self.searchlight_t}")
        if self.disco_prime_limit < 3 or self.uconnect_prime_limit < 3:
            raise ValueError("prime limits must be >= 3")
        if self.todis_max_n < 5:
            raise ValueError(f"todis_max_n must be >= 5, got {self.todis_max_n}")


DEFAULT_OPTIONS = SelectionOptions()


@dataclass(eq=True)
class NodeConfig:
    """A node's resolved configuration: requested and achieved duty cycles.

    The schedule is built lazily; selection sweeps over thousands of duty
    cycles would otherwise materialize multi-megaslot active sets they
    never look at.
    """

    desired_delta: Fraction
    params: ProtocolParams
    achieved_delta: Fraction

    @cached_property
    def schedule(self) -> Schedule:
        return build_schedule(self.params)


def as_fraction(value) -> Fraction:
    """Exact rational from int/str/Fraction input.

    Floats go through their shortest decimal repr, so 0.05 means 1/20
    rather than the nearest binary float.
    """
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def _select_hedis(delta: Fraction, options: SelectionOptions) -> HedisParams:
    rem = 0 if options.hedis_parity == "even" else 1
    n_min = 4 if rem == 0 else 3
    # 2/n decreases in n: take the smallest parity-matching n with 2/n <= delta
    # and its predecessor, then compare exactly.
    raw = (2 * delta.denominator + delta.numerator - 1) // delta.numerator
    hi = raw if raw % 2 == rem else raw + 1
    hi = max(hi, n_min)
    candidates = [n for n in (hi - 2, hi) if n >= n_min]
    best = min(candidates, key=lambda n: (abs(Fraction(2, n) - delta), n))
    return HedisParams(best)


def _select_todis(delta: Fraction, options: SelectionOptions) -> TodisParams:
    num, den = delta.numerator, delta.denominator
    n_max = options.todis_max_n if options.todis_max_n % 2 else options.todis_max_n - 1

    def below(n: int) -> bool:  # todis_duty(n) <= delta, in integers
        return 3 * (n * n - n - 1) * den <= num * n * (n * n - 4)

    # duty decreases in n: binary search the first odd n with duty <= delta.
    lo_i, hi_i = 0, (n_max - 5) // 2 + 1
    while lo_i < hi_i:
        mid = (lo_i + hi_i) // 2
        if below(5 + 2 * mid):
            hi_i = mid
        else:
            lo_i = mid + 1
    boundary = 5 + 2 * lo_i
    candidates = [n for n in (boundary - 2, boundary) if 5 <= n <= n_max]
    best = min(candidates, key=lambda n: (abs(todis_duty(n) - delta), n))
    return TodisParams(best)


def _select_disco(delta: Fraction, options: SelectionOptions) -> DiscoParams:
    primes = _prime_pool(options.disco_prime_limit)
    if len(primes) < 2:
        raise SelectionError("disco prime pool has fewer than two primes")
    num, den = delta.numerator, delta.denominator

    # disco runs balanced: each node pairs a prime with the next one, so the
    # achieved duty cycle is roughly 2/p1 and the granularity is limited by
    # the prime gaps.  The pair duty decreases strictly along the pair list;
    # bisect the first pair at or below delta and compare neighbors exactly.
    def below(i: int) -> bool:
        p, q = primes[i], primes[i + 1]
        return (p + q - 1) * den <= num * p * q

    lo, hi = 0, len(primes) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if below(mid):
            hi = mid
        else:
            lo = mid + 1
    best = None  # (error, -p1, p1*p2, p1, p2)
    for i in (lo - 1, lo):
        if not 0 <= i < len(primes) - 1:
            continue
        p, q = primes[i], primes[i + 1]
        key = (abs(Fraction(p + q - 1, p * q) - delta), -p, p * q, p, q)
        if best is None or key < best:
            best = key
    assert best is not None
    return DiscoParams(best[3], best[4])


def _select_uconnect(delta: Fraction, options: SelectionOptions) -> UConnectParams:
    primes = [p for p in _prime_pool(options.uconnect_prime_limit) if p != 2]
    if not primes:
        raise SelectionError("uconnect prime pool is empty")
    num, den = delta.numerator, delta.denominator

    def below(p: int) -> bool:  # (3p - 1) / (2 p^2) <= delta, in integers
        return (3 * p - 1) * den <= num * 2 * p * p

    lo, hi = 0, len(primes)
    while lo < hi:
        mid = (lo + hi) // 2
        if below(primes[mid]):
            hi = mid
        else:
            lo = mid + 1
    candidates = [primes[j] for j in (lo - 1, lo) if 0 <= j < len(primes)]
    best = min(
        candidates,
        key=lambda p: (abs(Fraction(3 * p - 1, 2 * p * p) - delta), p),
    )
    return UConnectParams(best)


def _select_searchlight(delta: Fraction, options: SelectionOptions) -> SearchlightParams:
    t = options.searchlight_t
    i = 1
    while Fraction(2, t**i) > delta:
        i += 1
    candidates = [i] if i == 1 else [i - 1, i]
    best = min(candidates, key=lambda j: (abs(Fraction(2, t**j) - delta), j))
    return SearchlightParams(t, best)


@lru_cache(maxsize=64)
def _prime_pool(limit: int) -> tuple[int, ...]:
    return tuple(primes_up_to(limit))


_SELECTORS = {
    "hedis": _select_hedis,
    "todis": _select_todis,
    "disco": _select_disco,
    "uconnect": _select_uconnect,
    "searchlight": _select_searchlight,
}


@lru_cache(maxsize=4096)
def _select(protocol: str, delta: Fraction, options: SelectionOptions) -> ProtocolParams:
    return _SELECTORS[protocol](delta, options)


def select_params(
    protocol: str,
    delta,
    options: Optional[SelectionOptions] = None,
) -> NodeConfig:
    """Pick the protocol parameter whose duty cycle best approximates ``delta``.

    Errors are compared with exact rationals; ties break toward the smaller
    achieved period (for disco, toward the more balanced pair first).
    Raises :class:`SelectionError` when even the best candidate misses the
    target by 100% or more.
    """
    if protocol not in _SELECTORS:
        raise NotationError(f"unknown protocol '{protocol}'")
    delta = as_fraction(delta)
    if not 0 < delta <= 1:
        raise SelectionError(f"duty cycle must be in (0, 1], got {delta}")
    params = _select(protocol, delta, options or DEFAULT_OPTIONS)
    achieved = achieved_duty(params)
    if abs(achieved - delta) >= delta:
        raise SelectionError(
            f"{protocol} cannot approximate duty cycle {delta} "
            f"(best candidate {format_params(params)} achieves {achieved})"
        )
    return NodeConfig(delta, params, achieved)


# --------------------------------------------------------------------------
# Textual notation (CLI wire format)
# --------------------------------------------------------------------------

_PARAM_FIELDS = {
    "hedis": ("n",),
    "todis": ("n",),
    "disco": ("p1", "p2"),
    "uconnect": ("p",),
    "searchlight": ("t", "i"),
}

_PARAM_TYPES = {
    "hedis": HedisParams,
    "todis": TodisParams,
    "disco": DiscoParams,
    "uconnect": UConnectParams,
    "searchlight": SearchlightParams,
}


def format_params(params: ProtocolParams) -> str:
    """Textual notation, e.g. ``hedis:n=40`` or ``disco:p1=37,p2=43``."""
    tag = protocol_tag(params)
    fields = _PARAM_FIELDS[tag]
    body = ",".join(f"{name}={getattr(params, name)}" for name in fields)
    return f"{tag}:{body}"


def parse_params(text: str) -> ProtocolParams:
    """Parse the textual notation produced by :func:`format_params`."""
    name, sep, rest = text.strip().partition(":")
    if name not in _PARAM_TYPES:
        raise NotationError(f"unknown protocol '{name}'")
    if not sep or not rest:
        raise NotationError(f"missing parameters after '{name}:'")
    values: dict[str, int] = {}
    for token in rest.split(","):
        key, eq, val = token.partition("=")
        if not eq:
            raise NotationError(f"bad parameter token '{token}' (expected key=value)")
        if key not in _PARAM_FIELDS[name]:
            raise NotationError(f"unexpected parameter '{key}' for {name}")
        if key in values:
            raise NotationError(f"duplicate parameter '{key}'")
        try:
            values[key] = int(val)
        except ValueError:
            raise NotationError(f"parameter '{token}' is not an integer") from None
    missing = [f for f in _PARAM_FIELDS[name] if f not in values]
    if missing:
        raise NotationError(f"missing parameter '{missing[0]}' for {name}")
    return _PARAM_TYPES[name](**values)
