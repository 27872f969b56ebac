"""Command-line front end.

Subcommands: ``schedule`` (inspect a schedule), ``params`` (duty-cycle ->
parameter selection), ``granularity`` (relative-error sweeps as CSV),
``verify`` (drift verification for a schedule pair) and ``simulate``
(seeded latency trials with trial and CDF CSVs).

Every output file starts with a metadata comment block carrying the exact
command line, the seed and the library version; reruns of the same
invocation produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import __version__
from .granularity import (
    format_rational,
    granularity_csv_rows,
    sweep,
)
from .protocols import (
    PROTOCOL_ORDER,
    NotationError,
    ParameterError,
    SelectionError,
    SelectionOptions,
    build_schedule,
    format_params,
    parameter_set,
    parse_params,
    select_params,
)
from .numtheory import worst_case_bound
from .schedule import duty_cycle
from .simulator import (
    ScanBudgetError,
    cdf_csv_rows,
    latency_trials,
    trials_csv_rows,
    verify_all_drifts,
)


@dataclass(frozen=True)
class RunSpec:
    """One CLI invocation, as recorded in output metadata."""

    command: str
    argv: tuple[str, ...]
    seed: int
    out: Optional[str]

    def metadata_lines(self) -> list[str]:
        return [
            "# command: nbrdisc " + " ".join(self.argv),
            f"# seed: {self.seed}",
            f"# version: {__version__}",
        ]


def parse_delta(text: str) -> Fraction:
    """Duty cycle from '0.05', '1/20' or '5%'."""
    token = text.strip()
    try:
        if token.endswith("%"):
            return Fraction(token[:-1]) / 100
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise NotationError(f"bad duty cycle '{text}'") from None


def parse_sweep(text: str) -> list[Fraction]:
    """Sweep grammar: ``reciprocal:<K>``, ``percent:<a>..<b>``, ``list:<floats>``."""
    kind, sep, rest = text.strip().partition(":")
    if not sep:
        raise NotationError(f"bad sweep '{text}' (expected kind:args)")
    if kind == "reciprocal":
        try:
            k = int(rest)
        except ValueError:
            raise NotationError(f"bad reciprocal count '{rest}'") from None
        if k < 1:
            raise NotationError(f"reciprocal count must be >= 1, got {k}")
        return [Fraction(1, i) for i in range(1, k + 1)]
    if kind == "percent":
        lo_txt, sep2, hi_txt = rest.partition("..")
        if not sep2:
            raise NotationError(f"bad percent range '{rest}' (expected a..b)")
        try:
            lo, hi = int(lo_txt), int(hi_txt)
        except ValueError:
            raise NotationError(f"bad percent range '{rest}'") from None
        lo = max(lo, 1)  # relative error is undefined at 0%
        if hi > 100 or lo > hi:
            raise NotationError(f"percent range '{rest}' outside 1..100")
        return [Fraction(p, 100) for p in range(lo, hi + 1)]
    if kind == "list":
        return [parse_delta(tok) for tok in rest.split(",") if tok.strip()]
    raise NotationError(f"unknown sweep kind '{kind}'")


def parse_protocols(text: str) -> list[str]:
    if text.strip() == "all":
        return list(PROTOCOL_ORDER)
    names = [tok.strip() for tok in text.split(",") if tok.strip()]
    for name in names:
        if name not in PROTOCOL_ORDER:
            raise NotationError(f"unknown protocol '{name}'")
    if not names:
        raise NotationError("empty protocol list")
    return names


def _options_from(args: argparse.Namespace) -> SelectionOptions:
    return SelectionOptions(
        hedis_parity=args.parity,
        searchlight_t=args.searchlight_t,
    )


def _write_lines(out: Optional[str], lines: Iterable[str], spec: RunSpec) -> None:
    text = "\n".join([*spec.metadata_lines(), *lines]) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------


def cmd_schedule(args: argparse.Namespace, spec: RunSpec) -> int:
    params = parse_params(args.spec)
    schedule = build_schedule(params)
    duty = duty_cycle(schedule)
    limit = min(args.limit, schedule.period) if args.limit else schedule.period
    slots = sorted(t for t in schedule.active if t < limit)
    lines = [
        f"params={format_params(params)}",
        f"period={schedule.period}",
        f"duty_cycle={duty} ({format_rational(duty * 100)}%)",
        f"limit={limit}",
        "active=" + ",".join(str(t) for t in slots),
    ]
    _write_lines(args.out, lines, spec)
    return 0


def cmd_params(args: argparse.Namespace, spec: RunSpec) -> int:
    protocols = parse_protocols(args.protocols)
    delta = parse_delta(args.delta)
    options = _options_from(args)
    lines = ["protocol,params,desired_delta,achieved_delta,relative_error"]
    status = 0
    for protocol in protocols:
        try:
            cfg = select_params(protocol, delta, options)
        except SelectionError as exc:
            message = str(exc).replace(",", ";").replace('"', "'")
            lines.append(f'{protocol},"error:{message}",{format_rational(delta)},,')
            status = 1
            continue
        err = abs(cfg.achieved_delta - delta) / delta
        lines.append(
            ",".join(
                [
                    protocol,
                    '"%s"' % format_params(cfg.params),
                    format_rational(delta),
                    format_rational(cfg.achieved_delta),
                    format_rational(err),
                ]
            )
        )
    _write_lines(args.out, lines, spec)
    return status


def cmd_granularity(args: argparse.Namespace, spec: RunSpec) -> int:
    protocols = parse_protocols(args.protocols)
    deltas = parse_sweep(args.sweep)
    records = sweep(protocols, deltas, _options_from(args))
    lines = list(granularity_csv_rows(records, include_todis_bound=True))
    _write_lines(args.out, lines, spec)
    return 1 if any(rec.error is not None for rec in records) else 0


def cmd_verify(args: argparse.Namespace, spec: RunSpec) -> int:
    sched_a = build_schedule(parse_params(args.spec_a))
    sched_b = build_schedule(parse_params(args.spec_b))
    result = verify_all_drifts(
        sched_a,
        sched_b,
        max_work=args.max_work,
        sample=args.sample,
        seed=args.seed,
    )
    mean = "" if result.mean_latency is None else format_rational(result.mean_latency)
    peak = "" if result.max_latency is None else str(result.max_latency)
    lines = [
        f"schedule_a={args.spec_a}",
        f"schedule_b={args.spec_b}",
        f"all_discover={str(result.all_discover).lower()}",
        f"max_latency={peak}",
        f"mean_latency={mean}",
        f"drifts_checked={result.drifts_checked}",
        f"exhaustive={str(result.exhaustive).lower()}",
    ]
    _write_lines(args.out, lines, spec)
    return 0 if result.all_discover else 1


def cmd_simulate(args: argparse.Namespace, spec: RunSpec) -> int:
    protocols = parse_protocols(args.protocols)
    delta_a = parse_delta(args.delta_a)
    delta_b = parse_delta(args.delta_b)
    options = _options_from(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary: list[str] = []
    for protocol in protocols:
        cfg_a = select_params(protocol, delta_a, options)
        cfg_b = select_params(protocol, delta_b, options)
        dist = latency_trials(cfg_a, cfg_b, args.trials, args.seed)
        _write_lines(
            str(out_dir / f"{protocol}_trials.csv"), trials_csv_rows(dist), spec
        )
        _write_lines(str(out_dir / f"{protocol}_cdf.csv"), cdf_csv_rows(dist), spec)
        set_a, set_b = parameter_set(cfg_a.params), parameter_set(cfg_b.params)
        bound = ""
        if set_a is not None and set_b is not None:
            value = worst_case_bound(set_a, set_b)
            bound = " bound=unbounded" if value is None else f" bound={value}"
        peak = max(dist.latencies) if dist.latencies else ""
        summary.append(
            f"{protocol}: node_a={format_params(cfg_a.params)} "
            f"(achieved {format_rational(cfg_a.achieved_delta * 100)}%) "
            f"node_b={format_params(cfg_b.params)} "
            f"(achieved {format_rational(cfg_b.achieved_delta * 100)}%) "
            f"trials={dist.trial_count} undiscovered={dist.undiscovered_count} "
            f"max_latency={peak}{bound}"
        )
    for line in summary:
        print(line)
    return 0


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbrdisc",
        description="Duty-cycled wake-up schedules and pairwise neighbor discovery.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")

    def selection(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--parity",
            choices=("even", "odd"),
            default="even",
            help="deployment-wide hedis parameter parity (default even)",
        )
        p.add_argument(
            "--searchlight-t",
            type=int,
            default=2,
            help="searchlight base stride t (default 2)",
        )

    p = sub.add_parser("schedule", help="print period, duty cycle and active slots")
    p.add_argument("spec", help="parameter notation, e.g. todis:n=15")
    p.add_argument("--limit", type=int, default=100, help="list active slots below this")
    common(p)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("params", help="select parameters for a duty cycle")
    p.add_argument("--protocols", default="all", help="'all' or comma list")
    p.add_argument("--delta", required=True, help="duty cycle: 0.05, 1/20 or 5%%")
    selection(p)
    common(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("granularity", help="relative-error sweep as CSV")
    p.add_argument("--protocols", default="all", help="'all' or comma list")
    p.add_argument(
        "--sweep",
        required=True,
        help="reciprocal:<K> | percent:<a>..<b> | list:<comma duty cycles>",
    )
    selection(p)
    common(p)
    p.set_defaults(func=cmd_granularity)

    p = sub.add_parser("verify", help="drift verification for a schedule pair")
    p.add_argument("spec_a", help="parameter notation for node a")
    p.add_argument("spec_b", help="parameter notation for node b")
    p.add_argument("--sample", type=int, default=None, help="sampled drifts instead of exhaustive")
    p.add_argument("--max-work", type=int, default=10**8, help="exhaustive work guard")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="seeded latency trials with CSV output")
    p.add_argument("--protocols", default="all", help="'all' or comma list")
    p.add_argument("--delta-a", required=True, help="node a duty cycle")
    p.add_argument("--delta-b", required=True, help="node b duty cycle")
    p.add_argument("--trials", type=int, default=1000, help="trial count (default 1000)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    selection(p)
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    spec = RunSpec(
        command=args.command,
        argv=tuple(argv),
        seed=getattr(args, "seed", 0),
        out=getattr(args, "out", None),
    )
    try:
        return args.func(args, spec)
    except (NotationError, ParameterError, SelectionError, ScanBudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
