"""Command line front end.

Exit codes: 0 on success, 1 for usage or literal parse problems, 2 when
the requested computation is impossible (unteleportable channel, K out
of range, degenerate basis). Numbers print with 15 significant digits.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys

import numpy as np

from .channel import (
    TwoQubitChannel,
    UnteleportableChannelError,
    PureInputState,
    classify,
    concurrence,
    cpm,
    format_complex,
    parse_channel,
    parse_complex,
)
from .measurement import InvalidBasisError, TwoQubitBasis, parse_basis
from .protocol import (
    KOutOfRangeError,
    KPolicy,
    UnsupportedChannelError,
    analytic_report,
    fig1_data,
    monte_carlo,
    simulate_report,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2

SEED_ENV = "TELEMATCH_SEED"


class _UsageError(Exception):
    """Bad literals or inconsistent options, found before any physics runs."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for domain errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return format(float(x), ".15g")


def _config(fn, *args):
    """Run a parsing/validation step, mapping failures to usage errors."""
    try:
        return fn(*args)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _input_state(args) -> PureInputState:
    if (args.alpha is None) != (args.beta is None):
        raise ValueError("--alpha and --beta must be given together")
    if args.alpha is None:
        h = 1.0 / math.sqrt(2.0)
        return PureInputState(h, h)
    return PureInputState(parse_complex(args.alpha), parse_complex(args.beta))


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """One protocol invocation: raw literals plus sampling knobs.

    resolve() parses every literal into domain objects, so a bad flag
    aborts the command before any physics runs.
    """

    channel: str
    basis: str = "bell"
    alpha: str | None = None
    beta: str | None = None
    k: str = "max"
    trials: int = 100000
    seed: int = 0
    format: str = "text"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            channel=args.channel,
            basis=args.basis,
            alpha=args.alpha,
            beta=args.beta,
            k=args.k,
            trials=getattr(args, "trials", 100000),
            seed=_resolve_seed(args) if hasattr(args, "seed") else 0,
            format=args.format,
        )

    def resolve(self) -> tuple[PureInputState, TwoQubitChannel, TwoQubitBasis, KPolicy]:
        inp = _input_state(self)
        ch = parse_channel(self.channel)
        basis = parse_basis(self.basis)
        policy = KPolicy.parse(self.k)
        return inp, ch, basis, policy


def cmd_analyze(args) -> int:
    ch = _config(parse_channel, args.channel)
    x = cpm(ch)
    cls = classify(ch)
    c = concurrence(ch)
    entries = [format_complex(z) for z in x.reshape(-1)]
    if args.format == "csv":
        print("cpm00,cpm01,cpm10,cpm11,class,concurrence")
        print(",".join(entries + [str(cls), _fmt(c)]))
    else:
        print("cpm:")
        print(f"  [{entries[0]}, {entries[1]}]")
        print(f"  [{entries[2]}, {entries[3]}]")
        print(f"class: {cls}")
        print(f"concurrence: {_fmt(c)}")
    return EXIT_OK


def _report_rows(source: str, report) -> list[list[str]]:
    rows = []
    for o in report.outcomes:
        rows.append(
            [
                source,
                str(o.lam),
                _fmt(o.k_used),
                _fmt(o.p_alice),
                _fmt(o.p_bob),
                _fmt(o.p_joint),
                _fmt(o.fidelity),
            ]
        )
    return rows


def _max_abs_diff(ana, sim) -> float:
    worst = abs(ana.total - sim.total)
    for x, y in zip(ana.outcomes, sim.outcomes):
        for field in ("p_alice", "p_bob", "p_joint", "fidelity"):
            worst = max(worst, abs(getattr(x, field) - getattr(y, field)))
    return worst


def cmd_run(args) -> int:
    config = _config(RunConfig.from_args, args)
    inp, ch, basis, policy = _config(config.resolve)
    ana = analytic_report(inp, ch, basis, policy)
    sim = simulate_report(inp, ch, basis, policy)
    diff = _max_abs_diff(ana, sim)
    if config.format == "csv":
        print("source,lam,k_used,p_alice,p_bob,p_joint,fidelity,total,max_abs_diff")
        for row in _report_rows("analytic", ana):
            print(",".join(row + [_fmt(ana.total), _fmt(diff)]))
        for row in _report_rows("simulated", sim):
            print(",".join(row + [_fmt(sim.total), _fmt(diff)]))
    else:
        header = f"{'outcome':>7}  {'k_used':>17}  {'p_alice':>17}  {'p_bob':>17}  {'p_joint':>17}  {'fidelity':>17}"
        for name, report in (("analytic", ana), ("simulated", sim)):
            print(f"{name}:")
            print(header)
            for o in report.outcomes:
                print(
                    f"{o.lam:>7}  {_fmt(o.k_used):>17}  {_fmt(o.p_alice):>17}  "
                    f"{_fmt(o.p_bob):>17}  {_fmt(o.p_joint):>17}  {_fmt(o.fidelity):>17}"
                )
            print(f"total success probability: {_fmt(report.total)}")
        print(f"max |analytic - simulated|: {_fmt(diff)}")
        print("note: total success probability does not depend on the input state")
    return EXIT_OK


def cmd_montecarlo(args) -> int:
    config = _config(RunConfig.from_args, args)
    if config.trials < 1:
        raise _UsageError(f"--trials must be >= 1, got {config.trials}")
    inp, ch, basis, policy = _config(config.resolve)
    ana = analytic_report(inp, ch, basis, policy)
    mc = monte_carlo(inp, ch, basis, policy, config.trials, config.seed)
    diff = mc.p_hat - ana.total
    if diff == 0.0:
        z = 0.0
    elif mc.std_err == 0.0:
        z = math.copysign(math.inf, diff)
    else:
        z = diff / mc.std_err
    if config.format == "csv":
        print("analytic,empirical,stderr,z")
        print(",".join([_fmt(ana.total), _fmt(mc.p_hat), _fmt(mc.std_err), _fmt(z)]))
    else:
        print(f"trials: {mc.trials}")
        print(f"seed: {mc.seed}")
        print(f"outcome counts: {' '.join(str(n) for n in mc.outcome_counts)}")
        print(f"success counts: {' '.join(str(n) for n in mc.success_counts)}")
        print(f"analytic total: {_fmt(ana.total)}")
        print(f"empirical total: {_fmt(mc.p_hat)}")
        print(f"std err: {_fmt(mc.std_err)}")
        print(f"z: {_fmt(z)}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    basis = _config(parse_basis, args.basis)
    inp = _config(_input_state, args)
    if args.steps < 1:
        raise _UsageError(f"--steps must be >= 1, got {args.steps}")
    grid = np.linspace(args.start, args.stop, args.steps)
    rows = []
    if args.param == "k":
        if args.channel is None:
            raise _UsageError("sweeping k needs --channel")
        ch = _config(parse_channel, args.channel)
        for k in grid:
            policy = KPolicy.fixed(float(k))
            ana = analytic_report(inp, ch, basis, policy)
            sim = simulate_report(inp, ch, basis, policy)
            rows.append((float(k), ana.total, sim.total))
    else:
        if args.channel is not None:
            raise _UsageError("sweeping b derives the channel; drop --channel")
        policy = _config(KPolicy.parse, args.k)
        for b in grid:
            bb = float(b)
            ch = _config(TwoQubitChannel.diagonal, math.sqrt(max(0.0, 1.0 - bb * bb)), bb)
            ana = analytic_report(inp, ch, basis, policy)
            sim = simulate_report(inp, ch, basis, policy)
            rows.append((bb, ana.total, sim.total))
    print(f"{args.param},analytic_total,simulated_total")
    for value, ana_total, sim_total in rows:
        print(",".join([_fmt(value), _fmt(ana_total), _fmt(sim_total)]))
    return EXIT_OK


def cmd_fig1(args) -> int:
    if args.steps < 2:
        raise _UsageError(f"--steps must be >= 2, got {args.steps}")
    rows = fig1_data(args.steps)
    lines = ["b,p_opt,p_k1,p_ksqrt2"]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def _add_state_options(sub) -> None:
    sub.add_argument("--basis", default="bell", help="measurement basis: bell or gbm:a,b")
    sub.add_argument("--alpha", default=None, help="input amplitude of |0> (default 1/sqrt(2))")
    sub.add_argument("--beta", default=None, help="input amplitude of |1> (default 1/sqrt(2))")
    sub.add_argument(
        "--k",
        default="max",
        help="matching parameter: a number, 'max', or 'per-outcome' (default max)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="telematch",
        description="Probabilistic teleportation through partially entangled channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="classify a channel and print its parameter matrix")
    p.add_argument("--channel", required=True, help="channel literal: diag:a,b or x00,x01,x10,x11")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("run", help="analytic and simulated per-outcome report")
    p.add_argument("--channel", required=True, help="channel literal: diag:a,b or x00,x01,x10,x11")
    _add_state_options(p)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("montecarlo", help="sample the protocol with a seeded generator")
    p.add_argument("--channel", required=True, help="channel literal: diag:a,b or x00,x01,x10,x11")
    _add_state_options(p)
    p.add_argument("--trials", type=int, default=100000, help="number of samples (default 100000)")
    p.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"RNG seed (default: ${SEED_ENV} or 0)",
    )
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("sweep", help="tabulate success probability along a parameter grid")
    p.add_argument("--param", choices=("k", "b"), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--channel", default=None, help="channel literal (k sweeps only)")
    _add_state_options(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fig1", help="success-probability comparison curves over b")
    p.add_argument("--steps", type=int, default=100, help="grid size (default 100)")
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_fig1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"telematch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KOutOfRangeError, UnteleportableChannelError, UnsupportedChannelError, InvalidBasisError) as exc:
        print(f"telematch: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"telematch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"telematch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
