"""Command-line entry point.

Subcommands and their file grammars:

  solve <scenario> [--max-states N] [--trace OUT] [--steal]
      Scenario lines: ``target <int>``, ``floor <int>``,
      ``budget alice=<int> bob=<int>``, ``c0 <int>``, ``longthreshold <int>``,
      ``init x=<bits> c=<int>``, ``price x=<bits> q=<int> b=<int>``,
      ``counter x=<bits> q=<int> v=<int>``, ``longprice q=<int> b=<int>``,
      ``referee <path>``.  Prints ``winner=<A|B> states=<int> output=<int>``;
      exit 0 when Alice wins, 1 when Bob wins.
      Trace lines: ``turn=<t> player=<A|B> cost=<c> inc=(x,q,+d);... out=<int>``.

  count <trace-or-table> --m <int>
      Lines ``[step <int>] prog <bits> out <bits> [cost <int>]`` (``e`` is the
      empty string).  Prints ``N_m=<int> queries=<int>``.

  fighter <events> --config <file> [--report OUT]
      Event lines ``step <int> x <bits> q <int>``.  Config lines ``d``, ``c1``,
      ``lambda``, ``c0``, ``levels``, ``seed``, ``maxstates`` followed by an
      integer, ``referee <level> <path>``, ``tower <a0> <a1> ...`` and
      ``bign <n> <N>`` (the last two define a scaled, non-paper tower).

  fixedpoint --beta <file>
      Lines ``l <int> beta <int>`` covering 0..q.  Prints ``lstar=<int>``.

  threshold --n --q --lambda --pastq --dq --dn --structn
      Prints ``B=<int>``.

  gen-referee --depth D --universe BITS,BITS --levels LO,HI [--out-cap K]
      Prints a referee file: ``# maxdepth D maxquerylen L`` then the tree as
      ``query x=<bits> k=<int>`` / ``yes:`` / ``no:`` / ``out <int>`` lines
      indented two spaces per level.

Every error exits with status 2 and a one-line diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fighter as fighter_mod
from .bitstr import from_text
from .counting import count_simple, predicate_from_decompressor
from .keylemma import BetaFunction, ThresholdInputs, fixed_point, threshold
from .local_game import Player, load_scenario
from .referee import format_referee, random_referee
from .solver import DEFAULT_MAX_STATES, play_stolen, play_strategy, solve, steal
from .toy_universe import ToyDecompressor, load_trace

DEFAULTS = {"d": 5, "c1": 1, "lam": 1, "c0": 1, "max_states": DEFAULT_MAX_STATES}


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # one-line diagnostic, exit 2
        raise CliError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diaggame", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--seed", type=int, default=0, help="seed for randomized generation")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="exact winner of a Local Game scenario")
    s.add_argument("scenario")
    s.add_argument("--max-states", type=int, default=DEFAULTS["max_states"])
    s.add_argument("--trace", help="write the winning play against the first-move adversary")
    s.add_argument("--steal", action="store_true", help="on a Bob win, replay the stolen strategy")

    c = sub.add_parser("count", help="exact N_m by binary search over the threshold predicate")
    c.add_argument("table")
    c.add_argument("--m", type=int, required=True)

    f = sub.add_parser("fighter", help="run the level manager on an event stream")
    f.add_argument("events")
    f.add_argument("--config", required=True)
    f.add_argument("--report", help="write the report here instead of stdout")
    f.add_argument("--d", type=int, help=f"override d (default {DEFAULTS['d']})")
    f.add_argument("--c1", type=int, help=f"override c1 (default {DEFAULTS['c1']})")
    f.add_argument("--lambda", dest="lam", type=int, help=f"override lambda (default {DEFAULTS['lam']})")
    f.add_argument("--c0", type=int, help=f"override c0 (default {DEFAULTS['c0']})")

    x = sub.add_parser("fixedpoint", help="l* = max{l : beta(l) >= l}")
    x.add_argument("--beta", required=True)

    t = sub.add_parser("threshold", help="Algorithm A price B")
    for name in ("n", "q", "pastq", "dq", "dn", "structn"):
        t.add_argument(f"--{name}", type=int, required=True)
    t.add_argument("--lambda", dest="lam", type=int, default=DEFAULTS["lam"])

    g = sub.add_parser("gen-referee", help="seeded random referee")
    g.add_argument("--depth", type=int, default=2)
    g.add_argument("--universe", required=True, help="comma-separated bit strings")
    g.add_argument("--levels", required=True, help="LO,HI threshold range")
    g.add_argument("--out-cap", type=int, default=7)
    return p


def _cmd_solve(args) -> int:
    cfg = load_scenario(args.scenario)
    result = solve(cfg, args.max_states)
    print(f"winner={result.winner.value} states={result.states_explored} output={result.initial_output}")
    lines: list[str] = []
    if args.steal and result.winner is Player.BOB:
        stolen = steal(cfg, result)
        verdict, lines, _ = play_stolen(cfg, stolen)
        print(f"stolen winner={verdict.winner.value} final_output={verdict.final_output} "
              f"adjusted_target={stolen.adjusted_target}")
    elif args.trace:
        _, lines, _ = play_strategy(cfg, result)
    if args.trace:
        Path(args.trace).write_text("".join(line + "\n" for line in lines))
    return 0 if result.winner is Player.ALICE else 1


def _cmd_count(args) -> int:
    dec = ToyDecompressor.from_trace(load_trace(args.table))
    res = count_simple(predicate_from_decompressor(dec), args.m)
    print(f"N_m={res.count} queries={res.queries}")
    return 0


def _cmd_fighter(args) -> int:
    cfg = fighter_mod.load_fighter_config(args.config)
    for name in ("d", "c1", "lam", "c0"):
        if getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if args.seed:
        cfg.seed = args.seed
    report = fighter_mod.run_simulation(fighter_mod.load_events(args.events), cfg)
    text = report.format()
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def parse_beta(text: str) -> BetaFunction:
    values: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) != 4 or tok[0] != "l" or tok[2] != "beta":
            raise CliError(f"line {lineno}: expected 'l <int> beta <int>'")
        values[int(tok[1])] = int(tok[3])
    if not values or sorted(values) != list(range(len(values))):
        raise CliError("beta must be given on 0..q without gaps")
    return BetaFunction(len(values) - 1, tuple(values[i] for i in range(len(values))))


def _cmd_fixedpoint(args) -> int:
    beta = parse_beta(Path(args.beta).read_text())
    print(f"lstar={fixed_point(beta)}")
    return 0


def _cmd_threshold(args) -> int:
    inp = ThresholdInputs(args.n, args.q, args.lam, args.pastq, (args.dq, args.dn), args.structn)
    print(f"B={threshold(inp)}")
    return 0


def _cmd_gen_referee(args) -> int:
    universe = [from_text(s) for s in args.universe.split(",")]
    lo, hi = (int(v) for v in args.levels.split(","))
    sys.stdout.write(format_referee(random_referee(args.seed, args.depth, universe, (lo, hi), args.out_cap)))
    return 0


COMMANDS = {
    "solve": _cmd_solve,
    "count": _cmd_count,
    "fighter": _cmd_fighter,
    "fixedpoint": _cmd_fixedpoint,
    "threshold": _cmd_threshold,
    "gen-referee": _cmd_gen_referee,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.cmd](args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001 - every failure maps to exit 2
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
