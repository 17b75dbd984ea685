"""Toy-scale level manager reacting to decompressor events.

The composite toy machine ``U`` has three sources of descriptions:

* simulation mode: every event of the base toy ``V`` with a description of
  length ``q`` gives ``x`` a ``U``-description of length ``q + d``;
* a literal baseline: ``C_V(x) <= |x| + c0`` for every ``x``, enumerated
  before any event (so ``C_U(x) <= |x| + c0 + d``);
* diagonalization mode: every directive "make z q-simple" consumes a fresh
  input of length ``q - 1`` and gives ``z`` a ``U``-description of length ``q``.

Each level plays the Local Game against its referee.  Alice's increments are
realized as fuel directives (tuple strings made ``N + d``-simple), Bob's are
observed as base events producing tuple strings of complexity at most ``N``.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .bitstr import all_strings, encode_tuple, from_text, int_bits, to_text, try_decode
from .keylemma import ComplexityOracle, price_table, zero_oracle
from .local_game import (
    GameConfig,
    GameState,
    Move,
    Player,
    _increment,
    active_player,
    initial_state,
    run_referee,
    virtual_complexity,
)
from .referee import RefereeProgram, evaluate, load_referee, random_referee, support
from .solver import Solver
from .toy_universe import EnumerationTrace, TraceEvent

log = logging.getLogger(__name__)

WAITING = "Waiting"
ACTIVE = "Active"

NEW_CANDIDATE = "NewCandidate"
NON_CANDIDATE = "NonCandidate"

DUMMY = "Dummy"
FUEL = "Fuel"
PAYOFF = "Payoff"


class FighterError(RuntimeError):
    pass


class OutOfAllZones(LookupError):
    pass


class InputExhausted(FighterError):
    pass


class InvalidEvent(ValueError):
    pass


class ResourceBoundViolated(AssertionError):
    def __init__(self, failed: Sequence[str], report: ResourceReport | None = None):
        super().__init__("resource bound violated: " + ", ".join(failed))
        self.failed = list(failed)
        self.report = report


class FighterConfigError(ValueError):
    pass


# -- tower and level parameters ----------------------------------------------------


def _exp2(a: int) -> int:
    return 1 << a


@dataclass(frozen=True)
class Tower:
    """``a_0``, ``a_{i+1} = growth(a_i)``, or an explicit prefix ``seq``.

    ``big_n`` maps a base threshold ``n`` to the scale ``N`` (``2^n`` by
    default).  Anything other than the defaults is a scaled, non-paper tower.
    """

    a0: int = 1
    growth: Callable[[int], int] = _exp2
    seq: tuple[int, ...] | None = None
    big_n: Callable[[int], int] = _exp2

    def a(self, i: int) -> int:
        if self.seq is not None:
            if i >= len(self.seq):
                raise FighterConfigError(f"explicit tower has no element a_{i}")
            return self.seq[i]
        value = self.a0
        for _ in range(i):
            value = self.growth(value)
        return value

    @property
    def is_paper(self) -> bool:
        return self.seq is None and self.a0 == 1 and self.growth is _exp2 and self.big_n is _exp2


PAPER_TOWER = Tower()


@dataclass(frozen=True)
class LevelParams:
    l: int
    d: int
    n: int
    m: int
    zone_low: int
    zone_high: int
    big_n: int

    @classmethod
    def of(cls, l: int, d: int, tower: Tower = PAPER_TOWER) -> LevelParams:
        if l < 1:
            raise FighterConfigError("levels start at 1")
        n = tower.a(2 * l)
        params = cls(l, d, n, n + d, tower.a(2 * l - 1), tower.a(2 * l + 1), tower.big_n(n))
        if not params.zone_low < params.n <= params.zone_high:
            raise FighterConfigError(f"level {l}: zone ({params.zone_low}, {params.zone_high}] misses n={n}")
        return params

    @property
    def floor(self) -> int:
        return self.m + 1

    @property
    def n_d(self) -> int:
        return self.big_n + self.d

    def in_zone(self, q: int) -> bool:
        return self.zone_low < q <= self.zone_high


@dataclass(frozen=True)
class BobEvent:
    step: int
    x: str
    q: int


@dataclass(frozen=True)
class Directive:
    level: int
    kind: str
    z: str
    q: int
    program: str  # the consumed G input (without the leading "1")


@dataclass(frozen=True)
class LogEntry:
    """One instant of the event loop, with level statuses right after it."""

    kind: str  # "candidate", "directive", "event"
    level: int
    statuses: tuple[str, ...]


def route_event(ev: BobEvent, levels: Sequence[LevelParams]) -> tuple[int, str]:
    """Level number ``l`` whose zone holds ``ev.q`` and the case for that level."""
    for p in levels:
        if p.in_zone(ev.q):
            return p.l, NEW_CANDIDATE if ev.q <= p.n else NON_CANDIDATE
    raise OutOfAllZones(f"description length {ev.q} lies in no configured zone")


# -- resource accounting --------------------------------------------------------------


@dataclass
class ResourceLedger:
    dummies: int = 0
    fuel: int = 0
    payoffs: Counter = field(default_factory=Counter)  # level q -> count
    consumed: Counter = field(default_factory=Counter)  # input length -> count


@dataclass(frozen=True)
class ResourceReport:
    checks: Mapping[str, bool]
    utilization: Mapping[int, Fraction]

    @property
    def failed(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]


def resource_checks(d: int, level: LevelParams, ledger: ResourceLedger, c1: int = 1) -> ResourceReport:
    n, big_n = level.n, level.big_n
    # dummies: 2^(n+1) phases fit into 2^(n+d-1) inputs, and the ledger stays under 2^(n+1)
    dummy_ok = (n + 1 < n + d - 1) and ledger.dummies <= 2 ** (n + 1)
    # fuel: 2 c1 2^N < 2^(N+d-1)  <=>  2 c1 < 2^(d-1); ledger at most 2 c1 2^N
    fuel_ok = (2 * c1 < 2 ** (d - 1)) and ledger.fuel <= 2 * c1 * 2 ** big_n
    # payoff: 2^(q-d/2+1) < 2^(q-1)  <=>  d > 4; per-level count at most 2^(q-d/2+1)
    payoff_ok = Fraction(-d, 2) + 1 < -1
    for q, count in ledger.payoffs.items():
        # count <= 2^(q - d/2 + 1)  <=>  count^2 <= 2^(2q - d + 2)
        e = 2 * q - d + 2
        payoff_ok = payoff_ok and (count == 0 or (e >= 0 and count * count <= 2**e))
    capacity_ok = all(used < 2**length for length, used in ledger.consumed.items())
    util = {length: Fraction(used, 2**length) for length, used in sorted(ledger.consumed.items())}
    return ResourceReport(
        {"dummy": dummy_ok, "fuel": fuel_ok, "payoff": payoff_ok, "capacity": capacity_ok}, util)


def check_resources(d: int, level: LevelParams, ledger: ResourceLedger | None = None, c1: int = 1) -> ResourceReport:
    report = resource_checks(d, level, ledger or ResourceLedger(), c1)
    if report.failed:
        raise ResourceBoundViolated(report.failed, report)
    return report


# -- configuration -----------------------------------------------------------------


@dataclass
class FighterConfig:
    d: int = 5
    c1: int = 1
    lam: int = 1
    c0: int = 1
    levels: int = 1
    referees: Mapping[int, RefereeProgram] = field(default_factory=dict)
    seed: int = 0
    tower: Tower = PAPER_TOWER
    max_states: int = 10**6
    oracle: ComplexityOracle = zero_oracle

    def referee_for(self, params: LevelParams) -> RefereeProgram:
        if params.l in self.referees:
            return self.referees[params.l]
        universe = list(all_strings(2, 1))
        return random_referee(self.seed * 1000 + params.l, 2, universe,
                              (params.m, params.zone_high), output_cap=2 * params.m)


# -- level state ----------------------------------------------------------------------


@dataclass
class LevelState:
    params: LevelParams
    status: str = WAITING
    candidate: str | None = None
    game_cfg: GameConfig | None = None
    game: GameState | None = None
    solver: Solver | None = None
    role: Player = Player.ALICE
    stolen: bool = False
    solved_winner: Player | None = None
    preliminary: set = field(default_factory=set)
    paid: set = field(default_factory=set)
    next_s: dict = field(default_factory=dict)
    games_started: int = 0
    strategy_stalled: bool = False
    bob_overspend: int = 0
    vc_history: list = field(default_factory=list)  # one list of snapshots per game

    def reset(self) -> None:
        self.status = WAITING
        self.game_cfg = None
        self.game = None
        self.solver = None
        self.role = Player.ALICE
        self.stolen = False
        self.solved_winner = None
        self.preliminary = set()
        self.paid = set()
        self.next_s = {}
        self.strategy_stalled = False


@dataclass
class LevelReport:
    level: int
    status: str
    candidate: str | None
    games_started: int
    solved_winner: str | None
    stolen: bool
    game_output: int | None
    game_target: int | None
    real_output: int | None
    true_count: int | None
    diagonalized: bool | None
    preliminary: list
    bob_overspend: int
    strategy_stalled: bool
    vc_history: list


@dataclass
class SimulationReport:
    levels: list[LevelReport]
    directives: list[Directive]
    ledger: ResourceLedger
    resources: ResourceReport
    log: list[LogEntry]
    warnings: list[str]

    def format(self) -> str:
        out = ["[levels]"]
        for lv in self.levels:
            out.append(
                f"level={lv.level} status={lv.status} candidate={_t(lv.candidate)} "
                f"games={lv.games_started} winner={lv.solved_winner or '-'} stolen={int(lv.stolen)} "
                f"game_out={_t(lv.game_output)} game_target={_t(lv.game_target)} "
                f"stalled={int(lv.strategy_stalled)} bob_overspend={lv.bob_overspend}")
        out.append("[directives]")
        for dv in self.directives:
            out.append(f"level={dv.level} kind={dv.kind} q={dv.q} z={to_text(dv.z)} input=1{to_text(dv.program)}")
        out.append("[ledger]")
        out.append(f"dummies={self.ledger.dummies} fuel={self.ledger.fuel}")
        for q, c in sorted(self.ledger.payoffs.items()):
            out.append(f"payoff q={q} count={c}")
        for length, used in sorted(self.ledger.consumed.items()):
            out.append(f"consumed len={length} used={used} capacity={2**length}")
        for name, ok in self.resources.checks.items():
            out.append(f"check {name}={'pass' if ok else 'FAIL'}")
        out.append("[diagnosis]")
        for lv in self.levels:
            if lv.diagonalized is None:
                out.append(f"level={lv.level} no-game")
            else:
                out.append(f"level={lv.level} real_out={lv.real_output} true_count={lv.true_count} "
                           f"diagonalized={int(lv.diagonalized)}")
        for w in self.warnings:
            out.append(f"warning {w}")
        return "\n".join(out) + "\n"


def _t(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, str):
        return to_text(v)
    return str(v)


# -- the event loop ---------------------------------------------------------------------


class Fighter:
    def __init__(self, config: FighterConfig):
        self.config = config
        self.params = [LevelParams.of(l, config.d, config.tower) for l in range(1, config.levels + 1)]
        self.levels = [LevelState(p) for p in self.params]
        self.referees = [config.referee_for(p) for p in self.params]
        self.cv: dict[str, int] = {}  # explicit base-machine complexities
        self.cu_g: dict[str, int] = {}  # diagonalization-mode complexities
        self.v_events: list[TraceEvent] = []
        self.v_length_use: Counter = Counter()
        self.u_steps = 0
        # (x, q-d bits, w) -> {s: U-complexity of the tuple}
        self.tuple_index: dict[tuple[str, str, str], dict[str, int]] = {}
        self.ledger = ResourceLedger()
        self.directives: list[Directive] = []
        self.log: list[LogEntry] = []
        self.warnings: list[str] = []
        self.long_index = 0
        self.last_step = 0
        self.q_tildes: dict = {}  # q~ depends only on (q - d, n) for a fixed oracle
        # strings that may count towards some N_m: C_U(x) <= max m
        self.max_m = max(p.m for p in self.params)
        self.low: set[str] = set()

    # complexities ------------------------------------------------------------------

    def c_v(self, x: str) -> int:
        lit = len(x) + self.config.c0
        return min(self.cv.get(x, lit), lit)

    def c_u(self, x: str) -> int:
        via_v = self.c_v(x) + self.config.d
        return min(via_v, self.cu_g.get(x, via_v))

    def true_count(self, m: int) -> int:
        """Number of strings with ``C_U <= m``."""
        lit_len = m - self.config.c0 - self.config.d
        count = 2 ** (lit_len + 1) - 1 if lit_len >= 0 else 0
        for x in self.low:
            if len(x) > lit_len and self.c_u(x) <= m:
                count += 1
        return count

    def real_oracle(self, x: str, k: int) -> bool:
        return self.c_u(x) <= k

    def v_trace(self) -> EnumerationTrace:
        return EnumerationTrace(tuple(self.v_events))

    def tuple_volume(self, x: str, qd: int, w: str, threshold: int) -> int:
        found = self.tuple_index.get((x, int_bits(qd), w), {})
        return sum(1 for c in found.values() if c <= threshold)

    def _record_u(self, output: str, length: int, parts: list[str] | None = None) -> None:
        self.u_steps += 1
        if length <= self.max_m:
            self.low.add(output)
        if parts is None:
            parts = try_decode(output, 4)
        if parts is not None:
            key = (parts[0], parts[1], parts[2])
            slot = self.tuple_index.setdefault(key, {})
            slot[parts[3]] = min(length, slot.get(parts[3], length))

    def _statuses(self) -> tuple[str, ...]:
        return tuple(lv.status for lv in self.levels)

    def _log(self, kind: str, level: int) -> None:
        self.log.append(LogEntry(kind, level, self._statuses()))

    def _abort_above(self, idx: int) -> None:
        for lv in self.levels[idx + 1:]:
            if lv.status == ACTIVE:
                lv.reset()

    # directives ---------------------------------------------------------------------

    def _consume(self, length: int) -> str:
        used = self.ledger.consumed[length]
        if used + 1 >= 2**length:
            raise InputExhausted(f"inputs of length {length} exhausted ({used} of {2**length} used)")
        self.ledger.consumed[length] = used + 1
        return format(used, f"0{length}b") if length else ""

    def _directive(self, idx: int, kind: str, z: str, q: int, parts: list[str] | None = None) -> Directive:
        program = self._consume(q - 1)
        dv = Directive(idx + 1, kind, z, q, program)
        self.directives.append(dv)
        self.cu_g[z] = min(q, self.cu_g.get(z, q))
        self._record_u(z, q, parts)
        if kind == DUMMY:
            self.ledger.dummies += 1
        elif kind == FUEL:
            self.ledger.fuel += 1
        else:
            self.ledger.payoffs[q] += 1
        self._abort_above(idx)
        self._log("directive", idx + 1)
        return dv

    def _fresh_long(self, lv: LevelState) -> str:
        # longer than anything the level's referee may query, and too long for
        # the literal rule to have made it m-simple already
        self.long_index += 1
        length = max(lv.game_cfg.long_threshold, self.max_m) + 1
        return "1" * length + int_bits(self.long_index)

    # game management ----------------------------------------------------------------

    def on_new_candidate(self, idx: int, w: str) -> list[Directive]:
        cfgf = self.config
        lv = self.levels[idx]
        p = lv.params
        lv.reset()
        lv.candidate = w
        lv.status = ACTIVE
        lv.games_started += 1
        lv.vc_history.append([])
        self._abort_above(idx)
        self._log("candidate", idx + 1)

        referee = self.referees[idx]
        strings = sorted({x for x, _ in support(referee.root)}, key=lambda s: (len(s), s))
        q_levels = range(p.floor, p.zone_high + 1)
        trace = self.v_trace()
        raw_prices = price_table(p.n, w, trace, strings, q_levels, p.d, cfgf.lam,
                                 marker_index=len(trace), oracle=cfgf.oracle,
                                 q_tilde_cache=self.q_tildes,
                                 big_n=None if p.big_n == 2**p.n else p.big_n)
        prices, counters = {}, {}
        for (x, q), b in raw_prices.items():
            have = self.tuple_volume(x, q - p.d, w, p.n_d)
            # a zero threshold means the pair is already paid for
            prices[(x, q)] = max(b, 1)
            counters[(x, q)] = max(have, 1) if b == 0 else have
        budget = cfgf.c1 * 2 ** (p.big_n - p.n)
        long_threshold = min(2**p.m, max(referee.max_query_len, 1))
        game_cfg = GameConfig(
            referee=RefereeProgram(referee.root, referee.max_depth, long_threshold),
            target=self.true_count(p.m),
            init_complexity={x: self.c_u(x) for x in strings},
            prices=prices,
            init_counters=counters,
            budget_alice=budget,
            budget_bob=budget,
            floor=p.floor,
            long_threshold=long_threshold,
            c0=cfgf.c0 + cfgf.d,
        )
        lv.game_cfg = game_cfg
        lv.game = initial_state(game_cfg)
        lv.solver = Solver(game_cfg, cfgf.max_states)
        result = lv.solver.solve()
        lv.solved_winner = result.winner
        issued = []
        if result.winner is Player.BOB:
            lv.stolen = True
            lv.role = Player.BOB
            issued.append(self._directive(idx, DUMMY, self._fresh_long(lv), p.m))
        self._snapshot(lv)
        issued += self.on_strategy_step(idx)
        return issued

    def _snapshot(self, lv: LevelState) -> None:
        cfg, st = lv.game_cfg, lv.game
        lv.vc_history[-1].append({x: virtual_complexity(cfg, st, x) for x in cfg.support_strings})

    def on_strategy_step(self, idx: int) -> list[Directive]:
        lv = self.levels[idx]
        if lv.status != ACTIVE:
            return []
        issued: list[Directive] = []
        cfg = lv.game_cfg
        p = lv.params
        while lv.status == ACTIVE and not lv.strategy_stalled:
            out = run_referee(cfg, lv.game)
            if active_player(out, cfg.target) is not lv.role:
                break
            mv = lv.solver.best_move(lv.game)
            if mv is None:
                lv.strategy_stalled = True
                break
            for x, q, delta in mv.increments:
                for _ in range(delta):
                    parts = self._fuel_parts(lv, x, q)
                    issued.append(self._directive(idx, FUEL, encode_tuple(parts), p.n_d, parts))
            lv.game = _increment(cfg, lv.game, Move(lv.role, mv.increments))
            self._snapshot(lv)
            issued += self._payoffs(idx)
        issued += self._payoffs(idx)
        return issued

    def _fuel_parts(self, lv: LevelState, x: str, q: int) -> list[str]:
        p = lv.params
        qd = int_bits(q - p.d)
        present = self.tuple_index.get((x, qd, lv.candidate), {})
        s = lv.next_s.get((x, q), 0)
        while int_bits(s) in present:
            s += 1
        lv.next_s[(x, q)] = s + 1
        return [x, qd, lv.candidate, int_bits(s)]

    def _payoffs(self, idx: int) -> list[Directive]:
        lv = self.levels[idx]
        if lv.status != ACTIVE:
            return []
        cfg, st, d = lv.game_cfg, lv.game, lv.params.d
        issued = []
        for (x, q), b in sorted(cfg.prices.items(), key=lambda kv: (len(kv[0][0]), kv[0][0], kv[0][1])):
            if (x, q) in lv.paid or st.counters.get((x, q), 0) < b:
                continue
            lv.preliminary.add((x, q))
            if 2 * self.c_v(x) <= 2 * q - d:
                lv.preliminary.discard((x, q))
                lv.paid.add((x, q))
                issued.append(self._directive(idx, PAYOFF, x, q))
                if lv.status != ACTIVE:
                    break
        return issued

    def _bob_tuple(self, x: str, length: int) -> None:
        parts = try_decode(x, 4)
        if parts is None:
            return
        xs, qd_bits, w, s = parts
        if not qd_bits or (len(qd_bits) > 1 and qd_bits[0] == "0"):
            return
        for idx, lv in enumerate(self.levels):
            if lv.status != ACTIVE or lv.candidate != w:
                continue
            p = lv.params
            q = int(qd_bits, 2) + p.d
            if (xs, q) not in lv.game_cfg.prices or length > p.big_n:
                continue
            before = self.tuple_index.get((xs, qd_bits, w), {}).get(s)
            if before is not None and before <= p.n_d:
                continue  # this extension was already counted
            opponent = lv.role.other
            if lv.game.remaining(opponent) < 1:
                lv.bob_overspend += 1
                counters = dict(lv.game.counters)
                counters[(xs, q)] = counters.get((xs, q), 0) + 1
                lv.game = GameState(counters, lv.game.long_counts, lv.game.rem_alice,
                                    lv.game.rem_bob, lv.game.turn + 1, lv.game.history)
            else:
                lv.game = _increment(lv.game_cfg, lv.game, Move(opponent, ((xs, q, 1),)))
            self._snapshot(lv)

    # events -------------------------------------------------------------------------

    def process_event(self, ev: BobEvent) -> list[Directive]:
        if ev.step <= self.last_step:
            raise InvalidEvent(f"event steps must increase (got {ev.step} after {self.last_step})")
        if ev.q < 0:
            raise InvalidEvent("description lengths are non-negative")
        used = self.v_length_use[ev.q]
        if used >= 2**ev.q:
            raise InvalidEvent(f"more than 2^{ev.q} base descriptions of length {ev.q}")
        self.last_step = ev.step
        self.v_length_use[ev.q] = used + 1
        program = format(used, f"0{ev.q}b") if ev.q else ""
        self.v_events.append(TraceEvent(len(self.v_events) + 1, program, ev.x))

        old = self.c_v(ev.x)
        self._bob_tuple(ev.x, ev.q)
        self.cv[ev.x] = min(ev.q, self.cv.get(ev.x, ev.q))
        self._record_u(ev.x, ev.q + self.config.d)
        self._log("event", 0)

        issued: list[Directive] = []
        if ev.q < old:
            try:
                level, case = route_event(ev, self.params)
            except OutOfAllZones:
                self.warnings.append(f"step {ev.step}: q={ev.q} outside every zone, ignored")
                level, case = None, None
            if level is not None and case == NEW_CANDIDATE and old > self.params[level - 1].n:
                issued += self.on_new_candidate(level - 1, ev.x)
        for idx in range(len(self.levels)):
            issued += self.on_strategy_step(idx)
            issued += self._payoffs(idx)
        return issued

    def report(self) -> SimulationReport:
        levels = []
        for idx, lv in enumerate(self.levels):
            p = lv.params
            has_game = lv.status == ACTIVE and lv.game_cfg is not None
            game_out = run_referee(lv.game_cfg, lv.game) if has_game else None
            real_out = evaluate(self.referees[idx], self.real_oracle) if has_game else None
            count = self.true_count(p.m) if has_game else None
            levels.append(LevelReport(
                level=p.l,
                status=lv.status,
                candidate=lv.candidate,
                games_started=lv.games_started,
                solved_winner=lv.solved_winner.name if lv.solved_winner else None,
                stolen=lv.stolen,
                game_output=game_out,
                game_target=(lv.game_cfg.target + lv.stolen) if has_game else None,
                real_output=real_out,
                true_count=count,
                diagonalized=(real_out != count) if has_game else None,
                preliminary=sorted(lv.preliminary),
                bob_overspend=lv.bob_overspend,
                strategy_stalled=lv.strategy_stalled,
                vc_history=[list(g) for g in lv.vc_history],
            ))
        resources = resource_checks(self.config.d, self.params[0], self.ledger, self.config.c1)
        return SimulationReport(levels, list(self.directives), self.ledger, resources,
                                list(self.log), list(self.warnings))


def run_simulation(events: Iterable[BobEvent], config: FighterConfig) -> SimulationReport:
    fighter = Fighter(config)
    for ev in events:
        fighter.process_event(ev)
    return fighter.report()


def priority_violations(entries: Sequence[LogEntry]) -> list[int]:
    """Log positions where a level above a directive's level is still Active
    without a fresh candidate since that directive."""
    bad = []
    blocked: set[int] = set()  # 0-based levels that must stay Waiting
    for pos, e in enumerate(entries):
        if e.kind == "candidate":
            blocked.discard(e.level - 1)
        for lvl in blocked:
            if e.statuses[lvl] == ACTIVE:
                bad.append(pos)
                break
        if e.kind in ("directive", "candidate"):
            blocked.update(range(e.level, len(e.statuses)))
    return bad


# -- files ---------------------------------------------------------------------------------


def parse_events(text: str) -> list[BobEvent]:
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) != 6 or tok[0::2] != ["step", "x", "q"]:
            raise InvalidEvent(f"line {lineno}: expected 'step <int> x <bits> q <int>'")
        try:
            events.append(BobEvent(int(tok[1]), from_text(tok[3]), int(tok[5])))
        except ValueError as exc:
            raise InvalidEvent(f"line {lineno}: {exc}") from exc
    return events


def format_events(events: Iterable[BobEvent]) -> str:
    return "".join(f"step {e.step} x {to_text(e.x)} q {e.q}\n" for e in events)


def load_events(path: str | Path) -> list[BobEvent]:
    return parse_events(Path(path).read_text())


CONFIG_INT_KEYS = {"d": "d", "c1": "c1", "lambda": "lam", "c0": "c0", "levels": "levels",
                   "seed": "seed", "maxstates": "max_states"}


def parse_fighter_config(text: str, base_dir: str | Path = ".") -> FighterConfig:
    """Line format: ``d 5``, ``c1 1``, ``lambda 1``, ``c0 1``, ``levels 1``,
    ``seed 0``, ``maxstates N``, ``referee <level> <path>``,
    ``tower <a0> <a1> ...`` (explicit scaled tower), ``bign <n> <N>``."""
    kwargs: dict = {}
    referees: dict[int, RefereeProgram] = {}
    seq = None
    big_n: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        try:
            if key in CONFIG_INT_KEYS:
                (val,) = rest
                kwargs[CONFIG_INT_KEYS[key]] = int(val)
            elif key == "referee":
                lvl, path = rest
                pth = Path(path)
                referees[int(lvl)] = load_referee(pth if pth.is_absolute() else Path(base_dir) / pth)
            elif key == "tower":
                seq = tuple(int(v) for v in rest)
            elif key == "bign":
                n, big = rest
                big_n[int(n)] = int(big)
            else:
                raise FighterConfigError(f"line {lineno}: unknown key {key!r}")
        except FighterConfigError:
            raise
        except ValueError as exc:
            raise FighterConfigError(f"line {lineno}: {exc}") from exc
    tower = PAPER_TOWER
    if seq is not None or big_n:
        tower = Tower(seq=seq, big_n=(lambda n: big_n.get(n, 2**n)) if big_n else _exp2)
    return FighterConfig(referees=referees, tower=tower, **kwargs)


def load_fighter_config(path: str | Path) -> FighterConfig:
    p = Path(path)
    return parse_fighter_config(p.read_text(), p.parent)
