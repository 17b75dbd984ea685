"""The Local Game between Alice and Bob, refereed by a query tree.

Counters ``St(x, q)`` accumulate increments from both players.  A string's
virtual complexity drops to ``q`` once ``St(x, q)`` reaches the price
``B(x, q)``; the referee reads the oracle derived from virtual complexities.
The player whom the current output does not satisfy has to move.

Long strings (longer than ``long_threshold``) are invisible to the referee.
Generic long-string moves are pooled per level in ``GameState.long_counts``.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from pathlib import Path

from .bitstr import check_bits, from_text, shortlex_key, to_text
from .referee import (
    QueryTooLong,
    RefereeProgram,
    evaluate,
    load_referee,
    validate,
)

LONG = "*"


class Player(enum.Enum):
    ALICE = "A"
    BOB = "B"

    @property
    def other(self) -> Player:
        return Player.BOB if self is Player.ALICE else Player.ALICE


class GameError(ValueError):
    pass


class NotYourTurn(GameError):
    pass


class InsufficientBudget(GameError):
    pass


class BelowFloor(GameError):
    pass


class QueryBoundExceeded(GameError):
    pass


class ScenarioFormatError(GameError):
    pass


Pair = tuple[str, int]


@dataclass(frozen=True)
class GameConfig:
    referee: RefereeProgram
    target: int
    init_complexity: Mapping[str, int] = field(default_factory=dict)
    prices: Mapping[Pair, int] = field(default_factory=dict)
    init_counters: Mapping[Pair, int] = field(default_factory=dict)
    budget_alice: int = 0
    budget_bob: int = 0
    floor: int = 1
    long_threshold: int = 64
    long_prices: Mapping[int, int] = field(default_factory=dict)
    c0: int = 1

    def __post_init__(self) -> None:
        if self.floor < 1:
            raise GameError("floor must be at least 1")
        if self.c0 < 0:
            raise GameError("c0 must be non-negative")
        if self.budget_alice < 0 or self.budget_bob < 0:
            raise GameError("budgets must be non-negative")
        for (x, q), b in self.prices.items():
            check_bits(x)
            if b < 1:
                raise GameError(f"price of {(x, q)} must be at least 1")
            if q < self.floor:
                raise GameError(f"priced level {q} is below the floor {self.floor}")
        for q, b in self.long_prices.items():
            if b < 1:
                raise GameError(f"long price at level {q} must be at least 1")
        for v in self.init_counters.values():
            if v < 0:
                raise GameError("initial counters must be non-negative")
        sup = validate(self.referee)
        for x, _ in sup:
            if len(x) > self.long_threshold:
                raise QueryTooLong(f"referee queries long string of length {len(x)}")
        levels: dict[str, list[int]] = {}
        for x, q in self.prices:
            levels.setdefault(x, []).append(q)
        object.__setattr__(self, "_support", sup)
        object.__setattr__(self, "_strings", sorted({x for x, _ in sup}, key=shortlex_key))
        object.__setattr__(self, "_levels", {x: sorted(qs) for x, qs in levels.items()})

    @property
    def support(self) -> frozenset[Pair]:
        return self._support  # type: ignore[attr-defined]

    @property
    def support_strings(self) -> list[str]:
        return self._strings  # type: ignore[attr-defined]

    def is_long(self, x: str) -> bool:
        return len(x) > self.long_threshold

    def init_c(self, x: str) -> int:
        return self.init_complexity.get(x, len(x) + self.c0)

    def long_price(self, q: int) -> int:
        return self.long_prices.get(q, 1)

    def levels_of(self, x: str) -> list[int]:
        return self._levels.get(x, [])  # type: ignore[attr-defined]


@dataclass(frozen=True)
class Move:
    player: Player
    increments: tuple[tuple[str, int, int], ...]

    def __post_init__(self) -> None:
        for x, q, delta in self.increments:
            if delta < 1:
                raise GameError("increments must be at least 1")
            if x != LONG:
                check_bits(x)

    @property
    def cost(self) -> int:
        return sum(delta for _, _, delta in self.increments)

    def format(self) -> str:
        return ";".join(f"({to_text(x) if x != LONG else 'LONG'},{q},+{d})"
                        for x, q, d in self.increments)


@dataclass(frozen=True)
class GameState:
    counters: Mapping[Pair, int]
    long_counts: Mapping[int, int]
    rem_alice: int
    rem_bob: int
    turn: int = 0
    history: tuple[Move, ...] = ()

    def remaining(self, player: Player) -> int:
        return self.rem_alice if player is Player.ALICE else self.rem_bob


@dataclass(frozen=True)
class Verdict:
    winner: Player
    final_output: int
    turns: int


def initial_state(cfg: GameConfig) -> GameState:
    return GameState(dict(cfg.init_counters), {}, cfg.budget_alice, cfg.budget_bob)


def virtual_complexity(cfg: GameConfig, st: GameState, x: str) -> int:
    best = cfg.init_c(x)
    for q in cfg.levels_of(x):
        if q >= best:
            break
        if st.counters.get((x, q), 0) >= cfg.prices[(x, q)]:
            best = q
            break
    return best


def long_simple_count(cfg: GameConfig, st: GameState, q: int) -> int:
    """Generic long strings made ``q``-simple by pooled long-string moves."""
    return st.long_counts.get(q, 0) // cfg.long_price(q)


def oracle_answer(cfg: GameConfig, st: GameState, x: str, k: int) -> bool:
    # a named long string is never one of the generic pooled ones
    return virtual_complexity(cfg, st, x) <= k


def run_referee(cfg: GameConfig, st: GameState) -> int:
    if cfg.referee.depth > cfg.referee.max_depth:
        raise QueryBoundExceeded("referee tree deeper than its declared bound")
    return evaluate(cfg.referee, lambda x, k: oracle_answer(cfg, st, x, k))


def active_player(output: int, target: int) -> Player:
    return Player.ALICE if output == target else Player.BOB


def _increment(cfg: GameConfig, st: GameState, mv: Move) -> GameState:
    counters = dict(st.counters)
    long_counts = dict(st.long_counts)
    for x, q, delta in mv.increments:
        if x == LONG:
            long_counts[q] = long_counts.get(q, 0) + delta
        else:
            counters[(x, q)] = counters.get((x, q), 0) + delta
    cost = mv.cost
    if mv.player is Player.ALICE:
        return replace(st, counters=counters, long_counts=long_counts,
                       rem_alice=st.rem_alice - cost, turn=st.turn + 1,
                       history=st.history + (mv,))
    return replace(st, counters=counters, long_counts=long_counts,
                   rem_bob=st.rem_bob - cost, turn=st.turn + 1,
                   history=st.history + (mv,))


def apply_move(cfg: GameConfig, st: GameState, mv: Move, *, check_turn: bool = True) -> GameState:
    """Apply ``mv`` and return the successor state.

    ``check_turn=False`` lets a driver record an out-of-turn move (the event
    loop does this for increments it observes rather than chooses).
    """
    if check_turn:
        expected = active_player(run_referee(cfg, st), cfg.target)
        if mv.player is not expected:
            raise NotYourTurn(f"{mv.player.name} moved but {expected.name} is active")
    if mv.cost < 1:
        raise GameError("a move must cost at least 1")
    if mv.cost > st.remaining(mv.player):
        raise InsufficientBudget(f"cost {mv.cost} exceeds remaining {st.remaining(mv.player)}")
    for x, q, _ in mv.increments:
        if x != LONG and not cfg.is_long(x) and q < cfg.floor:
            raise BelowFloor(f"level {q} is below the floor {cfg.floor}")
    return _increment(cfg, st, mv)


def replay(cfg: GameConfig, moves: Iterable[Move], *, check_turn: bool = True) -> GameState:
    st = initial_state(cfg)
    for mv in moves:
        st = apply_move(cfg, st, mv, check_turn=check_turn)
    return st


def _string_options(cfg: GameConfig, st: GameState, x: str, ks: list[int]):
    """Cheapest way to reach each distinct answer vector for the queries on ``x``."""
    v = virtual_complexity(cfg, st, x)
    best: dict[tuple[bool, ...], tuple[int, int]] = {}
    for q in cfg.levels_of(x):
        if q >= v:
            break
        cost = cfg.prices[(x, q)] - st.counters.get((x, q), 0)
        key = tuple(q <= k for k in ks)
        if key == tuple(v <= k for k in ks):
            continue
        if key not in best or cost < best[key][0]:
            best[key] = (cost, q)
    return v, best


def legal_bundles(cfg: GameConfig, st: GameState) -> list[Move]:
    """Minimal output-changing moves affordable by the active player.

    Each bundle crosses at most one price threshold per queried string, the
    cheapest one giving that string its new answer pattern.  Bundles are
    unique per resulting oracle restriction on the support and ordered by
    cost, then shortlex on their increments.
    """
    out = run_referee(cfg, st)
    player = active_player(out, cfg.target)
    budget = st.remaining(player)
    strings = cfg.support_strings
    queries = {x: sorted(k for (y, k) in cfg.support if y == x) for x in strings}
    per_string = []
    current = {}
    for x in strings:
        v, best = _string_options(cfg, st, x, queries[x])
        current[x] = v
        opts = [None] + [(x, q, c) for _, (c, q) in sorted(best.items(), key=lambda kv: kv[1])]
        per_string.append(opts)

    moves = []
    for combo in itertools.product(*per_string):
        chosen = [c for c in combo if c is not None]
        if not chosen:
            continue
        cost = sum(c for _, _, c in chosen)
        if cost > budget:
            continue
        vc = dict(current)
        for x, q, _ in chosen:
            vc[x] = q
        if evaluate(cfg.referee, lambda x, k: vc[x] <= k) == out:
            continue
        incs = tuple(sorted(((x, q, c) for x, q, c in chosen),
                            key=lambda t: (shortlex_key(t[0]), t[1])))
        moves.append(Move(player, incs))
    moves.sort(key=lambda m: (m.cost, [(shortlex_key(x), q, d) for x, q, d in m.increments]))
    return moves


def is_terminal(cfg: GameConfig, st: GameState) -> Verdict | None:
    out = run_referee(cfg, st)
    if legal_bundles(cfg, st):
        return None
    stuck = active_player(out, cfg.target)
    return Verdict(stuck.other, out, st.turn)


# -- scenario files --------------------------------------------------------------

SCENARIO_KEYS = {"target", "floor", "budget", "init", "price", "counter",
                 "longprice", "c0", "longthreshold", "referee"}


def _kv(tokens: list[str], lineno: int) -> dict[str, str]:
    try:
        return dict(t.split("=", 1) for t in tokens)
    except ValueError as exc:
        raise ScenarioFormatError(f"line {lineno}: expected key=value tokens") from exc


def parse_scenario(text: str, base_dir: str | Path = ".") -> GameConfig:
    fields: dict = {"init_complexity": {}, "prices": {}, "init_counters": {}, "long_prices": {}}
    referee = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key not in SCENARIO_KEYS:
            raise ScenarioFormatError(f"line {lineno}: unknown key {key!r}")
        try:
            if key in ("target", "floor", "c0", "longthreshold"):
                (val,) = rest
                name = {"longthreshold": "long_threshold"}.get(key, key)
                fields[name] = int(val)
            elif key == "budget":
                kv = _kv(rest, lineno)
                fields["budget_alice"] = int(kv.pop("alice"))
                fields["budget_bob"] = int(kv.pop("bob"))
                if kv:
                    raise ScenarioFormatError(f"line {lineno}: unknown budget field")
            elif key == "init":
                kv = _kv(rest, lineno)
                fields["init_complexity"][from_text(kv["x"])] = int(kv["c"])
            elif key == "price":
                kv = _kv(rest, lineno)
                fields["prices"][(from_text(kv["x"]), int(kv["q"]))] = int(kv["b"])
            elif key == "counter":
                kv = _kv(rest, lineno)
                fields["init_counters"][(from_text(kv["x"]), int(kv["q"]))] = int(kv["v"])
            elif key == "longprice":
                kv = _kv(rest, lineno)
                fields["long_prices"][int(kv["q"])] = int(kv["b"])
            elif key == "referee":
                (path,) = rest
                p = Path(path)
                referee = load_referee(p if p.is_absolute() else Path(base_dir) / p)
        except ScenarioFormatError:
            raise
        except (KeyError, ValueError) as exc:
            raise ScenarioFormatError(f"line {lineno}: {exc}") from exc
    if referee is None:
        raise ScenarioFormatError("scenario has no referee line")
    if "target" not in fields:
        raise ScenarioFormatError("scenario has no target line")
    return GameConfig(referee=referee, **fields)


def format_scenario(cfg: GameConfig, referee_path: str) -> str:
    lines = [
        f"target {cfg.target}",
        f"floor {cfg.floor}",
        f"budget alice={cfg.budget_alice} bob={cfg.budget_bob}",
        f"c0 {cfg.c0}",
        f"longthreshold {cfg.long_threshold}",
    ]
    lines += [f"init x={to_text(x)} c={c}"
              for x, c in sorted(cfg.init_complexity.items(), key=lambda kv: shortlex_key(kv[0]))]
    lines += [f"price x={to_text(x)} q={q} b={b}"
              for (x, q), b in sorted(cfg.prices.items(), key=lambda kv: (shortlex_key(kv[0][0]), kv[0][1]))]
    lines += [f"counter x={to_text(x)} q={q} v={v}"
              for (x, q), v in sorted(cfg.init_counters.items(), key=lambda kv: (shortlex_key(kv[0][0]), kv[0][1]))]
    lines += [f"longprice q={q} b={b}" for q, b in sorted(cfg.long_prices.items())]
    lines.append(f"referee {referee_path}")
    return "\n".join(lines) + "\n"


def load_scenario(path: str | Path) -> GameConfig:
    p = Path(path)
    return parse_scenario(p.read_text(), p.parent)
