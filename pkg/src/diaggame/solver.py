"""Exact winner computation for the Local Game.

Search runs over canonical states: counters restricted to priced pairs on
queried strings and capped at their price, long strings reduced to per-level
counts, and the two remaining budgets.  Budgets strictly decrease along every
move, so the game graph is acyclic and a write-once transposition table of
final win/loss values suffices.
"""

from __future__ import annotations

import hashlib
import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field, replace

from .local_game import (
    LONG,
    GameConfig,
    GameState,
    Move,
    Player,
    Verdict,
    _increment,
    active_player,
    initial_state,
    legal_bundles,
    run_referee,
    virtual_complexity,
)

DEFAULT_MAX_STATES = 10**7

__all__ = [
    "CanonicalState", "SolveResult", "StolenStrategy", "Solver", "canonicalize",
    "legal_bundles", "solve", "steal", "play_stolen", "play_strategy",
    "verify_strategy", "StateCapExceeded", "NotBobWin", "StrategyViolation",
    "random_adversary", "first_move_adversary", "dummy_string", "virtual_profile",
]


class StateCapExceeded(RuntimeError):
    pass


class NotBobWin(ValueError):
    pass


class StrategyViolation(AssertionError):
    def __init__(self, message: str, trace: Sequence[str] = ()):
        super().__init__(message + ("\n" + "\n".join(trace) if trace else ""))
        self.trace = list(trace)


@dataclass(frozen=True)
class CanonicalState:
    counters: tuple[tuple[str, int, int], ...]
    long: tuple[tuple[int, int, int], ...]
    rem_alice: int
    rem_bob: int

    def digest(self) -> str:
        """Hash that is stable across processes (unlike ``hash``)."""
        return hashlib.blake2b(repr(self).encode(), digest_size=8).hexdigest()


def canonicalize(cfg: GameConfig, st: GameState) -> CanonicalState:
    counters = []
    for x in cfg.support_strings:
        for q in cfg.levels_of(x):
            b = cfg.prices[(x, q)]
            counters.append((x, q, min(st.counters.get((x, q), 0), b)))
    made: dict[int, int] = {}
    rem: dict[int, int] = {}
    for q, units in st.long_counts.items():
        made[q] = made.get(q, 0) + units // cfg.long_price(q)
        rem[q] = units % cfg.long_price(q)
    # named long strings lose their identity: only the level they crossed counts
    named_long = {x for (x, _) in cfg.prices if cfg.is_long(x)}
    for x in named_long:
        for q in cfg.levels_of(x):
            if st.counters.get((x, q), 0) >= cfg.prices[(x, q)]:
                made[q] = made.get(q, 0) + 1
                break
    long = tuple(sorted((q, made.get(q, 0), rem.get(q, 0))
                        for q in made.keys() | rem.keys()
                        if made.get(q, 0) or rem.get(q, 0)))
    return CanonicalState(tuple(counters), long, st.rem_alice, st.rem_bob)


@dataclass
class SolveResult:
    winner: Player
    strategy: dict[CanonicalState, Move]
    states_explored: int
    initial_output: int


@dataclass
class StolenStrategy:
    base: SolveResult
    dummy_level: int
    adjusted_target: int
    dummy: str
    adjusted: GameConfig = field(repr=False)


class Solver:
    """Memoized minimax over canonical states of one game configuration."""

    def __init__(self, cfg: GameConfig, max_states: int = DEFAULT_MAX_STATES):
        self.cfg = cfg
        self.max_states = max_states
        # canonical state -> (active player wins, winning move or None)
        self.table: dict[CanonicalState, tuple[bool, Move | None]] = {}

    @property
    def states_explored(self) -> int:
        return len(self.table)

    def _store(self, key: CanonicalState, value: tuple[bool, Move | None]) -> None:
        if key not in self.table:
            if len(self.table) >= self.max_states:
                raise StateCapExceeded(f"more than {self.max_states} canonical states")
            self.table[key] = value

    def value(self, st: GameState) -> bool:
        """Whether the player to move at ``st`` has a winning strategy."""
        cfg = self.cfg
        root = canonicalize(cfg, st)
        if root in self.table:
            return self.table[root][0]
        # frame: state, key, pending moves (reversed), player to move
        stack = [[st, root, None, None]]
        while stack:
            frame = stack[-1]
            cur, key, moves, mover = frame
            if moves is None:
                if key in self.table:
                    stack.pop()
                    continue
                moves = legal_bundles(cfg, cur)
                moves.reverse()
                frame[2] = moves
                frame[3] = mover = active_player(run_referee(cfg, cur), cfg.target)
            descended = False
            while moves:
                mv = moves[-1]
                child = _increment(cfg, cur, mv)
                ckey = canonicalize(cfg, child)
                entry = self.table.get(ckey)
                if entry is None:
                    stack.append([child, ckey, None, None])
                    descended = True
                    break
                moves.pop()
                # a changed output can leave the same player dissatisfied
                child_mover = active_player(run_referee(cfg, child), cfg.target)
                if entry[0] == (child_mover is mover):
                    self._store(key, (True, mv))
                    break
            if descended:
                continue
            if key not in self.table:
                self._store(key, (False, None))
            stack.pop()
        return self.table[root][0]

    def best_move(self, st: GameState) -> Move | None:
        if not self.value(st):
            return None
        return self.table[canonicalize(self.cfg, st)][1]

    def solve(self, st: GameState | None = None) -> SolveResult:
        cfg = self.cfg
        st = initial_state(cfg) if st is None else st
        mover = active_player(run_referee(cfg, st), cfg.target)
        winner = mover if self.value(st) else mover.other
        strategy: dict[CanonicalState, Move] = {}
        seen = set()
        frontier = [st]
        while frontier:
            cur = frontier.pop()
            key = canonicalize(cfg, cur)
            if key in seen:
                continue
            seen.add(key)
            if active_player(run_referee(cfg, cur), cfg.target) is winner:
                mv = self.best_move(cur)
                if mv is None:
                    continue
                strategy[key] = mv
                frontier.append(_increment(cfg, cur, mv))
            else:
                frontier.extend(_increment(cfg, cur, mv) for mv in legal_bundles(cfg, cur))
        return SolveResult(winner, strategy, self.states_explored, run_referee(cfg, st))


def solve(cfg: GameConfig, max_states: int = DEFAULT_MAX_STATES, *, use_cache: bool = True) -> SolveResult:
    if use_cache:
        return Solver(cfg, max_states).solve()
    st = initial_state(cfg)
    counter = [0]

    def mover_of(cur: GameState) -> Player:
        return active_player(run_referee(cfg, cur), cfg.target)

    def wins(cur: GameState) -> bool:
        counter[0] += 1
        if counter[0] > max_states:
            raise StateCapExceeded(f"more than {max_states} nodes")
        me = mover_of(cur)
        for mv in legal_bundles(cfg, cur):
            child = _increment(cfg, cur, mv)
            if wins(child) == (mover_of(child) is me):
                return True
        return False

    mover = mover_of(st)
    winner = mover if wins(st) else mover.other
    return SolveResult(winner, {}, counter[0], run_referee(cfg, st))


# -- playing strategies ------------------------------------------------------------

Adversary = Callable[[GameConfig, GameState, list[Move]], Move]


def random_adversary(seed: int) -> Adversary:
    rng = random.Random(seed)

    def choose(cfg: GameConfig, st: GameState, moves: list[Move]) -> Move:
        return rng.choice(moves)

    return choose


def first_move_adversary(cfg: GameConfig, st: GameState, moves: list[Move]) -> Move:
    return moves[0]


def _trace_line(cfg: GameConfig, st: GameState, mv: Move, out: int) -> str:
    return f"turn={st.turn} player={mv.player.value} cost={mv.cost} inc={mv.format()} out={out}"


def play_strategy(
    cfg: GameConfig,
    result: SolveResult,
    adversary: Adversary = first_move_adversary,
    on_state: Callable[[GameState], None] | None = None,
) -> tuple[Verdict, list[str], GameState]:
    """Play ``result``'s strategy against ``adversary`` until someone is stuck.

    Raises :class:`StrategyViolation` when the strategy has no entry for a
    reached state or prescribes an unavailable move.
    """
    st = initial_state(cfg)
    lines: list[str] = []
    while True:
        if on_state is not None:
            on_state(st)
        out = run_referee(cfg, st)
        mover = active_player(out, cfg.target)
        moves = legal_bundles(cfg, st)
        if not moves:
            return Verdict(mover.other, out, st.turn), lines, st
        if mover is result.winner:
            key = canonicalize(cfg, st)
            mv = result.strategy.get(key)
            if mv is None:
                raise StrategyViolation(f"no strategy entry for {key}", lines)
            if mv not in moves:
                raise StrategyViolation(f"strategy move {mv.format()} is not legal", lines)
        else:
            mv = adversary(cfg, st, moves)
        nxt = _increment(cfg, st, mv)
        lines.append(_trace_line(cfg, st, mv, run_referee(cfg, nxt)))
        st = nxt


def verify_strategy(cfg: GameConfig, result: SolveResult, adversary_seeds: Iterable[int]) -> bool:
    for seed in adversary_seeds:
        verdict, lines, _ = play_strategy(cfg, result, random_adversary(seed))
        if verdict.winner is not result.winner:
            raise StrategyViolation(
                f"seed {seed}: strategy for {result.winner.name} lost", lines)
    return True


# -- strategy stealing -----------------------------------------------------------


def dummy_string(cfg: GameConfig, index: int = 0) -> str:
    """A long string no referee of ``cfg`` can query; distinct per index."""
    return "1" * (cfg.long_threshold + 1) + format(index, "b")


def steal(cfg: GameConfig, base: SolveResult) -> StolenStrategy:
    """Turn a Bob win into an Alice win by making one unqueried long string
    ``m``-simple (``m = floor - 1``) and raising the target by one."""
    if base.winner is not Player.BOB:
        raise NotBobWin("strategy stealing needs a Bob win")
    m = cfg.floor - 1
    dummy = dummy_string(cfg, 0)
    adjusted = replace(
        cfg,
        target=cfg.target + 1,
        init_complexity={**cfg.init_complexity, dummy: m},
        budget_alice=cfg.budget_bob,
        budget_bob=cfg.budget_alice,
    )
    return StolenStrategy(base, m, cfg.target + 1, dummy, adjusted)


def play_stolen(
    cfg: GameConfig,
    stolen: StolenStrategy,
    adversary: Adversary = first_move_adversary,
    on_state: Callable[[GameState], None] | None = None,
) -> tuple[Verdict, list[str], GameState]:
    """Alice plays the base game's Bob strategy in the adjusted instance.

    Turns follow the base game's dissatisfaction rule with the roles
    swapped; the opponent's choices are base-Alice bundles.  Returns the
    verdict judged against the adjusted target.
    """
    base = stolen.base
    adj = stolen.adjusted
    st = initial_state(cfg)
    fresh = 1
    used_long = {stolen.dummy}
    lines: list[str] = []
    while True:
        if on_state is not None:
            on_state(st)
        out = run_referee(cfg, st)
        if run_referee(adj, st) != out:
            raise StrategyViolation("the dummy string changed the referee output", lines)
        mover = active_player(out, cfg.target)
        moves = legal_bundles(cfg, st)
        if not moves:
            winner = Player.ALICE if out != stolen.adjusted_target else Player.BOB
            return Verdict(winner, out, st.turn), lines, st
        if mover is Player.BOB:
            key = canonicalize(cfg, st)
            mv = base.strategy.get(key)
            if mv is None or mv not in moves:
                raise StrategyViolation(f"stolen strategy has no legal move at {key}", lines)
            for x, _, _ in mv.increments:
                if x == LONG:
                    z = dummy_string(cfg, fresh)
                    fresh += 1
                    if z in used_long:
                        raise StrategyViolation("long-string allocation collided", lines)
                    used_long.add(z)
            shown = Move(Player.ALICE, mv.increments)
        else:
            mv = adversary(cfg, st, moves)
            shown = Move(Player.BOB, mv.increments)
        nxt = _increment(cfg, st, mv)
        lines.append(_trace_line(cfg, st, shown, run_referee(cfg, nxt)))
        st = nxt


def virtual_profile(cfg: GameConfig, st: GameState) -> dict[str, int]:
    strings = set(cfg.support_strings) | {x for x, _ in cfg.prices}
    return {x: virtual_complexity(cfg, st, x) for x in strings}
