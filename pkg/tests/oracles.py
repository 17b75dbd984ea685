"""Independent brute-force oracles used by the tests."""

from __future__ import annotations

import itertools
from functools import lru_cache

from diaggame.local_game import GameConfig, Player
from diaggame.referee import evaluate


def naive_winner(cfg: GameConfig) -> Player:
    """Exhaustive game-tree search over raw states.

    No canonicalization (counters are never capped), no bundle minimization
    (any increment vector that changes the output is a move, including
    partial and overshooting increments).  Long strings are never queried,
    so they cannot change the output and are left out.
    """
    pairs = sorted(p for p in cfg.prices if not cfg.is_long(p[0]))

    def vc(counters, x):
        best = cfg.init_complexity.get(x, len(x) + cfg.c0)
        for (y, q), v in zip(pairs, counters):
            if y == x and v >= cfg.prices[(y, q)] and q < best:
                best = q
        return best

    def output(counters):
        return evaluate(cfg.referee, lambda x, k: vc(counters, x) <= k)

    @lru_cache(maxsize=None)
    def wins(counters, rem_a, rem_b):
        out = output(counters)
        player = Player.ALICE if out == cfg.target else Player.BOB
        budget = rem_a if player is Player.ALICE else rem_b
        for deltas in itertools.product(range(budget + 1), repeat=len(pairs)):
            cost = sum(deltas)
            if cost == 0 or cost > budget:
                continue
            nxt = tuple(c + d for c, d in zip(counters, deltas))
            if output(nxt) == out:
                continue
            if player is Player.ALICE:
                child = wins(nxt, rem_a - cost, rem_b)
            else:
                child = wins(nxt, rem_a, rem_b - cost)
            child_player = Player.ALICE if output(nxt) == cfg.target else Player.BOB
            # the child's value is for its own mover, who may still be us
            if child == (child_player is player):
                return True
        return False

    start = tuple(cfg.init_counters.get(p, 0) for p in pairs)
    out = output(start)
    mover = Player.ALICE if out == cfg.target else Player.BOB
    return mover if wins(start, cfg.budget_alice, cfg.budget_bob) else mover.other


def all_adversary_plays(play, cfg, strategy, limit=100_000):
    """Replay ``play(cfg, strategy, adversary)`` once per adversary choice
    sequence (depth-first over the opponent's move tree); yields each result.

    Raises ``RuntimeError`` if the tree has more than ``limit`` leaves.
    """
    stack = [()]
    count = 0
    while stack:
        prefix = stack.pop()
        branching = []

        def adversary(cfg_, st, moves, prefix=prefix, branching=branching):
            i = len(branching)
            branching.append(len(moves))
            return moves[prefix[i] if i < len(prefix) else 0]

        yield play(cfg, strategy, adversary)
        count += 1
        if count > limit:
            raise RuntimeError("adversary tree too large")
        for j in range(len(prefix), len(branching)):
            base = prefix + (0,) * (j - len(prefix))
            stack.extend(base + (alt,) for alt in range(1, branching[j]))
