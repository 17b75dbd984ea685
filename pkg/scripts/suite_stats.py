"""Descriptive statistics for the random suites used by the acceptance tests.

Suite 1: small Local Games (winner split, states explored, game length).
Suite 6: level-1 Fighter event streams (directive mix, utilization).

    python3 scripts/suite_stats.py --games 1000 --streams 1000
"""

from __future__ import annotations

import argparse
import statistics
from collections import Counter

from diaggame.fighter import run_simulation
from diaggame.local_game import initial_state, legal_bundles
from diaggame.solver import play_strategy, solve
from diaggame.suites import random_event_stream, random_small_game, stream_config


def suite1(games: int) -> None:
    winners, states, lengths = Counter(), [], []
    opening = 0
    for seed in range(games):
        cfg = random_small_game(seed)
        res = solve(cfg)
        winners[res.winner.name] += 1
        states.append(res.states_explored)
        _, lines, _ = play_strategy(cfg, res)
        lengths.append(len(lines))
        opening += bool(legal_bundles(cfg, initial_state(cfg)))
    print(f"[suite 1] games={games} winners={dict(sorted(winners.items()))} "
          f"opening_moves={opening}")
    print(f"  states mean={statistics.mean(states):.1f} max={max(states)}; "
          f"turns mean={statistics.mean(lengths):.2f} max={max(lengths)}")


def suite6(streams: int) -> None:
    kinds, util = Counter(), []
    diagonalized = 0
    for seed in range(streams):
        rep = run_simulation(random_event_stream(seed), stream_config(seed))
        kinds.update(d.kind for d in rep.directives)
        util.extend(float(u) for u in rep.resources.utilization.values())
        diagonalized += sum(bool(lv.diagonalized) for lv in rep.levels)
    print(f"[suite 6] streams={streams} directives={dict(sorted(kinds.items()))} "
          f"diagonalized_levels={diagonalized}")
    if util:
        print(f"  input-length utilization max={max(util):.4f} mean={statistics.mean(util):.4f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--games", type=int, default=1000)
    ap.add_argument("--streams", type=int, default=1000)
    args = ap.parse_args()
    suite1(args.games)
    suite6(args.streams)


if __name__ == "__main__":
    main()
