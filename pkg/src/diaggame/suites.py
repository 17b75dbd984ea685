"""Seeded generators for the experiment suites.

* :func:`random_small_game` — suite 1: at most two priced short strings,
  budgets at most 3, prices at most 2, referee depth at most 2, plus optional
  priced long strings (never queried) for the relabeling check.
* :func:`random_event_stream` — suite 6: level-1 base-machine event streams
  mixing candidates, support-string improvements, tuple extensions and noise.
"""

from __future__ import annotations

import random
from dataclasses import replace

from .bitstr import encode_tuple, int_bits
from .fighter import BobEvent, FighterConfig
from .local_game import GameConfig, initial_state, run_referee
from .referee import Leaf, Query, RefereeProgram

SHORT_POOL = ("0", "1", "00", "01", "10", "11")
# level-1 support strings: |x| >= 5 keeps C_U(x) = |x| + c0 + d above the floor m + 1 = 10
STREAM_POOL = ("000000", "010101", "1100110", "10101010", "111000111", "0110100110")
LONG_THRESHOLD = 8


def long_name(index: int, threshold: int = LONG_THRESHOLD) -> str:
    return "0" * (threshold + 1) + int_bits(index)


def random_small_game(seed: int, *, with_long: bool = True) -> GameConfig:
    rng = random.Random(seed)
    strings = rng.sample(SHORT_POOL, rng.randint(1, 2))
    floor = rng.randint(1, 3)
    init_c, prices, counters = {}, {}, {}
    for x in strings:
        c = rng.randint(floor + 1, floor + 4)
        init_c[x] = c
        for q in sorted(rng.sample(range(floor, c), min(rng.randint(1, 2), c - floor))):
            b = rng.randint(1, 2)
            prices[(x, q)] = b
            if rng.random() < 0.25:
                counters[(x, q)] = rng.randint(0, b - 1)
    long_prices = {}
    if with_long and rng.random() < 0.5:
        for i in range(rng.randint(1, 2)):
            z = long_name(i)
            prices[(z, rng.randint(floor, floor + 3))] = rng.randint(1, 2)
        long_prices = {floor: rng.randint(1, 2)}
    # thresholds where a priced increment can flip the answer; constant referees are rare
    priced_levels = sorted({q for (x, q) in prices if x in init_c})
    depth = 0 if rng.random() < 0.1 else rng.randint(1, 2)

    def build(d: int):
        if d == 0:
            return Leaf(rng.randint(0, 3))
        x = rng.choice(strings)
        k = rng.choice(priced_levels) if rng.random() < 0.8 else rng.randint(floor, init_c[x])
        return Query(x, k, build(d - 1), build(d - 1))

    referee = RefereeProgram(build(depth), depth, LONG_THRESHOLD)
    cfg = GameConfig(
        referee=referee,
        target=0,
        init_complexity=init_c,
        prices=prices,
        init_counters=counters,
        budget_alice=rng.choice((0, 1, 2, 2, 3, 3)),
        budget_bob=rng.choice((0, 1, 2, 2, 3, 3)),
        floor=floor,
        long_threshold=LONG_THRESHOLD,
        long_prices=long_prices,
    )
    # aim the target at the initial output half the time so both players get to move first
    out = run_referee(cfg, initial_state(cfg))
    target = out if rng.random() < 0.5 else rng.randint(0, 3)
    return replace(cfg, target=target)


def relabel_long(cfg: GameConfig, offset: int) -> GameConfig:
    """Rename every priced long string (a permutation of long identities)."""
    longs = sorted({x for x, _ in cfg.prices if cfg.is_long(x)})
    if not longs:
        return cfg
    rename = {x: "1" * (cfg.long_threshold + 1) + int_bits(offset + i)
              for i, x in enumerate(reversed(longs))}
    return replace(
        cfg,
        prices={(rename.get(x, x), q): b for (x, q), b in cfg.prices.items()},
        init_counters={(rename.get(x, x), q): v for (x, q), v in cfg.init_counters.items()},
        init_complexity={rename.get(x, x): c for x, c in cfg.init_complexity.items()},
    )


def stream_referee(seed: int) -> RefereeProgram:
    """Level-1 referee over :data:`STREAM_POOL` with outputs near the toy ``N_9``.

    ``N_9`` starts at 15 (all strings of length at most 3) and grows with
    every candidate, so leaves are drawn from 14..18.
    """
    rng = random.Random(seed)
    strings = rng.sample(STREAM_POOL, 2)

    def build(depth: int):
        if depth == 0 or rng.random() < 0.2:
            return Leaf(rng.randint(14, 18))
        return Query(rng.choice(strings), rng.randint(10, 16), build(depth - 1), build(depth - 1))

    return RefereeProgram(build(rng.randint(1, 2)), 2, max(len(x) for x in STREAM_POOL))


def stream_config(seed: int, d: int = 5) -> FighterConfig:
    return FighterConfig(d=d, seed=seed, referees={1: stream_referee(seed)})


def random_event_stream(seed: int, length: int | None = None) -> list[BobEvent]:
    """Level-1 stream (``n = 4``, zone ``(2, 16]``)."""
    rng = random.Random(seed)
    length = rng.randint(0, 25) if length is None else length
    candidates = ["".join(rng.choice("01") for _ in range(rng.randint(4, 6))) for _ in range(3)]
    events = []
    used: dict[int, int] = {}
    for step in range(1, length + 1):
        kind = rng.random()
        if kind < 0.2:
            x, q = rng.choice(candidates), rng.randint(3, 4)
        elif kind < 0.45:
            x, q = rng.choice(STREAM_POOL), rng.randint(1, 16)
        elif kind < 0.75:
            parts = [rng.choice(STREAM_POOL), int_bits(rng.randint(5, 11)),
                     rng.choice(candidates), int_bits(rng.randint(0, 3))]
            x, q = encode_tuple(parts), rng.randint(10, 18)
        else:
            x = "".join(rng.choice("01") for _ in range(rng.randint(1, 8)))
            q = rng.randint(1, 20)
        while used.get(q, 0) >= 2**q:  # at most 2^q descriptions of length q
            q += 1
        used[q] = used.get(q, 0) + 1
        events.append(BobEvent(step, x, q))
    return events
