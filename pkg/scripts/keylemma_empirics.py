"""Key Lemma empirics on toy enumeration traces (reporting only).

For seeded random traces this computes the price table ``B(x, q)`` with
Algorithm A and measures how often Property 1 ("C(x) <= q implies
|T_n(x, q, w)| >= B") holds, where ``T`` is read off the same trace.  Toy
decompressors carry none of the lemma's guarantees, so rates far from 1 are
expected; the spec treats these numbers as empirics, not tests.

    python3 scripts/keylemma_empirics.py --traces 200 --seed 0
"""

from __future__ import annotations

import argparse
import math
import random

from diaggame.bitstr import encode_tuple, int_bits
from diaggame.keylemma import key_lemma_report, price_table
from diaggame.toy_universe import (
    EnumerationTrace,
    NoSimpleString,
    TraceEvent,
    complexity_table,
    past_volume,
    w_marker,
)

N_LEVEL = 4  # tower value n = a_2; the scale N = 2^n = 16
D = 2
Q_RANGE = range(N_LEVEL + 1 + D, N_LEVEL + 4 + D)  # q - d ranges over n+1 .. n+3
UNIVERSE = ("0", "1", "01", "10", "110")


def random_trace(rng: random.Random, length: int) -> EnumerationTrace:
    """Plain outputs mixed with extension tuples ``(x, bin(q - d), w, s)``."""
    events = []
    for step in range(1, length + 1):
        prog = "".join(rng.choice("01") for _ in range(rng.randint(0, 6)))
        if rng.random() < 0.5:
            out = "".join(rng.choice("01") for _ in range(rng.randint(0, 3)))
        else:
            parts = [rng.choice(UNIVERSE), int_bits(rng.choice(Q_RANGE) - D),
                     rng.choice(("0", "1", "")), int_bits(rng.randint(0, 15))]
            out = encode_tuple(parts)
        events.append(TraceEvent(step, prog, out))
    return EnumerationTrace(tuple(events))


def rows_for(trace: EnumerationTrace) -> list[tuple[float, int, int, int]]:
    try:
        w = w_marker(trace, N_LEVEL).w
    except NoSimpleString:
        return []
    table = price_table(N_LEVEL, w, trace, UNIVERSE, Q_RANGE, D,
                        delta_terms=lambda qt: (0, 0))
    complexity = complexity_table(trace)
    scale = 1 << N_LEVEL
    rows = []
    for (x, q), b in sorted(table.items()):
        qq = q - D
        size = past_volume(trace, (x, int_bits(qq), w), scale, len(trace))
        rows.append((complexity.get(x, math.inf), qq, size, b))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--traces", type=int, default=200)
    ap.add_argument("--length", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    rows = []
    for _ in range(args.traces):
        rows.extend(rows_for(random_trace(rng, args.length)))
    prices = sorted({b for *_, b in rows})
    rep = key_lemma_report(rows)
    print(f"traces={args.traces} rows={len(rows)} prices_seen={prices}")
    print(f"property1 rows={rep['rows']} rate={rep['property1_rate']:.3f}")
    zero = sum(1 for *_, b in rows if b == 0)
    print(f"B=0 rows={zero} B=Num rows={len(rows) - zero}")


if __name__ == "__main__":
    main()
