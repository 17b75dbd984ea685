"""Exact ``N_m`` from the monotone predicate "at least k strings of complexity <= m"."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from .toy_universe import ToyDecompressor, simple_count

ThresholdPredicate = Callable[[int, int], bool]


class NonMonotonePredicate(ValueError):
    pass


@dataclass(frozen=True)
class CountResult:
    count: int
    queries: int


def count_simple(pred: ThresholdPredicate, m: int) -> CountResult:
    """Binary search for the largest ``k`` in ``[0, 2^(m+1)]`` with ``pred(m, k)``.

    Uses at most ``m + 2`` predicate calls.  The search only ever probes points
    consistent with earlier answers, so the one detectable violation is
    ``pred(m, 2^(m+1))`` being true.  An all-false predicate yields 0.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    top = 2 ** (m + 1)
    lo, hi, ans = 0, top, 0
    queries = 0
    while lo <= hi:
        mid = (lo + hi) // 2
        queries += 1
        if pred(m, mid):
            if mid == top:
                raise NonMonotonePredicate(f"pred({m}, {top}) true beyond the natural bound")
            ans = mid
            lo = mid + 1
        else:
            hi = mid - 1
    return CountResult(ans, queries)


def predicate_from_decompressor(dec: ToyDecompressor) -> ThresholdPredicate:
    cache: dict[int, int] = {}

    def pred(m: int, k: int) -> bool:
        if m not in cache:
            cache[m] = simple_count(dec, m)
        return cache[m] >= k

    return pred


def counting_predicate(pred: ThresholdPredicate) -> tuple[ThresholdPredicate, list[tuple[int, int]]]:
    """Wrap ``pred`` so every call is logged; returns the wrapper and the log."""
    log: list[tuple[int, int]] = []

    def wrapped(m: int, k: int) -> bool:
        log.append((m, k))
        return pred(m, k)

    return wrapped, log
