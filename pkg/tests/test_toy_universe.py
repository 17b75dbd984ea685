import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diaggame.bitstr import encode_tuple
from diaggame.toy_universe import (
    EnumerationTrace,
    NoSimpleString,
    ToyDecompressor,
    TraceEvent,
    complexity_of,
    complexity_table,
    format_trace,
    oracle_F,
    parse_trace,
    past_volume,
    rest_count,
    simple_count,
    time_bounded_complexity,
    w_marker,
)
from strategies import toy_tables

TABLE = ToyDecompressor({"": "00", "0": "01", "1": "01", "00": "11"})


def trace(*items):
    return EnumerationTrace(tuple(TraceEvent(i + 1, p, o) for i, (p, o) in enumerate(items)))


def test_complexity_of_examples():
    assert complexity_of(TABLE, "01") == 1
    assert math.isinf(complexity_of(TABLE, "10"))
    assert complexity_of(TABLE, "00") == 0


def test_simple_count_examples():
    assert simple_count(TABLE, 1) == 2
    assert simple_count(TABLE, 2) == 3
    assert simple_count(ToyDecompressor(), 5) == 0


def test_w_marker_examples():
    t = trace(("00", "11"), ("0", "01"), ("", "00"))
    res = w_marker(t, 1)
    assert (res.w, res.index) == ("00", 3)
    assert w_marker(trace(("", "1")), 0).w == "1"
    with pytest.raises(NoSimpleString):
        w_marker(trace(("000", "1"), ("001", "0")), 1)


def test_w_marker_skips_repeat_entries():
    # the last event re-describes an old member of the class: not a new entry
    t = trace(("0", "1"), ("1", "0"), ("", "1"))
    assert w_marker(t, 1).index == 2


def test_rest_count_examples():
    assert rest_count(trace(("00", "11"), ("0", "01"), ("", "00")), 1, 2) == 0
    assert rest_count(trace(("", "0"), ("00", "1"), ("01", "10")), 0, 2) == 2
    assert rest_count(trace(("0", "1"), ("", "0")), 0, 1) == 0


def test_past_volume_examples():
    y = ("01", "1")
    t1 = encode_tuple(["01", "1", "0"])
    t2 = encode_tuple(["01", "1", "11"])
    t = trace(("0", t1), ("1", "00"), ("00", t2), ("01", t1), ("10", encode_tuple(["01", "1", "1"])))
    assert past_volume(t, y, 2, 0) == 0
    assert past_volume(t, y, 2, 4) == 2  # t1 counted once
    assert past_volume(t, y, 0, 5) == 0


def test_time_bounded_examples():
    dec = ToyDecompressor({"01": "1"}, costs={"01": 5})
    assert time_bounded_complexity(dec, "1", "", 4, 5) == 2
    assert math.isinf(time_bounded_complexity(dec, "1", "", 4, 4))
    dec2 = ToyDecompressor({"": "0"})
    assert time_bounded_complexity(dec2, "0", "", 0, 1) == 0


def test_oracle_F_examples():
    F = oracle_F(TABLE)
    assert F("01", 1) and not F("01", 0) and not F("10", 99)


@given(toy_tables())
def test_incremental_table_matches_complexity_of(table):
    dec = ToyDecompressor(table)
    t = EnumerationTrace(tuple(TraceEvent(i + 1, p, o) for i, (p, o) in enumerate(table.items())))
    ct = complexity_table(t)
    for out in set(table.values()):
        assert ct[out] == complexity_of(dec, out)


@given(toy_tables(), st.integers(0, 8))
def test_simple_count_bound(table, m):
    assert simple_count(ToyDecompressor(table), m) < 2 ** (m + 1)


@given(toy_tables(max_entries=20))
def test_prefix_monotonicity(table):
    events = tuple(TraceEvent(i + 1, p, o) for i, (p, o) in enumerate(table.items()))
    prev = {}
    for k in range(len(events) + 1):
        cur = complexity_table(EnumerationTrace(events[:k]))
        for x, c in prev.items():
            assert cur[x] <= c
        prev = cur


@given(toy_tables(max_entries=20), st.integers(0, 3), st.integers(1, 4))
def test_rest_count_bounded_by_simple_count(table, n, extra):
    events = tuple(TraceEvent(i + 1, p, o) for i, (p, o) in enumerate(table.items()))
    t = EnumerationTrace(events)
    try:
        first = w_marker(t, n)
    except NoSimpleString:
        return
    assert w_marker(t, n) == first
    u = n + extra
    assert rest_count(t, n, u) <= simple_count(ToyDecompressor(table), u)


@given(toy_tables(max_entries=20), st.integers(0, 6))
def test_time_bounded_with_large_T_equals_complexity(table, max_len):
    costs = {p: 1 + len(p) for p in table}
    dec = ToyDecompressor(table, costs)
    big_t = max(costs.values(), default=1)
    for out in set(table.values()):
        expected = min((len(p) for p, o in table.items() if o == out and len(p) <= max_len),
                       default=math.inf)
        assert time_bounded_complexity(dec, out, "", max_len, big_t) == expected


def test_trace_file_round_trip():
    t = EnumerationTrace((TraceEvent(1, "", "01", 3), TraceEvent(4, "10", "", 1)))
    assert parse_trace(format_trace(t)) == t


def test_trace_steps_must_increase():
    with pytest.raises(ValueError):
        EnumerationTrace((TraceEvent(2, "0", "1"), TraceEvent(2, "1", "1")))
