"""Finite toy decompressors and the objects computed from their enumeration traces.

A toy decompressor is an explicit table of programs.  Every entry carries a
declared step cost so that time-bounded searches have something to cut off.
The enumeration order is never derived from the table: it is supplied as an
:class:`EnumerationTrace`, because markers and tail counts depend on it.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .bitstr import check_bits, from_text, to_text, try_decode

INFINITE = math.inf


class NoSimpleString(LookupError):
    """No trace event enters the complexity class in question."""


class TraceFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ToyDecompressor:
    """Finite partial map from programs to outputs.

    ``conditional`` maps ``(program, condition)`` to an output; the
    unconditional table answers the empty condition.  Costs default to 1.
    """

    table: Mapping[str, str] = field(default_factory=dict)
    costs: Mapping[str, int] = field(default_factory=dict)
    conditional: Mapping[tuple[str, str], str] = field(default_factory=dict)
    conditional_costs: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for p, x in self.table.items():
            check_bits(p)
            check_bits(x)
        for (p, y), x in self.conditional.items():
            check_bits(p)
            check_bits(y)
            check_bits(x)
        for c in (*self.costs.values(), *self.conditional_costs.values()):
            if c < 1:
                raise ValueError("step costs must be positive")

    def run(self, program: str, condition: str = "") -> tuple[str, int] | None:
        """Return ``(output, cost)`` or ``None`` when the program diverges."""
        key = (program, condition)
        if key in self.conditional:
            return self.conditional[key], self.conditional_costs.get(key, 1)
        if condition == "" and program in self.table:
            return self.table[program], self.costs.get(program, 1)
        return None

    def programs(self, condition: str = "") -> list[str]:
        progs = {p for (p, y) in self.conditional if y == condition}
        if condition == "":
            progs.update(self.table)
        return sorted(progs, key=lambda p: (len(p), p))

    def is_prefix_free(self, condition: str = "") -> bool:
        progs = self.programs(condition)
        for a in progs:
            for b in progs:
                if a != b and b.startswith(a):
                    return False
        return True

    @classmethod
    def from_trace(cls, trace: EnumerationTrace) -> ToyDecompressor:
        table: dict[str, str] = {}
        costs: dict[str, int] = {}
        for ev in trace.events:
            if ev.program in table and table[ev.program] != ev.output:
                raise TraceFormatError(f"program {ev.program!r} has two outputs")
            table[ev.program] = ev.output
            costs[ev.program] = ev.cost
        return cls(table=table, costs=costs)


@dataclass(frozen=True)
class TraceEvent:
    step: int
    program: str
    output: str
    cost: int = 1


@dataclass(frozen=True)
class EnumerationTrace:
    events: tuple[TraceEvent, ...] = ()

    def __post_init__(self) -> None:
        last = 0
        for ev in self.events:
            if ev.step <= last:
                raise TraceFormatError("trace steps must be strictly increasing")
            last = ev.step
            check_bits(ev.program)
            check_bits(ev.output)

    @classmethod
    def of(cls, items: Iterable[tuple[int, str, str] | tuple[int, str, str, int]]):
        return cls(tuple(TraceEvent(*it) for it in items))

    def __len__(self) -> int:
        return len(self.events)

    def prefix(self, count: int) -> EnumerationTrace:
        return EnumerationTrace(self.events[:count])


@dataclass(frozen=True)
class MarkerResult:
    w: str
    index: int  # 1-based position of the marker event in the trace
    n: int


def complexity_of(dec: ToyDecompressor, x: str) -> float:
    """Shortest program length for ``x`` (``math.inf`` when there is none)."""
    best = INFINITE
    for p, out in dec.table.items():
        if out == x and len(p) < best:
            best = len(p)
    return best


def complexity_table(source: ToyDecompressor | EnumerationTrace) -> dict[str, int]:
    levels: dict[str, int] = {}
    if isinstance(source, EnumerationTrace):
        pairs = ((ev.program, ev.output) for ev in source.events)
    else:
        pairs = source.table.items()
    for p, x in pairs:
        if x not in levels or len(p) < levels[x]:
            levels[x] = len(p)
    return levels


def simple_count(dec: ToyDecompressor, m: int) -> int:
    if m < 0:
        raise ValueError("m must be non-negative")
    return sum(1 for c in complexity_table(dec).values() if c <= m)


def oracle_F(dec: ToyDecompressor) -> Callable[[str, int], bool]:
    levels = complexity_table(dec)

    def member(x: str, k: int) -> bool:
        return x in levels and levels[x] <= k

    return member


def entries(trace: EnumerationTrace, threshold: int) -> list[int]:
    """1-based positions of events at which an output first reaches ``<= threshold``."""
    seen: set[str] = set()
    found = []
    for pos, ev in enumerate(trace.events, start=1):
        if len(ev.program) <= threshold and ev.output not in seen:
            seen.add(ev.output)
            found.append(pos)
    return found


def w_marker(trace: EnumerationTrace, n: int) -> MarkerResult:
    """Last string of the trace to enter the class of complexity at most ``n``."""
    found = entries(trace, n)
    if not found:
        raise NoSimpleString(f"no event with program length <= {n}")
    pos = found[-1]
    return MarkerResult(w=trace.events[pos - 1].output, index=pos, n=n)


def rest_count(trace: EnumerationTrace, n: int, u: int) -> int:
    if not n < u:
        raise ValueError("rest_count needs n < u")
    marker = w_marker(trace, n)
    return sum(1 for pos in entries(trace, u) if pos > marker.index)


def past_volume(
    trace: EnumerationTrace, y: Sequence[str], threshold: int, marker_index: int
) -> int:
    """Number of ``s`` whose tuple ``y + [s]`` reached complexity ``<= threshold``
    at or before position ``marker_index``."""
    if not 0 <= marker_index <= len(trace):
        raise ValueError("marker index outside trace")
    arity = len(y) + 1
    prefix = list(y)
    found: set[str] = set()
    for ev in trace.events[:marker_index]:
        if len(ev.program) > threshold:
            continue
        parts = try_decode(ev.output, arity)
        if parts is not None and parts[:-1] == prefix:
            found.add(parts[-1])
    return len(found)


def time_bounded_complexity(
    dec: ToyDecompressor, target: str, condition: str, max_len: int, T: int
) -> float:
    """Shortest program of length ``<= max_len`` that outputs ``target`` on
    ``condition`` within ``T`` steps."""
    if T < 1 or max_len < 0:
        raise ValueError("need T >= 1 and max_len >= 0")
    best = INFINITE
    for p in dec.programs(condition):
        if len(p) > max_len or len(p) >= best:
            continue
        res = dec.run(p, condition)
        if res is not None and res[0] == target and res[1] <= T:
            best = len(p)
    return best


# -- trace files -------------------------------------------------------------


def format_trace(trace: EnumerationTrace) -> str:
    lines = [
        f"step {ev.step} prog {to_text(ev.program)} out {to_text(ev.output)} cost {ev.cost}"
        for ev in trace.events
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text: str) -> EnumerationTrace:
    """Parse trace lines; ``prog/out[/cost]`` lines without ``step`` are numbered in order."""
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) % 2:
            raise TraceFormatError(f"line {lineno}: odd number of tokens")
        fields = dict(zip(tok[::2], tok[1::2]))
        if len(fields) * 2 != len(tok) or not {"prog", "out"} <= fields.keys():
            raise TraceFormatError(f"line {lineno}: expected prog/out fields")
        unknown = fields.keys() - {"step", "prog", "out", "cost"}
        if unknown:
            raise TraceFormatError(f"line {lineno}: unknown key {sorted(unknown)[0]}")
        try:
            step = int(fields["step"]) if "step" in fields else len(events) + 1
            cost = int(fields.get("cost", "1"))
            events.append(
                TraceEvent(step, from_text(fields["prog"]), from_text(fields["out"]), cost)
            )
        except ValueError as exc:
            raise TraceFormatError(f"line {lineno}: {exc}") from exc
    return EnumerationTrace(tuple(events))


def load_trace(path: str | Path) -> EnumerationTrace:
    return parse_trace(Path(path).read_text())
