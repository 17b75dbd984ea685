"""Threshold computation and the fixed-point search behind it.

Quantities of the form ``2^(2^q)`` appear in the threshold formulas.  They
are handled as exponents; a magnitude is only built when its exponent is at
most :data:`EXPONENT_CAP`.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass

from .bitstr import encode_tuple, int_bits
from .toy_universe import (
    EnumerationTrace,
    ToyDecompressor,
    past_volume,
    time_bounded_complexity,
)

EXPONENT_CAP = 62

ComplexityOracle = Callable[[str, str], float]


class NoFixedPoint(ValueError):
    pass


class ExponentOutOfRange(ArithmeticError):
    pass


@dataclass(frozen=True)
class BetaFunction:
    q: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.q + 1:
            raise ValueError(f"beta must be given on [0, {self.q}]")
        if any(v < 0 for v in self.values):
            raise ValueError("beta values are non-negative")

    def __call__(self, l: int) -> int:
        return self.values[l]


@dataclass(frozen=True)
class QTilde:
    q: int
    l_star: int

    def encode(self) -> str:
        return encode_tuple([int_bits(self.q), int_bits(self.l_star)])


@dataclass(frozen=True)
class ThresholdInputs:
    n: int
    q: int
    lam: int
    past_volume_q: int
    delta_terms: tuple[int, int]
    struct_volume_n: int
    big_n: int | None = None  # the scale 2^n; overridden only by scaled towers

    def __post_init__(self) -> None:
        if min(self.n, self.q, self.lam, self.past_volume_q, self.struct_volume_n,
               *self.delta_terms) < 0:
            raise ValueError("threshold inputs are non-negative")
        if self.q <= self.n:
            raise ValueError("threshold needs q > n")


def fixed_point(beta: BetaFunction) -> int:
    """Largest ``l`` with ``beta(l) >= l``; it must lie below ``q``."""
    if beta(beta.q) >= beta.q:
        raise NoFixedPoint(f"beta({beta.q}) = {beta(beta.q)} >= q: the top index is in S")
    l_star = max(l for l in range(beta.q + 1) if beta(l) >= l)
    return l_star


def _finite(value: float, ceiling: int) -> int:
    return ceiling if math.isinf(value) else int(value)


def beta_values(q: int, n: int, oracle: ComplexityOracle, ceiling: int) -> list[int]:
    """``beta(l) = K((q, l), alpha(l) | q)`` with ``alpha(l) = K((q, l) | n)``.

    Divergent searches count as ``ceiling``.
    """
    qb, nb = int_bits(q), int_bits(n)
    values = []
    for l in range(q + 1):
        t_l = encode_tuple([qb, int_bits(l)])
        alpha = _finite(oracle(t_l, nb), ceiling)
        values.append(_finite(oracle(encode_tuple([t_l, int_bits(alpha)]), qb), ceiling))
    return values


def build_q_tilde(q: int, oracle: ComplexityOracle, n: int, ceiling: int = 64) -> QTilde:
    beta = BetaFunction(q, tuple(beta_values(q, n, oracle, ceiling)))
    return QTilde(q, fixed_point(beta))


def time_bounded_oracle(dec: ToyDecompressor, max_len: int, T: int) -> ComplexityOracle:
    def oracle(target: str, condition: str) -> float:
        return time_bounded_complexity(dec, target, condition, max_len, T)

    return oracle


def zero_oracle(target: str, condition: str) -> float:
    return 0


def _pow2(exponent: int) -> int:
    if exponent < 0 or exponent > EXPONENT_CAP:
        raise ExponentOutOfRange(f"2^{exponent} is outside [2^0, 2^{EXPONENT_CAP}]")
    return 1 << exponent


def at_least_pow2(value: int, exponent: int) -> bool:
    """``value >= 2^exponent`` without building the power."""
    if exponent <= 0:
        return value >= 1
    return value.bit_length() > exponent


def triviality_exponent(q: int, lam: int) -> float:
    """Exponent of ``2^(2^q - q - lam)``; ``inf`` when ``2^q`` is not representable."""
    if q > EXPONENT_CAP:
        return math.inf
    return (1 << q) - q - lam


def threshold(inp: ThresholdInputs) -> int:
    """Price ``B``: 0 when the past volume at ``q`` or the structure volume at
    ``n`` is already heavy, otherwise ``Num = 2^(2^n - q + delta - lam)``."""
    e1 = triviality_exponent(inp.q, inp.lam)
    if not math.isinf(e1) and at_least_pow2(inp.past_volume_q, int(e1)):
        return 0
    delta = inp.delta_terms[0] - inp.delta_terms[1]
    if inp.big_n is None and inp.n > EXPONENT_CAP:
        raise ExponentOutOfRange(f"2^n with n={inp.n} is not representable")
    big_n = (1 << inp.n) if inp.big_n is None else inp.big_n
    num = _pow2(big_n - inp.q + delta - inp.lam)
    if inp.struct_volume_n >= num:
        return 0
    return num


def price_table(
    n: int,
    w: str,
    trace: EnumerationTrace,
    universe: Iterable[str],
    q_range: Iterable[int],
    d: int,
    lam: int = 1,
    *,
    marker_index: int | None = None,
    oracle: ComplexityOracle = zero_oracle,
    delta_terms: Callable[[QTilde], tuple[int, int]] | None = None,
    ceiling: int = 64,
    q_tilde_cache: dict[tuple[int, int], QTilde] | None = None,
    big_n: int | None = None,
) -> dict[tuple[str, int], int]:
    """``B(x, q)`` from the threshold procedure applied to ``(n, w, x, q - d)``.

    Past volumes are read from ``trace`` up to ``marker_index`` (default:
    the whole trace).  ``delta_terms`` maps ``q~`` to the two prefix
    complexities whose difference is the structural correction; by default
    they are computed with ``oracle``.  ``q_tilde_cache`` (keyed by
    ``(q - d, n)``) lets callers with a fixed oracle reuse ``q~`` across calls.
    ``big_n`` replaces the scale ``2^n`` (scaled towers only).
    """
    scale = (1 << n) if big_n is None else big_n
    idx = len(trace) if marker_index is None else marker_index
    table: dict[tuple[str, int], int] = {}
    q_tildes = {} if q_tilde_cache is None else q_tilde_cache
    for q in q_range:
        qq = q - d
        if (qq, n) not in q_tildes:
            q_tildes[(qq, n)] = build_q_tilde(qq, oracle, n, ceiling)
        qt = q_tildes[(qq, n)]
        if delta_terms is None:
            terms = _oracle_delta_terms(qt, n, oracle, ceiling)
        else:
            terms = delta_terms(qt)
        for x in universe:
            inp = ThresholdInputs(
                n=n,
                q=qq,
                lam=lam,
                past_volume_q=_past_volume_capped(trace, (x,), qq, idx),
                delta_terms=terms,
                struct_volume_n=past_volume(trace, (qt.encode(), x), scale, idx),
                big_n=big_n,
            )
            table[(x, q)] = threshold(inp)
    return table


def _past_volume_capped(trace: EnumerationTrace, y: Sequence[str], q: int, idx: int) -> int:
    # the scale-q threshold is 2^q; any toy program is shorter once q is large
    limit = 1 << q if q <= EXPONENT_CAP else 1 << EXPONENT_CAP
    return past_volume(trace, y, limit, idx)


def _oracle_delta_terms(qt: QTilde, n: int, oracle: ComplexityOracle, ceiling: int) -> tuple[int, int]:
    qb, nb = int_bits(qt.q), int_bits(n)
    alpha = _finite(oracle(qt.encode(), nb), ceiling)
    first = _finite(oracle(encode_tuple([qt.encode(), int_bits(alpha)]), qb), ceiling)
    second = alpha
    return first, second


def key_lemma_report(rows: Iterable[tuple[float, int, int, int]]) -> Mapping[str, float]:
    """How often "C(x) <= q implies |T| >= B" holds on toy rows ``(C(x), q, |T|, B)``.

    Reporting only; toy decompressors carry no guarantee.
    """
    total = holds = 0
    for c, q, count, b in rows:
        if c <= q:
            total += 1
            holds += count >= b
    return {"rows": total, "property1_rate": holds / total if total else float("nan")}
