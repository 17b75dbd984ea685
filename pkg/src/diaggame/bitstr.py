"""Binary strings, shortlex order and an injective tuple encoding.

Bit strings are plain ``str`` objects over the alphabet ``{"0", "1"}``.  The
empty string is a legitimate value; its text form in files is ``e``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Sequence

EMPTY_TEXT = "e"


class MalformedCode(ValueError):
    """Raised when a string is not in the image of :func:`encode_tuple`."""


def is_bits(s: str) -> bool:
    return not s.strip("01")


def check_bits(s: str) -> str:
    if not isinstance(s, str) or not is_bits(s):
        raise ValueError(f"not a bit string: {s!r}")
    return s


def to_text(s: str) -> str:
    return s if s else EMPTY_TEXT


def from_text(text: str) -> str:
    if text == EMPTY_TEXT:
        return ""
    return check_bits(text)


def shortlex_key(s: str) -> tuple[int, str]:
    return (len(s), s)


def all_strings(max_len: int, min_len: int = 0) -> Iterator[str]:
    """Yield every bit string with ``min_len <= len <= max_len`` in shortlex order."""
    for n in range(min_len, max_len + 1):
        for bits in itertools.product("01", repeat=n):
            yield "".join(bits)


def int_bits(k: int) -> str:
    """Binary numeral of ``k >= 0`` without leading zeros (``0`` is ``"0"``)."""
    if k < 0:
        raise ValueError("negative integer has no binary numeral")
    return format(k, "b")


def bits_int(s: str) -> int:
    return int(s, 2)


def _length_header(n: int) -> str:
    # each bit of the length doubled, then the "01" terminator
    digits = format(n, "b") if n else ""
    return digits.replace("0", "00").replace("1", "11") + "01"


def encode_tuple(parts: Sequence[str]) -> str:
    """Concatenate self-delimiting encodings of ``parts``.

    A part of length L is written as the binary numeral of L with every bit
    doubled, the terminator ``01``, then the raw bits.  Length 0 has an empty
    numeral, so ``encode_tuple([""]) == "01"``.
    """
    if len(parts) < 1:
        raise ValueError("arity must be at least 1")
    out = []
    for p in parts:
        check_bits(p)
        out.append(_length_header(len(p)))
        out.append(p)
    return "".join(out)


def decode_tuple(code: str, arity: int) -> list[str]:
    if arity < 1:
        raise ValueError("arity must be at least 1")
    check_bits(code)
    parts = []
    i = 0
    for _ in range(arity):
        length = 0
        while True:
            pair = code[i : i + 2]
            if len(pair) < 2:
                raise MalformedCode(f"truncated length header in {code!r}")
            i += 2
            if pair == "01":
                break
            if pair == "00":
                if length == 0:
                    raise MalformedCode(f"leading zero in length of {code!r}")
                length = 2 * length
            elif pair == "11":
                length = 2 * length + 1
            else:
                raise MalformedCode(f"bad header pair {pair!r} in {code!r}")
        if i + length > len(code):
            raise MalformedCode(f"part overruns code {code!r}")
        parts.append(code[i : i + length])
        i += length
    if i != len(code):
        raise MalformedCode(f"trailing bits in {code!r}")
    return parts


def try_decode(code: str, arity: int) -> list[str] | None:
    try:
        return decode_tuple(code, arity)
    except MalformedCode:
        return None


def format_bits_list(items: Iterable[str]) -> str:
    return ",".join(to_text(s) for s in items)
