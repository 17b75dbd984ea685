"""Adaptive query trees standing in for bounded-query oracle machines."""

from __future__ import annotations

import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path

from .bitstr import from_text, to_text

Oracle = Callable[[str, int], bool]


class RefereeError(ValueError):
    pass


class DepthExceeded(RefereeError):
    pass


class QueryTooLong(RefereeError):
    pass


class NegativeThreshold(RefereeError):
    pass


class RefereeFormatError(RefereeError):
    pass


@dataclass(frozen=True)
class Leaf:
    output: int


@dataclass(frozen=True)
class Query:
    x: str
    k: int
    yes: Leaf | Query
    no: Leaf | Query


Node = Leaf | Query


def tree_depth(node: Node) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(tree_depth(node.yes), tree_depth(node.no))


@dataclass(frozen=True)
class RefereeProgram:
    root: Node
    max_depth: int
    max_query_len: int

    @classmethod
    def of(cls, root: Node, max_depth: int | None = None, max_query_len: int | None = None):
        """Build a program whose bounds default to the tightest ones the tree meets."""
        if max_depth is None:
            max_depth = tree_depth(root)
        if max_query_len is None:
            max_query_len = max((len(x) for x, _ in support(root)), default=0)
        return cls(root, max_depth, max_query_len)

    @property
    def depth(self) -> int:
        return tree_depth(self.root)

    def leaves(self) -> list[int]:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Leaf):
                out.append(node.output)
            else:
                stack.extend((node.no, node.yes))
        return out


def support(node: Node) -> frozenset[tuple[str, int]]:
    pairs = set()
    stack = [node]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Query):
            pairs.add((cur.x, cur.k))
            stack.append(cur.yes)
            stack.append(cur.no)
    return frozenset(pairs)


def validate(r: RefereeProgram) -> frozenset[tuple[str, int]]:
    """Check the bounds of ``r`` and return its query support."""
    if r.depth > r.max_depth:
        raise DepthExceeded(f"tree depth {r.depth} exceeds bound {r.max_depth}")
    stack = [r.root]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Leaf):
            if cur.output < 0:
                raise RefereeError("leaf outputs must be non-negative")
            continue
        if len(cur.x) > r.max_query_len:
            raise QueryTooLong(f"query string of length {len(cur.x)} > {r.max_query_len}")
        if cur.k < 0:
            raise NegativeThreshold(f"query threshold {cur.k} < 0")
        stack.extend((cur.yes, cur.no))
    return support(r.root)


def evaluate(r: RefereeProgram, oracle: Oracle) -> int:
    node = r.root
    while isinstance(node, Query):
        node = node.yes if oracle(node.x, node.k) else node.no
    return node.output


def query_path(r: RefereeProgram, oracle: Oracle) -> list[tuple[str, int, bool]]:
    path = []
    node = r.root
    while isinstance(node, Query):
        ans = oracle(node.x, node.k)
        path.append((node.x, node.k, ans))
        node = node.yes if ans else node.no
    return path


def random_referee(
    seed: int,
    depth: int,
    universe: Sequence[str],
    level_range: tuple[int, int],
    output_cap: int = 7,
    leaf_prob: float = 0.0,
) -> RefereeProgram:
    """Seeded random query tree of depth at most ``depth``.

    Thresholds are drawn from the closed ``level_range``; leaves from
    ``[0, output_cap]``.  With ``leaf_prob > 0`` internal nodes may be cut short.
    """
    if depth < 0 or not universe:
        raise ValueError("need depth >= 0 and a non-empty universe")
    rng = random.Random(seed)
    lo, hi = level_range

    def build(d: int) -> Node:
        if d == 0 or (d < depth and rng.random() < leaf_prob):
            return Leaf(rng.randint(0, output_cap))
        x = rng.choice(list(universe))
        return Query(x, rng.randint(lo, hi), build(d - 1), build(d - 1))

    root = build(depth)
    return RefereeProgram(root, depth, max(len(s) for s in universe))


# -- referee files -------------------------------------------------------------


def format_referee(r: RefereeProgram, header: bool = True) -> str:
    lines = []
    if header:
        lines.append(f"# maxdepth {r.max_depth} maxquerylen {r.max_query_len}")

    def emit(node: Node, indent: int) -> None:
        pad = "  " * indent
        if isinstance(node, Leaf):
            lines.append(f"{pad}out {node.output}")
            return
        lines.append(f"{pad}query x={to_text(node.x)} k={node.k}")
        lines.append(f"{pad}  yes:")
        emit(node.yes, indent + 2)
        lines.append(f"{pad}  no:")
        emit(node.no, indent + 2)

    emit(r.root, 0)
    return "\n".join(lines) + "\n"


def parse_referee(text: str) -> RefereeProgram:
    """Parse the indented tree grammar.

    A leading comment ``# maxdepth D maxquerylen L`` sets the bounds; without
    it the bounds are the tightest ones the tree satisfies.
    """
    bounds: dict[str, int] = {}
    rows: list[tuple[int, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            tok = stripped[1:].split()
            if tok and tok[0] == "maxdepth":
                try:
                    bounds = {tok[i]: int(tok[i + 1]) for i in range(0, len(tok), 2)}
                except (IndexError, ValueError) as exc:
                    raise RefereeFormatError(f"line {lineno}: bad bounds comment") from exc
            continue
        if not stripped:
            continue
        body = raw.rstrip()
        spaces = len(body) - len(body.lstrip(" "))
        if spaces % 2 or "\t" in body[:spaces + 1]:
            raise RefereeFormatError(f"line {lineno}: indentation must be 2 spaces per level")
        rows.append((spaces // 2, stripped, lineno))

    pos = 0

    def parse_node(level: int) -> Node:
        nonlocal pos
        if pos >= len(rows):
            raise RefereeFormatError("unexpected end of referee file")
        ind, line, lineno = rows[pos]
        if ind != level:
            raise RefereeFormatError(f"line {lineno}: expected indentation level {level}")
        pos += 1
        tok = line.split()
        try:
            if tok[0] == "out" and len(tok) == 2:
                return Leaf(int(tok[1]))
            if tok[0] == "query" and len(tok) == 3:
                kv = dict(t.split("=", 1) for t in tok[1:])
                x, k = from_text(kv["x"]), int(kv["k"])
                yes = parse_branch(level + 1, "yes:")
                no = parse_branch(level + 1, "no:")
                return Query(x, k, yes, no)
        except (KeyError, ValueError) as exc:
            raise RefereeFormatError(f"line {lineno}: {exc}") from exc
        raise RefereeFormatError(f"line {lineno}: cannot parse {line!r}")

    def parse_branch(level: int, label: str) -> Node:
        nonlocal pos
        if pos >= len(rows) or rows[pos][0] != level or rows[pos][1] != label:
            where = rows[pos][2] if pos < len(rows) else "EOF"
            raise RefereeFormatError(f"line {where}: expected {label!r}")
        pos += 1
        return parse_node(level + 1)

    root = parse_node(0)
    if pos != len(rows):
        raise RefereeFormatError(f"line {rows[pos][2]}: trailing content")
    return RefereeProgram.of(root, bounds.get("maxdepth"), bounds.get("maxquerylen"))


def load_referee(path: str | Path) -> RefereeProgram:
    return parse_referee(Path(path).read_text())
