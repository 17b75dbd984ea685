"""Acceptance criteria 1-8 of the spec.

Each test prints exactly one ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line (written past pytest's capture) and then asserts.  Suites 1-2 and 6
are computed once per module and shared by the criteria that read them.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field

import pytest

from diaggame.counting import count_simple, counting_predicate, predicate_from_decompressor
from diaggame.fighter import (
    InputExhausted,
    LevelParams,
    ResourceBoundViolated,
    ResourceLedger,
    check_resources,
    priority_violations,
    resource_checks,
    run_simulation,
)
from diaggame.keylemma import BetaFunction, NoFixedPoint, ThresholdInputs, fixed_point, threshold
from diaggame.local_game import Player
from diaggame.solver import play_stolen, play_strategy, solve, steal, virtual_profile
from diaggame.suites import random_event_stream, random_small_game, relabel_long, stream_config
from diaggame.toy_universe import ToyDecompressor, simple_count
from oracles import all_adversary_plays, naive_winner

SUITE1_SEEDS = range(2000)
SUITE6_STREAMS = 10**4
RANDOM_INPUTS = 10**4


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")

    return emit


class VcTracker:
    """Collects virtual-complexity profiles along one replay and counts increases."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.prev: dict[str, int] | None = None
        self.violations = 0
        self.steps = 0

    def __call__(self, st) -> None:
        cur = virtual_profile(self.cfg, st)
        if self.prev is not None:
            self.steps += 1
            self.violations += sum(cur[x] > self.prev[x] for x in cur)
        self.prev = cur


@dataclass
class Suite12:
    games: int = 0
    disagreements: list[int] = field(default_factory=list)
    solve_seconds: float = 0.0
    bob_wins: int = 0
    steal_replays: int = 0
    steal_failures: list[int] = field(default_factory=list)
    base_replays: int = 0
    base_failures: list[int] = field(default_factory=list)
    relabel_failures: list[int] = field(default_factory=list)
    relabeled: int = 0
    vc_steps: int = 0
    vc_violations: int = 0


def _replays(play, cfg, strategy, suite: Suite12):
    """Every adversary branch of a replay, each with a fresh vc tracker."""
    trackers = []

    def tracked(cfg_, strat, adversary):
        tracker = VcTracker(cfg_)
        trackers.append(tracker)
        return play(cfg_, strat, adversary, on_state=tracker)

    for verdict, _, _ in all_adversary_plays(tracked, cfg, strategy):
        yield verdict
    suite.vc_steps += sum(t.steps for t in trackers)
    suite.vc_violations += sum(t.violations for t in trackers)


@pytest.fixture(scope="module")
def suite12() -> Suite12:
    s = Suite12()
    for seed in SUITE1_SEEDS:
        cfg = random_small_game(seed)
        t0 = time.perf_counter()
        res = solve(cfg)
        oracle = naive_winner(cfg)
        s.solve_seconds += time.perf_counter() - t0
        s.games += 1
        if res.winner is not oracle:
            s.disagreements.append(seed)
        for verdict in _replays(play_strategy, cfg, res, s):
            s.base_replays += 1
            if verdict.winner is not res.winner:
                s.base_failures.append(seed)
        if res.winner is Player.BOB:
            s.bob_wins += 1
            for verdict in _replays(play_stolen, cfg, steal(cfg, res), s):
                s.steal_replays += 1
                if not (verdict.winner is Player.ALICE and verdict.final_output == cfg.target):
                    s.steal_failures.append(seed)
        if any(cfg.is_long(x) for x, _ in cfg.prices):
            s.relabeled += 1
            for offset in (3, 17):
                other = solve(relabel_long(cfg, offset))
                if (other.winner, other.states_explored) != (res.winner, res.states_explored):
                    s.relabel_failures.append(seed)
    return s


@dataclass
class Suite6:
    streams: int = 0
    events: int = 0
    directives: Counter = field(default_factory=Counter)
    capacity_fires: list[int] = field(default_factory=list)
    priority_failures: list[int] = field(default_factory=list)
    replay_mismatches: list[int] = field(default_factory=list)
    resource_failures: list[int] = field(default_factory=list)
    ledger: ResourceLedger = field(default_factory=ResourceLedger)  # component-wise max over runs
    vc_steps: int = 0
    vc_violations: int = 0


@pytest.fixture(scope="module")
def suite6() -> Suite6:
    s = Suite6()
    for seed in range(SUITE6_STREAMS):
        events = random_event_stream(seed)
        s.streams += 1
        s.events += len(events)
        try:
            rep = run_simulation(events, stream_config(seed))
            again = run_simulation(events, stream_config(seed))
        except InputExhausted:
            s.capacity_fires.append(seed)
            continue
        if not rep.resources.checks["capacity"]:
            s.capacity_fires.append(seed)
        if rep.resources.failed:
            s.resource_failures.append(seed)
        if priority_violations(rep.log):
            s.priority_failures.append(seed)
        if rep.format() != again.format() or rep.directives != again.directives:
            s.replay_mismatches.append(seed)
        s.directives.update(d.kind for d in rep.directives)
        worst = s.ledger
        worst.dummies = max(worst.dummies, rep.ledger.dummies)
        worst.fuel = max(worst.fuel, rep.ledger.fuel)
        worst.payoffs |= rep.ledger.payoffs  # Counter union keeps the max per key
        worst.consumed |= rep.ledger.consumed
        for lv in rep.levels:
            for game in lv.vc_history:
                for prev, cur in zip(game, game[1:]):
                    s.vc_steps += 1
                    s.vc_violations += sum(cur[x] > prev[x] for x in prev)
    return s


def _head(seeds: list[int]) -> str:
    return f" (first seeds {sorted(set(seeds))[:5]})" if seeds else ""


def test_criterion_1_solver_matches_naive_oracle(suite12, report):
    ok = (not suite12.disagreements and not suite12.base_failures
          and suite12.games >= 1000 and suite12.solve_seconds < 60)
    report(1, ok, f"{suite12.games - len(suite12.disagreements)}/{suite12.games} games agree with the "
                  f"naive search, {suite12.solve_seconds:.1f}s solve+oracle; winner's strategy wins "
                  f"{suite12.base_replays - len(suite12.base_failures)}/{suite12.base_replays} replays"
                  f"{_head(suite12.disagreements + suite12.base_failures)}")
    assert ok


def test_criterion_2_strategy_stealing(suite12, report):
    ok = suite12.bob_wins > 0 and not suite12.steal_failures
    report(2, ok, f"{suite12.bob_wins} Bob wins, {suite12.steal_replays} stolen replays over every "
                  f"adversary branch, {suite12.steal_replays - len(suite12.steal_failures)} end as Alice "
                  f"wins at the original target{_head(suite12.steal_failures)}")
    assert ok


def _independent_count(table: dict[str, str], m: int) -> int:
    shortest: dict[str, int] = {}
    for p, x in table.items():
        shortest[x] = min(shortest.get(x, len(p)), len(p))
    return sum(1 for c in shortest.values() if c <= m)


def test_criterion_3_counting(report):
    rng = random.Random(3)
    runs = bad = 0
    max_ratio = 0.0
    for _ in range(1000):
        size = rng.randint(0, 64)
        progs = {"".join(rng.choice("01") for _ in range(rng.randint(0, 6))) for _ in range(size)}
        table = {p: "".join(rng.choice("01") for _ in range(rng.randint(0, 4))) for p in sorted(progs)}
        dec = ToyDecompressor(table)
        for m in range(9):
            pred, log = counting_predicate(predicate_from_decompressor(dec))
            res = count_simple(pred, m)
            runs += 1
            expected = simple_count(dec, m)
            if res.count != expected or expected != _independent_count(table, m) \
                    or res.queries > m + 2 or len(log) != res.queries:
                bad += 1
            max_ratio = max(max_ratio, res.queries / (m + 2))
    ok = bad == 0
    report(3, ok, f"{runs - bad}/{runs} runs exact with <= m+2 queries (max queries/(m+2) = {max_ratio:.2f})")
    assert ok


def test_criterion_4_fixed_point(report):
    rng = random.Random(4)
    bad = raised = 0
    for _ in range(RANDOM_INPUTS):
        q = rng.randint(1, 12)
        values = [rng.randint(0, q + 3) for _ in range(q)] + [rng.randint(0, q - 1)]
        beta = BetaFunction(q, tuple(values))
        scan = max((l for l in range(q + 1) if values[l] >= l), default=None)
        try:
            l_star = fixed_point(beta)
        except NoFixedPoint:
            bad += 1
            continue
        if l_star != scan or not (beta(l_star) >= l_star and beta(l_star + 1) < l_star + 1):
            bad += 1
    for _ in range(RANDOM_INPUTS):
        q = rng.randint(0, 12)
        values = [rng.randint(0, q + 3) for _ in range(q)] + [rng.randint(q, q + 3)]
        try:
            fixed_point(BetaFunction(q, tuple(values)))
        except NoFixedPoint:
            raised += 1
    ok = bad == 0 and raised == RANDOM_INPUTS
    report(4, ok, f"{RANDOM_INPUTS - bad}/{RANDOM_INPUTS} l* match the scan and bracket; "
                  f"NoFixedPoint on {raised}/{RANDOM_INPUTS} beta with beta(q) >= q")
    assert ok


def test_criterion_5_threshold(report):
    examples = [
        (ThresholdInputs(2, 3, 1, 20, (0, 0), 0), 0),
        (ThresholdInputs(2, 3, 1, 0, (3, 2), 1), 2),
        (ThresholdInputs(2, 3, 1, 0, (3, 2), 2), 0),
    ]
    examples_ok = all(threshold(inp) == want for inp, want in examples)
    rng = random.Random(5)
    bad = tried = 0
    while tried < RANDOM_INPUTS:
        n = rng.randint(0, 4)
        q = rng.randint(n + 1, 6)
        lam = rng.randint(0, 2)
        first = rng.randint(0, 8)
        # Num's exponent 2^n - q + first - second - lam must stay non-negative
        second = rng.randint(0, max(0, (1 << n) - q + first - lam))
        if (1 << n) - q + first - second - lam < 0:
            continue
        inp = ThresholdInputs(n, q, lam, rng.randint(0, 1 << 12), (first, second), rng.randint(0, 1 << 10))
        num = 1 << ((1 << n) - q + first - second - lam)
        b = threshold(inp)
        bigger = ThresholdInputs(n, q, lam, inp.past_volume_q + rng.randint(0, 1 << 12),
                                 inp.delta_terms, inp.struct_volume_n)
        tried += 1
        if b not in (0, num) or threshold(bigger) > b or threshold(inp) != b:
            bad += 1
    ok = examples_ok and bad == 0
    report(5, ok, f"worked examples {'reproduced' if examples_ok else 'WRONG'}; "
                  f"{RANDOM_INPUTS - bad}/{RANDOM_INPUTS} random inputs are 0-or-Num, deterministic "
                  f"and monotone in pastVolumeQ")
    assert ok


def test_criterion_6_fighter_invariants(suite6, report):
    # bounds are per run, so the worst run's ledger is what both checks see
    level1 = LevelParams.of(1, 5)
    try:
        check_resources(4, LevelParams.of(1, 4), suite6.ledger)
        d4 = []
    except ResourceBoundViolated as err:
        d4 = err.failed
    failures = (suite6.capacity_fires, suite6.priority_failures,
                suite6.replay_mismatches, suite6.resource_failures)
    d5 = resource_checks(5, level1, suite6.ledger).failed
    ok = not any(failures) and d4 == ["payoff"] and not d5
    kinds = ", ".join(f"{k}={v}" for k, v in sorted(suite6.directives.items()))
    report(6, ok, f"{suite6.streams} streams / {suite6.events} events ({kinds}): "
                  f"capacity fires={len(suite6.capacity_fires)}, priority violations="
                  f"{len(suite6.priority_failures)}, replay mismatches={len(suite6.replay_mismatches)}; "
                  f"worst-run ledger: d=5 fails {d5}, d=4 fails {d4}")
    assert ok


def test_criterion_7_relabel_invariance(suite12, report):
    ok = suite12.relabeled > 0 and not suite12.relabel_failures
    report(7, ok, f"{suite12.relabeled - len(set(suite12.relabel_failures))}/{suite12.relabeled} games "
                  f"with long strings keep winner and statesExplored under two relabelings"
                  f"{_head(suite12.relabel_failures)}")
    assert ok


def test_criterion_8_virtual_complexity_monotone(suite12, suite6, report):
    steps = suite12.vc_steps + suite6.vc_steps
    violations = suite12.vc_violations + suite6.vc_violations
    ok = violations == 0 and suite12.vc_steps > 0 and suite6.vc_steps > 0
    report(8, ok, f"{violations} increases over {steps} turns "
                  f"({suite12.vc_steps} in suites 1-2 replays, {suite6.vc_steps} in suite 6 games)")
    assert ok
