"""Randomized common-subexpression elimination for binary matrices.

Greedy pair extraction: repeatedly take the pair of signals that occurs in
the most rows, define it once as a new signal and substitute it everywhere.
Ties between equally frequent pairs are broken at random, so restarts with
different seeds explore different extraction orders; the shortest program
wins.
"""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from pfcft.errors import ProgramError
from pfcft.linear import (
    AdditionProgram,
    BinaryMatrix,
    naive_add_count,
    naive_compile,
    program_matrix,
    stack_programs,
)
from pfcft.utils.config import CseConfig
from pfcft.utils.display import display_warning

Pair = tuple[int, int]


class _IndexedSet:
    """Insertion/removal in O(1) with O(1) access by position."""

    __slots__ = ("items", "positions")

    def __init__(self):
        self.items: list[Pair] = []
        self.positions: dict[Pair, int] = {}

    def __len__(self) -> int:
        return len(self.items)

    def add(self, item: Pair) -> None:
        """Insert a pair."""
        self.positions[item] = len(self.items)
        self.items.append(item)

    def remove(self, item: Pair) -> None:
        """Remove a pair."""
        index = self.positions.pop(item)
        last = self.items.pop()
        if index < len(self.items):
            self.items[index] = last
            self.positions[last] = index


class _BudgetExceeded(Exception):
    pass


class _PairTable:
    """Occurrence counts of signal pairs over the rows, bucketed by count."""

    def __init__(self, budget: int):
        self.budget = budget
        self.counts: dict[Pair, int] = {}
        self.buckets: dict[int, _IndexedSet] = {}
        self.top = 0

    def _move(self, pair: Pair, old: int, new: int) -> None:
        if old:
            self.buckets[old].remove(pair)
        if new:
            bucket = self.buckets.get(new)
            if bucket is None:
                bucket = self.buckets[new] = _IndexedSet()
            bucket.add(pair)
            self.top = max(self.top, new)

    def bump(self, a: int, b: int, delta: int) -> None:
        """Change the count of pair (a, b) by delta."""
        pair = (a, b) if a < b else (b, a)
        old = self.counts.get(pair, 0)
        new = old + delta
        if new:
            self.counts[pair] = new
            if len(self.counts) > self.budget:
                raise _BudgetExceeded
        else:
            del self.counts[pair]
        self._move(pair, old, new)

    def pick(self, rng: np.random.Generator) -> Optional[Pair]:
        """A uniformly random pair among the most frequent, if it repeats."""
        while self.top >= 2 and not self.buckets.get(self.top):
            self.top -= 1
        if self.top < 2:
            return None
        bucket = self.buckets[self.top]
        return bucket.items[int(rng.integers(len(bucket)))]


def _greedy_run(
    supports: list[list[int]],
    num_inputs: int,
    rng: np.random.Generator,
    max_passes: int,
    budget: int,
) -> AdditionProgram:
    rows = [set(support) for support in supports]
    holders: dict[int, set[int]] = {}
    table = _PairTable(budget)
    for r, row in enumerate(rows):
        ordered = sorted(row)
        for i, a in enumerate(ordered):
            holders.setdefault(a, set()).add(r)
            for b in ordered[i + 1 :]:
                table.bump(a, b, 1)

    steps: list[Pair] = []
    while not max_passes or len(steps) < max_passes:
        pair = table.pick(rng)
        if pair is None:
            break
        a, b = pair
        signal = num_inputs + len(steps)
        steps.append(pair)
        holders[signal] = set()
        for r in sorted(holders[a] & holders[b]):
            row = rows[r]
            row.discard(a)
            row.discard(b)
            for x in row:
                table.bump(a, x, -1)
                table.bump(b, x, -1)
                table.bump(signal, x, 1)
            table.bump(a, b, -1)
            row.add(signal)
            holders[a].discard(r)
            holders[b].discard(r)
            holders[signal].add(r)

    outputs: list[Optional[int]] = []
    finished: dict[frozenset[int], int] = {}
    for row in rows:
        if not row:
            outputs.append(None)
            continue
        key = frozenset(row)
        if key in finished:
            outputs.append(finished[key])
            continue
        ordered = sorted(row)
        acc = ordered[0]
        for x in ordered[1:]:
            steps.append((acc, x))
            acc = num_inputs + len(steps) - 1
        finished[key] = acc
        outputs.append(acc)
    return AdditionProgram(num_inputs, tuple(steps), tuple(outputs))


def _pair_load(matrix: BinaryMatrix) -> int:
    weights = matrix.row_weights()
    return int((weights * (weights - 1) // 2).sum())


def cse_reduce(matrix: BinaryMatrix, cfg: Optional[CseConfig] = None) -> AdditionProgram:
    """Shortest XOR program for matrix found over cfg.restarts seeded runs.

    Deterministic for a fixed (matrix, cfg); never longer than naive_compile.
    """
    cfg = cfg or CseConfig()
    fallback = naive_compile(matrix)
    if _pair_load(matrix) > cfg.pair_budget:
        display_warning(
            f"CSE skipped for {matrix.rows}x{matrix.cols} matrix: "
            f"pair budget {cfg.pair_budget} exceeded"
        )
        return fallback

    supports = matrix.row_supports()
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)

    def run(child: np.random.SeedSequence) -> Optional[AdditionProgram]:
        try:
            return _greedy_run(
                supports,
                matrix.cols,
                np.random.default_rng(child),
                cfg.max_passes,
                cfg.pair_budget,
            )
        except _BudgetExceeded:
            return None

    if cfg.threads > 1 and cfg.restarts > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(run, children))
    else:
        results = [run(child) for child in children]

    best = fallback
    for program in results:
        if program is None:
            display_warning(
                f"CSE run abandoned for {matrix.rows}x{matrix.cols} matrix: "
                f"pair budget {cfg.pair_budget} exceeded"
            )
            continue
        if program.add_count < best.add_count:
            best = program
    return best


def cse_reduce_blockdiag(
    blocks: Sequence[BinaryMatrix], cfg: Optional[CseConfig] = None
) -> AdditionProgram:
    """CSE per diagonal block, stacked; equal blocks share one reduction."""
    cache: dict[tuple[int, int, bytes], AdditionProgram] = {}
    programs = []
    for block in blocks:
        key = block.key()
        if key not in cache:
            cache[key] = cse_reduce(block, cfg)
        programs.append(cache[key])
    return stack_programs(programs)


def check_program(program: AdditionProgram, matrix: BinaryMatrix) -> None:
    """Raise unless program computes exactly matrix, with no extra additions."""
    if program.num_inputs != matrix.cols or program.num_outputs != matrix.rows:
        raise ProgramError(
            f"program shape {program.num_outputs}x{program.num_inputs} "
            f"does not match matrix {matrix.rows}x{matrix.cols}"
        )
    if program_matrix(program) != matrix:
        raise ProgramError("program does not compute its source matrix")
    if program.add_count > naive_add_count(matrix):
        raise ProgramError("program is longer than naive compilation")
