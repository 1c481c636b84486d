"""Explicit block designs and brute-force balance checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, TextIO

import numpy as np

from .combinatorics import binom

Block = tuple[int, ...]


@dataclass(frozen=True)
class PointPartition:
    """X1 = {0..v1-1}, X2 = {v1..v1+v2-1}."""

    v1: int
    v2: int

    @property
    def v(self) -> int:
        return self.v1 + self.v2


@dataclass(frozen=True)
class BlockDesign:
    v: int
    k: int
    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.v:
            raise ValueError(f"block size {self.k} outside 0..{self.v}")
        blocks = tuple(tuple(int(x) for x in b) for b in self.blocks)
        for b in blocks:
            if len(b) != self.k:
                raise ValueError(f"block {b} does not have size {self.k}")
            if any(x >= y for x, y in zip(b, b[1:])):
                raise ValueError(f"block {b} is not strictly increasing")
            if b and (b[0] < 0 or b[-1] >= self.v):
                raise ValueError(f"block {b} has points outside 0..{self.v - 1}")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def is_simple(self) -> bool:
        return self.duplicate_block() is None

    def duplicate_block(self) -> Optional[Block]:
        """First repeated block in sorted order, or None."""
        ordered = sorted(self.blocks)
        for a, b in zip(ordered, ordered[1:]):
            if a == b:
                return a
        return None

    def sorted(self) -> "BlockDesign":
        return BlockDesign(self.v, self.k, tuple(sorted(self.blocks)))

    def shifted(self, offset: int, v: int) -> "BlockDesign":
        """Relabel point x as x + offset on a ground set of size v."""
        return BlockDesign(v, self.k, tuple(tuple(x + offset for x in b) for b in self.blocks))


@dataclass(frozen=True)
class BalanceReport:
    t: int
    is_t_design: bool
    lambda_t: Optional[int] = None
    # (t-subset, observed count, expected count)
    counterexample: Optional[tuple[Block, int, Fraction]] = None
    num_blocks: int = 0

    def __post_init__(self) -> None:
        assert not (self.is_t_design and self.counterexample is not None)


def complete_design(v: int, k: int) -> BlockDesign:
    """All k-subsets of range(v) in lexicographic order."""
    if not 0 <= k <= v:
        raise ValueError(f"need 0 <= k <= v, got v={v}, k={k}")
    return BlockDesign(v, k, tuple(combinations(range(v), k)))


def _binom_table(v: int, t: int) -> np.ndarray:
    tab = np.zeros((v + 1, t + 1), dtype=np.int64)
    for n in range(v + 1):
        for r in range(t + 1):
            tab[n, r] = binom(n, r)
    return tab


def lex_rank_many(subsets: np.ndarray, v: int) -> np.ndarray:
    """Rank rows of sorted t-subsets in the lexicographic order of combinations(range(v), t).

    Uses rank_lex(a) = C(v,t) - 1 - rank_colex(v-1-a), which turns the
    combinatorial number system into lexicographic order.
    """
    subsets = np.asarray(subsets, dtype=np.int64)
    n_rows, t = subsets.shape
    total = binom(v, t)
    if total >= 2**62:
        raise OverflowError(f"C({v},{t}) too large for int64 ranking")
    tab = _binom_table(v, t)
    colex = np.zeros(n_rows, dtype=np.int64)
    for j in range(1, t + 1):
        colex += tab[v - 1 - subsets[:, t - j], j]
    return total - 1 - colex


def lex_unrank(rank: int, v: int, t: int) -> Block:
    out = []
    x = 0
    for remaining in range(t, 0, -1):
        while True:
            below = binom(v - x - 1, remaining - 1)
            if rank < below:
                break
            rank -= below
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def t_subset_counts(d: BlockDesign, t: int, blocks: Optional[Iterable[Block]] = None) -> np.ndarray:
    """For every t-subset (lexicographic order) the number of blocks containing it."""
    total = binom(d.v, t)
    if t == 0:
        return np.array([len(d) if blocks is None else len(list(blocks))], dtype=np.int64)
    arr = np.array(list(d.blocks if blocks is None else blocks), dtype=np.int64).reshape(-1, d.k)
    counts = np.zeros(total, dtype=np.int64)
    if arr.shape[0] == 0:
        return counts
    for pos in combinations(range(d.k), t):
        counts += np.bincount(lex_rank_many(arr[:, pos], d.v), minlength=total)
    return counts


def verify_t_design(d: BlockDesign, t: int) -> BalanceReport:
    """Count the blocks through every t-subset and report balance."""
    if t < 0 or t > d.k:
        raise ValueError(f"t={t} must lie in 0..k={d.k}")
    counts = t_subset_counts(d, t)
    expected = Fraction(len(d) * binom(d.k, t), binom(d.v, t))
    bad = np.flatnonzero(counts != expected) if expected.denominator == 1 else np.arange(len(counts))
    if bad.size == 0:
        return BalanceReport(t, True, expected.numerator, None, len(d))
    first = int(bad[0])
    witness = lex_unrank(first, d.v, t)
    return BalanceReport(t, False, None, (witness, int(counts[first]), expected), len(d))


def complement_blocks(d: BlockDesign) -> BlockDesign:
    out = []
    for b in d.blocks:
        inside = set(b)
        out.append(tuple(x for x in range(d.v) if x not in inside))
    return BlockDesign(d.v, d.v - d.k, tuple(out))


def supplement_blocks(d: BlockDesign) -> BlockDesign:
    """All k-subsets not used by the (simple) design ``d``."""
    if not d.is_simple:
        raise ValueError("supplement is only defined for simple designs")
    used = set(d.blocks)
    return BlockDesign(d.v, d.k, tuple(b for b in combinations(range(d.v), d.k) if b not in used))


def classify_t_subset(T: Iterable[int], part: PointPartition) -> tuple[int, int]:
    """(|T & X1|, |T & X2|)."""
    T = tuple(T)
    if any(x < 0 or x >= part.v for x in T):
        raise ValueError(f"{T} is not a subset of the {part.v}-point set")
    s = sum(1 for x in T if x < part.v1)
    return s, len(T) - s


# -- block-set files ---------------------------------------------------------


def write_design(d: BlockDesign, fh: TextIO) -> None:
    """``v k b`` header, then one sorted block per line, lines in lex order."""
    blocks = sorted(d.blocks)
    fh.write(f"{d.v} {d.k} {len(blocks)}\n")
    for b in blocks:
        fh.write(" ".join(str(x) for x in b) + "\n")


def read_design(fh: TextIO) -> BlockDesign:
    lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("empty block file")
    try:
        v, k, b = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError(f"line 1: expected 'v k b', got {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != b:
        raise ValueError(f"header announces {b} blocks, file has {len(body)}")
    blocks = []
    for lineno, line in enumerate(body, start=2):
        try:
            block = tuple(int(x) for x in line.split())
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer entry in {line!r}") from None
        if len(block) != k:
            raise ValueError(f"line {lineno}: expected {k} points, got {len(block)}")
        blocks.append(block)
    try:
        return BlockDesign(v, k, tuple(blocks))
    except ValueError as exc:
        raise ValueError(f"invalid block file: {exc}") from None


def save_design(d: BlockDesign, path) -> None:
    with open(path, "w", newline="\n") as fh:
        write_design(d, fh)


def load_design(path) -> BlockDesign:
    with open(path) as fh:
        return read_design(fh)
