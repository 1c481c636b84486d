"""Build the combined design on X = X1 u X2 from a solution and ingredient designs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, TextIO

import numpy as np

from .combinatorics import binom, lambda_max
from .design import BlockDesign, PointPartition, complete_design, t_subset_counts, verify_t_design
from .equations import LEFT, RIGHT, SlotKind, slot_kind, slot_lambda_s
from .search import Solution

DEFAULT_MAX_BLOCKS = 10**7
EXHAUSTIVE_LIMIT = 10**6


class CompositionError(ValueError):
    pass


class ScaleGuardError(CompositionError):
    pass


@dataclass(frozen=True)
class IngredientSet:
    partition: PointPartition
    # block size -> design on X1 (points 0..v1-1)
    left_designs: dict = field(default_factory=dict)
    # block size -> design on X2, labelled locally as 0..v2-1
    right_designs: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ComposedDesign:
    design: BlockDesign
    provenance: tuple[tuple[int, int], ...]  # (i, k-i) per block, aligned with design.blocks
    Lambda: int
    solution: Solution
    partition: PointPartition
    t: int


def solution_shape(sol: Solution) -> tuple[int, int]:
    k = len(sol.u) - 1
    return k - len(sol.left), k


def _ingredient(side: str, j: int, v_side: int, t: int, index: Optional[int],
                supplied: Optional[BlockDesign]) -> BlockDesign:
    kind = slot_kind(v_side, j, t)
    if kind is SlotKind.IMPOSSIBLE:
        raise CompositionError(f"{side} slot {j} cannot exist on {v_side} points")
    if kind is SlotKind.COMPLETE:
        full = complete_design(v_side, j)
        if supplied is not None and sorted(supplied.blocks) != list(full.blocks):
            raise CompositionError(f"{side} slot {j} must hold the complete {j}-subset design")
        return full
    if supplied is None:
        if index == lambda_max(t, j, v_side):
            return complete_design(v_side, j)
        raise CompositionError(f"missing {side} design for block size {j} (index {index})")
    if supplied.v != v_side or supplied.k != j:
        raise CompositionError(
            f"{side} design for block size {j} has v={supplied.v}, k={supplied.k}; expected v={v_side}, k={j}"
        )
    rep = verify_t_design(supplied, t)
    if not rep.is_t_design:
        raise CompositionError(f"{side} design for block size {j} is not a {t}-design: {rep.counterexample}")
    if rep.lambda_t != index:
        raise CompositionError(
            f"{side} design for block size {j} has index {rep.lambda_t}, solution needs {index}"
        )
    return supplied


def compose(sol: Solution, ing: IngredientSet, max_blocks: int = DEFAULT_MAX_BLOCKS) -> ComposedDesign:
    t, k = solution_shape(sol)
    part = ing.partition
    v1, v2 = part.v1, part.v2
    pairs = []
    for i, ui in enumerate(sol.u):
        if not ui:
            continue
        j = k - i
        left = _ingredient(LEFT, i, v1, t, sol.left[i - t - 1] if i > t else None, ing.left_designs.get(i))
        right = _ingredient(RIGHT, j, v2, t, sol.right[j - t - 1] if j > t else None, ing.right_designs.get(j))
        pairs.append((i, left, right))

    expected = sum(len(left) * len(right) for _, left, right in pairs)
    if expected > max_blocks:
        raise ScaleGuardError(f"composition would have {expected} blocks (ceiling {max_blocks})")

    tagged = []
    for i, left, right in pairs:
        for lb in left.blocks:
            for rb in right.blocks:
                block = lb + tuple(x + v1 for x in rb)
                # the X1 part fixes the family, so families never collide
                assert sum(1 for x in block if x < v1) == i
                tagged.append((block, i))
    assert len(tagged) == expected
    tagged.sort()
    design = BlockDesign(part.v, k, tuple(b for b, _ in tagged))
    provenance = tuple((i, k - i) for _, i in tagged)
    return ComposedDesign(design, provenance, sol.Lambda, sol, part, t)


# -- verification --------------------------------------------------------------


@dataclass(frozen=True)
class CompositionReport:
    passed: bool
    exhaustive: bool
    subsets_checked: int
    simple: bool
    count_identity: bool
    duplicate: Optional[tuple[int, ...]] = None
    # (t-subset, family i or None for the total, observed, expected)
    failures: tuple = ()

    def summary(self) -> str:
        lines = [
            f"passed={int(self.passed)} exhaustive={int(self.exhaustive)} "
            f"subsets_checked={self.subsets_checked} simple={int(self.simple)} "
            f"count_identity={int(self.count_identity)}"
        ]
        if self.duplicate is not None:
            lines.append("duplicate block " + " ".join(map(str, self.duplicate)))
        for T, fam, got, want in self.failures:
            where = "total" if fam is None else f"family {fam}"
            lines.append(f"{where}: t-subset {' '.join(map(str, T))} in {got} blocks, expected {want}")
        return "\n".join(lines) + "\n"


def family_expectation(cd: ComposedDesign, i: int, s: int) -> Fraction:
    """Blocks of family i through one t-subset meeting X1 in s points."""
    sol, t = cd.solution, cd.t
    k = len(sol.u) - 1
    v1, v2 = cd.partition.v1, cd.partition.v2
    j = k - i
    lidx = sol.left[i - t - 1] if i > t else None
    ridx = sol.right[j - t - 1] if j > t else None
    return slot_lambda_s(v1, i, t, s, lidx) * slot_lambda_s(v2, j, t, t - s, ridx)


def verify_composed(cd: ComposedDesign, t: int, part: PointPartition, *, exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                    samples: int = 2000, seed: int = 0, max_failures: int = 10) -> CompositionReport:
    """Per-family and total t-subset counts, simplicity and the block-count identity.

    Every t-subset is checked when there are at most ``exhaustive_limit`` of
    them; otherwise ``samples`` t-subsets drawn with a fixed seed are checked,
    which only certifies those subsets.
    """
    d = cd.design
    v, k = d.v, d.k
    dup = d.duplicate_block()
    count_ok = len(d) * binom(k, t) == cd.Lambda * binom(v, t)
    families = sorted(set(i for i, _ in cd.provenance))
    fam_of = np.array([i for i, _ in cd.provenance], dtype=np.int64)
    failures = []
    n_subsets = binom(v, t)
    exhaustive = n_subsets <= exhaustive_limit

    if exhaustive:
        subsets = np.array(list(combinations(range(v), t)), dtype=np.int64).reshape(-1, t)
        types = (subsets < part.v1).sum(axis=1)
        total = np.zeros(n_subsets, dtype=np.int64)
        for i in families:
            blocks = [b for b, f in zip(d.blocks, fam_of) if f == i]
            counts = t_subset_counts(d, t, blocks)
            total += counts
            want = np.array([family_expectation(cd, i, s) for s in range(t + 1)], dtype=object)[types]
            bad = np.flatnonzero(counts != want)
            for idx in bad[: max_failures - len(failures)]:
                failures.append((tuple(int(x) for x in subsets[idx]), i, int(counts[idx]), want[idx]))
        bad = np.flatnonzero(total != cd.Lambda)
        for idx in bad[: max(0, max_failures - len(failures))]:
            failures.append((tuple(int(x) for x in subsets[idx]), None, int(total[idx]), cd.Lambda))
        checked = n_subsets
    else:
        rng = random.Random(seed)
        masks = [sum(1 << x for x in b) for b in d.blocks]
        for _ in range(samples):
            T = tuple(sorted(rng.sample(range(v), t)))
            tm = sum(1 << x for x in T)
            s = sum(1 for x in T if x < part.v1)
            per = {i: 0 for i in families}
            for bm, f in zip(masks, fam_of):
                if bm & tm == tm:
                    per[int(f)] += 1
            for i in families:
                want = family_expectation(cd, i, s)
                if per[i] != want and len(failures) < max_failures:
                    failures.append((T, i, per[i], want))
            if sum(per.values()) != cd.Lambda and len(failures) < max_failures:
                failures.append((T, None, sum(per.values()), cd.Lambda))
        checked = samples

    passed = not failures and dup is None and count_ok
    return CompositionReport(passed, exhaustive, checked, dup is None, count_ok, dup, tuple(failures))


def write_provenance(cd: ComposedDesign, fh: TextIO) -> None:
    """One line per block of the lexicographically written design: index, i, k-i."""
    for idx, (i, j) in enumerate(cd.provenance):
        fh.write(f"{idx}\t{i}\t{j}\n")
