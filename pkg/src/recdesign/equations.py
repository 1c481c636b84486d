"""The system of index equalities for a split point set X = X1 u X2.

Pair ``i`` joins a design D_i with block size i on X1 and a design with block
size k-i on X2. For a t-subset meeting X1 in s points, pair i contributes
lambda^{(i)}_s * lambdabar^{(k-i)}_{t-s} blocks, and row s of the system is the
sum of those contributions over selected pairs. All rows must agree.

Unknowns follow the substitution x_i = u_i * lambda^{(i)}_t and
y_j = u_{k-j} * lambdabar^{(j)}_t, so selectors only survive on pairs where
both sides are complete designs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .combinatorics import binom

LEFT = "left"
RIGHT = "right"


class SlotKind(enum.Enum):
    COMPLETE = "complete"
    FREE = "free"
    IMPOSSIBLE = "impossible"


def slot_kind(v_side: int, block_size: int, t: int) -> SlotKind:
    if block_size > v_side:
        return SlotKind.IMPOSSIBLE
    if block_size <= t:
        return SlotKind.COMPLETE
    return SlotKind.FREE


@dataclass(frozen=True)
class IngredientSlot:
    side: str
    block_size: int
    v_side: int
    t: int

    @property
    def kind(self) -> SlotKind:
        return slot_kind(self.v_side, self.block_size, self.t)

    def lambda_s(self, s: int, lambda_t: Optional[int] = None) -> Fraction:
        return slot_lambda_s(self.v_side, self.block_size, self.t, s, lambda_t)


def slot_lambda_s(
    side_v: int, block_size: int, t: int, s: int, lambda_t_unknown: Optional[int] = None
) -> Fraction:
    """lambda_s of the ingredient in one slot.

    Complete slots hold the complete i-(v, i, 1) design, whose s-subsets lie
    in C(v-s, i-s) blocks. Free slots return C(v-s, t-s)/C(i-s, t-s) times the
    bound index, or the bare coefficient when the index is left symbolic.
    """
    if not 0 <= s <= t:
        raise ValueError(f"s must lie in 0..{t}, got {s}")
    kind = slot_kind(side_v, block_size, t)
    if kind is SlotKind.IMPOSSIBLE:
        return Fraction(0)
    if kind is SlotKind.COMPLETE:
        return Fraction(binom(side_v - s, block_size - s))
    coef = Fraction(binom(side_v - s, t - s), binom(block_size - s, t - s))
    return coef if lambda_t_unknown is None else coef * lambda_t_unknown


@dataclass(frozen=True)
class Term:
    """``coef`` times u_i, x_i, y_{k-i} or x_i * y_{k-i}, for pair i."""

    coef: Fraction
    kind: str  # "u", "x", "y" or "xy"
    pair: int

    def variable(self, k: int) -> str:
        i = self.pair
        return {"u": f"u_{i}", "x": f"x_{i}", "y": f"y_{k - i}", "xy": f"x_{i}*y_{k - i}"}[self.kind]


@dataclass(frozen=True)
class LambdaProduct:
    i: int
    s: int
    value: Fraction


@dataclass(frozen=True)
class EqualitySystem:
    t: int
    k: int
    v1: int
    v2: int
    rows: tuple[tuple[Term, ...], ...]
    forced_zero: frozenset[int]

    @property
    def v(self) -> int:
        return self.v1 + self.v2

    def left_slot(self, i: int) -> IngredientSlot:
        return IngredientSlot(LEFT, i, self.v1, self.t)

    def right_slot(self, j: int) -> IngredientSlot:
        return IngredientSlot(RIGHT, j, self.v2, self.t)

    def pair_slots(self, i: int) -> tuple[IngredientSlot, IngredientSlot]:
        return self.left_slot(i), self.right_slot(self.k - i)

    def pair_kind(self, i: int) -> str:
        if i in self.forced_zero:
            return "impossible"
        left, right = self.pair_slots(i)
        return {
            (SlotKind.COMPLETE, SlotKind.COMPLETE): "u",
            (SlotKind.FREE, SlotKind.COMPLETE): "x",
            (SlotKind.COMPLETE, SlotKind.FREE): "y",
            (SlotKind.FREE, SlotKind.FREE): "xy",
        }[(left.kind, right.kind)]

    @property
    def active_rows(self) -> tuple[int, ...]:
        """Rows s for which a t-subset with s points in X1 exists.

        When one half has fewer than t points some (s, t-s) shapes cannot
        occur; their rows are identically zero and impose nothing.
        """
        return tuple(s for s in range(self.t + 1) if s <= self.v1 and self.t - s <= self.v2)

    def pair_vector(self, i: int) -> tuple[Fraction, ...]:
        """Contribution of pair i to each active row per unit of its pair value."""
        out = []
        for s in self.active_rows:
            out.append(next((term.coef for term in self.rows[s] if term.pair == i), Fraction(0)))
        return tuple(out)

    def free_sizes(self, side: str) -> list[int]:
        v_side = self.v1 if side == LEFT else self.v2
        return [j for j in range(self.t + 1, self.k + 1) if slot_kind(v_side, j, self.t) is SlotKind.FREE]

    def dump(self) -> str:
        """Readable expansion of every row, ordered by s then pair index."""
        lines = []
        for s, row in enumerate(self.rows):
            parts = []
            for term in row:
                c = term.coef
                coef = str(c) if c.denominator == 1 else f"({c})"
                parts.append(f"{coef}*{term.variable(self.k)}")
            line = f"L_{{{s},{self.t - s}}} = " + (" + ".join(parts) if parts else "0")
            if s not in self.active_rows:
                line += "  (no such t-subsets, ignored)"
            lines.append(line)
        if self.forced_zero:
            lines.append("forced u_i = 0 for i in " + ", ".join(str(i) for i in sorted(self.forced_zero)))
        return "\n".join(lines) + "\n"


def build_system(t: int, k: int, v1: int, v2: int) -> EqualitySystem:
    if not (v1 + v2 > k > t >= 2):
        raise ValueError(f"need v1 + v2 > k > t >= 2, got t={t}, k={k}, v1={v1}, v2={v2}")
    if v1 < 0 or v2 < 0:
        raise ValueError("partition sizes must be non-negative")
    forced = frozenset(i for i in range(k + 1) if i > v1 or k - i > v2)
    rows = []
    for s in range(t + 1):
        row = []
        for i in range(k + 1):
            if i in forced or i < s or k - i < t - s:
                continue
            left = slot_lambda_s(v1, i, t, s)
            right = slot_lambda_s(v2, k - i, t, t - s)
            coef = left * right
            if coef == 0:
                continue
            lk = slot_kind(v1, i, t)
            rk = slot_kind(v2, k - i, t)
            kind = ("x" if lk is SlotKind.FREE else "") + ("y" if rk is SlotKind.FREE else "")
            row.append(Term(coef, kind or "u", i))
        rows.append(tuple(row))
    return EqualitySystem(t, k, v1, v2, tuple(rows), forced)


def lambda_product(sys: EqualitySystem, i: int, s: int, left_index: int = 0, right_index: int = 0) -> LambdaProduct:
    """Blocks of the family for pair i through one (s, t-s) t-subset."""
    left, right = sys.pair_slots(i)
    value = left.lambda_s(s, left_index) * right.lambda_s(sys.t - s, right_index)
    return LambdaProduct(i, s, value)


class InconsistentAssignment(ValueError):
    pass


def _check_assignment(sys: EqualitySystem, u: Sequence[int], left: Sequence[int], right: Sequence[int]) -> None:
    t, k = sys.t, sys.k
    if len(u) != k + 1 or len(left) != k - t or len(right) != k - t:
        raise InconsistentAssignment(
            f"expected {k + 1} selectors and {k - t} indices per side, "
            f"got {len(u)}, {len(left)}, {len(right)}"
        )
    for i, ui in enumerate(u):
        if ui not in (0, 1):
            raise InconsistentAssignment(f"u_{i} = {ui} is not binary")
        if ui and i in sys.forced_zero:
            raise InconsistentAssignment(f"u_{i} = 1 but pair ({i},{k - i}) cannot be formed")
    for offset, val in enumerate(left):
        j = t + 1 + offset
        if val and not u[j]:
            raise InconsistentAssignment(f"left index for block size {j} is {val} but u_{j} = 0")
    for offset, val in enumerate(right):
        j = t + 1 + offset
        if val and not u[k - j]:
            raise InconsistentAssignment(f"right index for block size {j} is {val} but u_{k - j} = 0")


def evaluate_rows(sys: EqualitySystem, assignment) -> list[Fraction]:
    """[L_{0,t}, ..., L_{t,0}] for an assignment with ``u``, ``left`` and ``right``.

    Only active rows are returned, so the list has t+1 entries unless one half
    of the point set has fewer than t points.
    """
    u, left, right = tuple(assignment.u), tuple(assignment.left), tuple(assignment.right)
    _check_assignment(sys, u, left, right)
    t, k = sys.t, sys.k
    x = {i: u[i] * left[i - t - 1] for i in range(t + 1, k + 1)}
    y = {j: u[k - j] * right[j - t - 1] for j in range(t + 1, k + 1)}
    out = []
    for s in sys.active_rows:
        row = sys.rows[s]
        total = Fraction(0)
        for term in row:
            i = term.pair
            if term.kind == "u":
                total += term.coef * u[i]
            elif term.kind == "x":
                total += term.coef * x[i]
            elif term.kind == "y":
                total += term.coef * y[k - i]
            else:
                total += term.coef * x[i] * y[k - i]
        out.append(total)
    return out
