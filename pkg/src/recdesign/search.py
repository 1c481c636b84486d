"""Enumerate every selector/index assignment that makes all rows equal.

Each pair i contributes ``z_i * w_i`` to the row vector, where ``w_i`` is a
fixed rational vector and ``z_i`` is the pair value: the selector u_i, a
single ingredient index, or the product of two indices. Equal rows is then a
homogeneous linear system in the z's. We pick rank-many pivot variables
(the ones with the largest value sets), express them as exact affine
functions of the remaining free variables, and run a depth-first search over
the free variables. At every node each pivot has an exact interval of
attainable values given the unassigned variables; branches whose pivot
interval misses the pivot's admissible range are cut. At the leaves the
pivots are solved for and looked up.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left, bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Optional, Sequence, Union

from .catalog import EXISTENT, UNKNOWN, Catalog
from .combinatorics import lambda_max, lambda_min, lim_bound
from .equations import LEFT, RIGHT, EqualitySystem, InconsistentAssignment, SlotKind, evaluate_rows

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Solution:
    u: tuple[int, ...]
    left: tuple[int, ...]  # lambda^{(j)}_t, j = t+1..k; 0 when unused
    right: tuple[int, ...]  # lambdabar^{(j)}_t, j = t+1..k; 0 when unused
    Lambda: int
    m: Number
    trivial: bool = False
    catalog: str = "-"

    def sort_key(self):
        return (self.Lambda, self.left, self.right, self.u)

    def is_symmetric(self) -> bool:
        return self.left == self.right and self.u == self.u[::-1]

    def left_index(self, t: int, j: int) -> int:
        return self.left[j - t - 1]

    def right_index(self, t: int, j: int) -> int:
        return self.right[j - t - 1]


# -- search space -------------------------------------------------------------


def _slot_v(sys: EqualitySystem, side: str) -> int:
    return sys.v1 if side == LEFT else sys.v2


def admissible_values(t: int, j: int, v_side: int) -> tuple[int, ...]:
    """0 plus every multiple of lambda_min up to lambda_max."""
    lmin = lambda_min(t, j, v_side)
    return (0,) + tuple(range(lmin, lambda_max(t, j, v_side) + 1, lmin))


@dataclass(frozen=True)
class SearchSpace:
    # sorted admissible values (0 means "slot unused") per free slot (side, j)
    values: dict = field(default_factory=dict)
    # allowed selector values for pairs whose two slots are both complete
    selectors: dict = field(default_factory=dict)
    symmetric: bool = False

    @classmethod
    def full(cls, sys: EqualitySystem, symmetric: bool = False) -> "SearchSpace":
        if symmetric and sys.v1 != sys.v2:
            raise ValueError("symmetric mode needs v1 == v2")
        values = {}
        for side in (LEFT, RIGHT):
            for j in sys.free_sizes(side):
                values[(side, j)] = admissible_values(sys.t, j, _slot_v(sys, side))
        selectors = {i: (0, 1) for i in range(sys.k + 1) if sys.pair_kind(i) == "u"}
        return cls(values, selectors, symmetric)

    def _check(self, sys: EqualitySystem, side: str, j: int, vals: Iterable[int]) -> tuple[int, ...]:
        if (side, j) not in self.values:
            raise ValueError(f"{side} slot {j} is not a free slot of this system")
        v_side = _slot_v(sys, side)
        lmin, lmax = lambda_min(sys.t, j, v_side), lambda_max(sys.t, j, v_side)
        out = tuple(sorted(set(vals)))
        for x in out:
            if x and (x % lmin or not 0 < x <= lmax):
                raise ValueError(
                    f"{x} is not an admissible index for {sys.t}-({v_side},{j},.) "
                    f"(multiples of {lmin} up to {lmax})"
                )
        return out

    def restrict(self, sys: EqualitySystem, side: str, j: int, vals: Iterable[int]) -> "SearchSpace":
        """Replace the value set of a slot; include 0 to keep the slot optional."""
        vals = self._check(sys, side, j, vals)
        new = dict(self.values)
        sides = (LEFT, RIGHT) if self.symmetric else (side,)
        for sd in sides:
            new[(sd, j)] = vals
        return replace(self, values=new)

    def clamp(self, sys: EqualitySystem, side: str, j: int, lo: int, hi: int) -> "SearchSpace":
        """Keep admissible values in [lo, hi]; 0 survives only when lo == 0."""
        kept = [x for x in self.values[(side, j)] if lo <= x <= hi]
        return self.restrict(sys, side, j, kept)

    def fix_selector(self, sys: EqualitySystem, i: int, vals: Iterable[int]) -> "SearchSpace":
        """Restrict u_i for a pair of two complete slots (and u_{k-i} in symmetric mode)."""
        if i not in self.selectors:
            raise ValueError(f"pair {i} has no free selector")
        new = dict(self.selectors)
        allowed = tuple(sorted(set(vals) & {0, 1}))
        for idx in ((i, sys.k - i) if self.symmetric else (i,)):
            new[idx] = allowed
        return replace(self, selectors=new)

    def allows(self, side: str, j: int, val: int) -> bool:
        return val in self.values.get((side, j), (0,))


# -- variables of the linear problem ----------------------------------------------


@dataclass
class _Var:
    vector: tuple[Fraction, ...]
    # pair value -> list of payloads; a payload is a tuple of (what, index, value)
    options: dict


def _add_option(options: dict, z: int, payload: tuple) -> None:
    options.setdefault(z, []).append(payload)


def _pair_options(sys: EqualitySystem, space: SearchSpace, i: int) -> dict:
    k = sys.k
    kind = sys.pair_kind(i)
    opts: dict = {}
    if kind == "u":
        for ui in space.selectors.get(i, (0, 1)):
            _add_option(opts, ui, ((("u", i, 1),) if ui else ()))
    elif kind == "x":
        for a in space.values[(LEFT, i)]:
            _add_option(opts, a, ((("u", i, 1), ("L", i, a)) if a else ()))
    elif kind == "y":
        for b in space.values[(RIGHT, k - i)]:
            _add_option(opts, b, ((("u", i, 1), ("R", k - i, b)) if b else ()))
    elif kind == "xy":
        lv, rv = space.values[(LEFT, i)], space.values[(RIGHT, k - i)]
        if 0 in lv and 0 in rv:
            _add_option(opts, 0, ())
        for a in lv:
            for b in rv:
                if a and b:
                    _add_option(opts, a * b, (("u", i, 1), ("L", i, a), ("R", k - i, b)))
    return opts


def _symmetric_options(sys: EqualitySystem, space: SearchSpace, i: int) -> dict:
    """Options for the coupled pairs i and k-i (i <= k-i) with equal indices on both sides."""
    k = sys.k
    j = k - i
    kind = sys.pair_kind(i)
    opts: dict = {}
    if kind == "u":
        allowed = set(space.selectors.get(i, (0, 1))) & set(space.selectors.get(j, (0, 1)))
        for ui in sorted(allowed):
            _add_option(opts, ui, ((("u", i, 1), ("u", j, 1)) if ui else ()))
    elif kind == "y":
        for a in space.values[(LEFT, j)]:
            if a and not space.allows(RIGHT, j, a):
                continue
            pay = (("u", i, 1), ("u", j, 1), ("L", j, a), ("R", j, a)) if a else ()
            _add_option(opts, a, pay)
    elif kind == "xy":
        lv = space.values[(LEFT, i)]
        rv = space.values[(LEFT, j)]
        if i == j:
            for a in lv:
                pay = (("u", i, 1), ("L", i, a), ("R", i, a)) if a else ()
                _add_option(opts, a * a, pay)
        else:
            if 0 in lv and 0 in rv:
                _add_option(opts, 0, ())
            for a in lv:
                for b in rv:
                    if a and b:
                        pay = (("u", i, 1), ("u", j, 1), ("L", i, a), ("R", i, a), ("L", j, b), ("R", j, b))
                        _add_option(opts, a * b, pay)
    return opts


def build_variables(sys: EqualitySystem, space: SearchSpace) -> list[_Var]:
    out = []
    if space.symmetric:
        if sys.v1 != sys.v2:
            raise ValueError("symmetric mode needs v1 == v2")
        for i in range(sys.k // 2 + 1):
            j = sys.k - i
            if sys.pair_kind(i) == "impossible":
                continue
            vec = sys.pair_vector(i)
            if j != i:
                vec = tuple(a + b for a, b in zip(vec, sys.pair_vector(j)))
            out.append(_Var(vec, _symmetric_options(sys, space, i)))
    else:
        for i in range(sys.k + 1):
            if sys.pair_kind(i) == "impossible":
                continue
            out.append(_Var(sys.pair_vector(i), _pair_options(sys, space, i)))
    return out


# -- exact linear algebra --------------------------------------------------------


def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _solve(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(mat)
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c] / aug[c][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [aug[r][n] / aug[r][r] for r in range(n)]


@dataclass
class _Plan:
    """Everything the depth-first search needs, as plain ints (picklable)."""

    n: int
    diff: list[list[int]]  # t rows of integer difference coefficients, one column per variable
    head: list[int]  # scaled contribution to row 0
    zvals: list[list[int]]  # sorted distinct values per variable
    pivots: list[int]
    free: list[int]  # depth order
    gains: list[list[int]]  # gains[d][p]: delta * dz_pivot[p] / dz_free[d]
    delta: int
    piv_lo: list[int]
    piv_hi: list[int]
    piv_sets: list[frozenset]
    suf_lo: list[list[int]]
    suf_hi: list[list[int]]


def make_plan(variables: Sequence[_Var]) -> _Plan:
    n = len(variables)
    if n == 0:
        return _Plan(0, [], [], [], [], [], [], 1, [], [], [], [[]], [[]])
    nrows = len(variables[0].vector)
    scale = lcm(*(c.denominator for var in variables for c in var.vector))
    w = [[int(c * scale) for c in var.vector] for var in variables]
    diff = [[w[j][s] - w[j][0] for j in range(n)] for s in range(1, nrows)]
    head = [w[j][0] for j in range(n)]
    zvals = [sorted(var.options) for var in variables]

    # pivots: the largest value sets, as long as they stay independent
    a = [[Fraction(x) for x in row] for row in diff]
    order = sorted(range(n), key=lambda j: (-len(zvals[j]), j))
    pivots: list[int] = []
    rank = 0
    for j in order:
        cand = pivots + [j]
        r = _rank([[row[c] for c in cand] for row in a]) if a else 0
        if r > rank:
            pivots, rank = cand, r
    free = [j for j in range(n) if j not in pivots]

    rows_sel: list[int] = []
    for s in range(len(a)):
        cand = rows_sel + [s]
        if _rank([[a[r][c] for c in pivots] for r in cand]) == len(cand):
            rows_sel = cand
        if len(rows_sel) == rank:
            break
    mat = [[a[r][c] for c in pivots] for r in rows_sel]
    g = {}
    for f in free:
        g[f] = _solve(mat, [-a[r][f] for r in rows_sel]) if pivots else []
    delta = lcm(1, *(x.denominator for f in free for x in g[f]))

    def weight(f):
        zmax = max(abs(zvals[f][0]), abs(zvals[f][-1])) if zvals[f] else 0
        return max((abs(x) * zmax for x in g[f]), default=0)

    free.sort(key=lambda f: (-weight(f), f))
    gains = [[int(x * delta) for x in g[f]] for f in free]
    piv_lo = [delta * zvals[p][0] if zvals[p] else 0 for p in pivots]
    piv_hi = [delta * zvals[p][-1] if zvals[p] else -1 for p in pivots]
    piv_sets = [frozenset(zvals[p]) for p in pivots]

    npiv = len(pivots)
    suf_lo = [[0] * npiv for _ in range(len(free) + 1)]
    suf_hi = [[0] * npiv for _ in range(len(free) + 1)]
    for d in range(len(free) - 1, -1, -1):
        zs = zvals[free[d]]
        for p in range(npiv):
            ends = (zs[0] * gains[d][p], zs[-1] * gains[d][p]) if zs else (0, 0)
            suf_lo[d][p] = suf_lo[d + 1][p] + min(ends)
            suf_hi[d][p] = suf_hi[d + 1][p] + max(ends)
    return _Plan(n, diff, head, zvals, pivots, free, gains, delta, piv_lo, piv_hi, piv_sets, suf_lo, suf_hi)


def _z_window(plan: _Plan, d: int, acc: list[int]) -> tuple[Fraction, Fraction]:
    """Range of the free variable at depth d that keeps every pivot reachable."""
    lo, hi = None, None
    nxt_lo, nxt_hi = plan.suf_lo[d + 1], plan.suf_hi[d + 1]
    for p, gain in enumerate(plan.gains[d]):
        # need piv_lo <= acc + z*gain + rest <= piv_hi for some rest in [nxt_lo, nxt_hi]
        need_lo = plan.piv_lo[p] - acc[p] - nxt_hi[p]
        need_hi = plan.piv_hi[p] - acc[p] - nxt_lo[p]
        if gain == 0:
            if need_lo > 0 or need_hi < 0:
                return Fraction(1), Fraction(0)
            continue
        a, b = Fraction(need_lo, gain), Fraction(need_hi, gain)
        if gain < 0:
            a, b = b, a
        lo = a if lo is None else max(lo, a)
        hi = b if hi is None else min(hi, b)
    return lo, hi


def _leaf(plan: _Plan, acc: list[int], zfree: list[int], out: list) -> None:
    z = [0] * plan.n
    for p, piv in enumerate(plan.pivots):
        val = acc[p]
        if val % plan.delta:
            return
        val //= plan.delta
        if val not in plan.piv_sets[p]:
            return
        z[piv] = val
    for d, f in enumerate(plan.free):
        z[f] = zfree[d]
    if any(sum(c * x for c, x in zip(row, z)) for row in plan.diff):
        return
    if sum(c * x for c, x in zip(plan.head, z)) <= 0:
        return
    out.append(tuple(z))


def _dfs(plan: _Plan, d: int, acc: list[int], zfree: list[int], out: list) -> None:
    if d == len(plan.free):
        _leaf(plan, acc, zfree, out)
        return
    zs = plan.zvals[plan.free[d]]
    lo, hi = _z_window(plan, d, acc)
    start = 0 if lo is None else bisect_left(zs, lo)
    stop = len(zs) if hi is None else bisect_right(zs, hi)
    gains = plan.gains[d]
    for idx in range(start, stop):
        z = zs[idx]
        zfree.append(z)
        _dfs(plan, d + 1, [a + z * g for a, g in zip(acc, gains)], zfree, out)
        zfree.pop()


def _run_subtrees(args) -> list:
    plan, firsts = args
    out: list = []
    gains = plan.gains[0]
    for z in firsts:
        _dfs(plan, 1, [z * g for g in gains], [z], out)
    return out


def solve_plan(plan: _Plan, workers: int = 1) -> list[tuple[int, ...]]:
    """All z-vectors satisfying the plan, sorted."""
    if plan.n == 0:
        return []
    npiv = len(plan.pivots)
    if not plan.free or workers <= 1:
        out: list = []
        _dfs(plan, 0, [0] * npiv, [], out)
        return sorted(out)
    zs = plan.zvals[plan.free[0]]
    lo, hi = _z_window(plan, 0, [0] * npiv)
    start = 0 if lo is None else bisect_left(zs, lo)
    stop = len(zs) if hi is None else bisect_right(zs, hi)
    firsts = zs[start:stop]
    chunks = [firsts[w::workers] for w in range(workers) if firsts[w::workers]]
    results: list = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_run_subtrees, [(plan, c) for c in chunks]):
            results.extend(part)
    return sorted(results)


# -- public operations -------------------------------------------------------------


def is_trivial(sys: EqualitySystem, u: Sequence[int], left: Sequence[int], right: Sequence[int]) -> bool:
    """Every formable pair selected and every used free slot holds its complete design."""
    t, k = sys.t, sys.k
    for i in range(k + 1):
        if sys.pair_kind(i) == "impossible":
            continue
        if not u[i]:
            return False
        lslot, rslot = sys.pair_slots(i)
        if lslot.kind is SlotKind.FREE and left[i - t - 1] != lambda_max(t, i, sys.v1):
            return False
        if rslot.kind is SlotKind.FREE and right[k - i - t - 1] != lambda_max(t, k - i, sys.v2):
            return False
    return True


def _multiplier(Lambda: int, t: int, k: int, v: int) -> Number:
    m = Fraction(Lambda, lambda_min(t, k, v))
    return m.numerator if m.denominator == 1 else m


def _assemble(sys: EqualitySystem, payloads: Iterable[tuple], Lambda: int) -> Solution:
    t, k = sys.t, sys.k
    u = [0] * (k + 1)
    left = [0] * (k - t)
    right = [0] * (k - t)
    for payload in payloads:
        for what, idx, val in payload:
            if what == "u":
                u[idx] = val
            elif what == "L":
                left[idx - t - 1] = val
            else:
                right[idx - t - 1] = val
    return Solution(
        tuple(u), tuple(left), tuple(right), Lambda,
        _multiplier(Lambda, t, k, sys.v), is_trivial(sys, u, left, right),
    )


def enumerate_solutions(
    sys: EqualitySystem, space: Optional[SearchSpace] = None, limit: Optional[int] = None, workers: int = 1
) -> Iterator[Solution]:
    """Every solution with a positive common row value, ordered by (Lambda, left, right, u)."""
    if space is None:
        space = SearchSpace.full(sys)
    variables = build_variables(sys, space)
    plan = make_plan(variables)
    sols = []
    for z in solve_plan(plan, workers):
        Lambda = sum((zj * var.vector[0] for zj, var in zip(z, variables)), Fraction(0))
        assert Lambda.denominator == 1
        choices = [var.options[zj] for zj, var in zip(z, variables)]
        for combo in itertools.product(*choices):
            sols.append(_assemble(sys, combo, Lambda.numerator))
    sols.sort(key=Solution.sort_key)
    if limit is not None:
        sols = sols[:limit]
    return iter(sols)


def exhaustive_solutions(sys: EqualitySystem, space: SearchSpace) -> list[Solution]:
    """Unpruned reference enumeration: every selector vector times every index choice.

    Only for tiny instances. Shares nothing with the pruned search except
    ``evaluate_rows``.
    """
    t, k = sys.t, sys.k
    sizes = range(t + 1, k + 1)
    found = []
    for u in itertools.product((0, 1), repeat=k + 1):
        if any(u[i] and sys.pair_kind(i) == "impossible" for i in range(k + 1)):
            continue
        if any(sys.pair_kind(i) == "u" and u[i] not in space.selectors.get(i, (0, 1)) for i in range(k + 1)):
            continue
        if space.symmetric and u != u[::-1]:
            continue
        choices_l, choices_r = [], []
        for j in sizes:
            for side, used, choices in ((LEFT, u[j], choices_l), (RIGHT, u[k - j], choices_r)):
                vals = space.values.get((side, j))
                if vals is None:
                    choices.append((0,))
                elif used:
                    choices.append(tuple(x for x in vals if x))
                else:
                    choices.append((0,) if 0 in vals else ())
        for left in itertools.product(*choices_l):
            for right in itertools.product(*choices_r):
                if space.symmetric and left != right:
                    continue
                cand = Solution(u, left, right, 0, 0)
                rows = evaluate_rows(sys, cand)
                if rows[0] > 0 and all(r == rows[0] for r in rows):
                    Lambda = rows[0].numerator
                    found.append(
                        Solution(u, left, right, Lambda, _multiplier(Lambda, t, k, sys.v),
                                 is_trivial(sys, u, left, right))
                    )
    found.sort(key=Solution.sort_key)
    return found


@dataclass(frozen=True)
class SolutionCheck:
    ok: bool
    rows: tuple[Fraction, ...] = ()
    error: Optional[str] = None
    malformed: bool = False


def check_solution(sys: EqualitySystem, sol: Solution) -> SolutionCheck:
    """Re-evaluate every row; malformed input is reported apart from unequal rows."""
    t, k = sys.t, sys.k
    try:
        rows = tuple(evaluate_rows(sys, sol))
    except InconsistentAssignment as exc:
        return SolutionCheck(False, (), str(exc), True)
    for i in range(k + 1):
        if not sol.u[i]:
            continue
        for side, j, v_side, val in (
            (LEFT, i, sys.v1, sol.left[i - t - 1] if i > t else None),
            (RIGHT, k - i, sys.v2, sol.right[k - i - t - 1] if k - i > t else None),
        ):
            if val is None:
                continue
            lmin, lmax = lambda_min(t, j, v_side), lambda_max(t, j, v_side)
            if val == 0 or val % lmin or val > lmax:
                return SolutionCheck(
                    False, rows,
                    f"{side} index {val} for {t}-({v_side},{j},.) is not a positive multiple "
                    f"of {lmin} up to {lmax}",
                    True,
                )
    if not all(r == rows[0] for r in rows):
        return SolutionCheck(False, rows, "rows differ")
    if rows[0] <= 0:
        return SolutionCheck(False, rows, "common value is not positive")
    if rows[0] != sol.Lambda:
        return SolutionCheck(False, rows, f"rows equal {rows[0]} but Lambda is given as {sol.Lambda}")
    if Fraction(sol.m) * lambda_min(t, k, sys.v) != sol.Lambda:
        return SolutionCheck(False, rows, f"m = {sol.m} does not match Lambda = {sol.Lambda}")
    return SolutionCheck(True, rows)


def solution_from_indices(
    sys: EqualitySystem,
    left: dict[int, int],
    right: Optional[dict[int, int]] = None,
    selectors: Optional[dict[int, int]] = None,
) -> Solution:
    """Build a Solution from per-slot index lists.

    A pair is selected when both of its slots are complete or carry a listed
    index. Pairs of two complete slots default to selected unless
    ``selectors`` says otherwise. ``right`` defaults to ``left``. Lambda is
    taken from row 0, so the result still has to pass :func:`check_solution`.
    """
    t, k = sys.t, sys.k
    right = dict(left) if right is None else right
    selectors = selectors or {}
    u = [0] * (k + 1)
    lvec = [0] * (k - t)
    rvec = [0] * (k - t)
    for i in range(k + 1):
        kind = sys.pair_kind(i)
        if kind == "impossible":
            continue
        if kind == "u":
            u[i] = selectors.get(i, 1)
            continue
        lok = i <= t or left.get(i, 0) > 0
        rok = k - i <= t or right.get(k - i, 0) > 0
        if lok and rok:
            u[i] = 1
            if i > t:
                lvec[i - t - 1] = left[i]
            if k - i > t:
                rvec[k - i - t - 1] = right[k - i]
    cand = Solution(tuple(u), tuple(lvec), tuple(rvec), 0, 0)
    row0 = evaluate_rows(sys, cand)[0]
    Lambda = row0.numerator if row0.denominator == 1 else 0
    return Solution(cand.u, cand.left, cand.right, Lambda, _multiplier(Lambda, t, k, sys.v),
                    is_trivial(sys, u, lvec, rvec))


def trivial_solution(sys: EqualitySystem) -> Solution:
    """All pairs selected with complete ingredients everywhere."""
    t = sys.t
    left = {j: lambda_max(t, j, sys.v1) for j in sys.free_sizes(LEFT)}
    right = {j: lambda_max(t, j, sys.v2) for j in sys.free_sizes(RIGHT)}
    return solution_from_indices(sys, left, right)


def filter_by_catalog(sols: Iterable[Solution], catalog: Catalog, t: int, v1: int, v2: int,
                      strict: bool = False) -> Iterator[Solution]:
    """Keep solutions whose ingredients are known to exist.

    A nonzero index in a family the catalog lists must be listed. Families the
    catalog does not mention are not held against a solution; it is kept with
    the flag ``unknown`` (dropped when ``strict``).
    """
    for sol in sols:
        flag = EXISTENT
        dropped = False
        for vals, v_side in ((sol.left, v1), (sol.right, v2)):
            for offset, lam in enumerate(vals):
                if not lam:
                    continue
                j = t + 1 + offset
                status = catalog.query(t, v_side, j, lam)
                if status == EXISTENT:
                    continue
                if (t, v_side, j) in catalog or strict:
                    dropped = True
                    break
                flag = UNKNOWN
            if dropped:
                break
        if not dropped:
            yield replace(sol, catalog=flag)


def report_lim_partition(sols: Iterable[Solution], t: int, k: int, v: int) -> tuple[list[Solution], list[Solution]]:
    lim = lim_bound(t, k, v)
    below, above = [], []
    for sol in sols:
        (below if sol.m <= lim else above).append(sol)
    return below, above


# -- text format ---------------------------------------------------------------------


def format_solution(sol: Solution) -> str:
    return "\t".join([
        str(sol.Lambda),
        str(sol.m),
        "".join(str(x) for x in sol.u),
        ",".join(str(x) for x in sol.left),
        ",".join(str(x) for x in sol.right),
        "1" if sol.trivial else "0",
        sol.catalog,
    ])


class SolutionParseError(ValueError):
    pass


def parse_solution_line(line: str, lineno: int = 0) -> Solution:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 7:
        raise SolutionParseError(f"line {lineno}: expected 7 tab-separated fields, got {len(fields)}")
    try:
        Lambda = int(fields[0])
        m = Fraction(fields[1])
        m = m.numerator if m.denominator == 1 else m
        if set(fields[2]) - {"0", "1"} or not fields[2]:
            raise ValueError("selector string must be 0/1")
        u = tuple(int(c) for c in fields[2])
        left = tuple(int(x) for x in fields[3].split(",")) if fields[3] else ()
        right = tuple(int(x) for x in fields[4].split(",")) if fields[4] else ()
        if fields[5] not in ("0", "1"):
            raise ValueError("trivial flag must be 0 or 1")
    except ValueError as exc:
        raise SolutionParseError(f"line {lineno}: {exc}") from None
    return Solution(u, left, right, Lambda, m, fields[5] == "1", fields[6])


def read_solutions(lines: Iterable[str]) -> list[tuple[int, Solution]]:
    """(line number, solution) for every non-comment, non-blank line."""
    out = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        out.append((lineno, parse_solution_line(line, lineno)))
    return out
