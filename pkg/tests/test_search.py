import io
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from recdesign.catalog import Catalog, CatalogEntry, load_catalog
from recdesign.combinatorics import lambda_max, lim_bound
from recdesign.equations import LEFT, RIGHT, build_system, evaluate_rows
from recdesign.search import (
    SearchSpace,
    Solution,
    SolutionParseError,
    admissible_values,
    check_solution,
    enumerate_solutions,
    exhaustive_solutions,
    filter_by_catalog,
    format_solution,
    parse_solution_line,
    read_solutions,
    report_lim_partition,
    solution_from_indices,
    trivial_solution,
)

TEN_K10 = [
    (542, 0, 5, 6, 60, 210, 990), (621, 0, 6, 0, 126, 75, 135), (645, 0, 6, 6, 78, 275, 495),
    (669, 0, 6, 12, 30, 475, 855), (748, 0, 7, 6, 96, 340, 0), (772, 0, 7, 12, 48, 540, 360),
    (932, 0, 9, 0, 192, 60, 720), (956, 0, 9, 6, 144, 260, 1080), (1304, 1, 0, 66, 112, 100, 792),
    (1328, 1, 0, 72, 64, 300, 1152),
]

# small enough that the unpruned enumeration over the full grid is quick
SMALL = [(2, 3, 3, 3), (2, 3, 4, 4), (2, 3, 3, 5), (2, 4, 4, 4), (2, 4, 5, 5), (2, 4, 3, 6),
         (2, 5, 4, 4), (2, 5, 5, 5), (3, 4, 4, 4), (3, 5, 4, 5), (3, 4, 3, 6), (2, 4, 6, 6),
         (3, 4, 5, 2), (3, 5, 6, 2), (2, 4, 1, 5)]


def full_grid_size(sys_, space):
    n = 2 ** (sys_.k + 1)
    for vals in space.values.values():
        n *= len(vals)
    return n


def test_admissible_values():
    assert admissible_values(5, 7, 18) == (0, 6, 12, 18, 24, 30, 36, 42, 48, 54, 60, 66, 72, 78)
    assert admissible_values(2, 3, 7) == (0, 1, 2, 3, 4, 5)


@pytest.mark.parametrize("case", SMALL)
def test_pruned_equals_exhaustive(case):
    sys_ = build_system(*case)
    space = SearchSpace.full(sys_)
    assert full_grid_size(sys_, space) < 10**6
    pruned = list(enumerate_solutions(sys_, space))
    assert pruned == exhaustive_solutions(sys_, space)
    assert pruned, "the complete design is always a solution"
    assert sum(s.trivial for s in pruned) == 1
    for sol in pruned:
        assert check_solution(sys_, sol).ok


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(SMALL), st.data())
def test_pruned_equals_exhaustive_on_random_subgrids(case, data):
    sys_ = build_system(*case)
    space = SearchSpace.full(sys_)
    for (side, j), vals in sorted(space.values.items()):
        keep = data.draw(st.lists(st.sampled_from(vals), unique=True, min_size=1))
        space = space.restrict(sys_, side, j, keep)
    for i in sorted(space.selectors):
        space = space.fix_selector(sys_, i, data.draw(st.sampled_from([(0,), (1,), (0, 1)])))
    assert list(enumerate_solutions(sys_, space)) == exhaustive_solutions(sys_, space)


@pytest.mark.parametrize("case", [(2, 4, 4), (2, 4, 5), (2, 5, 5), (3, 5, 5), (2, 6, 5), (5, 10, 18)])
def test_symmetric_mode(case):
    t, k, v = case
    sys_ = build_system(t, k, v, v)
    general = list(enumerate_solutions(sys_))
    sym = list(enumerate_solutions(sys_, SearchSpace.full(sys_, symmetric=True)))
    assert all(s.is_symmetric() for s in sym)
    assert sym == [s for s in general if s.is_symmetric()]


def test_symmetric_requires_equal_halves():
    sys_ = build_system(2, 4, 4, 5)
    with pytest.raises(ValueError):
        SearchSpace.full(sys_, symmetric=True)


def test_36_point_k10_counts():
    sys_ = build_system(5, 10, 18, 18)
    sols = list(enumerate_solutions(sys_, SearchSpace.full(sys_, symmetric=True)))
    below, above = report_lim_partition(sols, 5, 10, 36)
    assert (len(sols), len(below)) == (75, 37)
    assert [s.m for s in sols if s.trivial] == [2697]
    assert len({s.m for s in sols}) == 75


def test_ten_k10_rows_found_in_restricted_space():
    sys_ = build_system(5, 10, 18, 18)
    space = SearchSpace.full(sys_, symmetric=True)
    for col, j in enumerate(range(6, 11)):
        space = space.restrict(sys_, LEFT, j, {0} | {row[2 + col] for row in TEN_K10})
    found = {s.m for s in enumerate_solutions(sys_, space)}
    assert {row[0] for row in TEN_K10} <= found


def test_35_point_uniqueness():
    sys_ = build_system(4, 8, 17, 18)
    sols = list(enumerate_solutions(sys_))
    assert [s.m for s in sols] == [448, 451, 899]
    first = sols[0]
    assert first.left == (13, 0, 264, 320) and first.right == (14, 0, 336, 448)
    assert first.Lambda == 448 * 35 and first.u[4] == 0
    # the other non-trivial one is the supplement image: all indices complemented to lambda_max
    mirror = sols[1]
    assert mirror.m == 899 - 448 > lim_bound(4, 8, 35)
    below, _ = report_lim_partition(sols, 4, 8, 35)
    assert [s for s in below if not s.trivial] == [first]


def test_workers_do_not_change_output():
    for case, sym in (((5, 10, 18, 18), True), ((2, 5, 5, 5), False), ((4, 8, 17, 18), False)):
        sys_ = build_system(*case)
        space = SearchSpace.full(sys_, symmetric=sym)
        one = list(enumerate_solutions(sys_, space, workers=1))
        assert list(enumerate_solutions(sys_, space, workers=3)) == one
        assert list(enumerate_solutions(sys_, space, limit=4)) == one[:4]


def test_search_space_checks():
    sys_ = build_system(5, 10, 18, 18)
    space = SearchSpace.full(sys_)
    with pytest.raises(ValueError, match="not an admissible"):
        space.restrict(sys_, LEFT, 7, [5])
    with pytest.raises(ValueError, match="not a free slot"):
        space.restrict(sys_, LEFT, 5, [1])
    with pytest.raises(ValueError):
        space.fix_selector(sys_, 0, [0])
    clamped = space.clamp(sys_, RIGHT, 8, 10, 20)
    assert clamped.values[(RIGHT, 8)] == (10, 12, 14, 16, 18, 20)
    sym = SearchSpace.full(sys_, symmetric=True).restrict(sys_, LEFT, 6, [0, 4])
    assert sym.values[(RIGHT, 6)] == (0, 4)


def test_trivial_solution_and_flags():
    for case in [(2, 3, 4, 4), (5, 10, 18, 18), (4, 8, 17, 18), (3, 7, 4, 9)]:
        sys_ = build_system(*case)
        sol = trivial_solution(sys_)
        t, k, v1, v2 = case
        assert sol.trivial and sol.Lambda == lambda_max(t, k, v1 + v2)
        assert check_solution(sys_, sol).ok


def test_check_solution_failures():
    sys_ = build_system(5, 11, 18, 18)
    good = solution_from_indices(sys_, {7: 54, 8: 16, 9: 240, 10: 1224}, {6: 8, 7: 12, 8: 108, 9: 360})
    rep = check_solution(sys_, good)
    assert rep.ok and good.Lambda == 11832 * 21 and not good.is_symmetric()
    for pos in range(len(good.left)):
        if good.left[pos]:
            left = list(good.left)
            left[pos] += 1
            rep = check_solution(sys_, Solution(good.u, tuple(left), good.right, good.Lambda, good.m))
            assert not rep.ok
    # an index that is not a multiple of lambda_min is flagged as malformed
    bad = Solution(good.u, (55,) + good.left[1:], good.right, good.Lambda, good.m)
    assert check_solution(sys_, bad).malformed
    wrong_lambda = Solution(good.u, good.left, good.right, good.Lambda + 21, good.m)
    assert "Lambda" in check_solution(sys_, wrong_lambda).error
    wrong_m = Solution(good.u, good.left, good.right, good.Lambda, good.m + 1)
    assert "m =" in check_solution(sys_, wrong_m).error
    shape = Solution(good.u[:-1], good.left, good.right, good.Lambda, good.m)
    assert check_solution(sys_, shape).malformed


def _everything(t, v_side, sizes):
    from recdesign.combinatorics import m_max

    return Catalog(CatalogEntry(t, v_side, j, frozenset(range(1, m_max(t, j, v_side) + 1))) for j in sizes)


def test_filter_by_catalog():
    sys_ = build_system(5, 10, 18, 18)
    sols = list(enumerate_solutions(sys_, SearchSpace.full(sys_, symmetric=True)))
    cat = load_catalog(io.StringIO("5 18 6 : 4 5 6 7 8 9 13\n"))
    kept = list(filter_by_catalog(sols, cat, 5, 18, 18))
    assert all(s.left[0] in (0, 4, 5, 6, 7, 8, 9, 13) for s in kept)
    assert all(s.catalog in ("existent", "unknown") for s in kept)
    assert list(filter_by_catalog(sols, cat, 5, 18, 18, strict=True)) == [
        s for s in kept if s.catalog == "existent"
    ]
    everything = _everything(5, 18, range(6, 11))
    assert [s.m for s in filter_by_catalog(sols, everything, 5, 18, 18)] == [s.m for s in sols]
    empty7 = Catalog([CatalogEntry(5, 18, 7, frozenset())])
    assert all(s.left[1] == 0 and s.right[1] == 0 for s in filter_by_catalog(sols, empty7, 5, 18, 18))


def test_catalog_keeps_exactly_the_ten_k10_solutions(data_dir):
    """The test catalog lists the 18-point multipliers used by the ten k=10 reference solutions (plus complete designs)."""
    from recdesign.catalog import read_catalog_file

    sys_ = build_system(5, 10, 18, 18)
    sols = list(enumerate_solutions(sys_, SearchSpace.full(sys_, symmetric=True)))
    kept = list(filter_by_catalog(sols, read_catalog_file(data_dir / "k10_ten.cat"), 5, 18, 18))
    assert sorted(s.m for s in kept if not s.trivial) == [row[0] for row in TEN_K10]


def test_lim_partition_boundaries():
    def fake(m):
        return Solution((1,), (), (), m * 63, m)

    below, above = report_lim_partition([fake(542), fake(1348), fake(1349)], 5, 10, 36)
    assert [s.m for s in below] == [542, 1348] and [s.m for s in above] == [1349]
    assert report_lim_partition([], 5, 10, 36) == ([], [])
    assert trivial_solution(build_system(5, 10, 18, 18)).m > lim_bound(5, 10, 36)


def test_format_roundtrip():
    sys_ = build_system(4, 8, 17, 18)
    for sol in enumerate_solutions(sys_):
        line = format_solution(sol)
        assert parse_solution_line(line) == sol
    odd = Solution((1, 0, 1), (3,), (0,), 7, Fraction(7, 3), False, "unknown")
    assert parse_solution_line(format_solution(odd)) == odd
    text = "# header\n\n" + format_solution(odd) + "\n"
    assert read_solutions(io.StringIO(text)) == [(3, odd)]


@pytest.mark.parametrize("line", [
    "1\t2\t3",
    "x\t1\t11\t1\t1\t0\t-",
    "1\t1\t12\t1\t1\t0\t-",
    "1\t1\t11\t1,a\t1\t0\t-",
    "1\t1\t11\t1\t1\t2\t-",
])
def test_parse_errors(line):
    with pytest.raises(SolutionParseError, match="line 9"):
        parse_solution_line(line, 9)


def test_evaluate_rows_consistent_with_lambda():
    sys_ = build_system(4, 8, 17, 18)
    for sol in enumerate_solutions(sys_):
        assert evaluate_rows(sys_, sol) == [sol.Lambda] * 5


@pytest.mark.slow
@pytest.mark.parametrize("k,total,le_lim", [(12, 5330, 3261), (13, 3508, 2427)])
def test_36_point_symmetric_counts(k, total, le_lim):
    sys_ = build_system(5, k, 18, 18)
    sols = list(enumerate_solutions(sys_, SearchSpace.full(sys_, symmetric=True)))
    below, _ = report_lim_partition(sols, 5, k, 36)
    assert (len(sols), len(below)) == (total, le_lim)
