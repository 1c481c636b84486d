from __future__ import annotations

from itertools import combinations
from pathlib import Path

import pytest

from recdesign.combinatorics import lambda_max
from recdesign.design import BlockDesign, complement_blocks, supplement_blocks, verify_t_design
from recdesign.equations import LEFT
from recdesign.search import SearchSpace

DATA = Path(__file__).parent / "data"


def _design(v, k, blocks):
    return BlockDesign(v, k, tuple(sorted(tuple(sorted(b)) for b in blocks)))


def fano_plane() -> BlockDesign:
    return _design(7, 3, [(0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (0, 4, 5), (1, 5, 6), (0, 2, 6)])


def sqs8() -> BlockDesign:
    """Planes of AG(3,2): the Steiner quadruple system on 8 points."""
    pts = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    blocks = [q for q in combinations(range(8), 4)
              if all(sum(pts[i][d] for i in q) % 2 == 0 for d in range(3))]
    return _design(8, 4, blocks)


def affine_plane_3() -> BlockDesign:
    """Lines of AG(2,3): a 2-(9,3,1) design."""
    pts = [(x, y) for x in range(3) for y in range(3)]
    lines = set()
    for a, b in combinations(range(9), 2):
        p, q = pts[a], pts[b]
        c = pts.index(((-p[0] - q[0]) % 3, (-p[1] - q[1]) % 3))
        lines.add(tuple(sorted((a, b, c))))
    return _design(9, 3, lines)


def design_6_3_2() -> BlockDesign:
    return _design(6, 3, [(0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
                          (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5)])


def _build_library():
    lib: dict[tuple[int, int, int], dict[int, BlockDesign]] = {}
    for d, ts in ((fano_plane(), (2,)), (sqs8(), (2, 3)), (affine_plane_3(), (2,)), (design_6_3_2(), (2,))):
        for t in ts:
            supp = supplement_blocks(d)
            for x in (d, complement_blocks(d), supp, complement_blocks(supp)):
                rep = verify_t_design(x, t)
                if rep.is_t_design and rep.lambda_t:
                    lib.setdefault((t, x.v, x.k), {}).setdefault(rep.lambda_t, x)
    return lib


LIBRARY = _build_library()


def available_indices(t, v, k):
    """Indices we hold a concrete simple design for, including the complete one."""
    return sorted(set(LIBRARY.get((t, v, k), {})) | {lambda_max(t, k, v)})


def library_space(sys_) -> SearchSpace:
    """Full search space cut down to indices with a design in LIBRARY."""
    sp = SearchSpace.full(sys_)
    for side, j in list(sp.values):
        v_side = sys_.v1 if side == LEFT else sys_.v2
        sp = sp.restrict(sys_, side, j, [0] + available_indices(sys_.t, v_side, j))
    return sp


def library_ingredients(sol, t, v1, v2):
    """Left/right design maps for a solution, using LIBRARY (complete ones are implicit)."""
    k = len(sol.u) - 1
    left, right = {}, {}
    for i, ui in enumerate(sol.u):
        if not ui:
            continue
        j = k - i
        if i > t:
            lam = sol.left[i - t - 1]
            if (t, v1, i) in LIBRARY and lam in LIBRARY[(t, v1, i)]:
                left[i] = LIBRARY[(t, v1, i)][lam]
        if j > t:
            lam = sol.right[j - t - 1]
            if (t, v2, j) in LIBRARY and lam in LIBRARY[(t, v2, j)]:
                right[j] = LIBRARY[(t, v2, j)][lam]
    return left, right


# (t, k, v1, v2) where library ingredients give non-trivial solutions
ORACLE_INSTANCES = [
    (2, 4, 5, 9), (2, 4, 9, 5), (2, 5, 4, 6), (2, 5, 4, 7), (2, 5, 6, 6),
    (2, 5, 6, 7), (2, 5, 7, 8), (2, 5, 8, 7), (2, 6, 4, 7), (2, 6, 5, 7),
    (2, 6, 5, 8), (2, 6, 8, 5), (2, 6, 6, 6), (2, 6, 6, 7), (2, 6, 7, 7),
    (2, 6, 7, 8), (2, 6, 7, 9), (2, 6, 9, 7), (2, 6, 8, 8), (3, 6, 8, 8),
]


@pytest.fixture
def fano():
    return fano_plane()


@pytest.fixture
def sqs():
    return sqs8()


@pytest.fixture
def data_dir():
    return DATA


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
