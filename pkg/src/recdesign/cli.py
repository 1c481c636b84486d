"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import catalog as cat_mod
from .combinatorics import DesignParams, lambda_max, lambda_min, lambda_spectrum, lim_bound, m_max
from .composer import DEFAULT_MAX_BLOCKS, CompositionError, IngredientSet, compose, verify_composed, write_provenance
from .design import PointPartition, load_design, save_design, verify_t_design
from .equations import LEFT, RIGHT, build_system
from .search import (
    SearchSpace,
    SolutionParseError,
    check_solution,
    enumerate_solutions,
    filter_by_catalog,
    format_solution,
    read_solutions,
    report_lim_partition,
)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _out(args):
    if getattr(args, "output", None):
        return open(args.output, "w", newline="\n")
    return sys.stdout


# -- params -------------------------------------------------------------------------


def cmd_params(args) -> int:
    t, v, k = args.t, args.v, args.k
    if not v >= k >= t >= 0:
        raise UsageError(f"need v >= k >= t >= 0, got t={t}, v={v}, k={k}")
    lmin = lambda_min(t, k, v)
    lam = lmin
    if args.lam is not None:
        lam = args.lam
    elif args.m is not None:
        lam = args.m * lmin
    try:
        params = DesignParams(t, v, k, lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = sys.stdout
    out.write(f"params={t}-({v},{k})\n")
    out.write(f"lambda_min={lmin}\n")
    out.write(f"lambda_max={lambda_max(t, k, v)}\n")
    out.write(f"m_max={m_max(t, k, v)}\n")
    out.write(f"LIM={lim_bound(t, k, v)}\n")
    out.write(f"lambda={lam}\n")
    out.write(f"m={params.m}\n")
    for s, val in enumerate(lambda_spectrum(params)):
        out.write(f"lambda_{s}={val}\n")
    return OK


# -- solve ------------------------------------------------------------------------------


def _slot_arg(text: str) -> tuple[str, int, str]:
    """'L7=...' -> (left, 7, '...')."""
    head, sep, rest = text.partition("=")
    if not sep or len(head) < 2 or head[0].upper() not in "LR" or not head[1:].isdigit():
        raise UsageError(f"expected L<j>=... or R<j>=..., got {text!r}")
    return (LEFT if head[0].upper() == "L" else RIGHT), int(head[1:]), rest


def _build_space(args, sys_):
    space = SearchSpace.full(sys_, symmetric=args.symmetric)
    try:
        for item in args.restrict or ():
            side, j, rest = _slot_arg(item)
            space = space.restrict(sys_, side, j, (int(x) for x in rest.split(",") if x))
        for item in args.range or ():
            side, j, rest = _slot_arg(item)
            lo, sep, hi = rest.partition(":")
            if not sep:
                raise UsageError(f"range needs lo:hi, got {rest!r}")
            space = space.clamp(sys_, side, j, int(lo), int(hi))
        for item in args.selector or ():
            i, sep, vals = item.partition("=")
            if not sep:
                raise UsageError(f"selector needs i=values, got {item!r}")
            space = space.fix_selector(sys_, int(i), (int(x) for x in vals.split(",") if x))
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    return space


def cmd_solve(args) -> int:
    t, k, v1, v2 = args.t, args.k, args.v1, args.v2
    try:
        sys_ = build_system(t, k, v1, v2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.symmetric and v1 != v2:
        raise UsageError("--symmetric needs --v1 == --v2")
    space = _build_space(args, sys_)
    catalog = None
    if args.catalog:
        try:
            catalog = cat_mod.read_catalog_file(args.catalog)
        except OSError as exc:
            raise UsageError(f"cannot read catalog: {exc}") from None
        if args.closure:
            catalog = cat_mod.apply_closure(catalog)

    v = v1 + v2
    sols = list(enumerate_solutions(sys_, space, workers=args.workers))
    below, _ = report_lim_partition(sols, t, k, v)
    kept = sols
    if catalog is not None:
        kept = list(filter_by_catalog(sols, catalog, t, v1, v2, strict=args.strict_catalog))
    emit = [s for s in kept if not (args.le_lim and s.m > lim_bound(t, k, v))]
    if args.nontrivial:
        emit = [s for s in emit if not s.trivial]
    if args.limit is not None:
        emit = emit[: args.limit]

    out = _out(args)
    try:
        out.write(f"# solve t={t} k={k} v1={v1} v2={v2} symmetric={int(args.symmetric)}\n")
        for s in emit:
            out.write(format_solution(s) + "\n")
        nontrivial = [s for s in sols if not s.trivial]
        out.write(
            f"# total={len(sols)} nontrivial={len(nontrivial)} "
            f"le_lim={len(below)} nontrivial_le_lim={sum(1 for s in below if not s.trivial)} "
            f"catalog_pass={len(kept) if catalog is not None else '-'} "
            f"emitted={len(emit)} LIM={lim_bound(t, k, v)}\n"
        )
    finally:
        if out is not sys.stdout:
            out.close()
    if args.plot:
        from .report import plot_multipliers

        plot_multipliers(kept, t, k, v, args.plot)
    return OK


# -- verify-solution ---------------------------------------------------------------------


def _fmt_rows(rows) -> str:
    return ",".join(str(r) for r in rows)


def cmd_verify_solution(args) -> int:
    try:
        sys_ = build_system(args.t, args.k, args.v1, args.v2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        with open(args.file) as fh:
            entries = read_solutions(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    except SolutionParseError as exc:
        raise UsageError(str(exc)) from None
    passed = 0
    for lineno, sol in entries:
        rep = check_solution(sys_, sol)
        if rep.ok:
            passed += 1
            print(f"PASS line {lineno} Lambda={sol.Lambda} m={sol.m} rows={_fmt_rows(rep.rows)}")
        elif rep.malformed:
            print(f"MALFORMED line {lineno}: {rep.error}")
        else:
            print(f"FAIL line {lineno}: {rep.error} rows={_fmt_rows(rep.rows)}")
    print(f"# checked={len(entries)} passed={passed} failed={len(entries) - passed}")
    return OK if passed == len(entries) else FAILED


# -- compose -----------------------------------------------------------------------------


def _ingredient_args(items, v_side: int) -> dict:
    out = {}
    for item in items or ():
        j, sep, path = item.partition("=")
        if not sep or not j.isdigit():
            raise UsageError(f"expected <blocksize>=<file>, got {item!r}")
        try:
            d = load_design(path)
        except OSError as exc:
            raise UsageError(f"cannot read ingredient for block size {j}: {exc}") from None
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from None
        out[int(j)] = d
    return out


def cmd_compose(args) -> int:
    try:
        sys_ = build_system(args.t, args.k, args.v1, args.v2)
        with open(args.solutions) as fh:
            entries = read_solutions(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.solutions}: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not 0 <= args.index < len(entries):
        raise UsageError(f"solution index {args.index} out of range (file has {len(entries)})")
    lineno, sol = entries[args.index]
    rep = check_solution(sys_, sol)
    if not rep.ok:
        raise UsageError(f"solution on line {lineno} does not satisfy the equalities: {rep.error}")
    part = PointPartition(args.v1, args.v2)
    ing = IngredientSet(part, _ingredient_args(args.left, args.v1), _ingredient_args(args.right, args.v2))
    try:
        composed = compose(sol, ing, max_blocks=args.max_blocks)
    except CompositionError as exc:
        raise UsageError(str(exc)) from None
    save_design(composed.design, args.output)
    with open(args.output + ".prov", "w", newline="\n") as fh:
        write_provenance(composed, fh)
    report = verify_composed(composed, args.t, part)
    text = (
        f"design={args.t}-({part.v},{args.k},{composed.Lambda}) blocks={len(composed.design)}\n"
        + report.summary()
    )
    with open(args.output + ".report", "w", newline="\n") as fh:
        fh.write(text)
    sys.stdout.write(text)
    if args.plot:
        from .report import plot_family_counts

        plot_family_counts(composed, args.plot)
    return OK if report.passed else FAILED


# -- check-design ------------------------------------------------------------------------


def cmd_check_design(args) -> int:
    try:
        d = load_design(args.file)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    if not 0 <= args.t <= d.k:
        raise UsageError(f"t={args.t} must lie in 0..k={d.k}")
    rep = verify_t_design(d, args.t)
    dup = d.duplicate_block()
    print(f"v={d.v} k={d.k} b={len(d)} t={args.t}")
    print(f"simple={int(dup is None)}")
    if dup is not None:
        print("duplicate=" + " ".join(map(str, dup)))
    print(f"balanced={int(rep.is_t_design)}")
    if rep.is_t_design:
        print(f"lambda_t={rep.lambda_t}")
    else:
        T, got, want = rep.counterexample
        want = want.numerator if Fraction(want).denominator == 1 else want
        print(f"counterexample={' '.join(map(str, T))} count={got} expected={want}")
    return OK if rep.is_t_design and dup is None else FAILED


# -- catalog ---------------------------------------------------------------------------------


def _read_catalog(path):
    try:
        return cat_mod.read_catalog_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except cat_mod.CatalogError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_catalog_validate(args) -> int:
    cat = _read_catalog(args.file)
    print(f"ok families={len(cat)} multipliers={sum(len(e.existent_m) for e in cat)}")
    return OK


def cmd_catalog_close(args) -> int:
    cat = cat_mod.apply_closure(_read_catalog(args.file))
    out = _out(args)
    try:
        cat_mod.save_catalog(cat, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return OK


def cmd_system(args) -> int:
    try:
        sys_ = build_system(args.t, args.k, args.v1, args.v2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(sys_.dump())
    return OK


# -- parser ------------------------------------------------------------------------------------


def _add_split(p) -> None:
    p.add_argument("-t", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--v1", type=int, required=True, help="points in X1")
    p.add_argument("--v2", type=int, required=True, help="points in X2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="recdesign", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="lambda_min, lambda_max, LIM and the lambda_s spectrum")
    p.add_argument("-t", type=int, required=True)
    p.add_argument("-v", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--lambda", dest="lam", type=int, help="absolute index")
    g.add_argument("--m", type=int, help="index as a multiple of lambda_min")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("solve", help="enumerate solutions of the index equalities")
    _add_split(p)
    p.add_argument("--symmetric", action="store_true", help="equal indices on both halves (needs v1 == v2)")
    p.add_argument("--catalog", help="existence catalog used to filter solutions")
    p.add_argument("--closure", action="store_true", help="close the catalog under supplement/complement first")
    p.add_argument("--strict-catalog", action="store_true", help="also drop solutions using families the catalog lacks")
    p.add_argument("--restrict", action="append", metavar="L<j>=a,b,...",
                   help="admissible absolute indices for a slot; include 0 to keep it optional")
    p.add_argument("--range", action="append", metavar="L<j>=lo:hi", help="clamp a slot to [lo, hi]")
    p.add_argument("--selector", action="append", metavar="i=0|1", help="fix u_i for a pair of complete slots")
    p.add_argument("--le-lim", action="store_true", help="only emit solutions with m <= LIM")
    p.add_argument("--nontrivial", action="store_true", help="do not emit the complete-design solution")
    p.add_argument("--limit", type=int, help="emit at most this many solutions")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output")
    p.add_argument("--plot", help="write a figure of the multipliers found")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-solution", help="re-evaluate every row for each solution in a file")
    p.add_argument("file")
    _add_split(p)
    p.set_defaults(func=cmd_verify_solution)

    p = sub.add_parser("compose", help="materialize and verify the design of one solution")
    p.add_argument("solutions")
    _add_split(p)
    p.add_argument("--index", type=int, default=0, help="which solution in the file (0-based)")
    p.add_argument("--left", action="append", metavar="j=FILE", help="ingredient on X1 with block size j")
    p.add_argument("--right", action="append", metavar="j=FILE", help="ingredient on X2 with block size j")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--max-blocks", type=int, default=DEFAULT_MAX_BLOCKS)
    p.add_argument("--plot", help="write a bar chart of blocks per family")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("check-design", help="brute-force t-design and simplicity check")
    p.add_argument("file")
    p.add_argument("-t", type=int, required=True)
    p.set_defaults(func=cmd_check_design)

    p = sub.add_parser("catalog", help="existence catalog tools")
    csub = p.add_subparsers(dest="catalog_command", required=True)
    c = csub.add_parser("validate")
    c.add_argument("file")
    c.set_defaults(func=cmd_catalog_validate)
    c = csub.add_parser("close")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_catalog_close)

    p = sub.add_parser("system", help="print the rows of the equality system")
    _add_split(p)
    p.set_defaults(func=cmd_system)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
