"""Recursive construction of simple t-designs from pairs of ingredient designs."""

from .combinatorics import (
    DesignParams,
    binom,
    complement_lambda,
    lambda_max,
    lambda_min,
    lambda_s,
    lim_bound,
    supplement_lambda,
)
from .design import (
    BalanceReport,
    BlockDesign,
    PointPartition,
    classify_t_subset,
    complement_blocks,
    complete_design,
    supplement_blocks,
    verify_t_design,
)
from .equations import EqualitySystem, build_system, evaluate_rows, slot_lambda_s
from .search import (
    SearchSpace,
    Solution,
    check_solution,
    enumerate_solutions,
    filter_by_catalog,
    report_lim_partition,
)

__all__ = [
    "BalanceReport",
    "BlockDesign",
    "DesignParams",
    "EqualitySystem",
    "PointPartition",
    "SearchSpace",
    "Solution",
    "binom",
    "build_system",
    "check_solution",
    "classify_t_subset",
    "complement_blocks",
    "complement_lambda",
    "complete_design",
    "enumerate_solutions",
    "evaluate_rows",
    "filter_by_catalog",
    "lambda_max",
    "lambda_min",
    "lambda_s",
    "lim_bound",
    "report_lim_partition",
    "slot_lambda_s",
    "supplement_blocks",
    "supplement_lambda",
    "verify_t_design",
]

__version__ = "0.1.0"
