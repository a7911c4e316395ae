"""Asymptotic expansions and constants of nonlinear recurrences x_{k+1} = f(x_k).

The heavy lifting happens in the C++ extension; this package re-exports it.
"""

from rasym._core import (
    ExprSyntaxError,
    MathDomainError,
    PrecisionLossError,
    UnsupportedMapError,
    derive,
    eval_expr,
    extract_constant,
    parse,
    product_r,
    run_case,
    solve_series,
)

__all__ = [
    "ExprSyntaxError",
    "MathDomainError",
    "PrecisionLossError",
    "UnsupportedMapError",
    "derive",
    "eval_expr",
    "extract_constant",
    "parse",
    "product_r",
    "run_case",
    "solve_series",
]
