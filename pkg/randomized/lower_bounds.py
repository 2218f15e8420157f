"""Numeric lower bounds on randomized complexity."""

import logging
import math
from fractions import Fraction
from typing import Optional

import numpy as np

try:
    from ..fnspace import Function
    from .lambda_function import lambda_inv, lambda_inv_shifted
except ImportError:
    from fnspace import Function
    from randomized.lambda_function import lambda_inv, lambda_inv_shifted

_LOGGER = logging.getLogger(__name__)


def distinct_rows(f: Function) -> int:
    if not f.is_dense:
        raise ValueError(f"{f.name} is too large to compare rows")
    return len(np.unique(f.matrix, axis=0))


def has_distinct_rows(f: Function) -> bool:
    return distinct_rows(f) == f.rows


def one_way_lower_bound(f: Function) -> int:
    """Bits A must send when only A speaks: enough to tell the distinct rows apart."""
    rows = distinct_rows(f)
    return (rows - 1).bit_length() if rows > 1 else 0


def rnd_lower_bound_values(n: int, eps: Fraction = Fraction(1, 3), f: Optional[Function] = None) -> dict:
    """
    Lower bounds on the eps-error randomized cost.

    detSimBound comes from D(EQ) = n + 1 <= 2^R (log 1/(1/2 - eps) + R); rowCountBound = lambda(n)
    applies to functions with n pairwise distinct rows, which is checked when ``f`` is given.
    """
    eps = Fraction(eps)
    if n < 2:
        raise ValueError(f"Need n >= 2, got {n}")
    if not 0 < eps < Fraction(1, 2):
        raise ValueError(f"Need 0 < eps < 1/2, got {eps}")
    shift = math.log2(1 / float(Fraction(1, 2) - eps))
    values = {
        "n": n,
        "eps": str(eps),
        "detSimBound": lambda_inv_shifted(n + 1, shift),
        "rowCountBound": lambda_inv(n),
        "rowCountApplicable": True,
    }
    if f is not None:
        values["rowCountApplicable"] = has_distinct_rows(f)
        values["distinctRows"] = distinct_rows(f)
        if not values["rowCountApplicable"]:
            _LOGGER.info(f"{f.name} repeats a row; the row-count bound does not apply")
    return values
