"""
Class measures at a fixed input size: nondeterministic costs, the lowest level of the rectangle
hierarchy, and one report putting them next to D and the rank.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

try:
    from ..fnspace import Function, Rectangle
    from ..bounds.rank import rank_rational
    from ..bounds.search import cover_number, deterministic_complexity
    from ..randomized.coins import ceil_log2
    from ..randomized.lambda_function import lambda_inv, lambda_inv_shifted
    from ..randomized.lower_bounds import distinct_rows
except ImportError:
    from fnspace import Function, Rectangle
    from bounds.rank import rank_rational
    from bounds.search import cover_number, deterministic_complexity
    from randomized.coins import ceil_log2
    from randomized.lambda_function import lambda_inv, lambda_inv_shifted
    from randomized.lower_bounds import distinct_rows

_LOGGER = logging.getLogger(__name__)

POLARITIES = (0, 1)
LEVELS = ("sigma0", "pi0")


def nondet_complexity(f: Function, polarity: int = 1, limit_bits: Optional[int] = None) -> int:
    """N^polarity(f) = ceil(log2 C_polarity(f)); 0 when at most one rectangle is needed."""
    if polarity not in POLARITIES:
        raise ValueError(f"Polarity must be 0 or 1, got {polarity}")
    return ceil_log2(cover_number(f, polarity, limit_bits).value)


def index_bit_cover(n: int) -> List[Rectangle]:
    """The 1-cover of NE_n by {x: x_i = b} x {y: y_i = 1 - b}, 2n rectangles."""
    if n < 1:
        raise ValueError(f"Need n >= 1, got {n}")
    inputs = np.arange(1 << n)
    cover = []
    for i in range(n):
        bits = (inputs >> i) & 1
        for b in (0, 1):
            cover.append(Rectangle.of(inputs[bits == b], inputs[bits == 1 - b]))
    return cover


def is_cover(f: Function, rectangles: List[Rectangle], color: int) -> bool:
    """Every rectangle has color ``color`` on f and together they hold every defined ``color`` cell."""
    covered = np.zeros((f.rows, f.cols), dtype=bool)
    for rectangle in rectangles:
        if rectangle.color(f) != color:
            return False
        covered[np.ix_(sorted(rectangle.rows), sorted(rectangle.cols))] = True
    wanted = f.matrix == color
    if f.mask is not None:
        wanted &= ~f.mask
    return not (wanted & ~covered).any()


def sigma_pi_membership(f: Function, level: str) -> bool:
    """
    ``sigma0``: the 1-entries form exactly one rectangle. ``pi0``: the 0-entries do.
    Masked cells may fall either way.
    """
    if level not in LEVELS:
        raise ValueError(f"Unknown level {level!r}, expected one of {LEVELS}")
    if not f.is_boolean:
        raise ValueError(f"{f.name} is not Boolean")
    color = 1 if level == "sigma0" else 0
    hits = f.matrix == color
    defined = np.ones(hits.shape, dtype=bool) if f.mask is None else ~f.mask
    hits &= defined
    if not hits.any():
        return False
    rows = hits.any(axis=1)
    cols = hits.any(axis=0)
    block = np.outer(rows, cols)
    return bool((hits | ~defined)[block].all())


@dataclass
class ClassMeasures:
    function: str
    exact: Dict[str, int] = field(default_factory=dict)
    bounds: Dict[str, object] = field(default_factory=dict)
    membership: Dict[str, bool] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "function": self.function,
            "exact": self.exact,
            "bounds": self.bounds,
            "membership": self.membership,
            "checks": self.checks,
            "ok": self.ok,
        }


def measures_report(f: Function, eps: Fraction = Fraction(1, 3), limit_bits: Optional[int] = None) -> ClassMeasures:
    """
    D, N^1, N^0, the rational rank and the randomized floors implied by D, for one small Boolean
    function. D >= N^1 and D >= N^0 are asserted; a failure is raised as RuntimeError.
    """
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise ValueError(f"Need 0 < eps < 1/2, got {eps}")
    report = ClassMeasures(f.name)
    depth = deterministic_complexity(f, limit_bits=limit_bits).value
    report.exact["D"] = depth
    report.exact["N1"] = nondet_complexity(f, 1, limit_bits)
    report.exact["N0"] = nondet_complexity(f, 0, limit_bits)
    if f.mask is None:
        report.bounds["rankQ"] = rank_rational(f)
    if depth >= 2:
        # D <= 2^R (log 1/(1/2 - eps) + R)
        shift = math.log2(1 / float(Fraction(1, 2) - eps))
        report.bounds["randomizedFromD"] = lambda_inv_shifted(depth, shift)
    rows = distinct_rows(f)
    if rows >= 2:
        report.bounds["randomizedFromRows"] = lambda_inv(rows)
    for level in LEVELS:
        report.membership[level] = sigma_pi_membership(f, level)

    report.checks["depthAboveN1"] = depth >= report.exact["N1"]
    report.checks["depthAboveN0"] = depth >= report.exact["N0"]
    if "rankQ" in report.bounds and not f.is_constant():
        report.checks["depthAboveLogRank"] = depth >= math.log2(report.bounds["rankQ"])
    if not report.ok:
        failed = sorted(name for name, passed in report.checks.items() if not passed)
        raise RuntimeError(f"Class measures of {f.name} violate {failed}")
    _LOGGER.info(f"{f.name}: D={depth} N1={report.exact['N1']} N0={report.exact['N0']}")
    return report
