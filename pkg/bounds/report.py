"""Everything the bounds package can say about one small Boolean function, cross-checked."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

try:
    from .. import labconfig
    from ..fnspace import Function, SizeLimitExceeded
    from ..protocol import answer_cost
    from .fooling import greedy_fooling_set, max_fooling_set, verify_fooling_set
    from .rank import rank_gf2, rank_rational
    from .rectangles import discrepancy_bound, max_mono_rectangle
    from .search import (
        SearchBudgetExceeded,
        cover_number,
        deterministic_complexity,
        partition_number,
        protocol_color_number,
    )
except ImportError:
    import labconfig
    from fnspace import Function, SizeLimitExceeded
    from protocol import answer_cost
    from bounds.fooling import greedy_fooling_set, max_fooling_set, verify_fooling_set
    from bounds.rank import rank_gf2, rank_rational
    from bounds.rectangles import discrepancy_bound, max_mono_rectangle
    from bounds.search import (
        SearchBudgetExceeded,
        cover_number,
        deterministic_complexity,
        partition_number,
        protocol_color_number,
    )

_LOGGER = logging.getLogger(__name__)

REFUSALS = (SizeLimitExceeded, SearchBudgetExceeded)


def _greedy_fooling(f: Function, color: int, seed: int):
    if f.n_a + f.n_b > labconfig.EXACT_RANK_LIMIT_BITS:
        raise SizeLimitExceeded(f"Fooling-set scan of {f.name} needs nA+nB <= {labconfig.EXACT_RANK_LIMIT_BITS}")
    greedy = greedy_fooling_set(f, color, seed)
    if not verify_fooling_set(f, greedy).ok:
        raise RuntimeError(f"Greedy {color}-fooling set of {f.name} does not verify")
    return greedy


@dataclass
class BoundReport:
    function: str
    n_a: int
    n_b: int
    exact: Dict[str, int] = field(default_factory=dict)
    bounds: Dict[str, object] = field(default_factory=dict)
    witnesses: Dict[str, object] = field(default_factory=dict)
    refusals: Dict[str, str] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "function": self.function,
            "nA": self.n_a,
            "nB": self.n_b,
            "exact": dict(self.exact),
            "bounds": dict(self.bounds),
            "witnesses": dict(self.witnesses),
            "refusals": dict(self.refusals),
            "checks": dict(self.checks),
            "ok": self.ok,
        }


def _ceil_log2(value: int) -> int:
    return math.ceil(math.log2(value)) if value > 1 else 0


def _attempt(report: BoundReport, name: str, compute: Callable[[], object]) -> Optional[object]:
    try:
        return compute()
    except REFUSALS as error:
        report.refusals[name] = str(error)
        _LOGGER.info(f"{name} of {report.function} refused: {error}")
        return None


def _cross_checks(report: BoundReport, answer_depth: Optional[int], rank_applies: bool) -> None:
    exact = report.exact
    checks = report.checks

    def have(*names):
        return all(name in exact for name in names)

    if have("C", "C^D"):
        checks["coverBelowPartition"] = exact["C"] <= exact["C^D"]
    if have("C^D", "C^P"):
        checks["partitionBelowProtocol"] = exact["C^D"] <= exact["C^P"]
    if have("C0", "C1", "C"):
        checks["coverSplitsByColor"] = exact["C0"] + exact["C1"] == exact["C"]
    if have("C0^D", "C1^D", "C^D"):
        checks["partitionSplitsByColor"] = exact["C0^D"] + exact["C1^D"] == exact["C^D"]
    if answer_depth is not None:
        if have("C1^P") and exact["C1^P"]:
            checks["depthAboveOneLeaves"] = answer_depth >= 1 + _ceil_log2(exact["C1^P"])
        if have("C0^P", "C1^P") and max(exact["C0^P"], exact["C1^P"]):
            checks["depthAboveColorLeaves"] = answer_depth >= 1 + _ceil_log2(max(exact["C0^P"], exact["C1^P"]))
        if have("C^P"):
            checks["depthAboveLeaves"] = answer_depth >= _ceil_log2(exact["C^P"])
        if "rankQ" in report.bounds and rank_applies:
            checks["depthAboveLogRank"] = answer_depth >= 1 + _ceil_log2(report.bounds["rankQ"])
    for color in (0, 1):
        fooling = report.bounds.get(f"maxFooling{color}")
        if fooling is not None and f"C{color}" in exact:
            checks[f"foolingBelowCover{color}"] = fooling <= exact[f"C{color}"]


def bound_report(f: Function, limit_bits: Optional[int] = None, seed: int = 0) -> BoundReport:
    """
    Ranks, fooling sets, largest rectangles and discrepancy bounds, plus every exact measure within
    the size limits. Refused measures are recorded under ``refusals``; the cross-inequalities are
    asserted before returning (a failure is a bug, raised as RuntimeError). Functions too large
    for a dense matrix raise ``SizeLimitExceeded`` outright.

    ``limit_bits`` raises or lowers every exact-search limit at once.
    """
    if not f.is_boolean:
        raise ValueError(f"bound_report needs a Boolean function, {f.name} has {f.range_bits} output bits")
    report = BoundReport(f.name, f.n_a, f.n_b)
    # the log-rank inequality needs a nonconstant total function
    rank_applies = not f.is_constant() and f.mask is None

    rank_q = _attempt(report, "rankQ", lambda: rank_rational(f))
    if rank_q is not None:
        report.bounds["rankQ"] = rank_q
        report.bounds["rankGF2"] = rank_gf2(f)

    sizes = {}
    for color in (0, 1):
        greedy = _attempt(report, f"greedyFooling{color}", lambda: _greedy_fooling(f, color, seed))
        if greedy is not None:
            sizes[f"greedy{color}"] = greedy.size
            report.witnesses[f"fooling{color}"] = greedy.to_json()
        largest = _attempt(report, f"maxFooling{color}", lambda: max_fooling_set(f, color))
        if largest is not None:
            report.bounds[f"maxFooling{color}"] = largest.size
            sizes[f"max{color}"] = largest.size
    report.bounds["foolingSizes"] = sizes

    cover_limit = limit_bits if limit_bits is not None else labconfig.EXACT_COVER_LIMIT_BITS
    for color in (0, 1):
        if not f.count(color):
            continue
        rectangle = _attempt(report, f"maxRectangle{color}", lambda: max_mono_rectangle(f, color, cover_limit))
        if rectangle is not None:
            report.bounds[f"maxRectangle{color}"] = rectangle[0]
            report.witnesses[f"maxRectangle{color}"] = rectangle[1].to_json()
    for mode in ("uniform", "zeros", "ones"):
        if mode != "uniform" and not f.count(0 if mode == "zeros" else 1):
            continue
        discrepancy = _attempt(report, f"discrepancy:{mode}", lambda: discrepancy_bound(f, mode, cover_limit))
        if discrepancy is not None:
            report.bounds[f"discrepancy:{mode}"] = discrepancy.to_json()

    for color in (0, 1):
        cover = _attempt(report, f"C{color}", lambda: cover_number(f, color, cover_limit))
        if cover is not None:
            report.exact[f"C{color}"] = cover.value
            report.witnesses[f"C{color}"] = [rectangle.to_json() for rectangle in cover.rectangles]
    if "C0" in report.exact and "C1" in report.exact:
        report.exact["C"] = report.exact["C0"] + report.exact["C1"]

    partition_limit = limit_bits if limit_bits is not None else labconfig.EXACT_PARTITION_LIMIT_BITS
    partition = _attempt(report, "C^D", lambda: partition_number(f, partition_limit))
    if partition is not None:
        report.exact.update({"C^D": partition.value, "C0^D": partition.zeros, "C1^D": partition.ones})

    tree_limit = limit_bits if limit_bits is not None else labconfig.EXACT_TREE_LIMIT_BITS
    for objective, name in (("leaves", "C^P"), ("zeros", "C0^P"), ("ones", "C1^P")):
        result = _attempt(report, name, lambda: protocol_color_number(f, objective, tree_limit))
        if result is not None:
            report.exact[name] = result.value
            report.witnesses[name] = result.to_json()
    answer_depth = None
    depth = _attempt(report, "D", lambda: deterministic_complexity(f, limit_bits=tree_limit))
    if depth is not None:
        report.exact["D"] = depth.value
        report.witnesses["D"] = depth.to_json()
        answer_depth = answer_cost(depth.witness, count_answer_bit=True)

    _cross_checks(report, answer_depth, rank_applies)
    if not report.ok:
        failed = sorted(name for name, passed in report.checks.items() if not passed)
        raise RuntimeError(f"Bound report of {f.name} violates {failed}")
    _LOGGER.info(f"Bound report of {f.name}: {len(report.exact)} exact measures, {len(report.refusals)} refusals")
    return report
