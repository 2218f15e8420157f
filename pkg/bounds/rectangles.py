"""
Monochromatic rectangles: maximal ones, the largest one (by area or by a measure), and the
discrepancy-style lower bounds built on the largest one.

Rows and columns are handled as int bitmasks: ``col_rows[y]`` holds the rows whose cell in column
y may belong to a c-rectangle (value c, or masked).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

try:
    from .. import labconfig
    from ..fnspace import Function, Rectangle, SizeLimitExceeded
except ImportError:
    import labconfig
    from fnspace import Function, Rectangle, SizeLimitExceeded

_LOGGER = logging.getLogger(__name__)

WEIGHT_MODES = ("uniform", "zeros", "ones")

Number = Union[int, Fraction]


def bits_of(mask: int) -> List[int]:
    result = []
    index = 0
    while mask:
        if mask & 1:
            result.append(index)
        mask >>= 1
        index += 1
    return result


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _check_limit(f: Function, limit_bits: Optional[int]) -> None:
    limit = labconfig.EXACT_COVER_LIMIT_BITS if limit_bits is None else limit_bits
    if f.n_a + f.n_b > limit:
        raise SizeLimitExceeded(f"{f.name or 'function'} has nA+nB={f.n_a + f.n_b} input bits, above the exact limit {limit}")
    if not f.is_boolean:
        raise ValueError(f"Rectangle searches need a Boolean function, {f.name} has {f.range_bits} output bits")


def fit_matrix(f: Function, color: int) -> np.ndarray:
    """True where a rectangle of ``color`` may contain the cell."""
    fits = f.matrix == color
    if f.mask is not None:
        fits = fits | f.mask
    return fits


def color_cells(f: Function, color: int) -> np.ndarray:
    """True on the defined cells holding ``color``."""
    hits = f.matrix == color
    if f.mask is not None:
        hits = hits & ~f.mask
    return hits


def column_masks(fits: np.ndarray) -> List[int]:
    return [sum(1 << int(x) for x in np.flatnonzero(fits[:, y])) for y in range(fits.shape[1])]


def cell_mask(rows: int, cols: int, n_cols: int) -> int:
    """Bitmask of the cells rows x cols, cell (x, y) at bit x * n_cols + y."""
    stripe = cols
    result = 0
    for x in bits_of(rows):
        result |= stripe << (x * n_cols)
    return result


def _rectangle(rows: int, cols: int) -> Rectangle:
    return Rectangle.of(bits_of(rows), bits_of(cols))


def maximal_rectangles(f: Function, color: int, limit_bits: Optional[int] = None) -> List[Tuple[int, int]]:
    """
    All inclusion-maximal rectangles of ``color`` holding at least one defined cell of that color,
    as (row mask, column mask) pairs in lexicographic order.

    Row sets of maximal rectangles are exactly the nonempty intersections of column row sets; each
    is closed by taking every column that fits all of its rows.
    """
    _check_limit(f, limit_bits)
    fits = fit_matrix(f, color)
    hits = color_cells(f, color)
    col_rows = column_masks(fits)
    hit_rows = column_masks(hits)
    extents = set()
    frontier = [mask for mask in col_rows if mask]
    extents.update(frontier)
    while frontier:
        fresh = []
        for extent in frontier:
            for mask in col_rows:
                meet = extent & mask
                if meet and meet not in extents:
                    extents.add(meet)
                    fresh.append(meet)
        if len(extents) > labconfig.MAX_MAXIMAL_RECTANGLES:
            raise SizeLimitExceeded(
                f"{f.name or 'function'} has more than {labconfig.MAX_MAXIMAL_RECTANGLES} maximal {color}-rectangles"
            )
        frontier = fresh
    result = []
    for rows in extents:
        cols = 0
        useful = False
        for y, mask in enumerate(col_rows):
            if mask & rows == rows:
                cols |= 1 << y
                useful = useful or bool(hit_rows[y] & rows)
        if useful:
            result.append((rows, cols))
    result.sort(key=lambda pair: (bits_of(pair[0]), bits_of(pair[1])))
    _LOGGER.debug(f"{len(result)} maximal {color}-rectangles in {f.name}")
    return result


def maximal_rectangle_objects(f: Function, color: int, limit_bits: Optional[int] = None) -> List[Rectangle]:
    return [_rectangle(rows, cols) for rows, cols in maximal_rectangles(f, color, limit_bits)]


def _best_rectangle(
    col_rows: Sequence[int], weigh: Callable[[int, int], Number]
) -> Tuple[Number, int, int]:
    """
    Branch and bound over column subsets in increasing order. The row set is the intersection of
    the chosen columns' row sets; a branch is cut when even keeping every remaining column at its
    current row set cannot beat the best rectangle found.
    """
    n_cols = len(col_rows)
    best: List = [0, 0, 0]

    def visit(rows: int, cols: int, start: int, value: Number) -> None:
        if cols and value > best[0]:
            best[:] = [value, rows, cols]
        options = []
        bound = value
        for y in range(start, n_cols):
            meet = rows & col_rows[y]
            if meet:
                options.append(y)
                bound += weigh(meet, y)
        if bound <= best[0]:
            return
        for y in options:
            meet = rows & col_rows[y]
            if meet == rows:
                gain = weigh(rows, y)
                visit(rows, cols | (1 << y), y + 1, value + gain)
            else:
                narrowed = sum((weigh(meet, c) for c in bits_of(cols)), 0) + weigh(meet, y)
                visit(meet, cols | (1 << y), y + 1, narrowed)

    all_rows = 0
    for mask in col_rows:
        all_rows |= mask
    visit(all_rows, 0, 0, 0)
    return best[0], best[1], best[2]


def max_weight_rectangle(
    f: Function, color: int, weights: Optional[np.ndarray] = None, limit_bits: Optional[int] = None
) -> Tuple[Number, Optional[Rectangle]]:
    """
    The rectangle of ``color`` with the largest total weight (area when ``weights`` is None).
    Weights must be nonnegative; returns (0, None) when no cell fits.
    """
    _check_limit(f, limit_bits)
    fits = fit_matrix(f, color)
    transposed = fits.shape[1] > fits.shape[0]
    if transposed:
        fits = fits.T
    if weights is None:
        table = None
    else:
        values = np.asarray(weights, dtype=object)
        if values.shape != f.matrix.shape:
            raise ValueError(f"Weight matrix of shape {values.shape} does not match {f.matrix.shape}")
        table = [
            [v if isinstance(v, (int, Fraction)) else Fraction(v) for v in row]
            for row in (values.T if transposed else values)
        ]
        if any(v < 0 for row in table for v in row):
            raise ValueError("Weights must be nonnegative")

    def weigh(rows: int, y: int) -> Number:
        if table is None:
            return popcount(rows)
        return sum(table[x][y] for x in bits_of(rows))

    value, rows, cols = _best_rectangle(column_masks(fits), weigh)
    if not cols:
        return 0, None
    if transposed:
        rows, cols = cols, rows
    return value, _rectangle(rows, cols)


def max_mono_rectangle(f: Function, color: int, limit_bits: Optional[int] = None) -> Tuple[int, Optional[Rectangle]]:
    """Largest-area rectangle of ``color`` (masked cells count as fitting)."""
    size, rectangle = max_weight_rectangle(f, color, None, limit_bits)
    _LOGGER.debug(f"Largest {color}-rectangle of {f.name}: {size}")
    return int(size), rectangle


@dataclass(frozen=True)
class DiscrepancyBound:
    mode: str
    w: Fraction
    w0: Fraction
    w1: Fraction
    bound: Fraction
    bound_color0: Optional[Fraction]
    bound_color1: Optional[Fraction]

    def to_json(self) -> dict:
        def exact(value):
            return None if value is None else {"value": float(value), "exact": str(value)}

        return {
            "mode": self.mode,
            "w": exact(self.w),
            "w0": exact(self.w0),
            "w1": exact(self.w1),
            "bound": exact(self.bound),
            "boundColor0": exact(self.bound_color0),
            "boundColor1": exact(self.bound_color1),
        }


def _measure(f: Function, weights: Union[str, np.ndarray]) -> Tuple[str, np.ndarray]:
    defined = np.ones(f.matrix.shape, dtype=bool) if f.mask is None else ~f.mask
    if isinstance(weights, str):
        if weights not in WEIGHT_MODES:
            raise ValueError(f"Unknown weight mode {weights!r}, expected one of {WEIGHT_MODES}")
        if weights == "uniform":
            chosen = defined
        else:
            chosen = defined & (f.matrix == (0 if weights == "zeros" else 1))
        return weights, chosen.astype(np.int64)
    values = np.asarray(weights)
    if values.shape != f.matrix.shape:
        raise ValueError(f"Weight matrix of shape {values.shape} does not match {f.matrix.shape}")
    values = np.where(defined, values, 0)
    return "matrix", values


def discrepancy_bound(
    f: Function, weights: Union[str, np.ndarray] = "uniform", limit_bits: Optional[int] = None
) -> DiscrepancyBound:
    """
    Largest-rectangle bounds for a measure on the defined cells: with w_c the heaviest c-rectangle,
    C^D >= 1/max(w0, w1) and C^D_c >= mu(c-cells)/w_c.

    ``weights`` is one of ``uniform`` (all defined cells), ``zeros``, ``ones`` (uniform on the cells
    of that value) or a nonnegative matrix, normalized here. Masked cells carry no weight.
    """
    mode, raw = _measure(f, weights)
    table = [[Fraction(v) for v in row] for row in raw.tolist()] if mode == "matrix" else raw
    total = sum((Fraction(v) for row in table for v in row), Fraction(0))
    if total <= 0:
        raise ValueError(f"Measure {mode} puts no weight on {f.name}")
    heaviest = {}
    share = {}
    for color in (0, 1):
        value, _ = max_weight_rectangle(f, color, np.asarray(table, dtype=object), limit_bits)
        heaviest[color] = Fraction(value) / total
        color_weight = sum(
            (Fraction(table[x][y]) for x, y in np.argwhere(color_cells(f, color))), Fraction(0)
        )
        share[color] = color_weight / total
    w = max(heaviest.values())

    def per_color(color: int) -> Optional[Fraction]:
        if heaviest[color] == 0 or share[color] == 0:
            return None
        return share[color] / heaviest[color]

    result = DiscrepancyBound(mode, w, heaviest[0], heaviest[1], 1 / w, per_color(0), per_color(1))
    _LOGGER.debug(f"Discrepancy bound of {f.name} under {mode}: w0={result.w0}, w1={result.w1}")
    return result
