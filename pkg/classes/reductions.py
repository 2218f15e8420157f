"""
Rectangular reductions
======================

f reduces to g through maps hx, hy of the players' own inputs when f(x, y) = g(hx(x), hy(y)) on
every defined cell of f. The constructions here are the ones behind completeness: any f whose
zeros are covered by m rectangles reduces to DISJ on m bits, and reductions of the parts of a
disjunction lift to a reduction into the "some copy" composition of the target.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

try:
    from .. import labconfig
    from ..fnspace import Function, Rectangle, build_named, co_disj_compose, constant, pack_inputs
    from ..bounds.search import cover_number
    from .oracles import InputMap, apply_map, map_table
except ImportError:
    import labconfig
    from fnspace import Function, Rectangle, build_named, co_disj_compose, constant, pack_inputs
    from bounds.search import cover_number
    from classes.oracles import InputMap, apply_map, map_table

_LOGGER = logging.getLogger(__name__)


@dataclass
class ReductionCheck:
    ok: bool
    checked: int
    exhaustive: bool
    witness: Optional[Tuple[int, int]] = None
    expected: Optional[int] = None
    got: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "exhaustive": self.exhaustive,
            "witness": None if self.witness is None else list(self.witness),
            "expected": self.expected,
            "got": self.got,
            "reason": self.reason,
        }


def _target_values(g: Function, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """g on the mapped pairs and whether each lands on a masked cell of g."""
    if g.is_dense:
        mask = g.mask
        masked = np.zeros(a.shape, dtype=bool) if mask is None else mask[a, b]
        return g.matrix[a, b].astype(np.int64), masked
    values = np.fromiter((g.evaluate(int(p), int(q)) for p, q in zip(a.flat, b.flat)), dtype=np.int64, count=a.size)
    masked = np.fromiter((g.is_masked(int(p), int(q)) for p, q in zip(a.flat, b.flat)), dtype=bool, count=a.size)
    return values.reshape(a.shape), masked.reshape(a.shape)


def _first_failure(
    f_values: np.ndarray, g_values: np.ndarray, g_masked: np.ndarray, defined: np.ndarray, xs: np.ndarray, ys: np.ndarray
):
    bad = defined & ((f_values != g_values) | g_masked)
    if not bad.any():
        return None
    index = tuple(np.argwhere(bad)[0])
    reason = "lands outside the target's promise set" if g_masked[index] else "values differ"
    return (int(xs[index]), int(ys[index])), int(f_values[index]), int(g_values[index]), reason


def verify_reduction(
    f: Function, g: Function, hx: InputMap, hy: InputMap, seed: int = 0, samples: Optional[int] = None
) -> ReductionCheck:
    """
    Checks f(x, y) = g(hx(x), hy(y)) on the defined cells of f, exhaustively when f has at most
    ``samples`` cells (or g is dense), on that many seeded random pairs otherwise. Images outside
    g's inputs, or on cells outside g's promise set, count as failures.
    """
    samples = labconfig.VERIFY_SAMPLES if samples is None else samples
    if not f.is_boolean or not g.is_boolean:
        raise ValueError(f"Reductions relate Boolean functions, got {f.name} and {g.name}")
    exhaustive = f.cells <= samples or (g.is_dense and f.is_dense)
    if exhaustive:
        row_images = map_table(hx, f.rows)
        col_images = map_table(hy, f.cols)
        xs = np.broadcast_to(np.arange(f.rows)[:, None], (f.rows, f.cols))
        ys = np.broadcast_to(np.arange(f.cols)[None, :], (f.rows, f.cols))
        f_values = f.matrix.astype(np.int64)
        defined = np.ones(f_values.shape, dtype=bool) if f.mask is None else ~f.mask
    else:
        rng = np.random.default_rng(seed)
        xs = rng.integers(0, f.rows, size=samples, dtype=np.int64)
        ys = rng.integers(0, f.cols, size=samples, dtype=np.int64)
        row_images = {int(x): apply_map(hx, int(x)) for x in np.unique(xs)}
        col_images = {int(y): apply_map(hy, int(y)) for y in np.unique(ys)}
        f_values = np.fromiter((f.evaluate(int(x), int(y)) for x, y in zip(xs, ys)), dtype=np.int64, count=samples)
        defined = ~np.fromiter((f.is_masked(int(x), int(y)) for x, y in zip(xs, ys)), dtype=bool, count=samples)

    if exhaustive:
        a = np.broadcast_to(row_images[:, None], f_values.shape)
        b = np.broadcast_to(col_images[None, :], f_values.shape)
    else:
        a = np.array([row_images[int(x)] for x in xs], dtype=np.int64)
        b = np.array([col_images[int(y)] for y in ys], dtype=np.int64)
    checked = int(defined.sum())

    outside = (a < 0) | (a >= g.rows) | (b < 0) | (b >= g.cols)
    if (outside & defined).any():
        index = tuple(np.argwhere(outside & defined)[0])
        witness = (int(xs[index]), int(ys[index]))
        return ReductionCheck(False, checked, exhaustive, witness, int(f_values[index]), None, "image outside the target's inputs")

    g_values, g_masked = _target_values(g, np.where(defined, a, 0), np.where(defined, b, 0))
    failure = _first_failure(f_values, g_values, g_masked, defined, xs, ys)
    if failure is not None:
        witness, expected, got, reason = failure
        _LOGGER.info(f"Reduction {f.name} -> {g.name} fails at {witness}: {reason}")
        return ReductionCheck(False, checked, exhaustive, witness, expected, got, reason)
    return ReductionCheck(True, checked, exhaustive)


@dataclass(frozen=True)
class Reduction:
    source: Function
    target: Function
    hx: InputMap
    hy: InputMap

    def verify(self, seed: int = 0) -> ReductionCheck:
        return verify_reduction(self.source, self.target, self.hx, self.hy, seed)

    def tables(self) -> Tuple[np.ndarray, np.ndarray]:
        return map_table(self.hx, self.source.rows), map_table(self.hy, self.source.cols)


def _compose(first: InputMap, second: InputMap) -> Callable[[int], int]:
    return lambda value: apply_map(second, apply_map(first, value))


def compose_reductions(first: Reduction, second: Reduction) -> Reduction:
    """f -> g followed by g -> h is f -> h with the composed maps."""
    if (first.target.n_a, first.target.n_b) != (second.source.n_a, second.source.n_b):
        raise ValueError(f"{first.target.name} and {second.source.name} have different input sizes")
    return Reduction(first.source, second.target, _compose(first.hx, second.hx), _compose(first.hy, second.hy))


# -- completeness constructions ----------------------------------------------------------------


def disj_target(m: int) -> Function:
    """DISJ on m bits; on empty strings it is the constant 1."""
    return build_named("DISJ", m) if m else constant(0, 0, 1)


def _check_zero_cover(f: Function, cover: Sequence[Rectangle]) -> None:
    covered = np.zeros((f.rows, f.cols), dtype=bool)
    for index, rectangle in enumerate(cover):
        if rectangle.color(f) != 0:
            raise ValueError(f"Rectangle {index} of the cover is not a 0-rectangle of {f.name}")
        covered[np.ix_(sorted(rectangle.rows), sorted(rectangle.cols))] = True
    zeros = f.matrix == 0
    if f.mask is not None:
        zeros &= ~f.mask
    if (zeros & ~covered).any():
        x, y = np.argwhere(zeros & ~covered)[0]
        raise ValueError(f"The cover misses the 0-cell ({int(x)}, {int(y)}) of {f.name}")


def reduce_to_disj_from_zero_cover(
    f: Function, zero_cover: Optional[Sequence[Rectangle]] = None
) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Bit i of hx(x) (of hy(y)) says whether x (y) lies in the rows (columns) of the i-th rectangle of
    a 0-cover, so the images intersect exactly when (x, y) is a covered zero. Without a cover the
    minimum one is computed. Returns the two map tables and m.
    """
    if not f.is_boolean:
        raise ValueError(f"{f.name} is not Boolean")
    cover = list(cover_number(f, 0).rectangles if zero_cover is None else zero_cover)
    _check_zero_cover(f, cover)
    hx = np.zeros(f.rows, dtype=np.int64)
    hy = np.zeros(f.cols, dtype=np.int64)
    for index, rectangle in enumerate(cover):
        hx[sorted(rectangle.rows)] |= 1 << index
        hy[sorted(rectangle.cols)] |= 1 << index
    _LOGGER.debug(f"{f.name} reduces to DISJ:{len(cover)}")
    return hx, hy, len(cover)


def disjunction(functions: Sequence[Function]) -> Function:
    """Pointwise OR of Boolean functions on the same inputs."""
    if not functions:
        raise ValueError("Need at least one function")
    n_a, n_b = functions[0].n_a, functions[0].n_b
    if any((f.n_a, f.n_b) != (n_a, n_b) for f in functions):
        raise ValueError("All parts must share their input sizes")
    return Function(
        n_a,
        n_b,
        lambda x, y: int(any(f.evaluate(x, y) for f in functions)),
        vector=lambda xs, ys: np.logical_or.reduce([np.asarray(f.matrix[xs, ys], dtype=bool) for f in functions]),
        name="or(" + ",".join(f.name for f in functions) + ")",
    )


def lift_completeness(
    g: Function, parts: Sequence[Tuple[Function, InputMap, InputMap]]
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Given reductions f_i -> g, maps reducing OR_i f_i to co_disj_compose(g, m): the players ask
    the oracle about all m image pairs at once, copy i in bits [i n, (i+1) n) of the packed input.
    """
    if not parts:
        raise ValueError("Need at least one part")
    for index, (f, hx, hy) in enumerate(parts):
        check = verify_reduction(f, g, hx, hy)
        if not check:
            raise ValueError(f"Part {index} ({f.name}) does not reduce to {g.name}: {check.reason} at {check.witness}")
    first = parts[0][0]
    x_images = [map_table(hx, first.rows) for _, hx, _ in parts]
    y_images = [map_table(hy, first.cols) for _, _, hy in parts]
    hx = np.array([pack_inputs([int(images[x]) for images in x_images], g.n_a) for x in range(first.rows)], dtype=np.int64)
    hy = np.array([pack_inputs([int(images[y]) for images in y_images], g.n_b) for y in range(first.cols)], dtype=np.int64)
    return hx, hy


def single_cell_parts(f: Function) -> List[Tuple[Function, np.ndarray, np.ndarray]]:
    """
    Splits f into its single 1-cells: part (a, b) is the indicator of (a, b), which reduces to
    AND of one bit each by hx(x) = [x = a], hy(y) = [y = b].
    """
    parts = []
    for a, b in zip(*np.nonzero(f.matrix == 1)):
        a, b = int(a), int(b)
        indicator = Function(
            f.n_a,
            f.n_b,
            lambda x, y, a=a, b=b: int(x == a and y == b),
            vector=lambda xs, ys, a=a, b=b: (xs == a) & (ys == b),
            name=f"cell({a},{b})",
        )
        hx = (np.arange(f.rows) == a).astype(np.int64)
        hy = (np.arange(f.cols) == b).astype(np.int64)
        parts.append((indicator, hx, hy))
    return parts
