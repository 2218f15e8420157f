"""
Exact searches on small matrices
================================

* ``cover_number`` - branch-and-bound set cover of the c-cells by maximal c-rectangles.
* ``partition_number`` - exact cover of the c-cells by c-rectangles, per color, by iterative
  deepening on the rectangle count between the rank (or cover) floor and a class partition.
* ``protocol_partition_number`` / ``protocol_color_number`` / ``deterministic_complexity`` -
  memoized branch and bound over sub-rectangles, minimizing leaves (or c-leaves, or depth) over
  every owner and every split of the current rows or columns. Splits along a single input bit are
  tried first.

A protocol's c-leaves partition the c-cells into rectangles of rank one, so on a total
sub-rectangle the rank of its 1-cells bounds the 1-leaves and the rank of its 0-cells the 0-leaves;
these floors prune both tree searches and start the depth search at the log of their sum.

Identical rows and columns of a sub-rectangle are collapsed before memoization: a protocol for the
collapsed matrix runs unchanged on the original. All searches are deterministic and every witness
is re-verified. Exceeding a size limit raises ``SizeLimitExceeded``, exceeding a node budget
raises ``SearchBudgetExceeded``; neither ever falls back to an approximation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

try:
    from .. import labconfig
    from ..fnspace import Function, Rectangle, SizeLimitExceeded
    from ..protocol import A, B, Leaf, Node, ProtocolTree, Split, answer_cost, metrics, verify
    from .rank import bareiss_rank
    from .rectangles import bits_of, cell_mask, color_cells, column_masks, fit_matrix, maximal_rectangles, popcount
except ImportError:
    import labconfig
    from fnspace import Function, Rectangle, SizeLimitExceeded
    from protocol import A, B, Leaf, Node, ProtocolTree, Split, answer_cost, metrics, verify
    from bounds.rank import bareiss_rank
    from bounds.rectangles import bits_of, cell_mask, color_cells, column_masks, fit_matrix, maximal_rectangles, popcount

_LOGGER = logging.getLogger(__name__)

OBJECTIVES = ("leaves", "zeros", "ones")


class SearchBudgetExceeded(RuntimeError):
    """Raised when an exact search exhausts its node budget."""


def _require(f: Function, limit: int, what: str) -> None:
    if not f.is_boolean:
        raise ValueError(f"{what} needs a Boolean function, {f.name} has {f.range_bits} output bits")
    if f.n_a + f.n_b > limit:
        raise SizeLimitExceeded(f"{what} of {f.name or 'function'} needs nA+nB={f.n_a + f.n_b} <= {limit}")


class _Budget:
    def __init__(self, limit: int, what: str):
        self.limit = limit
        self.what = what
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(f"{self.what} exceeded its budget of {self.limit} search nodes")


def _rectangles(pairs) -> Tuple[Rectangle, ...]:
    return tuple(Rectangle.of(bits_of(rows), bits_of(cols)) for rows, cols in pairs)


# -- covers ----------------------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverResult:
    color: int
    value: int
    rectangles: Tuple[Rectangle, ...]
    nodes: int

    def to_json(self) -> dict:
        return {
            "color": self.color,
            "value": self.value,
            "rectangles": [rectangle.to_json() for rectangle in self.rectangles],
            "nodes": self.nodes,
        }


def _drop_dominated(sets: List[int]) -> List[int]:
    """Removes duplicate sets and sets contained in another one, keeping the original order."""
    kept: List[int] = []
    for i, candidate in enumerate(sets):
        dominated = False
        for j, other in enumerate(sets):
            if i != j and candidate | other == other and (candidate != other or j < i):
                dominated = True
                break
        if not dominated:
            kept.append(i)
    return kept


def _set_cover(universe: int, sets: List[int], budget: _Budget) -> List[int]:
    """Indices of a minimum cover of ``universe`` by ``sets``."""
    covering: Dict[int, List[int]] = {}
    for element in bits_of(universe):
        covering[element] = sorted(
            (i for i, s in enumerate(sets) if (s >> element) & 1), key=lambda i: (-popcount(sets[i]), i)
        )

    # greedy start: the first bound to beat
    best: List[int] = []
    left = universe
    while left:
        pick = max(range(len(sets)), key=lambda i: (popcount(sets[i] & left), -i))
        best.append(pick)
        left &= ~sets[pick]

    def search(uncovered: int, chosen: List[int]) -> None:
        nonlocal best
        budget.tick()
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        largest = max(popcount(s & uncovered) for s in sets)
        needed = -(-popcount(uncovered) // largest)
        if len(chosen) + needed >= len(best):
            return
        element = min(bits_of(uncovered), key=lambda e: (len(covering[e]), e))
        for i in covering[element]:
            chosen.append(i)
            search(uncovered & ~sets[i], chosen)
            chosen.pop()

    search(universe, [])
    return sorted(best)


def cover_number(
    f: Function, color: int, limit_bits: Optional[int] = None, budget: Optional[int] = None
) -> CoverResult:
    """Minimum number of ``color``-rectangles covering every defined ``color`` cell."""
    _require(f, labconfig.EXACT_COVER_LIMIT_BITS if limit_bits is None else limit_bits, "Cover number")
    n_cols = f.cols
    universe = 0
    for x, y in zip(*color_cells(f, color).nonzero()):
        universe |= 1 << (int(x) * n_cols + int(y))
    counter = _Budget(labconfig.COVER_SEARCH_BUDGET if budget is None else budget, f"Cover number of {f.name}")
    if not universe:
        return CoverResult(color, 0, (), 0)
    candidates = maximal_rectangles(f, color, limit_bits)
    sets = [cell_mask(rows, cols, n_cols) & universe for rows, cols in candidates]
    # maximal rectangles of a total function never nest; masks can make their color cells nest
    kept = list(range(len(sets))) if f.mask is None else _drop_dominated(sets)
    chosen = _set_cover(universe, [sets[i] for i in kept], counter)
    rectangles = _rectangles(candidates[kept[i]] for i in chosen)
    _LOGGER.debug(f"C{color}({f.name}) = {len(rectangles)} after {counter.used} nodes")
    return CoverResult(color, len(rectangles), rectangles, counter.used)


# -- partitions ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionResult:
    value: int
    zeros: int
    ones: int
    rectangles0: Tuple[Rectangle, ...]
    rectangles1: Tuple[Rectangle, ...]
    nodes: int

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "zeros": self.zeros,
            "ones": self.ones,
            "rectangles0": [rectangle.to_json() for rectangle in self.rectangles0],
            "rectangles1": [rectangle.to_json() for rectangle in self.rectangles1],
            "nodes": self.nodes,
        }


def _subsets_containing(required: int, pool: int) -> Iterator[int]:
    """Every subset of ``pool`` that contains ``required``, larger subsets first."""
    free = bits_of(pool & ~required)
    choices = []
    for pick in range(1 << len(free)):
        chosen = required
        for i, bit in enumerate(free):
            if (pick >> i) & 1:
                chosen |= 1 << bit
        choices.append(chosen)
    choices.sort(key=lambda mask: (-popcount(mask), mask))
    return iter(choices)


class _ExactCover:
    """Disjoint ``color``-rectangles covering exactly the ``color`` cells (masked cells may be shared)."""

    def __init__(self, f: Function, color: int, budget: _Budget):
        self.n_rows, self.n_cols = f.rows, f.cols
        self.fits = fit_matrix(f, color)
        self.hits = color_cells(f, color)
        self.budget = budget
        self.universe = 0
        for x, y in zip(*self.hits.nonzero()):
            self.universe |= 1 << self._bit(int(x), int(y))
        self.fit_cols = column_masks(self.fits)
        self.largest = 0
        for rows, cols in maximal_rectangles(f, color, limit_bits=f.n_a + f.n_b):
            self.largest = max(self.largest, popcount(cell_mask(rows, cols, self.n_cols) & self.universe))
        self.failed: set = set()

    def _bit(self, x: int, y: int) -> int:
        return x * self.n_cols + y

    def _usable(self, x: int, y: int, uncovered: int) -> bool:
        if not self.fits[x, y]:
            return False
        return not self.hits[x, y] or bool((uncovered >> self._bit(x, y)) & 1)

    def _usable_rows(self, y: int, uncovered: int) -> int:
        rows = 0
        for x in bits_of(self.fit_cols[y]):
            if self._usable(x, y, uncovered):
                rows |= 1 << x
        return rows

    def solve(self, uncovered: int, allowed: int) -> Optional[List[Tuple[int, int]]]:
        if not uncovered:
            return []
        if allowed == 0 or popcount(uncovered) > allowed * self.largest:
            return None
        if (uncovered, allowed) in self.failed:
            return None
        self.budget.tick()
        lowest = (uncovered & -uncovered).bit_length() - 1
        x, y = divmod(lowest, self.n_cols)
        row_cols = 0
        for c in range(self.n_cols):
            if self._usable(x, c, uncovered):
                row_cols |= 1 << c
        usable_rows = {c: self._usable_rows(c, uncovered) for c in bits_of(row_cols)}
        for cols in _subsets_containing(1 << y, row_cols):
            pool = -1
            for c in bits_of(cols):
                pool &= usable_rows[c]
            for rows in _subsets_containing(1 << x, pool):
                taken = cell_mask(rows, cols, self.n_cols) & uncovered
                rest = self.solve(uncovered & ~taken, allowed - 1)
                if rest is not None:
                    return [(rows, cols)] + rest
        self.failed.add((uncovered, allowed))
        return None


def _line_partition(hits) -> List[Tuple[int, int]]:
    """Groups identical nonzero rows of ``hits`` into one rectangle each."""
    classes: Dict[bytes, int] = {}
    for x, row in enumerate(hits):
        if row.any():
            key = row.tobytes()
            classes[key] = classes.get(key, 0) | 1 << x
    return [(rows, sum(1 << int(y) for y in np.flatnonzero(hits[bits_of(rows)[0]]))) for rows in classes.values()]


def _class_partition(f: Function, color: int) -> List[Tuple[int, int]]:
    """The smaller of the row-class and column-class partitions of the ``color`` cells."""
    hits = color_cells(f, color)
    by_rows = _line_partition(hits)
    by_cols = [(rows, cols) for cols, rows in _line_partition(hits.T)]
    return by_rows if len(by_rows) <= len(by_cols) else by_cols


def _color_rank(f: Function, color: int) -> int:
    """Rank of the ``color`` cells; every rectangle of a partition adds rank at most one."""
    if f.mask is not None:
        return 0
    return bareiss_rank(color_cells(f, color).astype(int).tolist())


def _color_partition(f: Function, color: int, budget: _Budget) -> List[Tuple[int, int]]:
    classes = _class_partition(f, color)
    start = max(1, _color_rank(f, color))
    if len(classes) <= start:
        return classes
    start = max(start, cover_number(f, color, limit_bits=f.n_a + f.n_b).value)
    search = _ExactCover(f, color, budget)
    for allowed in range(start, len(classes)):
        found = search.solve(search.universe, allowed)
        if found is not None:
            return found
        _LOGGER.debug(f"No {color}-partition of {f.name} into {allowed} rectangles")
    return classes


def partition_number(f: Function, limit_bits: Optional[int] = None, budget: Optional[int] = None) -> PartitionResult:
    """
    C^D with its per-color parts. A partition splits into a partition of the 0-cells and one of the
    1-cells, so each color is solved on its own and C^D = C0^D + C1^D.

    Per color the search is bracketed by the rank of the color's cells (total functions only) or the
    cover number from below, and by the partition into classes of identical rows or columns from
    above. When the two meet no search runs.
    """
    _require(f, labconfig.EXACT_PARTITION_LIMIT_BITS if limit_bits is None else limit_bits, "Partition number")
    counter = _Budget(labconfig.PARTITION_SEARCH_BUDGET if budget is None else budget, f"Partition number of {f.name}")
    parts = {}
    for color in (0, 1):
        parts[color] = _color_partition(f, color, counter) if f.count(color) else []
    zeros, ones = len(parts[0]), len(parts[1])
    _LOGGER.debug(f"C^D({f.name}) = {zeros} + {ones} after {counter.used} nodes")
    return PartitionResult(zeros + ones, zeros, ones, _rectangles(parts[0]), _rectangles(parts[1]), counter.used)


# -- protocol trees --------------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeSearchResult:
    measure: str
    value: int
    witness: ProtocolTree
    nodes: int

    def to_json(self) -> dict:
        tree = metrics(self.witness)
        return {
            "measure": self.measure,
            "value": self.value,
            "witnessDepth": tree.depth,
            "witnessLeaves": tree.leaves,
            "nodes": self.nodes,
        }


Decision = Tuple[str, int]


class _TreeSearch:
    """
    Sub-rectangles are (row mask, column mask) pairs. ``canonical`` keeps the lowest-index row
    and column of every class of identical rows/columns; the canonical pair is the memo key.
    """

    objective = "leaves"

    def __init__(self, f: Function, budget: _Budget):
        self.f = f
        self.budget = budget
        matrix = f.matrix
        defined = None if f.mask is None else ~f.mask
        rows, cols = matrix.shape
        self.row_ones = [0] * rows
        self.row_defined = [0] * rows
        self.col_ones = [0] * cols
        self.col_defined = [0] * cols
        for x in range(rows):
            for y in range(cols):
                known = defined is None or bool(defined[x, y])
                if known:
                    self.row_defined[x] |= 1 << y
                    self.col_defined[y] |= 1 << x
                    if matrix[x, y]:
                        self.row_ones[x] |= 1 << y
                        self.col_ones[y] |= 1 << x
        self.all_rows = (1 << rows) - 1
        self.all_cols = (1 << cols) - 1
        self._canonical_cache: Dict[Tuple[int, int], Tuple[int, int]] = {}
        self._floors: Dict[Tuple[int, int], Tuple[int, int]] = {}

    def canonical(self, rows: int, cols: int) -> Tuple[int, int]:
        key = (rows, cols)
        cached = self._canonical_cache.get(key)
        if cached is not None:
            return cached
        seen = set()
        col_reps = 0
        for y in bits_of(cols):
            pattern = (self.col_ones[y] & rows, self.col_defined[y] & rows)
            if pattern not in seen:
                seen.add(pattern)
                col_reps |= 1 << y
        seen = set()
        row_reps = 0
        for x in bits_of(rows):
            pattern = (self.row_ones[x] & col_reps, self.row_defined[x] & col_reps)
            if pattern not in seen:
                seen.add(pattern)
                row_reps |= 1 << x
        result = (row_reps, col_reps)
        self._canonical_cache[key] = result
        return result

    def colors(self, rows: int, cols: int) -> Tuple[bool, bool]:
        """(has a defined 0, has a defined 1) on rows x cols."""
        zeros = ones = False
        for x in bits_of(rows):
            ones = ones or bool(self.row_ones[x] & cols)
            zeros = zeros or bool(self.row_defined[x] & ~self.row_ones[x] & cols)
            if zeros and ones:
                break
        return zeros, ones

    def leaf_floors(self, key: Tuple[int, int]) -> Tuple[int, int]:
        """Lower bounds on the (0-leaves, 1-leaves) of any protocol for a canonical sub-rectangle."""
        cached = self._floors.get(key)
        if cached is not None:
            return cached
        rows, cols = key
        zeros, ones = self.colors(rows, cols)
        members = bits_of(rows)
        if any(self.row_defined[x] & cols != cols for x in members):
            floors = (int(zeros), int(ones))
        else:
            columns = bits_of(cols)
            matrix = [[(self.row_ones[x] >> y) & 1 for y in columns] for x in members]
            complement = [[1 - value for value in row] for row in matrix]
            floors = (bareiss_rank(complement) if zeros else 0, bareiss_rank(matrix) if ones else 0)
        self._floors[key] = floors
        return floors

    def leaves_floor(self, key: Tuple[int, int]) -> int:
        zeros, ones = self.leaf_floors(key)
        return max(1, zeros + ones)

    @staticmethod
    def _bit_groups(side: int, width: int) -> List[int]:
        """The splits of ``side`` along one input bit, each as the part holding the lowest member."""
        members = bits_of(side)
        groups: List[int] = []
        if len(members) < 2:
            return groups
        for bit in range(width):
            group = 0
            for member in members:
                if not (member >> bit) & 1:
                    group |= 1 << member
            if not group or group == side:
                continue
            if not (group >> members[0]) & 1:
                group = side & ~group
            if group not in groups:
                groups.append(group)
        return groups

    @staticmethod
    def _all_groups(side: int) -> Iterator[int]:
        members = bits_of(side)
        if len(members) < 2:
            return
        first, others = members[0], members[1:]
        for pick in range(1 << len(others)):
            group = 1 << first
            for i, member in enumerate(others):
                if (pick >> i) & 1:
                    group |= 1 << member
            if group != side:
                yield group

    def _split(self, owner: str, group: int, rows: int, cols: int) -> Tuple[Decision, Tuple[int, int], Tuple[int, int]]:
        if owner == A:
            return (A, group), self.canonical(group, cols), self.canonical(rows & ~group, cols)
        return (B, group), self.canonical(rows, group), self.canonical(rows, cols & ~group)

    def splits(self, rows: int, cols: int) -> Iterator[Tuple[Decision, Tuple[int, int], Tuple[int, int]]]:
        """
        Every split of a canonical sub-rectangle, with canonical children: the single-bit splits of
        A and then of B first, then every other A-split and B-split.
        """
        bit_groups = {A: self._bit_groups(rows, self.f.n_a), B: self._bit_groups(cols, self.f.n_b)}
        for owner in (A, B):
            for group in bit_groups[owner]:
                yield self._split(owner, group, rows, cols)
        for owner, side in ((A, rows), (B, cols)):
            for group in self._all_groups(side):
                if group not in bit_groups[owner]:
                    yield self._split(owner, group, rows, cols)

    def leaf_value(self, rows: int, cols: int, objective: str) -> int:
        zeros, ones = self.colors(rows, cols)
        if ones:
            return 1
        if zeros:
            return 0
        return 1 if objective == "zeros" else 0

    def build(self, rows: int, cols: int, decide) -> Node:
        """Expands memoized decisions into a tree over the original inputs."""
        key = self.canonical(rows, cols)
        decision = decide(key)
        if decision is None:
            return Leaf(self.leaf_value(rows, cols, self.objective))
        owner, group = decision
        _, rep_cols = key
        if owner == A:
            zero = self._members(rows, group, rep_cols, by_rows=True)
            children = (self.build(zero, cols, decide), self.build(rows & ~zero, cols, decide))
        else:
            zero = self._members(cols, group, rows, by_rows=False)
            children = (self.build(rows, zero, decide), self.build(rows, cols & ~zero, decide))
        return Split(owner, zero, children)

    def _members(self, side: int, group: int, other: int, by_rows: bool) -> int:
        """All inputs of ``side`` whose class representative lies in ``group``."""
        ones = self.row_ones if by_rows else self.col_ones
        defined = self.row_defined if by_rows else self.col_defined
        patterns = {(ones[r] & other, defined[r] & other) for r in bits_of(group)}
        result = 0
        for member in bits_of(side):
            if (ones[member] & other, defined[member] & other) in patterns:
                result |= 1 << member
        return result


class _DepthSearch(_TreeSearch):
    def __init__(self, f: Function, budget: _Budget):
        super().__init__(f, budget)
        self.failed: Dict[Tuple[int, int], int] = {}
        self.solved: Dict[Tuple[int, int], Tuple[int, Optional[Decision]]] = {}

    def depth_floor(self, key: Tuple[int, int]) -> int:
        """A tree of depth d has at most 2^d leaves."""
        return (self.leaves_floor(key) - 1).bit_length()

    def fits(self, key: Tuple[int, int], depth: int) -> bool:
        known = self.solved.get(key)
        if known is not None and known[0] <= depth:
            return True
        if self.failed.get(key, -1) >= depth:
            return False
        zeros, ones = self.colors(*key)
        if not (zeros and ones):
            self.solved[key] = (0, None)
            return True
        if self.depth_floor(key) > depth:
            self.failed[key] = self.depth_floor(key) - 1
            return False
        for decision, child0, child1 in self.splits(*key):
            self.budget.tick()
            if self.fits(child0, depth - 1) and self.fits(child1, depth - 1):
                self.solved[key] = (depth, decision)
                return True
        self.failed[key] = depth
        return False

    def decision(self, key: Tuple[int, int]) -> Optional[Decision]:
        return self.solved[key][1]


class _LeafSearch(_TreeSearch):
    """
    ``solve(key, cap)`` returns the optimum of a sub-rectangle when it is below ``cap``; otherwise
    it returns None and remembers ``cap`` as a lower bound for the sub-rectangle.
    """

    def __init__(self, f: Function, budget: _Budget, objective: str):
        super().__init__(f, budget)
        self.objective = objective
        self.memo: Dict[Tuple[int, int], Tuple[int, Optional[Decision]]] = {}
        self.at_least: Dict[Tuple[int, int], int] = {}

    def _leaf_cost(self, zeros: bool, ones: bool) -> int:
        if self.objective == "leaves":
            return 1
        if self.objective == "zeros":
            return 1 if zeros else 0
        return 1 if ones else 0

    def floor(self, key: Tuple[int, int]) -> int:
        zeros, ones = self.leaf_floors(key)
        static = {"leaves": max(1, zeros + ones), "zeros": zeros, "ones": ones}[self.objective]
        return max(static, self.at_least.get(key, 0))

    def solve(self, key: Tuple[int, int], cap: int) -> Optional[int]:
        known = self.memo.get(key)
        if known is not None:
            return known[0] if known[0] < cap else None
        lower = self.floor(key)
        if lower >= cap:
            return None
        zeros, ones = self.colors(*key)
        if not (zeros and ones):
            self.memo[key] = (self._leaf_cost(zeros, ones), None)
            return self.memo[key][0]
        bound, best = cap, None
        for decision, child0, child1 in self.splits(*key):
            self.budget.tick()
            floor1 = self.floor(child1)
            if self.floor(child0) + floor1 >= bound:
                continue
            left = self.solve(child0, bound - floor1)
            if left is None:
                continue
            right = self.solve(child1, bound - left)
            if right is None:
                continue
            bound, best = left + right, decision
            if bound == lower:
                break
        if best is None:
            self.at_least[key] = cap
            return None
        self.memo[key] = (bound, best)
        return bound

    def decision(self, key: Tuple[int, int]) -> Optional[Decision]:
        return self.memo[key][1]


def _checked_tree(search: _TreeSearch, f: Function, decide, measure: str) -> ProtocolTree:
    tree = ProtocolTree(search.build(search.all_rows, search.all_cols, decide), f.n_a, f.n_b)
    if not verify(tree, f, mode="exhaustive").ok:
        raise RuntimeError(f"{measure} witness for {f.name} does not verify")
    return tree


def deterministic_complexity(
    f: Function,
    count_answer_bit: Optional[bool] = None,
    limit_bits: Optional[int] = None,
    budget: Optional[int] = None,
) -> TreeSearchResult:
    """
    D(f) with a minimum-depth witness tree, by iterative deepening from the rank floor. Works on
    partial functions, where masked cells never force a split. With the answer bit counted a
    constant costs 1.
    """
    _require(f, labconfig.EXACT_TREE_LIMIT_BITS if limit_bits is None else limit_bits, "Deterministic complexity")
    counter = _Budget(labconfig.TREE_SEARCH_BUDGET if budget is None else budget, f"D({f.name})")
    search = _DepthSearch(f, counter)
    root = search.canonical(search.all_rows, search.all_cols)
    depth = search.depth_floor(root)
    while not search.fits(root, depth):
        depth += 1
    tree = _checked_tree(search, f, search.decision, "D")
    value = answer_cost(tree, count_answer_bit)
    _LOGGER.info(f"D({f.name}) = {value} (tree depth {depth}, {counter.used} nodes)")
    return TreeSearchResult("D", value, tree, counter.used)


def protocol_color_number(
    f: Function, objective: str = "leaves", limit_bits: Optional[int] = None, budget: Optional[int] = None
) -> TreeSearchResult:
    """Minimum number of leaves (``leaves``), 0-leaves (``zeros``) or 1-leaves (``ones``) of a protocol tree."""
    if objective not in OBJECTIVES:
        raise ValueError(f"Unknown objective {objective!r}, expected one of {OBJECTIVES}")
    _require(f, labconfig.EXACT_TREE_LIMIT_BITS if limit_bits is None else limit_bits, "Protocol partition number")
    measure = {"leaves": "C^P", "zeros": "C0^P", "ones": "C1^P"}[objective]
    counter = _Budget(labconfig.TREE_SEARCH_BUDGET if budget is None else budget, f"{measure}({f.name})")
    search = _LeafSearch(f, counter, objective)
    # a tree never has more leaves than the matrix has cells
    value = search.solve(search.canonical(search.all_rows, search.all_cols), f.rows * f.cols + 1)
    tree = _checked_tree(search, f, search.decision, measure)
    _LOGGER.info(f"{measure}({f.name}) = {value} ({counter.used} nodes)")
    return TreeSearchResult(measure, value, tree, counter.used)


def protocol_partition_number(
    f: Function, limit_bits: Optional[int] = None, budget: Optional[int] = None
) -> TreeSearchResult:
    """C^P(f): the fewest leaves of any protocol tree for f, with a witness tree."""
    return protocol_color_number(f, "leaves", limit_bits, budget)
