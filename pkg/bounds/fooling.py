"""
Fooling sets
============

A c-fooling set is a list of input pairs (x_i, y_i), all mapped to c, such that for every i != j
f(x_i, y_j) != c or f(x_j, y_i) != c. No c-rectangle holds two of its pairs, so its size bounds the
c-cover number from below.

Masked cells of a partial function may be completed to c, so a masked cross cell never separates
two pairs, and pairs must sit on defined cells.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

try:
    from .. import labconfig
    from ..fnspace import Function, SizeLimitExceeded
except ImportError:
    import labconfig
    from fnspace import Function, SizeLimitExceeded

_LOGGER = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class FoolingSet:
    pairs: Tuple[Pair, ...]
    polarity: int

    @property
    def size(self) -> int:
        return len(self.pairs)

    def to_json(self) -> dict:
        return {"polarity": self.polarity, "size": self.size, "pairs": [list(pair) for pair in self.pairs]}


@dataclass
class FoolingCheck:
    ok: bool
    bound: int
    conflicts: List[Tuple[int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _fits(f: Function, polarity: int):
    """Boolean matrix: True where a c-rectangle may contain the cell."""
    fits = f.matrix == polarity
    if f.mask is not None:
        fits = fits | f.mask
    return fits


def _defined_hits(f: Function, polarity: int) -> np.ndarray:
    hits = f.matrix == polarity
    if f.mask is not None:
        hits = hits & ~f.mask
    return hits


def _compatible(fits: np.ndarray, first: Pair, second: Pair) -> bool:
    return not (fits[first[0], second[1]] and fits[second[0], first[1]])


def verify_fooling_set(f: Function, fooling: FoolingSet) -> FoolingCheck:
    """
    Checks the fooling-set definition exactly. ``bound`` is the implied lower bound |S| on the
    polarity's cover number, 0 when the check fails.
    """
    if fooling.polarity not in (0, 1):
        raise ValueError(f"Polarity must be 0 or 1, got {fooling.polarity}")
    for x, y in fooling.pairs:
        f.evaluate(x, y)
    hits = _defined_hits(f, fooling.polarity)
    fits = _fits(f, fooling.polarity)
    conflicts = []
    pairs = list(fooling.pairs)
    for i, (x, y) in enumerate(pairs):
        if not hits[x, y]:
            conflicts.append((i, i))
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if pairs[i] == pairs[j] or not _compatible(fits, pairs[i], pairs[j]):
                conflicts.append((i, j))
    ok = not conflicts
    return FoolingCheck(ok, len(pairs) if ok else 0, conflicts)


def _candidates(f: Function, polarity: int) -> List[Pair]:
    return [(int(x), int(y)) for x, y in np.argwhere(_defined_hits(f, polarity))]


def greedy_fooling_set(f: Function, polarity: int = 1, seed: int = 0) -> FoolingSet:
    """Scans the polarity cells in a seeded random order, keeping each pair compatible with all kept ones."""
    if not f.is_boolean:
        raise ValueError(f"Fooling sets need a Boolean function, {f.name} has {f.range_bits} output bits")
    fits = _fits(f, polarity)
    candidates = _candidates(f, polarity)
    order = np.random.default_rng(seed).permutation(len(candidates))
    kept: List[Pair] = []
    for index in order:
        pair = candidates[int(index)]
        if all(_compatible(fits, pair, other) for other in kept):
            kept.append(pair)
    _LOGGER.debug(f"Greedy {polarity}-fooling set of {f.name}: {len(kept)} of {len(candidates)} cells")
    return FoolingSet(tuple(sorted(kept)), polarity)


def max_fooling_set(f: Function, polarity: int = 1, limit_cells: Optional[int] = None) -> FoolingSet:
    """
    A maximum fooling set: a maximum clique in the graph joining compatible polarity cells.

    Refuses (``SizeLimitExceeded``) when the function has more polarity cells than ``limit_cells``.
    """
    if not f.is_boolean:
        raise ValueError(f"Fooling sets need a Boolean function, {f.name} has {f.range_bits} output bits")
    limit = labconfig.EXACT_FOOLING_LIMIT_CELLS if limit_cells is None else limit_cells
    candidates = _candidates(f, polarity)
    if len(candidates) > limit:
        raise SizeLimitExceeded(f"{f.name} has {len(candidates)} cells of value {polarity}, above {limit}")
    if not candidates:
        return FoolingSet((), polarity)
    fits = _fits(f, polarity)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(candidates)))
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            if _compatible(fits, candidates[i], candidates[j]):
                graph.add_edge(i, j)
    clique, _ = nx.max_weight_clique(graph, weight=None)
    pairs = tuple(sorted(candidates[i] for i in clique))
    _LOGGER.debug(f"Maximum {polarity}-fooling set of {f.name}: {len(pairs)}")
    return FoolingSet(pairs, polarity)


def fooling_set_of(pairs: Sequence[Pair], polarity: int) -> FoolingSet:
    return FoolingSet(tuple((int(x), int(y)) for x, y in pairs), polarity)
