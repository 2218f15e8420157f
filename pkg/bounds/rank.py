"""
Matrix rank over the rationals and over GF(2).

Both ranks run on Python integers: fraction-free (Bareiss) elimination keeps every intermediate
value an exact integer, and GF(2) rows are packed into int bitsets and eliminated with XOR.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np

try:
    from .. import labconfig
    from ..fnspace import Function, SizeLimitExceeded
    from ..protocol import A, ProtocolTree, Split, regions, verify
except ImportError:
    import labconfig
    from fnspace import Function, SizeLimitExceeded
    from protocol import A, ProtocolTree, Split, regions, verify

_LOGGER = logging.getLogger(__name__)

MatrixLike = Union[Function, np.ndarray, List[List[int]]]


def _values(source: MatrixLike, limit_bits: Optional[int] = None) -> np.ndarray:
    if not isinstance(source, Function):
        return np.asarray(source)
    limit = labconfig.EXACT_RANK_LIMIT_BITS if limit_bits is None else limit_bits
    if source.n_a + source.n_b > limit:
        raise SizeLimitExceeded(f"Rank of {source.name or 'function'} needs nA+nB <= {limit}")
    return source.matrix


def _int_rows(source: MatrixLike, limit_bits: Optional[int] = None) -> List[List[int]]:
    values = _values(source, limit_bits)
    return [[int(v) for v in row] for row in values]


def bareiss_rank(rows: List[List[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination. ``rows`` is modified in place."""
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    previous = 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        head = rows[rank]
        for r in range(rank + 1, n_rows):
            row = rows[r]
            factor = row[col]
            # exact division: Sylvester's identity guarantees divisibility by the previous pivot
            for c in range(col + 1, n_cols):
                row[c] = (head[col] * row[c] - factor * head[c]) // previous
            row[col] = 0
        previous = head[col]
        rank += 1
        if rank == n_rows:
            break
    return rank


def rank_rational(source: MatrixLike, limit_bits: Optional[int] = None) -> int:
    """
    Exact rank over Q of a function matrix (or any integer matrix).

    Functions wider than ``limit_bits`` (nA + nB) are refused with ``SizeLimitExceeded``. Masked
    cells count with their stored value.
    """
    return bareiss_rank(_int_rows(source, limit_bits))


def _bitset_rows(source: MatrixLike, limit_bits: Optional[int] = None) -> List[int]:
    values = _values(source, limit_bits)
    packed = []
    for row in values:
        bits = 0
        for c, v in enumerate(row):
            if int(v) & 1:
                bits |= 1 << c
        packed.append(bits)
    return packed


def rank_gf2(source: MatrixLike, limit_bits: Optional[int] = None) -> int:
    """Exact rank over GF(2), entries taken modulo 2."""
    pivots: dict = {}
    for row in _bitset_rows(source, limit_bits):
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                break
            row ^= pivots[top]
    return len(pivots)


@dataclass
class SubadditivityResult:
    ok: bool
    checked: int
    violations: List[Tuple[str, int, int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "violations": [
                {"path": path, "rank": whole, "rank0": left, "rank1": right}
                for path, whole, left, right in self.violations
            ],
        }


def rank_subadditivity(tree: ProtocolTree, f: Function) -> SubadditivityResult:
    """
    Checks rank(M) <= rank(M0) + rank(M1) at every internal node of a verified tree, with M the
    node's sub-rectangle and M0, M1 the parts its split sends to either child.
    """
    if not verify(tree, f, mode="exhaustive").ok:
        raise ValueError(f"Tree does not compute {f.name or 'the function'}")
    matrix = f.matrix
    result = SubadditivityResult(ok=True, checked=0)
    for region in regions(tree, include_internal=True):
        node = region.node
        if not isinstance(node, Split) or not region.area:
            continue
        if node.owner == A:
            flags = node.zero_flags(region.rows)
            parts = (matrix[np.ix_(region.rows[flags], region.cols)], matrix[np.ix_(region.rows[~flags], region.cols)])
        else:
            flags = node.zero_flags(region.cols)
            parts = (matrix[np.ix_(region.rows, region.cols[flags])], matrix[np.ix_(region.rows, region.cols[~flags])])
        whole = rank_rational(matrix[np.ix_(region.rows, region.cols)])
        left, right = (rank_rational(part) for part in parts)
        result.checked += 1
        if whole > left + right:
            result.ok = False
            result.violations.append((region.path, whole, left, right))
    _LOGGER.debug(f"Rank subadditivity checked on {result.checked} nodes, ok={result.ok}")
    return result
