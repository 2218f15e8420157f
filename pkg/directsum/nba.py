"""
Protocols for the NBA problem: A holds a team x, B holds a pair of teams (u, v) with x in {u, v},
and B has to learn which of the two is x.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

try:
    from ..randomized.coins import ceil_log2
    from .hashing import HashFamily, hash_family_generate
except ImportError:
    from randomized.coins import ceil_log2
    from directsum.hashing import HashFamily, hash_family_generate

_LOGGER = logging.getLogger(__name__)

MODES = ("oneway", "interactive", "tworound", "batched")


def _check_edge(n: int, x: int, u: int, v: int) -> None:
    limit = 1 << n
    if not (0 <= x < limit and 0 <= u < limit and 0 <= v < limit):
        raise ValueError(f"Teams must be {n}-bit values")
    if u == v:
        raise ValueError("The two teams of an edge must differ")
    if x not in (u, v):
        raise ValueError(f"x={x} is neither u={u} nor v={v}")


def _winner(x_image, u_image) -> int:
    return 0 if x_image == u_image else 1


def nba_one_way(n: int, x: int) -> str:
    """A's message when only A may speak: all of x."""
    if not 0 <= x < 1 << n:
        raise ValueError(f"x must be an {n}-bit value")
    return format(x, f"0{n}b")


def nba_interactive(n: int, x: int, u: int, v: int) -> Tuple[int, int]:
    """B names the lowest bit where u and v differ, A answers with that bit of x."""
    _check_edge(n, x, u, v)
    index = ((u ^ v) & -(u ^ v)).bit_length() - 1
    bit = (x >> index) & 1
    return _winner(bit, (u >> index) & 1), ceil_log2(n) + 1


def nba_two_round(n: int, x: int, u: int, v: int, family: HashFamily) -> Tuple[int, int]:
    """B sends the index of the first function injective on {u, v}; A sends the image of x."""
    _check_edge(n, x, u, v)
    if family.m != 1 << n:
        raise ValueError(f"Hash family domain {family.m} does not match 2^{n}")
    index = family.first_injective([u, v])
    if index is None:
        raise ValueError(f"No function of the family separates {u} and {v}")
    images = family.apply([x, u], [index])[0]
    return _winner(images[0], images[1]), family.index_bits + family.value_bits


@dataclass
class BatchedRun:
    winners: List[int]
    functions: List[int]
    assignment: List[int]
    bits: Dict[str, int] = field(default_factory=dict)
    fallback: bool = False

    def to_json(self) -> dict:
        return {
            "winners": self.winners,
            "functions": self.functions,
            "assignment": self.assignment,
            "bits": self.bits,
            "fallback": self.fallback,
        }


def nba_batched(
    n: int, k: int, edges: Sequence[Tuple[int, int]], xs: Sequence[int], family: HashFamily
) -> BatchedRun:
    """
    k instances at once. B repeatedly picks the function injective on most of the remaining edges
    (at least half of them, by averaging over a verified family), sends the chosen function indices,
    and tells A in unary which function serves each edge; A replies with one image per edge.
    """
    if len(edges) != k or len(xs) != k:
        raise ValueError(f"Need {k} edges and {k} teams, got {len(edges)} and {len(xs)}")
    if family.m != 1 << n:
        raise ValueError(f"Hash family domain {family.m} does not match 2^{n}")
    for (u, v), x in zip(edges, xs):
        _check_edge(n, x, u, v)

    separating = np.stack([family.injective([u, v]) for u, v in edges], axis=1)
    remaining = list(range(k))
    functions: List[int] = []
    assignment = [0] * k
    fallback = False
    while remaining:
        counts = separating[:, remaining].sum(axis=1)
        best = int(np.argmax(counts))
        if 2 * counts[best] < len(remaining) or counts[best] == 0:
            fallback = True
            break
        functions.append(best)
        covered = [edge for edge in remaining if separating[best, edge]]
        for edge in covered:
            assignment[edge] = len(functions)
        remaining = [edge for edge in remaining if not separating[best, edge]]

    if fallback:
        _LOGGER.warning(f"Batched NBA: {len(remaining)} edges left without a halving function; assigning one by one")
        for edge in remaining:
            index = family.first_injective(list(edges[edge]))
            if index is None:
                raise ValueError(f"No function of the family separates edge {edges[edge]}")
            functions.append(index)
            assignment[edge] = len(functions)

    winners = []
    for edge, ((u, v), x) in enumerate(zip(edges, xs)):
        images = family.apply([x, u], [functions[assignment[edge] - 1]])[0]
        winners.append(_winner(images[0], images[1]))

    bits = {
        "functions": len(functions) * family.index_bits,
        # function j is announced as j - 1 ones and a zero; nothing to announce with a single function
        "assignment": sum(assignment) if len(functions) > 1 else 0,
        "replies": k * family.value_bits,
    }
    bits["total"] = sum(bits.values())
    return BatchedRun(winners, functions, assignment, bits, fallback)


def nba_family(n: int, seed: int) -> HashFamily:
    return hash_family_generate(1 << n, 2, seed)


def random_edges(n: int, k: int, seed: int) -> Tuple[List[Tuple[int, int]], List[int]]:
    """k random edges and, for each, a random one of its two teams."""
    rng = np.random.default_rng([seed, n, k])
    edges = []
    xs = []
    for _ in range(k):
        u = int(rng.integers(1 << n))
        v = int(rng.integers((1 << n) - 1))
        v += v >= u
        edges.append((min(u, v), max(u, v)))
        xs.append(edges[-1][int(rng.integers(2))])
    return edges, xs


@dataclass
class ExhaustiveCheck:
    mode: str
    n: int
    instances: int
    wrong: int
    max_bits: int

    @property
    def ok(self) -> bool:
        return self.wrong == 0

    def to_json(self) -> dict:
        return {"mode": self.mode, "n": self.n, "instances": self.instances, "wrong": self.wrong, "maxBits": self.max_bits, "ok": self.ok}


def nba_exhaustive(n: int, mode: str, family: Optional[HashFamily] = None) -> ExhaustiveCheck:
    """Runs ``mode`` on every edge u < v and both of its teams."""
    if mode not in ("interactive", "tworound"):
        raise ValueError(f"Exhaustive checks cover interactive and tworound, got {mode!r}")
    if mode == "tworound" and family is None:
        family = nba_family(n, 0)
    instances = wrong = max_bits = 0
    for u in range(1 << n):
        for v in range(u + 1, 1 << n):
            for expected, x in enumerate((u, v)):
                if mode == "interactive":
                    winner, bits = nba_interactive(n, x, u, v)
                else:
                    winner, bits = nba_two_round(n, x, u, v, family)
                instances += 1
                wrong += winner != expected
                max_bits = max(max_bits, bits)
    return ExhaustiveCheck(mode, n, instances, wrong, max_bits)
