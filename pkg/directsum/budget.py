"""
Communication budgets for k parallel copies of a protocol with L leaves.

k copies of an L-leaf protocol are run in g_L(k) * log L bits, g_L(k) = k + c_L. The offsets c_L
follow the recurrence over the two subtrees of the root; the counting check decides whether the
messages of both subtrees fit into the budget, and the prefix allocator turns a passing check into
an explicit prefix code telling which copies go to which subtree.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

_LOGGER = logging.getLogger(__name__)

Affine = Union[int, Callable[[int], int]]

# log 8: the constant paid at every split of the recurrence
SPLIT_OVERHEAD = 3
RULES = ("max", "min")


def floor_log_product(x: int, y: int) -> int:
    """floor(x * log2 y) for integers x >= 0, y >= 1."""
    return (y**x).bit_length() - 1


def ceil_log_product(x: int, y: int) -> int:
    """ceil(x * log2 y) for integers x >= 0, y >= 1."""
    power = y**x
    exponent = power.bit_length() - 1
    return exponent if power == 1 << exponent else exponent + 1


def _affine(g: Affine) -> Callable[[int], int]:
    if callable(g):
        return g
    return lambda k: k + g


def counting_lemma_check(k: int, M: int, N: int, gM: Affine, gN: Affine, gL: Affine) -> bool:
    """
    2^floor(gL(k) log(M+N)) >= sum_i C(k, i) 2^(ceil(gM(i) log M) + ceil(gN(k-i) log N)).

    The g's are functions of k or integer offsets c standing for k + c.
    """
    if M < 1 or N < 1 or k < 0:
        raise ValueError(f"Need M, N >= 1 and k >= 0, got M={M} N={N} k={k}")
    gM, gN, gL = _affine(gM), _affine(gN), _affine(gL)
    left = 1 << floor_log_product(gL(k), M + N)
    right = sum(math.comb(k, i) << (ceil_log_product(gM(i), M) + ceil_log_product(gN(k - i), N)) for i in range(k + 1))
    return left >= right


class GBudget:
    """
    The offsets c_L for L = 1..l_max. c_1 = c_2 = 0; above that c_L is c_M + c_N + 3 taken over
    the splits M + N = L, maximized ("max", every split fits) or minimized ("min", the best split fits).
    """

    def __init__(self, l_max: int, rule: str = "max"):
        if l_max < 2:
            raise ValueError(f"Need l_max >= 2, got {l_max}")
        if rule not in RULES:
            raise ValueError(f"Unknown rule {rule!r}, expected one of {RULES}")
        self.l_max = l_max
        self.rule = rule
        self.table: Dict[int, int] = {1: 0, 2: 0}
        choose = max if rule == "max" else min
        for leaves in range(3, l_max + 1):
            self.table[leaves] = choose(
                self.table[m] + self.table[leaves - m] + SPLIT_OVERHEAD for m in range(1, leaves // 2 + 1)
            )

    def c(self, leaves: int) -> int:
        if leaves not in self.table:
            raise ValueError(f"No offset for L={leaves}; the table covers 1..{self.l_max}")
        return self.table[leaves]

    def g(self, leaves: int, k: int) -> int:
        return k + self.c(leaves)

    def bits(self, leaves: int, k: int) -> int:
        """Budget in bits for k copies of an L-leaf protocol."""
        return floor_log_product(self.g(leaves, k), leaves)

    def payload_bits(self, k: int, i: int, M: int, N: int) -> int:
        """Bits of the subtree messages when i of the k copies go to the M-leaf side."""
        return ceil_log_product(self.g(M, i), M) + ceil_log_product(self.g(N, k - i), N)

    def check(self, k: int, M: int, N: int) -> bool:
        return counting_lemma_check(k, M, N, self.c(M), self.c(N), self.c(M + N))

    def to_json(self) -> dict:
        return {"lMax": self.l_max, "rule": self.rule, "c": {str(leaves): c for leaves, c in sorted(self.table.items())}}


@dataclass
class SweepResult:
    ok: bool
    checked: int
    failures: List[Tuple[int, int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failures": [list(failure) for failure in self.failures]}


def lemma_sweep(budget: GBudget, max_leaves: Optional[int] = None, max_k: int = 32) -> SweepResult:
    """Runs the counting check for every split M + N <= max_leaves and every k <= max_k."""
    max_leaves = max_leaves or budget.l_max
    failures = []
    checked = 0
    for leaves in range(2, max_leaves + 1):
        for M in range(1, leaves):
            for k in range(1, max_k + 1):
                checked += 1
                if not budget.check(k, M, leaves - M):
                    failures.append((k, M, leaves - M))
    if failures:
        _LOGGER.warning(f"Counting check fails for {len(failures)} of {checked} cases under rule {budget.rule}")
    return SweepResult(not failures, checked, failures)


def rank_positions(positions: Sequence[int]) -> int:
    """Colexicographic rank of a sorted set of positions among the sets of the same size."""
    return sum(math.comb(position, index + 1) for index, position in enumerate(sorted(positions)))


def unrank_positions(rank: int, size: int, k: int) -> Tuple[int, ...]:
    positions = []
    position = k
    for index in range(size, 0, -1):
        position -= 1
        while math.comb(position, index) > rank:
            position -= 1
        positions.append(position)
        rank -= math.comb(position, index)
    return tuple(sorted(positions))


@dataclass(frozen=True)
class PrefixClass:
    """All case vectors with i copies on the M side share one prefix length; their codes are base + rank."""

    i: int
    length: int
    base: int
    count: int
    payload: int


@dataclass
class Allocation:
    ok: bool
    k: int
    M: int
    N: int
    budget: int
    classes: List[PrefixClass] = field(default_factory=list)
    failed_class: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok

    def _class(self, i: int) -> PrefixClass:
        for entry in self.classes:
            if entry.i == i:
                return entry
        raise ValueError(f"No prefix class for i={i}")

    def encode(self, positions: Sequence[int]) -> str:
        """The prefix announcing which copies (``positions``) go to the M side."""
        if not self.ok:
            raise ValueError("Allocation failed; nothing to encode")
        positions = tuple(sorted(set(positions)))
        if any(not 0 <= position < self.k for position in positions):
            raise ValueError(f"Positions must lie in [0, {self.k})")
        entry = self._class(len(positions))
        code = entry.base + rank_positions(positions)
        return format(code, f"0{entry.length}b") if entry.length else ""

    def decode(self, bits: str) -> Tuple[int, ...]:
        """Reads one prefix from the start of ``bits``; returns the positions on the M side."""
        for entry in self.classes:
            if len(bits) < entry.length:
                continue
            code = int(bits[: entry.length], 2) if entry.length else 0
            if entry.base <= code < entry.base + entry.count:
                return unrank_positions(code - entry.base, entry.i, self.k)
        raise ValueError(f"{bits!r} starts with no codeword")

    def entries(self) -> Dict[Tuple[int, ...], str]:
        return {
            positions: self.encode(positions)
            for entry in self.classes
            for positions in (unrank_positions(rank, entry.i, self.k) for rank in range(entry.count))
        }

    def verify(self) -> bool:
        """Prefix-free, injective and every prefix plus its payload within the budget."""
        codes = self.entries()
        words = sorted(codes.values())
        if len(set(words)) != len(words):
            return False
        for shorter, longer in zip(words, words[1:]):
            if longer.startswith(shorter):
                return False
        return all(entry.length + entry.payload <= self.budget for entry in self.classes)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "k": self.k,
            "M": self.M,
            "N": self.N,
            "budget": self.budget,
            "failedClass": self.failed_class,
            "classes": [
                {"i": entry.i, "prefixBits": entry.length, "payloadBits": entry.payload, "count": entry.count}
                for entry in self.classes
            ],
        }


def prefix_allocate(k: int, M: int, N: int, budget: GBudget, bits: Optional[int] = None) -> Allocation:
    """
    Canonical prefix code over the case vectors of k copies split into an M-leaf and an N-leaf side.

    Class i (i copies on the M side) gets prefixes of length bits - payload(i). Classes are placed in
    order of increasing prefix length, ties by increasing i; the code fits exactly when the counting
    check holds, otherwise the first class that runs out of space is reported.
    """
    if k < 1:
        raise ValueError(f"Need k >= 1, got {k}")
    total = budget.bits(M + N, k) if bits is None else bits
    pending = []
    for i in range(k + 1):
        payload = budget.payload_bits(k, i, M, N)
        length = total - payload
        if length < 0:
            _LOGGER.info(f"Class i={i} alone needs {payload} bits, budget {total}")
            return Allocation(False, k, M, N, total, failed_class=i)
        pending.append((length, i, payload))
    pending.sort()

    classes = []
    code = 0
    previous = pending[0][0]
    for length, i, payload in pending:
        code <<= length - previous
        previous = length
        count = math.comb(k, i)
        if code + count > 1 << length:
            _LOGGER.info(f"Prefix space exhausted at class i={i} (k={k}, M={M}, N={N}, budget {total})")
            return Allocation(False, k, M, N, total, classes, failed_class=i)
        classes.append(PrefixClass(i, length, code, count, payload))
        code += count
    _LOGGER.debug(f"Allocated {1 << k} case vectors for k={k}, M={M}, N={N} in {total} bits")
    return Allocation(True, k, M, N, total, classes)
