"""
Two-party functions
===================

A function f: X x Y -> Z with X = [0, 2^nA), Y = [0, 2^nB). Bit i of an input is its i-th
coordinate (bit 0 first). Small functions are stored as a dense numpy matrix, large ones only as
a scalar evaluation callback with the same contract. Partial functions carry a mask of the cells
outside the promise set; those cells are wildcards for every downstream search.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

try:
    from . import labconfig
except ImportError:
    import labconfig

_LOGGER = logging.getLogger(__name__)

# Largest input width a callback function may declare.
MAX_INPUT_BITS = 62
MAX_RANGE_BITS = 16

BUILDER_NAMES = ("EQ", "NE", "GT", "IP", "DISJ", "EQ_alphabet", "TAB24", "NBA")

ScalarFn = Callable[[int, int], int]
VectorFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


class SizeLimitExceeded(ValueError):
    """Raised when an operation would need a dense matrix or search beyond a configured limit."""


def _parity(values: np.ndarray, width: int) -> np.ndarray:
    result = np.zeros_like(values)
    for i in range(width):
        result ^= (values >> i) & 1
    return result


def pack_inputs(parts: Sequence[int], width: int) -> int:
    """Packs per-copy inputs into one integer, copy i occupying bits [i*width, (i+1)*width)."""
    value = 0
    for i, part in enumerate(parts):
        if part < 0 or part >> width:
            raise ValueError(f"Input part {part} does not fit into {width} bits")
        value |= part << (i * width)
    return value


def unpack_inputs(value: int, width: int, k: int) -> List[int]:
    """Inverse of pack_inputs."""
    mask = (1 << width) - 1
    return [(value >> (i * width)) & mask for i in range(k)]


class Function:
    """
    A finite two-party function.

    :param n_a: bits of the first player's input
    :param n_b: bits of the second player's input
    :param range_bits: output width, 1 for Boolean functions
    :param scalar: evaluation callback (x, y) -> value
    :param vector: optional broadcasting callback over numpy index arrays
    :param masked: optional callback (x, y) -> bool, True outside the promise set
    :param masked_vector: broadcasting version of ``masked``
    :param name: builder tag such as ``"EQ:3"``
    """

    def __init__(
        self,
        n_a: int,
        n_b: int,
        scalar: ScalarFn,
        range_bits: int = 1,
        vector: Optional[VectorFn] = None,
        masked: Optional[Callable[[int, int], bool]] = None,
        masked_vector: Optional[VectorFn] = None,
        name: str = "",
        dense: Optional[bool] = None,
    ):
        if n_a < 0 or n_b < 0 or n_a > MAX_INPUT_BITS or n_b > MAX_INPUT_BITS:
            raise SizeLimitExceeded(f"Input widths nA={n_a}, nB={n_b} exceed {MAX_INPUT_BITS} bits")
        if not 1 <= range_bits <= MAX_RANGE_BITS:
            raise SizeLimitExceeded(f"Range of {range_bits} bits is outside 1..{MAX_RANGE_BITS}")
        self.n_a = n_a
        self.n_b = n_b
        self.range_bits = range_bits
        self.name = name
        self._scalar = scalar
        self._vector = vector
        self._masked = masked
        self._masked_vector = masked_vector
        self._matrix: Optional[np.ndarray] = None
        self._mask: Optional[np.ndarray] = None
        if dense is None:
            dense = self.cells <= labconfig.DENSE_CELL_LIMIT
        if dense:
            self._materialize()

    # -- shape -------------------------------------------------------------------------------

    @property
    def rows(self) -> int:
        return 1 << self.n_a

    @property
    def cols(self) -> int:
        return 1 << self.n_b

    @property
    def cells(self) -> int:
        return self.rows * self.cols

    @property
    def is_dense(self) -> bool:
        return self._matrix is not None

    @property
    def is_boolean(self) -> bool:
        return self.range_bits == 1

    @property
    def is_partial(self) -> bool:
        if self._matrix is not None:
            return self._mask is not None and bool(self._mask.any())
        return self._masked is not None

    def __repr__(self) -> str:
        kind = "dense" if self.is_dense else "callback"
        return f"Function({self.name or 'anonymous'}, nA={self.n_a}, nB={self.n_b}, range={self.range_bits}, {kind})"

    # -- evaluation ----------------------------------------------------------------------------

    def _check_input(self, x: int, y: int) -> None:
        if not (0 <= x < self.rows and 0 <= y < self.cols):
            raise ValueError(f"Input pair ({x}, {y}) outside {self.rows}x{self.cols}")

    def evaluate(self, x: int, y: int) -> int:
        self._check_input(x, y)
        if self._matrix is not None:
            return int(self._matrix[x, y])
        return int(self._scalar(x, y))

    __call__ = evaluate

    def is_masked(self, x: int, y: int) -> bool:
        self._check_input(x, y)
        if self._matrix is not None:
            return self._mask is not None and bool(self._mask[x, y])
        return self._masked is not None and bool(self._masked(x, y))

    def _materialize(self) -> None:
        if self.cells > labconfig.DENSE_CELL_LIMIT:
            raise SizeLimitExceeded(
                f"{self.name or 'function'} has {self.cells} cells, above the dense limit {labconfig.DENSE_CELL_LIMIT}"
            )
        xs = np.arange(self.rows, dtype=np.int64)[:, None]
        ys = np.arange(self.cols, dtype=np.int64)[None, :]
        if self._vector is not None:
            values = np.broadcast_to(self._vector(xs, ys), (self.rows, self.cols))
        else:
            values = np.array(
                [[self._scalar(x, y) for y in range(self.cols)] for x in range(self.rows)], dtype=np.int64
            )
        dtype = np.uint8 if self.range_bits <= 8 else np.uint16
        self._matrix = np.ascontiguousarray(values, dtype=dtype)
        if self._masked_vector is not None:
            self._mask = np.ascontiguousarray(np.broadcast_to(self._masked_vector(xs, ys), (self.rows, self.cols)), dtype=bool)
        elif self._masked is not None:
            self._mask = np.array(
                [[bool(self._masked(x, y)) for y in range(self.cols)] for x in range(self.rows)], dtype=bool
            )
        _LOGGER.debug(f"Materialized {self!r}")

    @property
    def matrix(self) -> np.ndarray:
        """Dense value matrix (rows = first player's inputs); materialized on demand."""
        if self._matrix is None:
            self._materialize()
        return self._matrix

    @property
    def mask(self) -> Optional[np.ndarray]:
        """Boolean matrix, True on cells outside the promise set; None for total functions."""
        if self._matrix is None:
            self._materialize()
        if self._mask is not None and not self._mask.any():
            return None
        return self._mask

    def callback_only(self) -> "Function":
        """The same function without dense storage, evaluated through its scalar callback."""
        return Function(
            self.n_a,
            self.n_b,
            self._scalar,
            range_bits=self.range_bits,
            vector=self._vector,
            masked=self._masked,
            masked_vector=self._masked_vector,
            name=self.name,
            dense=False,
        )

    def count(self, value: int) -> int:
        """Number of defined cells holding ``value``."""
        hits = self.matrix == value
        if self.mask is not None:
            hits &= ~self.mask
        return int(hits.sum())

    def is_constant(self) -> bool:
        defined = self.matrix if self.mask is None else self.matrix[~self.mask]
        return defined.size == 0 or bool((defined == defined.flat[0]).all())

    def agrees_with(self, other: "Function") -> bool:
        """Cell-by-cell equality on defined cells (both functions must be dense-sized)."""
        if (self.n_a, self.n_b) != (other.n_a, other.n_b):
            return False
        same = self.matrix == other.matrix
        for mask in (self.mask, other.mask):
            if mask is not None:
                same |= mask
        return bool(same.all())


@dataclass(frozen=True)
class Rectangle:
    """A combinatorial rectangle rows x cols of a function matrix."""

    rows: frozenset
    cols: frozenset

    def __post_init__(self):
        if not self.rows or not self.cols:
            raise ValueError("A rectangle needs a nonempty row set and a nonempty column set")

    @classmethod
    def of(cls, rows, cols) -> "Rectangle":
        return cls(frozenset(int(r) for r in rows), frozenset(int(c) for c in cols))

    @property
    def area(self) -> int:
        return len(self.rows) * len(self.cols)

    def cells(self) -> Iterator[Tuple[int, int]]:
        for r in sorted(self.rows):
            for c in sorted(self.cols):
                yield r, c

    def color(self, f: Function) -> Optional[int]:
        """The common value of the defined cells, None if the rectangle is not monochromatic."""
        block = f.matrix[np.ix_(sorted(self.rows), sorted(self.cols))]
        if f.mask is not None:
            block = block[~f.mask[np.ix_(sorted(self.rows), sorted(self.cols))]]
        if block.size == 0:
            return 0
        first = int(block.flat[0])
        return first if bool((block == first).all()) else None

    def is_monochromatic(self, f: Function) -> bool:
        return self.color(f) is not None

    def to_json(self) -> dict:
        return {"rows": sorted(self.rows), "cols": sorted(self.cols)}


# -- builders ------------------------------------------------------------------------------------


def _equal_width(n: int) -> int:
    if n < 1:
        raise ValueError(f"Input size must be at least 1, got {n}")
    return n


def _build_eq(n: int) -> Function:
    return Function(n, n, lambda x, y: int(x == y), vector=lambda xs, ys: xs == ys, name=f"EQ:{n}")


def _build_ne(n: int) -> Function:
    return Function(n, n, lambda x, y: int(x != y), vector=lambda xs, ys: xs != ys, name=f"NE:{n}")


def _build_gt(n: int) -> Function:
    return Function(n, n, lambda x, y: int(x >= y), vector=lambda xs, ys: xs >= ys, name=f"GT:{n}")


def _build_ip(n: int) -> Function:
    return Function(
        n,
        n,
        lambda x, y: bin(x & y).count("1") & 1,
        vector=lambda xs, ys: _parity(xs & ys, n),
        name=f"IP:{n}",
    )


def _build_disj(n: int) -> Function:
    return Function(n, n, lambda x, y: int(x & y == 0), vector=lambda xs, ys: (xs & ys) == 0, name=f"DISJ:{n}")


def _build_eq_alphabet(size: int) -> Function:
    if size < 2:
        raise ValueError(f"Alphabet size must be at least 2, got {size}")
    width = math.ceil(math.log2(size))
    return Function(
        width,
        width,
        lambda x, y: int(x == y),
        vector=lambda xs, ys: xs == ys,
        masked=lambda x, y: x >= size or y >= size,
        masked_vector=lambda xs, ys: (xs >= size) | (ys >= size),
        name=f"EQ_alphabet:{size}",
    )


# TAB24 layout: x = a (2 bits) | b (4 bits) << 2; y = flag | block4 << 1 | block16 << 5.
TAB24_A_BITS = 6
TAB24_B_BITS = 21


def tab24_value(x: int, y: int) -> int:
    if y & 1:
        return (y >> (5 + ((x >> 2) & 15))) & 1
    return (y >> (1 + (x & 3))) & 1


def _tab24_vector(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    small = (ys >> (1 + (xs & 3))) & 1
    large = (ys >> (5 + ((xs >> 2) & 15))) & 1
    return np.where((ys & 1) == 1, large, small)


def _build_tab24() -> Function:
    return Function(TAB24_A_BITS, TAB24_B_BITS, tab24_value, vector=_tab24_vector, name="TAB24")


def nba_pair(n: int, column: int) -> Tuple[int, int]:
    """Decodes an NBA column index into its team pair (u, v)."""
    return column >> n, column & ((1 << n) - 1)


def nba_column(n: int, u: int, v: int) -> int:
    if u == v:
        raise ValueError("NBA teams must differ")
    u, v = min(u, v), max(u, v)
    return (u << n) | v


def _build_nba(n: int) -> Function:
    if n < 1:
        raise ValueError(f"NBA needs n >= 1, got {n}")
    low = (1 << n) - 1

    def scalar(x, y):
        return 0 if x == (y >> n) else 1

    def masked(x, y):
        u, v = y >> n, y & low
        return u >= v or (x != u and x != v)

    def masked_vector(xs, ys):
        us, vs = ys >> n, ys & low
        return (us >= vs) | ((xs != us) & (xs != vs))

    return Function(
        n,
        2 * n,
        scalar,
        vector=lambda xs, ys: np.where(xs == (ys >> n), 0, 1),
        masked=masked,
        masked_vector=masked_vector,
        name=f"NBA:{n}",
    )


def build_named(name: str, n: int = 1, params: Optional[dict] = None) -> Function:
    """
    Builds one of the named functions.

    :param name: EQ, NE, GT, IP, DISJ, EQ_alphabet, TAB24 or NBA
    :param n: input size; for EQ_alphabet the alphabet size N (also accepted as ``params["N"]``)
    :return: the Function
    """
    params = params or {}
    if name == "EQ":
        return _build_eq(_equal_width(n))
    if name == "NE":
        return _build_ne(_equal_width(n))
    if name == "GT":
        return _build_gt(_equal_width(n))
    if name == "IP":
        return _build_ip(_equal_width(n))
    if name == "DISJ":
        return _build_disj(_equal_width(n))
    if name == "EQ_alphabet":
        return _build_eq_alphabet(int(params.get("N", n)))
    if name == "TAB24":
        return _build_tab24()
    if name == "NBA":
        return _build_nba(n)
    raise ValueError(f"Unknown builder: {name}")


def constant(n_a: int, n_b: int, value: int = 0) -> Function:
    return Function(
        n_a,
        n_b,
        lambda x, y: value,
        vector=lambda xs, ys: np.full(np.broadcast(xs, ys).shape, value),
        name=f"CONST{value}:{n_a}x{n_b}",
    )


def rectangle_indicator(n_a: int, n_b: int, rows, cols) -> Function:
    """1 exactly on rows x cols."""
    row_set, col_set = frozenset(rows), frozenset(cols)
    row_flags = np.array([r in row_set for r in range(1 << n_a)])
    col_flags = np.array([c in col_set for c in range(1 << n_b)])
    return Function(
        n_a,
        n_b,
        lambda x, y: int(x in row_set and y in col_set),
        vector=lambda xs, ys: row_flags[xs] & col_flags[ys],
        name=f"RECT:{n_a}x{n_b}",
    )


def from_matrix(matrix, mask=None, name: str = "") -> Function:
    """Wraps an explicit matrix whose sides are powers of two."""
    values = np.asarray(matrix, dtype=np.int64)
    rows, cols = values.shape
    n_a, n_b = rows.bit_length() - 1, cols.bit_length() - 1
    if rows != 1 << n_a or cols != 1 << n_b:
        raise ValueError(f"Matrix sides must be powers of two, got {rows}x{cols}")
    range_bits = max(1, int(values.max()).bit_length()) if values.size else 1
    mask_values = None if mask is None else np.asarray(mask, dtype=bool)
    return Function(
        n_a,
        n_b,
        lambda x, y: int(values[x, y]),
        range_bits=range_bits,
        vector=lambda xs, ys: values[xs, ys],
        masked=None if mask_values is None else (lambda x, y: bool(mask_values[x, y])),
        masked_vector=None if mask_values is None else (lambda xs, ys: mask_values[xs, ys]),
        name=name,
    )


def parse_builder(text: str) -> Function:
    """Parses CLI builder strings such as ``EQ:3``, ``EQ_alphabet:5``, ``TAB24``, ``CONST1:2``."""
    name, _, arg = text.partition(":")
    if name in ("CONST0", "CONST1"):
        n = int(arg or 1)
        return constant(n, n, int(name[-1]))
    if name == "TAB24":
        return build_named("TAB24")
    if not arg:
        raise ValueError(f"Builder {name} needs a size, e.g. {name}:2")
    return build_named(name, int(arg))


# -- compositions ----------------------------------------------------------------------------------


def complement(f: Function) -> Function:
    """Pointwise negation of a Boolean function."""
    if not f.is_boolean:
        raise ValueError(f"Complement needs a Boolean function, {f.name} has {f.range_bits} output bits")
    vector = None if f._vector is None else (lambda xs, ys: 1 - np.asarray(f._vector(xs, ys), dtype=np.int64))
    return Function(
        f.n_a,
        f.n_b,
        lambda x, y: 1 - f._scalar(x, y),
        vector=vector,
        masked=f._masked,
        masked_vector=f._masked_vector,
        name=f"not({f.name})",
        dense=f.is_dense,
    )


def _lift(f: Function, k: int, range_bits: int, combine_scalar, combine_vector, name: str) -> Function:
    if k < 1:
        raise ValueError(f"Copy count must be at least 1, got {k}")
    n_a, n_b = k * f.n_a, k * f.n_b
    if n_a > MAX_INPUT_BITS or n_b > MAX_INPUT_BITS:
        raise SizeLimitExceeded(f"{k} copies of {f.name} need {n_a}+{n_b} input bits")
    row_mask, col_mask = f.rows - 1, f.cols - 1

    def parts(x, y):
        return [((x >> (i * f.n_a)) & row_mask, (y >> (i * f.n_b)) & col_mask) for i in range(k)]

    def scalar(x, y):
        return combine_scalar([f._scalar(a, b) for a, b in parts(x, y)])

    vector = None
    if f._vector is not None:

        def vector(xs, ys):
            values = [
                np.asarray(f._vector((xs >> (i * f.n_a)) & row_mask, (ys >> (i * f.n_b)) & col_mask), dtype=np.int64)
                for i in range(k)
            ]
            return combine_vector(values)

    masked = masked_vector = None
    if f._masked is not None:

        def masked(x, y):
            return any(f._masked(a, b) for a, b in parts(x, y))

        if f._masked_vector is not None:

            def masked_vector(xs, ys):
                result = False
                for i in range(k):
                    result = result | f._masked_vector((xs >> (i * f.n_a)) & row_mask, (ys >> (i * f.n_b)) & col_mask)
                return result

    return Function(
        n_a, n_b, scalar, range_bits=range_bits, vector=vector, masked=masked, masked_vector=masked_vector, name=name
    )


def product_xk(f: Function, k: int) -> Function:
    """k independent copies; output bits [i*r, (i+1)*r) hold f(x_i, y_i)."""
    width = f.range_bits

    def combine_scalar(values):
        return sum(v << (i * width) for i, v in enumerate(values))

    def combine_vector(values):
        return sum(v << (i * width) for i, v in enumerate(values))

    if k * width > MAX_RANGE_BITS:
        raise SizeLimitExceeded(f"{k} copies of {f.name} need {k * width} output bits")
    return _lift(f, k, k * width, combine_scalar, combine_vector, f"x{k}({f.name})")


def wedge_k(f: Function, k: int) -> Function:
    """Conjunction of k independent copies."""
    if not f.is_boolean:
        raise ValueError("wedge_k needs a Boolean function")
    return _lift(f, k, 1, lambda values: int(all(values)), lambda values: np.logical_and.reduce(values), f"and{k}({f.name})")


def co_disj_compose(g: Function, m: int) -> Function:
    """1 iff some copy i has g(x_i, y_i) = 1."""
    if not g.is_boolean:
        raise ValueError("co_disj_compose needs a Boolean function")
    return _lift(g, m, 1, lambda values: int(any(values)), lambda values: np.logical_or.reduce(values), f"coDISJ{m}({g.name})")


# -- partial information ------------------------------------------------------------------------


class StarFamily:
    """
    The family of total functions agreeing with a partial function on its promise set.

    Masked cells may take either value; searches over the family treat them as wildcards.
    """

    def __init__(self, partial: Function):
        self.partial = partial

    @property
    def masked_cells(self) -> int:
        mask = self.partial.mask
        return 0 if mask is None else int(mask.sum())

    @property
    def size(self) -> int:
        return 1 << self.masked_cells

    def members(self, limit: int = 1 << 16) -> Iterator[Function]:
        """Enumerates every completion; refuses families larger than ``limit``."""
        if self.size > limit:
            raise SizeLimitExceeded(f"Family of {self.size} completions exceeds {limit}")
        base = self.partial.matrix.astype(np.int64)
        mask = self.partial.mask
        if mask is None:
            yield self.partial
            return
        positions = np.argwhere(mask)
        for choice in range(self.size):
            values = base.copy()
            for j, (r, c) in enumerate(positions):
                values[r, c] = (choice >> j) & 1
            yield from_matrix(values, name=f"{self.partial.name}#{choice}")

    def best_completion(self) -> Tuple[int, Function]:
        """Minimum D over the family together with a completion achieving it."""
        try:
            from .bounds.search import deterministic_complexity
            from .protocol import tree_matrix
        except ImportError:
            from bounds.search import deterministic_complexity
            from protocol import tree_matrix

        result = deterministic_complexity(self.partial)
        completion = from_matrix(tree_matrix(result.witness), name=f"{self.partial.name}*")
        return result.value, completion


def star_fill(fstar: Function) -> StarFamily:
    return StarFamily(fstar)


# -- file format ---------------------------------------------------------------------------------


def write_function(f: Function, stream: TextIO) -> None:
    """Writes ``ccfn v1``: header, then one hex row per line; a ``mask`` section for partial functions."""
    digits = max(1, math.ceil(f.range_bits / 4))
    stream.write(f"ccfn v1 nA={f.n_a} nB={f.n_b} range={f.range_bits}\n")
    for row in f.matrix:
        stream.write("".join(f"{int(v):0{digits}x}" for v in row) + "\n")
    if f.mask is not None:
        stream.write("mask\n")
        for row in f.mask:
            stream.write(f"{sum(1 << c for c, flag in enumerate(row) if flag):x}\n")


def read_function(stream: Union[TextIO, Sequence[str]], name: str = "") -> Function:
    lines = [line.strip() for line in stream if line.strip()]
    if not lines or not lines[0].startswith("ccfn v1"):
        raise ValueError("Missing 'ccfn v1' header")
    fields = dict(item.split("=") for item in lines[0].split()[2:])
    n_a, n_b, range_bits = int(fields["nA"]), int(fields["nB"]), int(fields["range"])
    digits = max(1, math.ceil(range_bits / 4))
    rows, cols = 1 << n_a, 1 << n_b
    body = lines[1 : 1 + rows]
    if len(body) != rows:
        raise ValueError(f"Expected {rows} rows, found {len(body)}")
    values = np.zeros((rows, cols), dtype=np.int64)
    for r, line in enumerate(body):
        if len(line) != cols * digits:
            raise ValueError(f"Row {r} has {len(line)} hex digits, expected {cols * digits}")
        values[r] = [int(line[c * digits : (c + 1) * digits], 16) for c in range(cols)]
    mask = None
    rest = lines[1 + rows :]
    if rest:
        if rest[0] != "mask" or len(rest) != rows + 1:
            raise ValueError("Malformed mask section")
        mask = np.array([[(int(line, 16) >> c) & 1 for c in range(cols)] for line in rest[1:]], dtype=bool)
    f = from_matrix(values, mask=mask, name=name)
    if f.range_bits > range_bits:
        raise ValueError(f"Entries exceed the declared range of {range_bits} bits")
    f.range_bits = range_bits
    return f
