"""
Space-bounded communication
===========================

The players share an S-bit memory that starts all-zero. On its turn a player overwrites the
memory with a function of its own input and the current content; the schedule cycles through the
listed owners. After any step the content all-ones ends the run with output 1 and
all-ones-minus-one with output 0. Every protocol declares a step bound; running past it is a bug
and raises RuntimeError.

In the one-sided model B keeps everything it has read and its step sees that whole history
instead of the current content; A stays memoryless.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

try:
    from .. import labconfig
    from ..fnspace import Function, build_named
    from ..protocol import A, B, OWNERS
    from ..randomized.coins import ceil_log2
    from ..randomized.lambda_function import lambda_inv
except ImportError:
    import labconfig
    from fnspace import Function, build_named
    from protocol import A, B, OWNERS
    from randomized.coins import ceil_log2
    from randomized.lambda_function import lambda_inv

_LOGGER = logging.getLogger(__name__)

StepFn = Callable[[int, object], int]


@dataclass(frozen=True)
class SpaceProtocol:
    """
    :param width: S, the memory size in bits
    :param step_a: (x, content) -> new content
    :param step_b: (y, content) -> new content, or (y, history) when ``b_history`` is set
    :param schedule: owners taking turns, repeated cyclically; A, B alternate by default
    :param step_bound: most steps any run may take; SPACE_STEP_FACTOR * 2^S by default
    """

    width: int
    n_a: int
    n_b: int
    step_a: StepFn
    step_b: StepFn
    schedule: Tuple[str, ...] = (A, B)
    step_bound: Optional[int] = None
    b_history: bool = False
    name: str = ""
    block: Optional[int] = None
    working_width: Optional[int] = None

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"Memory needs at least one bit, got {self.width}")
        if not self.schedule or any(owner not in OWNERS for owner in self.schedule):
            raise ValueError(f"Malformed schedule {self.schedule!r}: owners must be A or B")

    @property
    def halt_one(self) -> int:
        return (1 << self.width) - 1

    @property
    def halt_zero(self) -> int:
        return (1 << self.width) - 2

    @property
    def bound(self) -> int:
        return self.step_bound if self.step_bound is not None else labconfig.SPACE_STEP_FACTOR << self.width

    def to_json(self) -> dict:
        result = {"name": self.name, "S": self.width, "schedule": list(self.schedule), "stepBound": self.bound, "bHistory": self.b_history}
        if self.block is not None:
            result.update({"block": self.block, "workingWidth": self.working_width})
        return result


def space_eval(sp: SpaceProtocol, x: int, y: int, trace: Optional[List[Tuple[str, int]]] = None) -> Tuple[int, int]:
    """Runs the protocol on (x, y) and returns (value, steps); ``trace`` collects (owner, content) per step."""
    if not (0 <= x < 1 << sp.n_a and 0 <= y < 1 << sp.n_b):
        raise ValueError(f"Input pair ({x}, {y}) outside the protocol's domains")
    content = 0
    history: List[int] = []
    for step in range(1, sp.bound + 1):
        owner = sp.schedule[(step - 1) % len(sp.schedule)]
        if owner == A:
            content = sp.step_a(x, content)
        elif sp.b_history:
            history.append(content)
            content = sp.step_b(y, tuple(history))
        else:
            content = sp.step_b(y, content)
        if not 0 <= content < 1 << sp.width:
            raise ValueError(f"{owner} wrote {content}, which does not fit into {sp.width} bits")
        if trace is not None:
            trace.append((owner, content))
        if content == sp.halt_one:
            return 1, step
        if content == sp.halt_zero:
            return 0, step
    raise RuntimeError(f"{sp.name or 'Space protocol'} ran past its bound of {sp.bound} steps on ({x}, {y})")


@dataclass
class SpaceCheck:
    ok: bool
    pairs: int
    max_steps: int
    wrong: int

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "pairs": self.pairs, "maxSteps": self.max_steps, "wrong": self.wrong}


def verify_space_protocol(sp: SpaceProtocol, f: Function) -> SpaceCheck:
    """Runs every defined input pair of f."""
    if (sp.n_a, sp.n_b) != (f.n_a, f.n_b):
        raise ValueError(f"Protocol is {sp.n_a}x{sp.n_b} bits, {f.name} is {f.n_a}x{f.n_b}")
    pairs = wrong = max_steps = 0
    values = f.matrix
    mask = f.mask
    for x in range(f.rows):
        for y in range(f.cols):
            if mask is not None and mask[x, y]:
                continue
            value, steps = space_eval(sp, x, y)
            pairs += 1
            wrong += value != int(values[x, y])
            max_steps = max(max_steps, steps)
    if wrong:
        _LOGGER.warning(f"{sp.name}: {wrong} of {pairs} pairs disagree with {f.name}")
    return SpaceCheck(not wrong, pairs, max_steps, wrong)


# -- protocols ---------------------------------------------------------------------------------


def constant_protocol(n_a: int, n_b: int, value: int) -> SpaceProtocol:
    """One bit of memory; A's first step writes the answer."""
    if value not in (0, 1):
        raise ValueError(f"Output must be 0 or 1, got {value}")
    return SpaceProtocol(1, n_a, n_b, lambda x, content: value, lambda y, content: content, (A,), 1, name=f"CONST{value}")


def space_eq_protocol(n: int) -> SpaceProtocol:
    """
    Equality in ceil(log n) + 2 bits: bit 0 carries x_i, the next ceil(log n) bits the ordinal i,
    and the top bit is set only in the two halting contents. A writes x_i next to i; B answers 0 on
    a mismatch, 1 after the last bit, and asks for i + 1 otherwise.
    """
    if n < 2:
        raise ValueError(f"Need n >= 2, got {n}")
    width = ceil_log2(n) + 2
    halt_one, halt_zero = (1 << width) - 1, (1 << width) - 2

    def step_a(x: int, content: int) -> int:
        i = content >> 1
        return (i << 1) | ((x >> i) & 1)

    def step_b(y: int, content: int) -> int:
        i = content >> 1
        if content & 1 != (y >> i) & 1:
            return halt_zero
        if i == n - 1:
            return halt_one
        return (i + 1) << 1

    return SpaceProtocol(width, n, n, step_a, step_b, name=f"SEQ:{n}")


def block_size(n: int) -> int:
    """The smallest b with b 2^b >= n, that is ceil(lambda^-1(n)) computed in integers."""
    b = 1
    while b << b < n:
        b += 1
    return b


def sa_block_protocol(n: int, f: Optional[Function] = None) -> SpaceProtocol:
    """
    Any f with n-bit inputs for A, in the model where only A is memoryless. A's input is cut into
    blocks of b bits; B writes the index of the block it wants next, A answers with that block and
    B, who keeps every answer, finally writes the value. The working contents take
    max(b, ceil(log(n / b))) bits and one more bit holds the two halting contents, so the reported
    width S is working_width + 1: at n = 24 the blocks are 3 bits, working_width is 3 and S is 4.
    """
    if n < 2:
        raise ValueError(f"Need n >= 2, got {n}")
    f = build_named("EQ", n) if f is None else f
    if f.n_a != n or not f.is_boolean:
        raise ValueError(f"{f.name} must be Boolean with {n}-bit inputs for A")
    b = block_size(n)
    blocks = -(-n // b)
    working = max(b, ceil_log2(blocks))
    width = working + 1
    halt_one, halt_zero = (1 << width) - 1, (1 << width) - 2
    block_mask = (1 << b) - 1

    def step_a(x: int, content: int) -> int:
        return (x >> (content * b)) & block_mask

    def step_b(y: int, answers: Tuple[int, ...]) -> int:
        if len(answers) < blocks:
            return len(answers)
        x = sum(block << (j * b) for j, block in enumerate(answers))
        return halt_one if f.evaluate(x, y) else halt_zero

    return SpaceProtocol(
        width,
        n,
        f.n_b,
        step_a,
        step_b,
        step_bound=2 * blocks,
        b_history=True,
        name=f"SA:{f.name}",
        block=b,
        working_width=working,
    )


def space_bracket(n: int) -> dict:
    """S(EQ_n) lies between lambda^-1(n + 1), from D(EQ_n) = n + 1, and the SEQ memory."""
    return {"n": n, "lower": lambda_inv(n + 1), "upper": space_eq_protocol(n).width}


# -- compilation into a one-way scheme ---------------------------------------------------------


@dataclass
class CompiledScheme:
    """
    A sends her reply to every possible memory content, S bits each; B then runs the whole
    protocol alone. Needs A memoryless, which every protocol here is.
    """

    protocol: SpaceProtocol

    @property
    def bits(self) -> int:
        return self.protocol.width << self.protocol.width

    def message(self, x: int) -> Tuple[int, ...]:
        return tuple(self.protocol.step_a(x, content) for content in range(1 << self.protocol.width))

    def run(self, x: int, y: int) -> Tuple[int, int]:
        """(value, bits) with B simulating from A's message alone."""
        replies = self.message(x)
        memoryless = SpaceProtocol(
            self.protocol.width,
            self.protocol.n_a,
            self.protocol.n_b,
            lambda _, content: replies[content],
            self.protocol.step_b,
            self.protocol.schedule,
            self.protocol.step_bound,
            self.protocol.b_history,
            self.protocol.name,
        )
        value, _ = space_eval(memoryless, 0, y)
        return value, self.bits

    def verify(self) -> SpaceCheck:
        """Compares the compiled scheme with the protocol itself on every input pair."""
        sp = self.protocol
        pairs = wrong = 0
        for x in range(1 << sp.n_a):
            for y in range(1 << sp.n_b):
                pairs += 1
                wrong += self.run(x, y)[0] != space_eval(sp, x, y)[0]
        return SpaceCheck(not wrong, pairs, 0, wrong)

    def lambda_check(self, depth: int) -> dict:
        """S >= lambda^-1(D): D <= S 2^S bits of the compiled scheme, plus the answer bit."""
        lower = lambda_inv(depth) if depth >= 2 else 0.0
        return {
            "S": self.protocol.width,
            "compiledBits": self.bits,
            "D": depth,
            "lambdaD": lower,
            "holds": lower <= self.protocol.width and depth <= self.bits + 1,
        }


def space_to_time_compile(sp: SpaceProtocol) -> CompiledScheme:
    return CompiledScheme(sp)
