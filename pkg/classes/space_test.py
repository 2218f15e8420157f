import numpy as np
import pytest

from classes.space import (
    SpaceProtocol,
    block_size,
    constant_protocol,
    sa_block_protocol,
    space_bracket,
    space_eq_protocol,
    space_eval,
    space_to_time_compile,
    verify_space_protocol,
)
from fnspace import build_named
from protocol import A


def test_equality_memory_width():
    assert space_eq_protocol(8).width == 5
    assert space_eq_protocol(5).width == 5
    assert space_eq_protocol(2).width == 3


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_equality_protocol_small(n):
    check = verify_space_protocol(space_eq_protocol(n), build_named("EQ", n))
    assert check.ok
    assert check.max_steps == 2 * n


def test_equality_protocol_exhaustive_at_eight_bits():
    check = verify_space_protocol(space_eq_protocol(8), build_named("EQ", 8))
    assert check.ok
    assert check.pairs == 2**16


def test_mismatch_halts_early():
    assert space_eval(space_eq_protocol(4), 0b0001, 0b0000) == (0, 2)
    assert space_eval(space_eq_protocol(4), 0b1000, 0b0000) == (0, 8)


def test_constant_protocol_halts_at_once():
    sp = constant_protocol(2, 2, 1)
    assert space_eval(sp, 3, 1) == (1, 1)
    assert space_eval(constant_protocol(2, 2, 0), 0, 0) == (0, 1)


def test_block_sizes():
    assert block_size(24) == 3
    assert block_size(2) == 1
    assert block_size(25) == 4


def test_block_protocol_at_24_bits():
    sp = sa_block_protocol(24)
    assert sp.block == 3
    assert sp.working_width == 3
    assert sp.width == 4
    rng = np.random.default_rng(3)
    for x in rng.integers(0, 1 << 24, size=20):
        x = int(x)
        assert space_eval(sp, x, x) == (1, 16)
        assert space_eval(sp, x, x ^ 1 << 23)[0] == 0


@pytest.mark.parametrize("name", ["EQ", "IP", "GT"])
def test_block_protocol_computes_any_function(name):
    f = build_named(name, 4)
    assert verify_space_protocol(sa_block_protocol(4, f), f).ok


def test_step_bound_is_enforced():
    stuck = SpaceProtocol(2, 1, 1, lambda x, content: 0, lambda y, content: 1)
    with pytest.raises(RuntimeError):
        space_eval(stuck, 0, 0)


def test_malformed_protocols():
    with pytest.raises(ValueError):
        SpaceProtocol(2, 1, 1, lambda x, c: 0, lambda y, c: 0, schedule=("C",))
    with pytest.raises(ValueError):
        SpaceProtocol(2, 1, 1, lambda x, c: 0, lambda y, c: 0, schedule=())
    too_wide = SpaceProtocol(2, 1, 1, lambda x, c: 4, lambda y, c: 0)
    with pytest.raises(ValueError):
        space_eval(too_wide, 0, 0)


def test_compiled_equality():
    sp = space_eq_protocol(4)
    scheme = space_to_time_compile(sp)
    assert scheme.bits == sp.width * 2**sp.width <= 6 * 2**6
    assert scheme.verify().ok
    for x in range(16):
        for y in range(16):
            assert scheme.run(x, y)[0] == int(x == y)
    assert scheme.lambda_check(5)["holds"]


def test_compiled_one_bit_protocol():
    sp = SpaceProtocol(1, 1, 1, lambda x, content: x, lambda y, content: content, (A,), 1)
    scheme = space_to_time_compile(sp)
    assert scheme.bits == 2
    assert scheme.verify().ok
    assert scheme.run(1, 0) == (1, 2)


def test_compiled_block_protocol():
    f = build_named("IP", 4)
    assert space_to_time_compile(sa_block_protocol(4, f)).verify().ok


def test_equality_space_bracket():
    bracket = space_bracket(8)
    assert bracket["upper"] == 5
    assert 1 < bracket["lower"] <= bracket["upper"]


def test_trace_records_every_step():
    trace = []
    assert space_eval(space_eq_protocol(2), 0b10, 0b10, trace) == (1, 4)
    assert trace == [("A", 0), ("B", 2), ("A", 3), ("B", 7)]
