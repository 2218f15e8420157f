import io

import numpy as np
import pytest

from fnspace import (
    Function,
    Rectangle,
    SizeLimitExceeded,
    build_named,
    co_disj_compose,
    complement,
    constant,
    from_matrix,
    nba_column,
    pack_inputs,
    parse_builder,
    product_xk,
    read_function,
    star_fill,
    unpack_inputs,
    wedge_k,
    write_function,
)


def test_eq_matrix():
    assert build_named("EQ", 1).matrix.tolist() == [[1, 0], [0, 1]]


def test_disj_matrix():
    assert build_named("DISJ", 1).matrix.tolist() == [[1, 1], [1, 0]]


def test_ip_counts():
    for n in range(1, 6):
        ip = build_named("IP", n)
        assert ip.count(1) == 2 ** (2 * n - 1) - 2 ** (n - 1)
        assert ip.count(0) == 2 ** (2 * n - 1) + 2 ** (n - 1)


def test_ip_square():
    for n in range(2, 5):
        m = build_named("IP", n).matrix.astype(np.int64)
        square = m @ m
        assert not square[0].any() and not square[:, 0].any()
        rest = square[1:, 1:]
        assert (np.diag(rest) == 2 ** (n - 1)).all()
        off = rest[~np.eye(rest.shape[0], dtype=bool)]
        assert (off == 2 ** (n - 2)).all()


def test_dense_and_callback_agree():
    for name in ("EQ", "NE", "GT", "IP", "DISJ"):
        for n in (1, 2, 3):
            f = build_named(name, n)
            g = f.callback_only()
            assert not g.is_dense
            for x in range(f.rows):
                for y in range(f.cols):
                    assert f.evaluate(x, y) == g.evaluate(x, y)


def test_tab24_selects_blocks():
    tab = build_named("TAB24")
    assert (tab.n_a, tab.n_b) == (6, 21)
    assert not tab.is_dense
    a, b = 2, 9
    x = a | (b << 2)
    y = 1 << (1 + a)  # flag 0, selected 4-block bit set
    assert tab.evaluate(x, y) == 1
    assert tab.evaluate(x, y | 1) == 0  # flag 1 now reads the 16-block
    assert tab.evaluate(x, 1 | (1 << (5 + b))) == 1


def test_eq_alphabet_masks():
    eq5 = build_named("EQ_alphabet", 5)
    assert (eq5.n_a, eq5.n_b) == (3, 3)
    assert eq5.is_masked(5, 0) and eq5.is_masked(0, 7)
    assert not eq5.is_masked(4, 4)
    assert eq5.evaluate(3, 3) == 1
    with pytest.raises(ValueError):
        build_named("EQ_alphabet", 1)


def test_nba_encoding():
    nba = build_named("NBA", 2)
    assert (nba.n_a, nba.n_b) == (2, 4)
    column = nba_column(2, 3, 1)
    assert nba.evaluate(1, column) == 0
    assert nba.evaluate(3, column) == 1
    assert nba.is_masked(0, column)
    with pytest.raises(ValueError):
        build_named("NBA", 0)


def test_unknown_builder():
    with pytest.raises(ValueError):
        build_named("XOR", 2)


def test_complement():
    for n in (1, 2, 3):
        assert complement(build_named("EQ", n)).agrees_with(build_named("NE", n))
    ip = build_named("IP", 2)
    assert complement(complement(ip)).agrees_with(ip)
    assert complement(constant(1, 1, 1)).agrees_with(constant(1, 1, 0))
    with pytest.raises(ValueError):
        complement(product_xk(build_named("EQ", 1), 2))


def test_wedge_and_product():
    assert wedge_k(build_named("EQ", 1), 2).agrees_with(build_named("EQ", 2))
    assert wedge_k(build_named("DISJ", 1), 3).agrees_with(build_named("DISJ", 3))
    pair = product_xk(build_named("EQ", 1), 2)
    x = pack_inputs([0, 1], 1)
    y = pack_inputs([0, 0], 1)
    assert unpack_inputs(pair.evaluate(x, y), 1, 2) == [1, 0]


def test_wedge_is_and_of_product():
    f = build_named("GT", 2)
    wedge = wedge_k(f, 2)
    product = product_xk(f, 2)
    for x in range(wedge.rows):
        for y in range(wedge.cols):
            assert wedge.evaluate(x, y) == int(product.evaluate(x, y) == 3)


def test_co_disj_compose():
    g = co_disj_compose(build_named("EQ", 1), 2)
    assert g.evaluate(pack_inputs([0, 1], 1), pack_inputs([1, 1], 1)) == 1
    assert g.evaluate(pack_inputs([0, 0], 1), pack_inputs([1, 1], 1)) == 0
    assert co_disj_compose(constant(1, 1, 0), 3).is_constant()


def test_product_dimension_limit():
    with pytest.raises(SizeLimitExceeded):
        product_xk(build_named("TAB24"), 4)


def test_rectangle():
    eq = build_named("EQ", 2)
    assert Rectangle.of([0, 1], [2, 3]).color(eq) == 0
    assert not Rectangle.of([0, 1], [0, 1]).is_monochromatic(eq)
    with pytest.raises(ValueError):
        Rectangle.of([], [1])


def test_star_family():
    total = build_named("IP", 1)
    assert star_fill(total).size == 1
    masked = from_matrix([[0, 1], [1, 0]], mask=np.ones((2, 2), dtype=bool))
    family = star_fill(masked)
    assert family.size == 16
    assert len(list(family.members())) == 16


def test_file_round_trip_with_mask():
    f = build_named("EQ_alphabet", 3)
    buffer = io.StringIO()
    write_function(f, buffer)
    text = buffer.getvalue()
    assert text.startswith("ccfn v1 nA=2 nB=2 range=1")
    g = read_function(io.StringIO(text))
    assert g.agrees_with(f)
    assert g.is_masked(3, 0)


def test_parse_builder():
    assert parse_builder("IP:2").name == "IP:2"
    assert parse_builder("CONST1:2").is_constant()
    with pytest.raises(ValueError):
        parse_builder("EQ")


def test_evaluate_range():
    with pytest.raises(ValueError):
        build_named("EQ", 2).evaluate(4, 0)
    assert isinstance(build_named("EQ", 2), Function)
