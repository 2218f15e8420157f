import numpy as np
import pytest

from bounds.search import cover_number
from classes.oracles import complement_concat_maps
from classes.reductions import (
    Reduction,
    compose_reductions,
    disj_target,
    disjunction,
    lift_completeness,
    reduce_to_disj_from_zero_cover,
    single_cell_parts,
    verify_reduction,
)
from fnspace import Function, Rectangle, build_named, co_disj_compose, constant, rectangle_indicator


def _disj_zero_cover(m):
    """DISJ_m is 0 exactly where some bit i is set on both sides."""
    inputs = np.arange(1 << m)
    return [Rectangle.of(inputs[(inputs >> i) & 1 == 1], inputs[(inputs >> i) & 1 == 1]) for i in range(m)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_equality_reduces_to_disjointness(n):
    hx, hy = complement_concat_maps(n)
    check = verify_reduction(build_named("EQ", n), build_named("DISJ", 2 * n), hx, hy)
    assert check.ok
    assert check.exhaustive
    assert check.checked == 4**n


def test_identity_reduction():
    f = build_named("GT", 2)
    assert verify_reduction(f, f, lambda x: x, lambda y: y).ok


def test_missing_complement_half_fails_with_witness():
    full = 3
    hx, _ = complement_concat_maps(2)
    check = verify_reduction(build_named("EQ", 2), build_named("DISJ", 4), hx, lambda y: full ^ y)
    assert not check.ok
    x, y = check.witness
    assert x != y
    assert check.expected == 0 and check.got == 1
    assert check.reason == "values differ"


def test_images_outside_the_target():
    check = verify_reduction(build_named("EQ", 2), build_named("EQ", 1), lambda x: x, lambda y: y)
    assert not check.ok
    assert check.reason == "image outside the target's inputs"


def test_zero_cover_reduction_for_equality():
    f = build_named("EQ", 2)
    hx, hy, m = reduce_to_disj_from_zero_cover(f)
    assert m == cover_number(f, 0).value
    assert verify_reduction(f, disj_target(m), hx, hy).ok


def test_zero_cover_reduction_for_inner_product():
    f = build_named("IP", 2)
    hx, hy, m = reduce_to_disj_from_zero_cover(f)
    assert m >= 1
    assert verify_reduction(f, disj_target(m), hx, hy).ok


def test_constant_one_needs_no_bits():
    f = constant(2, 2, 1)
    hx, hy, m = reduce_to_disj_from_zero_cover(f, [])
    assert m == 0
    assert not hx.any() and not hy.any()
    assert verify_reduction(f, disj_target(0), hx, hy).ok


def test_bad_cover_is_refused():
    f = build_named("EQ", 2)
    with pytest.raises(ValueError):
        reduce_to_disj_from_zero_cover(f, [Rectangle.of([0], [0])])
    with pytest.raises(ValueError):
        reduce_to_disj_from_zero_cover(f, [Rectangle.of([0], [1])])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_reductions_compose(n):
    eq, disj = build_named("EQ", n), build_named("DISJ", 2 * n)
    hx, hy = complement_concat_maps(n)
    first = Reduction(eq, disj, hx, hy)
    cover_hx, cover_hy, m = reduce_to_disj_from_zero_cover(disj, _disj_zero_cover(2 * n))
    second = Reduction(disj, disj_target(m), cover_hx, cover_hy)
    assert first.verify().ok and second.verify().ok
    composed = compose_reductions(first, second)
    assert composed.source is eq
    assert composed.verify().ok


def test_composition_needs_matching_sizes():
    f = build_named("EQ", 1)
    with pytest.raises(ValueError):
        compose_reductions(Reduction(f, f, [0, 1], [0, 1]), Reduction(build_named("EQ", 2), f, [0] * 4, [0] * 4))


def test_lifting_single_cells_of_equality():
    f = build_named("EQ", 2)
    g = rectangle_indicator(1, 1, [1], [1])
    parts = single_cell_parts(f)
    assert len(parts) == 4
    assert disjunction([part[0] for part in parts]).agrees_with(f)
    hx, hy = lift_completeness(g, parts)
    assert verify_reduction(f, co_disj_compose(g, len(parts)), hx, hy).ok


def test_lifting_one_part_is_the_part_itself():
    f = build_named("EQ", 2)
    hx, hy = complement_concat_maps(2)
    disj = build_named("DISJ", 4)
    lifted_x, lifted_y = lift_completeness(disj, [(f, hx, hy)])
    assert list(lifted_x) == [hx(x) for x in range(4)]
    assert list(lifted_y) == [hy(y) for y in range(4)]


def test_lifting_row_disjointness():
    # two rows of two bits per player; 1 iff some row pair is disjoint
    def row_disj(i):
        return Function(
            4,
            4,
            lambda x, y: int(((x >> (2 * i)) & 3) & ((y >> (2 * i)) & 3) == 0),
            vector=lambda xs, ys: (((xs >> (2 * i)) & 3) & ((ys >> (2 * i)) & 3)) == 0,
            name=f"DISJrow{i}",
        )

    parts = [(row_disj(i), (lambda x, i=i: (x >> (2 * i)) & 3), (lambda y, i=i: (y >> (2 * i)) & 3)) for i in range(2)]
    target = co_disj_compose(build_named("DISJ", 2), 2)
    hx, hy = lift_completeness(build_named("DISJ", 2), parts)
    f = disjunction([part[0] for part in parts])
    assert verify_reduction(f, target, hx, hy).ok
    assert f.evaluate(0b0101, 0b1111) == 0
    assert f.evaluate(0b0101, 0b1011) == 1


def test_lifting_rejects_a_failing_part():
    f = build_named("EQ", 2)
    with pytest.raises(ValueError):
        lift_completeness(build_named("DISJ", 4), [(f, lambda x: x, lambda y: y)])
