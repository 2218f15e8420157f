import numpy as np
import pytest

from directsum.hashing import HashFamily, hash_family_generate, range_constant, verify_family


def test_range_constant():
    assert range_constant(2) == 4
    assert range_constant(1) == 4
    with pytest.raises(ValueError):
        range_constant(0)


def test_small_family_verified_exhaustively():
    family = hash_family_generate(16, 2, seed=0)
    assert family.p == 16
    assert family.size == 32
    assert family.verified
    assert family.exhaustive
    assert family.checked_sets == 120
    for a in range(16):
        for b in range(a + 1, 16):
            assert 2 * family.injective([a, b]).sum() >= family.size


def test_singletons():
    family = hash_family_generate(8, 1, seed=3)
    assert family.injective([5]).all()
    assert family.verified


def test_sampled_verification():
    family = hash_family_generate(2**10, 2, seed=1)
    assert family.verified
    assert not family.exhaustive
    assert family.checked_sets == 10_000
    assert family.size == 80


def test_mixed_functions_above_table_sizes():
    family = hash_family_generate(2**20, 2, seed=2)
    assert family.tables is None
    images = family.apply([0, 1, 2**20 - 1])
    assert images.shape == (family.size, 3)
    assert ((images >= 0) & (images < family.p)).all()


def test_unverifiable_family():
    family = HashFamily(4, 2, 2, 2, 1, 1, 0, tables=np.zeros((2, 4), dtype=np.int64))
    assert not verify_family(family)


def test_domain_checks():
    family = hash_family_generate(16, 2, seed=0)
    with pytest.raises(ValueError):
        family.apply([16])
    with pytest.raises(ValueError):
        hash_family_generate(1, 2, seed=0)
