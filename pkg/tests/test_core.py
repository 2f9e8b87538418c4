from __future__ import annotations

import dask.config
import numpy as np
import pytest

from brace_solutions.lib.core import (
    Biconditional,
    IdentityCheck,
    Implication,
    as_int_array,
    check_identity,
    check_range,
    first_witness,
    freeze,
    map_shards,
    regular_family_checks,
    require,
    rows_are_permutations,
    subset_mask,
)
from brace_solutions.utils import AxiomViolation, MalformedInput


def test_first_witness() -> None:
    ok = np.ones((3, 3, 3), dtype=bool)
    assert first_witness(ok) is None
    ok[2, 0, 1] = False
    ok[1, 2, 0] = False
    assert first_witness(ok) == (1, 2, 0)


def test_identity_check() -> None:
    check = check_identity("a = b", np.arange(4), [0, 1, 0, 3])
    assert not check
    assert check == IdentityCheck("a = b", False, (2,))
    assert IdentityCheck.from_mask("always", np.ones(2, dtype=bool))
    with pytest.raises(AxiomViolation, match="'a = b' fails in demo") as err:
        require(check, "demo")
    assert err.value.witness == (2,)
    require(IdentityCheck("fine", True))


def test_implication_and_biconditional() -> None:
    assert Implication(False, False).holds
    assert Implication(True, True).holds
    assert not Implication(True, False).holds
    assert Biconditional(False, False).agree
    assert not Biconditional(True, False).agree


def test_as_int_array() -> None:
    assert as_int_array([[1, 2], [3, 4]], "t").dtype == np.int64
    with pytest.raises(MalformedInput, match="rectangular"):
        as_int_array([[1, 2], [3]], "t")
    with pytest.raises(MalformedInput, match="integers"):
        as_int_array([0.5, 1.0], "t")


def test_check_range() -> None:
    check_range(np.array([[0, 1], [1, 0]]), 2, "table")
    with pytest.raises(MalformedInput) as err:
        check_range(np.array([[0, 1], [-1, 0]]), 2, "table")
    assert err.value.path == "table[1][0]"


def test_freeze() -> None:
    arr = freeze([1, 2])
    assert not arr.flags.writeable
    with pytest.raises(ValueError):
        arr[0] = 5


def test_rows_and_subsets() -> None:
    table = np.array([[1, 0, 2], [0, 0, 1], [2, 1, 0]])
    np.testing.assert_array_equal(rows_are_permutations(table), [True, False, True])
    np.testing.assert_array_equal(subset_mask(4, {1, 3}), [False, True, False, True])


def test_regular_family_checks() -> None:
    # constant maps onto 0 and the identity are not mutual regular inverses
    maps = np.zeros((2, 2), dtype=int)
    inverse = np.tile(np.arange(2), (2, 1))
    failed = [c for c in regular_family_checks("f", "g", maps, inverse) if not c.holds]
    assert failed
    same = regular_family_checks("f", "g", inverse, inverse)
    assert all(same)


def _square(x: int, offset: int) -> int:
    return x * x + offset


@pytest.mark.parametrize("scheduler", ["sync", "threads"])
def test_map_shards(scheduler: str) -> None:
    with dask.config.set({"braces.scheduler": scheduler}):
        assert map_shards(_square, [3, 1, 2], 1) == [10, 2, 5]
    assert map_shards(_square, [], 1) == []
