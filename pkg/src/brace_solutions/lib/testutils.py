from __future__ import annotations

from collections.abc import Sequence
from typing import Any

import numpy as np

from brace_solutions.lib.core import IdentityCheck
from brace_solutions.lib.solution import PairMap

_RG = np.random.default_rng(414)

#: Built-in structures that are at least dual weak braces.
DUAL_WEAK_BUILTINS = (
    "b6",
    "rump4",
    "rump8",
    "u8",
    "trivial-s3",
    "almost-trivial-s3",
    "clifford3",
    "units-chain3",
    "u8-x-b6",
    "trivial-z2",
)

#: The built-ins above that are skew braces.
SKEW_BUILTINS = tuple(
    name for name in DUAL_WEAK_BUILTINS if name not in ("clifford3", "units-chain3")
)


def assert_identity(check: IdentityCheck, holds: bool = True, witness: Any = None) -> None:
    assert check.holds is holds, f"{check.name}: expected holds={holds}, got {check}"
    if witness is not None:
        assert check.witness == tuple(witness), f"{check.name}: witness {check.witness}"
    if holds:
        assert check.witness is None


def assert_pair_maps_equal(r: PairMap, s: PairMap) -> None:
    assert r.n == s.n
    np.testing.assert_array_equal(r.first, s.first)
    np.testing.assert_array_equal(r.second, s.second)


def product_index(i: int, j: int, n2: int) -> int:
    """Index of ``(i, j)`` in a product whose right factor has ``n2`` elements."""
    return i * n2 + j


def pair_map_from_pairs(n: int, pairs: Sequence[Sequence[int]]) -> PairMap:
    """Build a map from ``pairs[a * n + b] = r(a, b)``."""
    arr = np.asarray(pairs).reshape(n, n, 2)
    return PairMap.from_components(arr[..., 0], arr[..., 1])


def random_pair_map(n: int, rng: np.random.Generator | None = None) -> PairMap:
    rng = rng or _RG
    return PairMap.from_components(
        rng.integers(0, n, size=(n, n)), rng.integers(0, n, size=(n, n))
    )


def relabel_pair_map(r: PairMap, perm: Sequence[int]) -> PairMap:
    """The map ``φ×φ ∘ r ∘ (φ×φ)^-1`` for the permutation ``φ = perm``."""
    p = np.asarray(perm)
    inv = np.argsort(p)
    first = p[r.first[np.ix_(inv, inv)]]
    second = p[r.second[np.ix_(inv, inv)]]
    return PairMap.from_components(first, second)
