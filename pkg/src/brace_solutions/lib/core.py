from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from typing import Any, NamedTuple, TypeVar

import dask
import dask.config
import numpy as np
from typing_extensions import TypeAlias

from brace_solutions.utils import AxiomViolation, MalformedInput

log = logging.getLogger(__name__)

T = TypeVar("T")

#: A subset of the carrier {0, ..., n-1}.
CarrierSubset: TypeAlias = "frozenset[int]"

#: Lexicographically minimal tuple of carrier elements at which an
#: identity fails.
Witness: TypeAlias = "tuple[int, ...]"


class IdentityCheck(NamedTuple):
    """Outcome of checking one identity over its whole domain."""

    name: str
    holds: bool
    witness: Witness | None = None

    @classmethod
    def from_mask(cls, name: str, ok: np.ndarray | bool) -> IdentityCheck:
        witness = first_witness(ok)
        return cls(name, witness is None, witness)

    def __bool__(self) -> bool:
        return self.holds


class Implication(NamedTuple):
    """``hypothesis ⇒ conclusion`` evaluated on one structure."""

    hypothesis: bool
    conclusion: bool

    @property
    def holds(self) -> bool:
        return self.conclusion or not self.hypothesis


class Biconditional(NamedTuple):
    """Two independently computed flags that a criterion says must agree."""

    lhs: bool
    rhs: bool

    @property
    def agree(self) -> bool:
        return self.lhs == self.rhs


def freeze(values: Any, dtype: Any = np.int64) -> np.ndarray:
    """Copy ``values`` into a read-only integer array."""
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


def as_int_array(values: Any, what: str) -> np.ndarray:
    try:
        arr = np.asarray(values)
    except ValueError as err:
        raise MalformedInput(f"{what} is not a rectangular array") from err
    if arr.dtype == object:
        raise MalformedInput(f"{what} is not a rectangular array")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise MalformedInput(f"{what} must hold integers")
    return arr.astype(np.int64, copy=False)


def check_range(arr: np.ndarray, n: int, what: str) -> None:
    """Raise :class:`MalformedInput` naming the first entry outside ``range(n)``."""
    bad = (arr < 0) | (arr >= n)
    if bad.any():
        where = tuple(int(i) for i in np.argwhere(bad)[0])
        path = what + "".join(f"[{i}]" for i in where)
        raise MalformedInput(
            f"entry {int(arr[where])} is outside the carrier of size {n}",
            path=path,
        )


def first_witness(ok: np.ndarray | bool) -> Witness | None:
    """Index of the lexicographically first False entry of ``ok``.

    Returns None when every entry is True. The index is taken in
    C order, so for an array indexed ``[a, b, c]`` the witness is the
    smallest failing triple.

    """
    ok = np.asarray(ok)
    if ok.all():
        return None
    return tuple(int(i) for i in np.argwhere(~ok)[0])


def check_identity(name: str, lhs: np.ndarray, rhs: np.ndarray) -> IdentityCheck:
    return IdentityCheck.from_mask(name, np.asarray(lhs) == np.asarray(rhs))


def require(check: IdentityCheck, structure: str | None = None) -> None:
    if not check.holds:
        raise AxiomViolation(check.name, check.witness, structure)


def rows_are_permutations(table: np.ndarray) -> np.ndarray:
    """Boolean vector flagging the rows of ``table`` that are permutations."""
    n = table.shape[-1]
    return np.all(np.sort(table, axis=-1) == np.arange(n), axis=-1)


def subset_mask(n: int, subset: Iterable[int]) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[np.fromiter(subset, dtype=np.int64)] = True
    return mask


def map_shards(func: Callable[..., T], items: Sequence[Any], *args: Any) -> list[T]:
    """Apply ``func(item, *args)`` to each item with dask.

    The calls are independent tasks computed with the scheduler named
    by ``braces.scheduler``. Results come back in the order of
    ``items`` whatever scheduler is used.

    """
    if not items:
        return []
    scheduler = dask.config.get("braces.scheduler")
    log.debug("computing %d shards of %s with %r", len(items), func.__name__, scheduler)
    tasks = [dask.delayed(func)(item, *args) for item in items]
    return list(dask.compute(*tasks, scheduler=scheduler))


def regular_family_checks(
    name: str, inverse_name: str, maps: np.ndarray, inverse_maps: np.ndarray
) -> list[IdentityCheck]:
    """Complete regularity of a family of maps ``f_a`` against ``g_a``.

    ``maps[a, x] = f_a(x)`` and ``inverse_maps[a, x] = g_a(x)``; the
    checks are ``f g f = f``, ``g f g = g`` and ``f g = g f`` for
    every ``a``.

    """
    f, g = maps, inverse_maps
    rows = np.arange(f.shape[0])[:, None]
    return [
        check_identity(f"{name} {inverse_name} {name} = {name}", f[rows, g[rows, f]], f),
        check_identity(
            f"{inverse_name} {name} {inverse_name} = {inverse_name}",
            g[rows, f[rows, g]],
            g,
        ),
        check_identity(
            f"{name} {inverse_name} = {inverse_name} {name}", f[rows, g], g[rows, f]
        ),
    ]
