from __future__ import annotations

import itertools
import logging
import math
import threading
from collections.abc import Mapping, Sequence
from functools import cached_property
from typing import Any, NamedTuple

import cachetools
import dask.config
import numpy as np

from brace_solutions.lib.core import (
    CarrierSubset,
    Witness,
    as_int_array,
    check_range,
    first_witness,
    freeze,
)
from brace_solutions.utils import (
    AxiomViolation,
    MalformedInput,
    UnsupportedStructure,
)

log = logging.getLogger(__name__)


class CayleyTable:
    """A binary operation on the carrier {0, ..., n-1}.

    ``table[a, b]`` is the product ``a·b``. Labels are an optional
    sidecar naming the elements (residues, permutations, pairs); they
    play no part in equality, which is equality of the tables.

    Parameters
    ----------
    table : array-like
        Square array of carrier indices.
    labels : sequence of str, optional
        One display name per element.

    """

    def __init__(self, table: Any, labels: Sequence[str] | None = None) -> None:
        arr = as_int_array(table, "table")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise MalformedInput(
                f"a Cayley table must be a non-empty n×n array, got shape {arr.shape}"
            )
        check_range(arr, arr.shape[0], "table")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != arr.shape[0]:
                raise MalformedInput(
                    f"{len(labels)} labels given for a carrier of size {arr.shape[0]}",
                    path="labels",
                )
        self._table = freeze(arr)
        self._labels: tuple[str, ...] | None = labels

    @property
    def n(self) -> int:
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    def label(self, a: int) -> str:
        return str(a) if self._labels is None else self._labels[a]

    def index(self, label: str) -> int:
        """Carrier index of the element displayed as ``label``."""
        if self._labels is None:
            return int(label)
        try:
            return self._labels.index(str(label))
        except ValueError:
            raise KeyError(label) from None

    def __call__(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return np.array_equal(self._table, other._table)

    def __hash__(self) -> int:
        return hash((self.n, self._table.tobytes()))

    def __repr__(self) -> str:
        return f"CayleyTable(n={self.n}, kind={self.profile.kind!r})"

    def relabel(self, labels: Sequence[str] | None) -> CayleyTable:
        return CayleyTable(self._table, labels)

    @cached_property
    def profile(self) -> SemigroupProfile:
        return classify(self)


class SemigroupProfile(NamedTuple):
    associative: bool
    inverse_map: tuple[int, ...] | None
    clifford: bool
    group: bool
    commutative: bool
    monoid_identity: int | None
    idempotents: CarrierSubset
    center: CarrierSubset

    @property
    def kind(self) -> str:
        if self.group:
            return "group"
        if self.clifford:
            return "clifford"
        if self.inverse_map is not None:
            return "inverse"
        if self.associative:
            return "semigroup"
        return "magma"


_profile_cache: cachetools.LRUCache = cachetools.LRUCache(maxsize=1000)
# classify runs inside threaded dask tasks
_profile_lock = threading.Lock()


def _cache_key(t: CayleyTable) -> tuple[int, bytes]:
    return t.n, t.table.tobytes()


def associativity_mask(t: CayleyTable) -> np.ndarray:
    """``mask[a, b, c]`` is True when ``(a·b)·c == a·(b·c)``."""
    m = t.table
    return m[m] == m[:, m]


def quasi_inverse_candidates(t: CayleyTable) -> np.ndarray:
    """``cand[a, x]`` is True when ``a·x·a == a`` and ``x·a·x == x``."""
    m = t.table
    ar = np.arange(t.n)
    return (m[m, ar[:, None]] == ar[:, None]) & (m[m.T, ar[None, :]] == ar[None, :])


@cachetools.cached(_profile_cache, key=_cache_key, lock=_profile_lock)
def classify(t: CayleyTable) -> SemigroupProfile:
    """Exhaustively classify a finite binary operation.

    The classification is total: a table that is not associative, or
    not inverse, is annotated rather than rejected.

    Parameters
    ----------
    t : CayleyTable
        The operation to classify.

    Returns
    -------
    SemigroupProfile
        Flags for associativity, the inverse and Clifford properties,
        being a group and commutativity, plus the monoid identity, the
        idempotents and the center.

    Examples
    --------
    >>> from brace_solutions.lib.semigroup import classify, clifford_monoid_3
    >>> p = classify(clifford_monoid_3())
    >>> p.clifford, p.group, sorted(p.idempotents)
    (True, False, [0, 1])

    """
    m = t.table
    n = t.n
    ar = np.arange(n)

    associative = bool(associativity_mask(t).all())
    commutative = bool((m == m.T).all())
    idempotents = frozenset(int(a) for a in np.flatnonzero(m[ar, ar] == ar))
    center = frozenset(int(z) for z in np.flatnonzero((m == m.T).all(axis=1)))

    left = (m == ar[None, :]).all(axis=1)
    right = (m.T == ar[None, :]).all(axis=1)
    units = np.flatnonzero(left & right)
    monoid_identity = int(units[0]) if units.size else None

    inverse_map: tuple[int, ...] | None = None
    clifford = group = False
    if associative:
        cand = quasi_inverse_candidates(t)
        if (cand.sum(axis=1) == 1).all():
            inv = cand.argmax(axis=1)
            inverse_map = tuple(int(x) for x in inv)
            clifford = bool((m[ar, inv] == m[inv, ar]).all())
            group = clifford and len(idempotents) == 1

    profile = SemigroupProfile(
        associative=associative,
        inverse_map=inverse_map,
        clifford=clifford,
        group=group,
        commutative=commutative,
        monoid_identity=monoid_identity,
        idempotents=idempotents,
        center=center,
    )
    log.debug("classified table of order %d as %s", n, profile.kind)
    return profile


def associativity_witness(t: CayleyTable) -> Witness | None:
    return first_witness(associativity_mask(t))


def inverse_witness(t: CayleyTable) -> Witness | None:
    """First element without a unique quasi-inverse, as a 1-tuple."""
    return first_witness(quasi_inverse_candidates(t).sum(axis=1) == 1)


def clifford_witness(t: CayleyTable) -> Witness | None:
    """First ``a`` with ``a·a⁻¹ != a⁻¹·a`` on an inverse table."""
    inv = inverse_array(t, "clifford_witness")
    ar = np.arange(t.n)
    m = t.table
    return first_witness(m[ar, inv] == m[inv, ar])


def inverse_array(t: CayleyTable, operation: str = "invert") -> np.ndarray:
    inverse_map = t.profile.inverse_map
    if inverse_map is None:
        raise UnsupportedStructure(operation, "inverse", t.profile.kind)
    return np.asarray(inverse_map, dtype=np.int64)


def invert(t: CayleyTable, a: int) -> int:
    """The unique inverse ``a⁻¹`` of ``a`` in an inverse semigroup.

    Raises
    ------
    UnsupportedStructure
        If ``t`` is not an inverse semigroup.

    """
    return int(inverse_array(t)[a])


def is_homomorphism(
    source: CayleyTable, target: CayleyTable, f: Sequence[int] | np.ndarray
) -> Witness | None:
    """First pair ``(a, b)`` with ``f(a·b) != f(a)·f(b)``, or None."""
    f = as_int_array(f, "map")
    if f.shape != (source.n,):
        raise MalformedInput(
            f"a map on a carrier of size {source.n} needs {source.n} entries"
        )
    check_range(f, target.n, "map")
    return first_witness(f[source.table] == target.table[f[:, None], f[None, :]])


def restrict(t: CayleyTable, subset: Sequence[int] | CarrierSubset) -> CayleyTable:
    """Restriction of ``t`` to a closed subset, re-indexed in ascending order."""
    members = np.unique(np.fromiter(subset, dtype=np.int64))
    if members.size == 0:
        raise MalformedInput("cannot restrict to the empty subset")
    check_range(members, t.n, "subset")
    block = t.table[np.ix_(members, members)]
    pos = np.searchsorted(members, block)
    pos = np.minimum(pos, members.size - 1)
    closed = members[pos] == block
    witness = first_witness(closed)
    if witness is not None:
        a, b = (int(members[i]) for i in witness)
        raise AxiomViolation("closure", (a, b), "restriction")
    labels = None
    if t.labels is not None:
        labels = [t.labels[i] for i in members]
    return CayleyTable(pos, labels)


def _require_group(t: CayleyTable, name: str) -> CayleyTable:
    if not t.profile.group:
        raise AxiomViolation("group", None, name)
    return t


def cyclic_group(n: int) -> CayleyTable:
    """Z/nZ under addition, residues ascending."""
    if n < 1:
        raise ValueError(f"cyclic group needs n >= 1, got {n}")
    ar = np.arange(n)
    return CayleyTable((ar[:, None] + ar[None, :]) % n)


def symmetric_group(n: int) -> CayleyTable:
    """Permutations of {0, ..., n-1} in lexicographic one-line order.

    Composition is ``(p·q)(x) = p(q(x))``. The degree is capped by
    ``braces.group.max-symmetric-degree``.

    """
    cap = dask.config.get("braces.group.max-symmetric-degree")
    if not 1 <= n <= cap:
        raise ValueError(f"symmetric group degree must be in 1..{cap}, got {n}")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    weights = n ** np.arange(n - 1, -1, -1)
    codes = perms @ weights
    composed = perms[:, perms]
    table = np.searchsorted(codes, composed @ weights)
    labels = ["".join(str(x) for x in p) for p in perms]
    return _require_group(CayleyTable(table, labels), f"S{n}")


def dihedral_group(n: int) -> CayleyTable:
    """The dihedral group of order 2n; ``r^i s^j`` has index ``j*n + i``."""
    if n < 1:
        raise ValueError(f"dihedral group needs n >= 1, got {n}")
    idx = np.arange(2 * n)
    i, j = idx % n, idx // n
    sign = np.where(j == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    ref = (j[:, None] + j[None, :]) % 2
    labels = [f"r{a}s{b}" for a, b in zip(i, j)]
    return _require_group(CayleyTable(ref * n + rot, labels), f"D{n}")


def units_mod(m: int) -> CayleyTable:
    """The unit group of Z/mZ, units ascending, labelled by residue."""
    if m < 2:
        raise ValueError(f"units_mod needs m >= 2, got {m}")
    units = np.array([u for u in range(1, m) if math.gcd(u, m) == 1], dtype=np.int64)
    prod = (units[:, None] * units[None, :]) % m
    table = np.searchsorted(units, prod)
    return _require_group(CayleyTable(table, [str(u) for u in units]), f"U({m})")


def direct_product(t1: CayleyTable, t2: CayleyTable) -> CayleyTable:
    """Componentwise product; the pair ``(i, j)`` has index ``i*n2 + j``."""
    n1, n2 = t1.n, t2.n
    block = t1.table[:, None, :, None] * n2 + t2.table[None, :, None, :]
    labels = [f"({t1.label(i)},{t2.label(j)})" for i in range(n1) for j in range(n2)]
    return CayleyTable(block.reshape(n1 * n2, n1 * n2), labels)


_GROUP_BUILDERS = {
    "cyclic": cyclic_group,
    "symmetric": symmetric_group,
    "dihedral": dihedral_group,
    "units_mod": units_mod,
    "direct_product": direct_product,
}


def build_group(kind: str, *args: Any, **kwargs: Any) -> CayleyTable:
    """Build one of the supported group tables by name.

    ``kind`` is one of ``cyclic``, ``symmetric``, ``dihedral``,
    ``units_mod`` or ``direct_product``; the remaining arguments are
    passed to the matching builder.

    """
    try:
        builder = _GROUP_BUILDERS[kind]
    except KeyError:
        raise ValueError(
            f"unknown group kind {kind!r}; expected one of {sorted(_GROUP_BUILDERS)}"
        ) from None
    t = builder(*args, **kwargs)
    return _require_group(t, kind)


def clifford_monoid_3() -> CayleyTable:
    """The commutative inverse monoid on {e, x, y} with x∘x = y∘y = x and x∘y = y."""
    return CayleyTable([[0, 1, 2], [1, 1, 2], [2, 2, 1]], ["e", "x", "y"])


def _check_semilattice(y_order: np.ndarray) -> None:
    y = CayleyTable(y_order)
    ar = np.arange(y.n)
    for name, ok in (
        ("semilattice associativity", associativity_mask(y)),
        ("semilattice commutativity", y.table == y.table.T),
        ("semilattice idempotency", y.table[ar, ar] == ar),
    ):
        witness = first_witness(ok)
        if witness is not None:
            raise AxiomViolation(name, witness, "semilattice")


def build_strong_semilattice(
    y_order: Any,
    groups: Sequence[CayleyTable],
    homs: Mapping[tuple[int, int], Sequence[int]],
) -> CayleyTable:
    """Clifford semigroup of a strong semilattice of groups.

    Parameters
    ----------
    y_order : array-like
        Meet table of the semilattice Y; ``y_order[α, β]`` is ``α ∧ β``.
    groups : sequence of CayleyTable
        One group table per element of Y.
    homs : mapping
        ``homs[(α, β)]`` is the structure homomorphism ``G_α → G_β``
        for every pair with ``α > β``, given as a list of images. The
        identity maps for ``α == β`` are implied.

    Returns
    -------
    CayleyTable
        The product ``a·b = φ_{α,αβ}(a) · φ_{β,αβ}(b)`` on the disjoint
        union, elements of ``G_α`` indexed after those of ``G_{α-1}``.

    """
    meet = as_int_array(y_order, "y_order")
    k = len(groups)
    if meet.shape != (k, k):
        raise MalformedInput(f"y_order must be {k}×{k} for {k} groups")
    check_range(meet, k, "y_order")
    _check_semilattice(meet)
    for g, t in enumerate(groups):
        if not t.profile.group:
            raise AxiomViolation("group", (g,), "strong semilattice component")

    sizes = np.array([t.n for t in groups], dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    maps: dict[tuple[int, int], np.ndarray] = {}
    for alpha in range(k):
        maps[(alpha, alpha)] = np.arange(sizes[alpha])
        for beta in range(k):
            if alpha == beta or meet[alpha, beta] != beta:
                continue
            if (alpha, beta) not in homs:
                raise MalformedInput(
                    f"missing structure homomorphism {alpha} -> {beta}",
                    path=f"homs[{alpha},{beta}]",
                )
            f = as_int_array(homs[(alpha, beta)], f"homs[{alpha},{beta}]")
            witness = is_homomorphism(groups[alpha], groups[beta], f)
            if witness is not None:
                raise AxiomViolation(f"homomorphism {alpha}->{beta}", witness)
            maps[(alpha, beta)] = f

    for alpha, beta, gamma in itertools.product(range(k), repeat=3):
        if len({alpha, beta, gamma}) < 3:
            continue
        if meet[alpha, beta] == beta and meet[beta, gamma] == gamma:
            composed = maps[(beta, gamma)][maps[(alpha, beta)]]
            witness = first_witness(composed == maps[(alpha, gamma)])
            if witness is not None:
                raise AxiomViolation(
                    f"homomorphism composition {alpha}->{beta}->{gamma}", witness
                )

    total = int(sizes.sum())
    table = np.empty((total, total), dtype=np.int64)
    for alpha, beta in itertools.product(range(k), repeat=2):
        delta = int(meet[alpha, beta])
        fa, fb = maps[(alpha, delta)], maps[(beta, delta)]
        rows = slice(offsets[alpha], offsets[alpha] + sizes[alpha])
        cols = slice(offsets[beta], offsets[beta] + sizes[beta])
        table[rows, cols] = offsets[delta] + groups[delta].table[fa[:, None], fb[None, :]]

    labels = [
        f"{g}:{t.label(i)}" for g, t in enumerate(groups) for i in range(t.n)
    ]
    result = CayleyTable(table, labels)
    log.debug(
        "built strong semilattice of %d groups, order %d, kind %s",
        k,
        total,
        result.profile.kind,
    )
    return result
