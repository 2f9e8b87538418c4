from __future__ import annotations

import logging
import math
from functools import cached_property
from typing import TYPE_CHECKING, Any, NamedTuple

import dask.config
import numpy as np

from brace_solutions.lib.core import (
    IdentityCheck,
    Witness,
    as_int_array,
    check_identity,
    check_range,
    first_witness,
    freeze,
    map_shards,
    rows_are_permutations,
)
from brace_solutions.utils import MalformedInput, SearchBudgetExceeded

if TYPE_CHECKING:
    from brace_solutions.lib.brace import WeakBrace

log = logging.getLogger(__name__)


class PairMap:
    """A map ``S×S → S×S`` on the carrier {0, ..., n-1}.

    The map sends ``(a, b)`` to ``(sigma[a, b], tau[b, a])``: each
    component table is indexed with the map's subscript first, as in
    ``(λ_a(b), ρ_b(a))``. A PairMap is only a candidate; use
    :func:`check_braid` to find out whether it is a solution.

    """

    def __init__(self, sigma: Any, tau: Any, name: str | None = None) -> None:
        sigma = as_int_array(sigma, "sigma")
        tau = as_int_array(tau, "tau")
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.size == 0:
            raise MalformedInput(
                f"sigma must be a non-empty n×n array, got shape {sigma.shape}"
            )
        if tau.shape != sigma.shape:
            raise MalformedInput(
                f"tau has shape {tau.shape} but sigma has shape {sigma.shape}"
            )
        n = sigma.shape[0]
        check_range(sigma, n, "sigma")
        check_range(tau, n, "tau")
        self._sigma = freeze(sigma)
        self._tau = freeze(tau)
        self.name = name

    @classmethod
    def from_components(
        cls, first: Any, second: Any, name: str | None = None
    ) -> PairMap:
        """Build from tables indexed ``[a, b]`` for both components."""
        return cls(first, np.asarray(second).T, name)

    @property
    def n(self) -> int:
        return self._sigma.shape[0]

    @property
    def sigma(self) -> np.ndarray:
        return self._sigma

    @property
    def tau(self) -> np.ndarray:
        return self._tau

    @property
    def first(self) -> np.ndarray:
        """First component indexed ``[a, b]``."""
        return self._sigma

    @cached_property
    def second(self) -> np.ndarray:
        """Second component indexed ``[a, b]``."""
        out = self._tau.T.copy()
        out.setflags(write=False)
        return out

    def __call__(self, a: int, b: int) -> tuple[int, int]:
        return int(self._sigma[a, b]), int(self._tau[b, a])

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, PairMap):
            return NotImplemented
        return np.array_equal(self._sigma, other._sigma) and np.array_equal(
            self._tau, other._tau
        )

    def __hash__(self) -> int:
        return hash((self._sigma.tobytes(), self._tau.tobytes()))

    def __repr__(self) -> str:
        name = f"{self.name!r}, " if self.name else ""
        return f"PairMap({name}n={self.n})"


def pair_map_from_components(first: Any, second: Any) -> PairMap:
    return PairMap.from_components(first, second)


def identity_map(n: int) -> PairMap:
    ar = np.arange(n)
    a = np.broadcast_to(ar[:, None], (n, n))
    b = np.broadcast_to(ar[None, :], (n, n))
    return PairMap.from_components(a, b, "id")


def twist_map(n: int) -> PairMap:
    ar = np.arange(n)
    a = np.broadcast_to(ar[:, None], (n, n))
    b = np.broadcast_to(ar[None, :], (n, n))
    return PairMap.from_components(b, a, "twist")


def compose(r: PairMap, s: PairMap) -> PairMap:
    """The composite ``r s``: apply ``s`` first, then ``r``."""
    if r.n != s.n:
        raise MalformedInput(f"cannot compose maps on {r.n} and {s.n} elements")
    x, y = s.first, s.second
    return PairMap.from_components(r.first[x, y], r.second[x, y])


def is_identity(r: PairMap) -> bool:
    return r == identity_map(r.n)


def inverse_map(r: PairMap) -> PairMap | None:
    """The functional inverse of ``r``, or None when ``r`` is not bijective."""
    if not properties(r).bijective:
        return None
    n = r.n
    ar = np.arange(n)
    first = np.empty((n, n), dtype=np.int64)
    second = np.empty((n, n), dtype=np.int64)
    first[r.first, r.second] = ar[:, None]
    second[r.first, r.second] = ar[None, :]
    return PairMap.from_components(first, second)


class BraidCheck(NamedTuple):
    holds: bool
    witness: Witness | None

    def __bool__(self) -> bool:
        return self.holds


def _braid_sides(r: PairMap) -> tuple[tuple[np.ndarray, ...], tuple[np.ndarray, ...]]:
    F, G = r.first, r.second
    n = r.n
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    # (r×id)(id×r)(r×id)
    x1, y1 = F[a, b], G[a, b]
    y2, z2 = F[y1, c], G[y1, c]
    left = (F[x1, y2], G[x1, y2], np.broadcast_to(z2, (n, n, n)))
    # (id×r)(r×id)(id×r)
    u, v = F[b, c], G[b, c]
    p, q = F[a, u], G[a, u]
    right = (np.broadcast_to(p, (n, n, n)), F[q, v], G[q, v])
    return left, right


def check_braid(r: PairMap) -> BraidCheck:
    """Exhaustively check the braid relation on all ``n³`` triples.

    Returns
    -------
    BraidCheck
        ``holds`` and, on failure, the lexicographically first triple
        ``(a, b, c)`` where the two sides differ.

    """
    left, right = _braid_sides(r)
    ok = np.ones((r.n,) * 3, dtype=bool)
    for lhs, rhs in zip(left, right):
        ok &= lhs == rhs
    witness = first_witness(ok)
    return BraidCheck(witness is None, witness)


def check_y1y2y3(r: PairMap) -> tuple[IdentityCheck, IdentityCheck, IdentityCheck]:
    """The three componentwise identities whose conjunction is the braid relation."""
    F, G = r.first, r.second
    n = r.n
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    Fab, Gab, Fbc, Gbc = F[a, b], G[a, b], F[b, c], G[b, c]
    shape = (n, n, n)
    y1 = check_identity(
        "Y1", np.broadcast_to(F[a, Fbc], shape), F[Fab, F[Gab, c]]
    )
    y2 = check_identity("Y2", F[G[a, Fbc], Gbc], G[Fab, F[Gab, c]])
    y3 = check_identity(
        "Y3", np.broadcast_to(G[Gab, c], shape), G[G[a, Fbc], Gbc]
    )
    return y1, y2, y3


class SolutionProperties(NamedTuple):
    bijective: bool
    left_nondeg: bool
    right_nondeg: bool
    involutive: bool


def properties(r: PairMap) -> SolutionProperties:
    n = r.n
    codes = r.first * n + r.second
    return SolutionProperties(
        bijective=np.unique(codes).size == n * n,
        left_nondeg=bool(rows_are_permutations(r.sigma).all()),
        right_nondeg=bool(rows_are_permutations(r.tau).all()),
        involutive=is_identity(compose(r, r)),
    )


def canonical_solution(w: WeakBrace) -> PairMap:
    """The solution ``r(a, b) = (λ_a(b), ρ_b(a))`` of a weak brace."""
    return PairMap(w.lambda_table, w.rho_table, f"r[{w.name}]" if w.name else "r")


def opposite_solution(w: WeakBrace) -> PairMap:
    """The solution ``r^op(a, b) = (λ^op_a(b), ρ^op_b(a))`` of the opposite brace."""
    return PairMap(
        w.lambda_op_table, w.rho_op_table, f"r^op[{w.name}]" if w.name else "r^op"
    )


def regularity_checks(r: PairMap, s: PairMap) -> list[IdentityCheck]:
    rs, sr = compose(r, s), compose(s, r)
    checks = []
    for name, lhs, rhs in (
        ("r s r = r", compose(rs, r), r),
        ("s r s = s", compose(sr, s), s),
        ("r s = s r", rs, sr),
    ):
        ok = (lhs.first == rhs.first) & (lhs.second == rhs.second)
        checks.append(IdentityCheck.from_mask(name, ok))
    return checks


def completely_regular_pair(r: PairMap, s: PairMap) -> bool:
    """Whether ``r s r = r``, ``s r s = s`` and ``r s = s r``."""
    return all(regularity_checks(r, s))


def _search_branch(start: int, r: PairMap, s: PairMap) -> tuple[int, ...] | None:
    """Lexicographically first equivalence with ``phi(0) = start``."""
    n = r.n
    Fr, Gr, Fs, Gs = r.first, r.second, s.first, s.second
    phi = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)

    def consistent(k: int) -> bool:
        p = phi[: k + 1]
        for source, target in ((Fr, Fs), (Gr, Gs)):
            x = source[: k + 1, : k + 1]
            y = target[p[:, None], p[None, :]]
            known = x <= k
            mapped = phi[np.where(known, x, 0)]
            if not np.all(np.where(known, mapped == y, ~used[y])):
                return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        candidates = [start] if k == 0 else np.flatnonzero(~used)
        for v in candidates:
            phi[k] = v
            used[v] = True
            if consistent(k) and extend(k + 1):
                return True
            used[v] = False
            phi[k] = -1
        return False

    if extend(0):
        return tuple(int(v) for v in phi)
    return None


def find_equivalence(
    r: PairMap, s: PairMap, budget: int | None = None
) -> tuple[int, ...] | None:
    """Search for a bijection φ with ``(φ×φ) r = s (φ×φ)``.

    Parameters
    ----------
    r, s : PairMap
        The two candidate solutions.
    budget : int, optional
        Largest ``n!`` the search will agree to walk through. Defaults
        to ``braces.equivalence.budget``.

    Returns
    -------
    tuple of int or None
        The lexicographically first φ in one-line notation, or None
        if no bijection intertwines the maps.

    Raises
    ------
    SearchBudgetExceeded
        If ``n!`` exceeds the budget. The search is never run
        partially.

    """
    if r.n != s.n:
        return None
    n = r.n
    if budget is None:
        budget = dask.config.get("braces.equivalence.budget")
    if math.factorial(n) > budget:
        log.debug("refusing equivalence search on %d elements (budget %d)", n, budget)
        raise SearchBudgetExceeded(n, budget)

    starts = list(range(n))
    if dask.config.get("braces.equivalence.shard"):
        found = map_shards(_search_branch, starts, r, s)
    else:
        found = [_search_branch(v, r, s) for v in starts]
    for phi in found:
        if phi is not None:
            return phi
    return None


def intertwines(phi: Any, r: PairMap, s: PairMap) -> bool:
    """Whether ``(φ×φ) r = s (φ×φ)`` holds on every pair."""
    f = np.asarray(phi, dtype=np.int64)
    return bool(
        np.array_equal(f[r.first], s.first[f[:, None], f[None, :]])
        and np.array_equal(f[r.second], s.second[f[:, None], f[None, :]])
    )
