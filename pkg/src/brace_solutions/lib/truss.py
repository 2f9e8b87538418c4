"""Heaps, unital near-trusses and the solutions they carry.

A retraction ``(π, γ)`` of a unital near-truss ``T`` onto the near-truss
``T(B)`` of a skew brace glues the solutions ``ř_z`` of ``B`` into
solutions on ``T``. Ternary operations are stored densely, so carriers
are capped by ``braces.heap.max-order``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from functools import cached_property
from typing import Any, NamedTuple

import dask.config
import numpy as np

from brace_solutions.lib.brace import Level, WeakBrace, trivial, verify_weak_brace
from brace_solutions.lib.core import (
    Biconditional,
    CarrierSubset,
    IdentityCheck,
    Implication,
    Witness,
    as_int_array,
    check_identity,
    check_range,
    first_witness,
    freeze,
    rows_are_permutations,
)
from brace_solutions.lib.deform import r_check, require_in_distributor, require_level
from brace_solutions.lib.semigroup import (
    CayleyTable,
    associativity_witness,
    direct_product as direct_product_table,
    inverse_array,
    is_homomorphism,
    restrict,
    units_mod,
)
from brace_solutions.lib.solution import PairMap, intertwines
from brace_solutions.utils import (
    AxiomViolation,
    MalformedInput,
    UnsupportedStructure,
)

log = logging.getLogger(__name__)


class Heap:
    """A ternary operation ``[a, b, c] = tern[a, b, c]`` on {0, ..., n-1}.

    Build instances with :func:`verify_heap` or :func:`heap_of_group`.

    """

    def __init__(self, tern: Any) -> None:
        tern = as_int_array(tern, "tern")
        if tern.ndim != 3 or len(set(tern.shape)) != 1 or tern.size == 0:
            raise MalformedInput(
                f"a ternary table must be a non-empty n×n×n array, got shape {tern.shape}"
            )
        n = tern.shape[0]
        cap = dask.config.get("braces.heap.max-order")
        if n > cap:
            raise MalformedInput(
                f"heap carriers are capped at {cap} elements, got {n}; "
                "raise 'braces.heap.max-order' to allow it"
            )
        check_range(tern, n, "tern")
        self._tern = freeze(tern)

    @property
    def n(self) -> int:
        return self._tern.shape[0]

    @property
    def tern(self) -> np.ndarray:
        return self._tern

    def __call__(self, a: int, b: int, c: int) -> int:
        return int(self._tern[a, b, c])

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Heap):
            return NotImplemented
        return np.array_equal(self._tern, other._tern)

    def __hash__(self) -> int:
        return hash(self._tern.tobytes())

    def __repr__(self) -> str:
        return f"Heap(n={self.n})"


def _scan_first(name: str, n: int, ok_for: Callable[[int], np.ndarray]) -> IdentityCheck:
    """Check an identity one value of its first variable at a time."""
    for a in range(n):
        witness = first_witness(ok_for(a))
        if witness is not None:
            return IdentityCheck(name, False, (a, *witness))
    return IdentityCheck(name, True)


def _malcev_checks(t: np.ndarray) -> list[IdentityCheck]:
    ar = np.arange(t.shape[0])
    a, b = ar[:, None], ar[None, :]
    return [
        IdentityCheck.from_mask("[a,a,b] = b", t[a, a, b] == b),
        IdentityCheck.from_mask("[b,a,a] = b", t[b, a, a] == b),
    ]


def _associativity_check(t: np.ndarray) -> IdentityCheck:
    n = t.shape[0]
    ar = np.arange(n)

    def ok(a: int) -> np.ndarray:
        # indexed [b, c, d, e]
        lhs = t[a][:, t]
        rhs = t[t[a][:, :, None, None], ar[None, None, :, None], ar[None, None, None, :]]
        return lhs == rhs

    return _scan_first("[a,b,[c,d,e]] = [[a,b,c],d,e]", n, ok)


def _middle_swap_check(t: np.ndarray) -> IdentityCheck:
    n = t.shape[0]
    ar = np.arange(n)
    swapped = t.transpose(2, 1, 0)

    def ok(a: int) -> np.ndarray:
        lhs = t[a][:, t]
        rhs = t[a][swapped[:, :, :, None], ar[None, None, None, :]]
        return lhs == rhs

    return _scan_first("[a,b,[c,d,e]] = [a,[d,c,b],e]", n, ok)


def _retract_isomorphism_check(t: np.ndarray) -> IdentityCheck:
    """``a ↦ [a,e,f]`` maps ``(H, +_e)`` onto ``(H, +_f)`` for every ``e, f``."""
    n = t.shape[0]
    ar = np.arange(n)

    def ok(e: int) -> np.ndarray:
        phi = t[:, e, :].T  # phi[f, a] = [a, e, f]
        lhs = t[t[:, e, :][None, :, :], e, ar[:, None, None]]
        rhs = t[phi[:, :, None], ar[:, None, None], phi[:, None, :]]
        bijective = rows_are_permutations(phi)[:, None, None]
        return (lhs == rhs) & bijective

    return _scan_first("a ↦ [a,e,f] is a retract isomorphism", n, ok)


def verify_heap(tern: Any) -> Heap:
    """Verify the heap axioms exhaustively.

    Raises
    ------
    AxiomViolation
        Naming the failing axiom and its lexicographically smallest
        witness.

    """
    h = tern if isinstance(tern, Heap) else Heap(tern)
    for check in (*_malcev_checks(h.tern), _associativity_check(h.tern)):
        if not check.holds:
            raise AxiomViolation(check.name, check.witness, "heap")
    log.debug("verified heap of order %d", h.n)
    return h


def heap_report(h: Heap) -> list[IdentityCheck]:
    """The heap axioms together with the identities they imply."""
    t = h.tern
    return [
        *_malcev_checks(t),
        _associativity_check(t),
        _middle_swap_check(t),
        _retract_isomorphism_check(t),
    ]


def retract(h: Heap, e: int) -> CayleyTable:
    """The ``e``-retract ``a +_e b = [a, e, b]``, a group with identity ``e``."""
    if not 0 <= e < h.n:
        raise MalformedInput(f"{e} is outside the carrier of size {h.n}")
    return CayleyTable(h.tern[:, e, :])


def heap_of_group(g: CayleyTable) -> Heap:
    """The heap ``[a, b, c] = a·b⁻¹·c`` of a group."""
    if not g.profile.group:
        raise UnsupportedStructure("heap_of_group", "group", g.profile.kind)
    m = g.table
    inv = inverse_array(g)
    return Heap(m[m[:, inv][:, :, None], np.arange(g.n)[None, None, :]])


class NearTruss:
    """A heap with an associative multiplication distributing from the left.

    Build instances with :func:`verify_near_truss`.

    """

    def __init__(
        self, heap: Heap, mul: CayleyTable, unit: int | None, name: str | None = None
    ) -> None:
        self._heap = heap
        self._mul = mul
        self._unit = unit
        self.name = name

    def __repr__(self) -> str:
        name = f"{self.name!r}, " if self.name else ""
        return f"NearTruss({name}n={self.n}, unital={self.unital})"

    @property
    def n(self) -> int:
        return self._heap.n

    @property
    def heap(self) -> Heap:
        return self._heap

    @property
    def tern(self) -> np.ndarray:
        return self._heap.tern

    @property
    def mul(self) -> CayleyTable:
        return self._mul

    @property
    def unit(self) -> int | None:
        return self._unit

    @property
    def unital(self) -> bool:
        return self._unit is not None

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._mul.labels

    def label(self, a: int) -> str:
        return self._mul.label(a)


def left_distributivity_check(heap: Heap, mul: CayleyTable) -> IdentityCheck:
    t, m = heap.tern, mul.table
    lhs = m[:, t]
    rhs = t[m[:, :, None, None], m[:, None, :, None], m[:, None, None, :]]
    return check_identity("a·[b,c,d] = [a·b,a·c,a·d]", lhs, rhs)


def verify_near_truss(
    heap: Heap | Any,
    mul: CayleyTable | Any,
    unit: int | None = None,
    name: str | None = None,
) -> NearTruss:
    """Verify the near-truss axioms exhaustively.

    Parameters
    ----------
    heap : Heap or array-like
        The ternary operation; arrays are verified as heaps first.
    mul : CayleyTable or array-like
        The multiplication.
    unit : int, optional
        The expected identity of the multiplication. When omitted the
        identity is detected, and the near-truss is non-unital if the
        multiplication has none.
    name : str, optional
        Name carried by the result and used in error messages.

    Raises
    ------
    AxiomViolation
        Naming the failing axiom and its witness.

    """
    heap = verify_heap(heap)
    mul = mul if isinstance(mul, CayleyTable) else CayleyTable(mul)
    if mul.n != heap.n:
        raise MalformedInput(
            f"the multiplication acts on {mul.n} elements but the heap on {heap.n}"
        )
    witness = associativity_witness(mul)
    if witness is not None:
        raise AxiomViolation("(T,·) associative", witness, name)
    check = left_distributivity_check(heap, mul)
    if not check.holds:
        raise AxiomViolation(check.name, check.witness, name)

    detected = mul.profile.monoid_identity
    if unit is not None:
        if not 0 <= unit < heap.n:
            raise MalformedInput(f"unit {unit} is outside the carrier of size {heap.n}")
        if detected != unit:
            m, ar = mul.table, np.arange(heap.n)
            ok = (m[unit] == ar) & (m[:, unit] == ar)
            raise AxiomViolation("1·a = a = a·1", first_witness(ok), name)
    log.debug("verified near-truss %s of order %d", name or "", heap.n)
    return NearTruss(heap, mul, detected, name)


def truss_of_brace(b: WeakBrace) -> NearTruss:
    """``T(B)``: the heap ``[a, b, c] = a - b + c`` with ``∘`` as multiplication."""
    require_level(b, Level.SKEW, "truss_of_brace")
    add = b.add.table
    ar = np.arange(b.n)
    tern = add[add[:, b.neg][:, :, None], ar[None, None, :]]
    return verify_near_truss(tern, b.mul, b.identity, f"T({b.name})" if b.name else "T(B)")


def truss_of_ring_mod(m: int) -> NearTruss:
    """``T(Z/mZ)``: ``[a, b, c] = a - b + c`` and multiplication mod ``m``."""
    if m < 2:
        raise ValueError(f"truss_of_ring_mod needs m >= 2, got {m}")
    ar = np.arange(m)
    tern = (ar[:, None, None] - ar[None, :, None] + ar[None, None, :]) % m
    mul = CayleyTable((ar[:, None] * ar[None, :]) % m, [str(a) for a in ar])
    return verify_near_truss(tern, mul, 1, f"T(Z/{m})")


def brace_of_truss(t: NearTruss) -> WeakBrace:
    """The skew brace ``(T, +_1, ·)`` with ``a +_1 b = [a, 1, b]``.

    Raises
    ------
    UnsupportedStructure
        If the multiplication of ``t`` is not a group.

    """
    if not t.mul.profile.group:
        raise UnsupportedStructure("brace_of_truss", "group multiplication", t.mul.profile.kind)
    add = CayleyTable(t.tern[:, t.unit, :], t.labels)
    return verify_weak_brace(add, t.mul, Level.SKEW, f"B({t.name})" if t.name else None)


def direct_product(t1: NearTruss, t2: NearTruss) -> NearTruss:
    """Componentwise product; ``(i, j)`` has index ``i*n2 + j``."""
    n1, n2 = t1.n, t2.n
    block = t1.tern[:, None, :, None, :, None] * n2 + t2.tern[None, :, None, :, None, :]
    mul = direct_product_table(t1.mul, t2.mul)
    unit = None
    if t1.unital and t2.unital:
        unit = t1.unit * n2 + t2.unit
    name = f"{t1.name or 'T1'} x {t2.name or 'T2'}"
    return verify_near_truss(block.reshape((n1 * n2,) * 3), mul, unit, name)


def homomorphism_failure(
    source: NearTruss, target: NearTruss, f: Sequence[int] | np.ndarray
) -> tuple[str, Witness] | None:
    """The first near-truss homomorphism condition ``f`` breaks, or None.

    Unital near-trusses also need ``f(1) = 1``.

    """
    f = as_int_array(f, "map")
    if f.shape != (source.n,):
        raise MalformedInput(
            f"a map on a carrier of size {source.n} needs {source.n} entries"
        )
    check_range(f, target.n, "map")
    ok = f[source.tern] == target.tern[f[:, None, None], f[None, :, None], f[None, None, :]]
    witness = first_witness(ok)
    if witness is not None:
        return "f([a,b,c]) = [f(a),f(b),f(c)]", witness
    witness = is_homomorphism(source.mul, target.mul, f)
    if witness is not None:
        return "f(a·b) = f(a)·f(b)", witness
    if source.unital and target.unital and f[source.unit] != target.unit:
        return "f(1) = 1", (source.unit,)
    return None


class Kernel(NamedTuple):
    members: CarrierSubset
    subheap: bool
    subnear_truss: bool | None


def _closed_under(table: np.ndarray, mask: np.ndarray) -> bool:
    members = np.flatnonzero(mask)
    return bool(mask[table[np.ix_(*(members,) * table.ndim)]].all())


def kernel_set(
    source: NearTruss, target: NearTruss, f: Sequence[int] | np.ndarray, value: int
) -> Kernel:
    """``ker_value(f) = {a : f(a) = value}`` and whether it is a substructure.

    ``subnear_truss`` is None unless ``value`` is idempotent in the
    target, the case in which the kernel is closed under ``·``.

    """
    failure = homomorphism_failure(source, target, f)
    if failure is not None:
        raise AxiomViolation(failure[0], failure[1], "kernel_set")
    mask = np.asarray(f) == value
    members = frozenset(int(a) for a in np.flatnonzero(mask))
    if not members:
        return Kernel(members, False, None)
    subheap = _closed_under(source.tern, mask)
    subnear_truss = None
    if target.mul(value, value) == value:
        subnear_truss = subheap and _closed_under(source.mul.table, mask)
    return Kernel(members, subheap, subnear_truss)


def _restrict_near_truss(t: NearTruss, members: Sequence[int], name: str) -> NearTruss:
    members = np.asarray(sorted(members), dtype=np.int64)
    tern = np.searchsorted(members, t.tern[np.ix_(members, members, members)])
    mul = restrict(t.mul, members)
    unit = None
    if t.unital and t.unit in members:
        unit = int(np.searchsorted(members, t.unit))
    return verify_near_truss(tern, mul, unit, name)


def sigma_check_table(t: NearTruss, z: int) -> np.ndarray:
    """``out[a, b] = σ̌^z_a(b) = [a·b, a·z, z]``."""
    m = t.mul.table
    return t.tern[m, m[:, z][:, None], z]


def sigma_check(t: NearTruss, z: int, a: int, b: int) -> int:
    m = t.mul.table
    return int(t.tern[m[a, b], m[a, z], z])


class Retraction:
    """A retraction ``π: T → T(B)`` with section ``γ``.

    ``pi`` and ``gamma`` are unital near-truss homomorphisms with
    ``π γ = id``; ``kernel`` is ``ker_1(π)``. Build instances with
    :func:`build_retraction`.

    """

    def __init__(
        self,
        t: NearTruss,
        b: WeakBrace,
        pi: np.ndarray,
        gamma: np.ndarray,
        name: str | None = None,
    ) -> None:
        self._t = t
        self._b = b
        self._pi = freeze(pi)
        self._gamma = freeze(gamma)
        self.name = name

    def __repr__(self) -> str:
        return f"Retraction({self._t.name!r} -> T({self._b.name!r}))"

    @property
    def t(self) -> NearTruss:
        return self._t

    @property
    def b(self) -> WeakBrace:
        return self._b

    @property
    def pi(self) -> np.ndarray:
        return self._pi

    @property
    def gamma(self) -> np.ndarray:
        return self._gamma

    @cached_property
    def kernel(self) -> CarrierSubset:
        return frozenset(int(a) for a in np.flatnonzero(self._pi == self._b.identity))

    @cached_property
    def collapse(self) -> np.ndarray:
        """``γπ`` as a table."""
        out = self._gamma[self._pi]
        out.setflags(write=False)
        return out


def build_retraction(
    t: NearTruss,
    b: WeakBrace,
    pi: Sequence[int] | np.ndarray,
    gamma: Sequence[int] | np.ndarray,
    name: str | None = None,
) -> Retraction:
    """Verify that ``(π, γ)`` retracts ``t`` onto ``T(b)``.

    Raises
    ------
    UnsupportedStructure
        If ``t`` is not unital or ``b`` is not a skew brace.
    AxiomViolation
        If either map is not a unital near-truss homomorphism or
        ``π γ`` is not the identity of ``B``.

    """
    if not t.unital:
        raise UnsupportedStructure("build_retraction", "unital near-truss", "near-truss")
    require_level(b, Level.SKEW, "build_retraction")
    pi = as_int_array(pi, "pi")
    gamma = as_int_array(gamma, "gamma")
    if pi.shape != (t.n,):
        raise MalformedInput(f"pi needs {t.n} entries, got shape {pi.shape}", path="pi")
    if gamma.shape != (b.n,):
        raise MalformedInput(
            f"gamma needs {b.n} entries, got shape {gamma.shape}", path="gamma"
        )
    check_range(pi, b.n, "pi")
    check_range(gamma, t.n, "gamma")

    tb = truss_of_brace(b)
    for symbol, f, source, target in (("π", pi, t, tb), ("γ", gamma, tb, t)):
        failure = homomorphism_failure(source, target, f)
        if failure is not None:
            axiom, witness = failure
            raise AxiomViolation(f"{symbol}: {axiom}", witness, name)
    witness = first_witness(pi[gamma] == np.arange(b.n))
    if witness is not None:
        raise AxiomViolation("π γ = id", witness, name)
    r = Retraction(t, b, pi, gamma, name)
    log.debug("verified retraction with kernel of %d elements", len(r.kernel))
    return r


def identity_retraction(b: WeakBrace) -> Retraction:
    ar = np.arange(b.n)
    return build_retraction(truss_of_brace(b), b, ar, ar, "identity")


def terminal_retraction(t: NearTruss) -> Retraction:
    """The retraction onto the one-element brace; it yields ``ř(a, b) = (1, a·b)``."""
    one = trivial(CayleyTable([[0]], ["1"]))
    return build_retraction(t, one, np.zeros(t.n, dtype=np.int64), [t.unit], "terminal")


def product_near_truss(b: WeakBrace, t: NearTruss) -> tuple[NearTruss, Retraction]:
    """``T(B) × T`` with ``π`` the first projection and ``γ(x) = (x, 1)``."""
    if not t.unital:
        raise UnsupportedStructure("product_near_truss", "unital near-truss", "near-truss")
    product = direct_product(truss_of_brace(b), t)
    ar = np.arange(product.n)
    pi = ar // t.n
    gamma = np.arange(b.n) * t.n + t.unit
    return product, build_retraction(product, b, pi, gamma, "product")


def semidirect_retraction(k: int) -> Retraction:
    """``U(Z/kZ) ⋉ (Z/kZ, +_1)`` retracted onto the trivial brace on the units.

    The pair ``(q, x)`` has index ``i*k + x`` where ``i`` is the position
    of the unit ``q``. The ternary operation is
    ``[(a,x),(b,y),(c,w)] = (a b⁻¹ c, x + a b⁻¹ (w - y))``, the
    multiplication is componentwise and ``(1, 1)`` is the unit.

    """
    units_table = units_mod(k)
    units = np.array([int(u) for u in units_table.labels], dtype=np.int64)
    nu = units.size
    # carrier arrays: q[p] is the unit residue, x[p] the additive part
    p = np.arange(nu * k)
    qi, x = p // k, p % k
    q = units[qi]
    inv = inverse_array(units_table)

    a, b, c = p[:, None, None], p[None, :, None], p[None, None, :]
    ratio = units_table.table[qi[a], inv[qi[b]]]
    first = units_table.table[ratio, qi[c]]
    second = (x[a] + units[ratio] * (x[c] - x[b])) % k
    tern = first * k + second

    mul = units_table.table[qi[:, None], qi[None, :]] * k + (x[:, None] * x[None, :]) % k
    labels = [f"({int(u)},{int(v)})" for u, v in zip(q, x)]
    t = verify_near_truss(tern, CayleyTable(mul, labels), 1, f"U({k}) x| Z/{k}")
    brace = trivial(units_table)
    gamma = np.arange(nu) * k + 1
    return build_retraction(t, brace, qi, gamma, "semidirect")


def _eta_tables(r: Retraction, z: int) -> tuple[np.ndarray, np.ndarray]:
    """``η̌^z`` indexed ``[a, b]`` and its inverse ``γ((π η̌^z_a(b))⁻¹)``."""
    gp = r.collapse
    eta = sigma_check_table(r.t, int(gp[z]))[np.ix_(gp, gp)]
    eta_inv = r.gamma[r.b.inv[r.pi[eta]]]
    return eta, eta_inv


def eta_table(r: Retraction, z: int) -> np.ndarray:
    """``out[a, b] = η̌^z_a(b) = [γπ(a)γπ(b), γπ(a)γπ(z), γπ(z)]``."""
    return _eta_tables(r, z)[0]


def near_truss_solution(r: Retraction, z: int) -> PairMap:
    """The solution ``ř^z(a, b) = (η̌^z_a(b), η̌^z_a(b)⁻¹·a·b)`` on ``T``.

    Raises
    ------
    PreconditionFailed
        If ``π(z)`` is not in the right distributor of ``B``.

    """
    require_in_distributor(r.b, int(r.pi[z]), "near_truss_solution")
    m = r.t.mul.table
    eta, eta_inv = _eta_tables(r, z)
    second = m[eta_inv, m]
    return PairMap.from_components(eta, second, f"ř^{r.t.label(z)}")


def restricted_solution(r: Retraction, z: int) -> PairMap:
    """``ř^z`` restricted to ``γ(B) × γ(B)`` and carried to ``B`` along ``π``."""
    s = near_truss_solution(r, z)
    g = r.gamma
    block = np.ix_(g, g)
    return PairMap.from_components(r.pi[s.first[block]], r.pi[s.second[block]])


class RestrictionEquivalence(NamedTuple):
    restricted: PairMap
    target: PairMap
    phi: tuple[int, ...]
    holds: bool


def restriction_equivalence(r: Retraction, z: int) -> RestrictionEquivalence:
    """Compare ``ř^z`` on ``γ(B)`` with ``ř_{π(z)}`` on ``B`` through ``π``.

    ``restricted`` lives on the elements of ``γ(B)`` in ascending order
    and ``phi`` is ``π`` on them, in the same order.

    """
    s = near_truss_solution(r, z)
    members = np.sort(r.gamma)
    block = np.ix_(members, members)
    restricted = PairMap.from_components(
        np.searchsorted(members, s.first[block]),
        np.searchsorted(members, s.second[block]),
        f"{s.name}|γ(B)",
    )
    target = r_check(r.b, int(r.pi[z]))
    phi = tuple(int(v) for v in r.pi[members])
    return RestrictionEquivalence(restricted, target, phi, intertwines(phi, restricted, target))


def fix_T(t: NearTruss, subset: Iterable[int]) -> CarrierSubset:
    """``Fix_T(S) = {x : [1, s, s·x] = x for every s in S}``."""
    if not t.unital:
        raise UnsupportedStructure("fix_T", "unital near-truss", "near-truss")
    s = np.asarray(sorted(subset), dtype=np.int64)
    ar = np.arange(t.n)
    ok = t.tern[t.unit, s[:, None], t.mul.table[s]] == ar[None, :]
    return frozenset(int(x) for x in np.flatnonzero(ok.all(axis=0)))


class DecompositionReport(NamedTuple):
    kernel: CarrierSubset
    phi: tuple[int, ...]
    bijective: bool
    fixed: IdentityCheck
    commutation: IdentityCheck
    heap_swap: IdentityCheck
    isomorphism: bool

    @property
    def conditions(self) -> bool:
        return self.fixed.holds and self.commutation.holds and self.heap_swap.holds

    @property
    def holds(self) -> bool:
        """φ is a near-truss isomorphism exactly when the three conditions hold."""
        return self.conditions == self.isomorphism


def _kernel_check(name: str, ok: np.ndarray, ker: np.ndarray) -> IdentityCheck:
    witness = first_witness(ok)
    if witness is not None:
        witness = (int(ker[witness[0]]), witness[1])
    return IdentityCheck(name, witness is None, witness)


def decomposition_check(r: Retraction) -> DecompositionReport:
    """Test whether ``φ(s, b) = [i(s), 1, γ(b)]`` splits ``T`` as ``ker_1(π) × T(B)``.

    ``φ`` is built on the product near-truss whose pair ``(s, b)`` has
    index ``j*|B| + b`` for the ``j``-th kernel element ``s``.

    """
    t, g = r.t, r.gamma
    one = t.unit
    m = t.mul.table
    ker = np.asarray(sorted(r.kernel), dtype=np.int64)

    phi = t.tern[ker[:, None], one, g[None, :]].reshape(-1)
    bijective = np.unique(phi).size == t.n

    fixed = t.tern[one, ker[:, None], m[ker[:, None], g[None, :]]] == g[None, :]
    commute = m[ker[:, None], g[None, :]] == m[g[None, :], ker[:, None]]
    swap = t.tern[ker[:, None], one, g[None, :]] == t.tern[g[None, :], one, ker[:, None]]

    isomorphism = False
    if bijective:
        domain = direct_product(
            _restrict_near_truss(t, ker, "ker_1(π)"), truss_of_brace(r.b)
        )
        isomorphism = homomorphism_failure(domain, t, phi) is None

    report = DecompositionReport(
        kernel=r.kernel,
        phi=tuple(int(v) for v in phi),
        bijective=bool(bijective),
        fixed=_kernel_check("[1, s, s·γ(b)] = γ(b)", fixed, ker),
        commutation=_kernel_check("i(s)·γ(b) = γ(b)·i(s)", commute, ker),
        heap_swap=_kernel_check("[i(s), 1, γ(b)] = [γ(b), 1, i(s)]", swap, ker),
        isomorphism=isomorphism,
    )
    log.debug("decomposition of %s: conditions %s, isomorphism %s",
              t.name, report.conditions, report.isomorphism)
    return report


def ntl_report(t: NearTruss, z: int) -> list[IdentityCheck]:
    """Identities of ``σ̌^z`` on any near-truss, plus cancellativity."""
    sc = sigma_check_table(t, z)
    tern, m = t.tern, t.mul.table
    ar = np.arange(t.n)
    checks = [
        check_identity("a·b = [σ̌^z_a(b), z, a·z]", m, tern[sc, z, m[:, z][:, None]]),
        check_identity("σ̌^z_a(z) = z", sc[:, z], np.full(t.n, z)),
    ]
    if t.unital:
        checks.append(check_identity("σ̌^z_1(a) = a", sc[t.unit], ar))
    checks += [
        check_identity(
            "σ̌^z_a([b,c,d]) = [σ̌^z_a(b), σ̌^z_a(c), σ̌^z_a(d)]",
            sc[:, tern],
            tern[sc[:, :, None, None], sc[:, None, :, None], sc[:, None, None, :]],
        ),
        check_identity("σ̌^z_a σ̌^z_b(c) = σ̌^z_{a·b}(c)", sc[:, sc], sc[m]),
        IdentityCheck.from_mask(
            "a left cancellative iff σ̌^z_a injective",
            rows_are_permutations(m) == rows_are_permutations(sc),
        ),
    ]
    if t.unital:
        invertible = (m == t.unit).any(axis=1) & (m == t.unit).any(axis=0)
        checks.append(
            IdentityCheck.from_mask(
                "a invertible ⇒ σ̌^z_a bijective",
                ~invertible | rows_are_permutations(sc),
            )
        )
    return checks


def ntl_naturality(
    t: NearTruss, s: NearTruss, f: Sequence[int] | np.ndarray, z: int
) -> IdentityCheck:
    """``f σ̌^z_a(b) = σ̌^{f(z)}_{f(a)} f(b)`` for a near-truss homomorphism ``f``."""
    failure = homomorphism_failure(t, s, f)
    if failure is not None:
        raise AxiomViolation(failure[0], failure[1], "ntl_naturality")
    f = np.asarray(f, dtype=np.int64)
    lhs = f[sigma_check_table(t, z)]
    rhs = sigma_check_table(s, int(f[z]))[f[:, None], f[None, :]]
    return check_identity("f σ̌^z_a(b) = σ̌^{f(z)}_{f(a)} f(b)", lhs, rhs)


def hatlambda_report(r: Retraction, z: int) -> list[IdentityCheck]:
    """Identities of ``η̌^z`` for a retraction."""
    eta, eta_inv = _eta_tables(r, z)
    tern, m = r.t.tern, r.t.mul.table
    gp = r.collapse
    n = r.t.n
    if gp[z] == z:
        fixed = check_identity("γπ(z) = z ⇒ η̌^z_a(z) = z", eta[:, z], np.full(n, z))
    else:
        fixed = IdentityCheck("γπ(z) = z ⇒ η̌^z_a(z) = z", True)
    return [
        fixed,
        check_identity("η̌^z_1(a) = γπ(a)", eta[r.t.unit], gp),
        check_identity(
            "η̌^z_a([b,c,d]) = [η̌^z_a(b), η̌^z_a(c), η̌^z_a(d)]",
            eta[:, tern],
            tern[eta[:, :, None, None], eta[:, None, :, None], eta[:, None, None, :]],
        ),
        check_identity("η̌^z_a η̌^z_b(c) = η̌^z_{a·b}(c)", eta[:, eta], eta[m]),
        check_identity(
            "η̌^z_a(b)·η̌^z_a(b)⁻¹ = 1", m[eta, eta_inv], np.full((n, n), r.t.unit)
        ),
    ]


def product_identity_check(r: Retraction, z: int) -> IdentityCheck:
    """The product identity ``T_1(a, b, c) = T_2(a, b, c)`` behind ``ř^z``.

    ``T_1 = η̌_{ab}(c)·η̌_X(Y)`` with ``X = η̌_{ab}(c)⁻¹·a·η̌_b(c)`` and
    ``Y = η̌_b(c)⁻¹·b·c``; ``T_2 = η̌_a(b)·η̌_W(c)`` with
    ``W = η̌_a(b)⁻¹·a·b``.

    """
    eta, eta_inv = _eta_tables(r, z)
    m = r.t.mul.table
    n = r.t.n
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    ab = m[:, :, None]
    x = m[m[eta_inv[ab, c], a], eta[b, c]]
    y = m[eta_inv[b, c], m[b, c]]
    lhs = m[eta[ab, c], eta[x, y]]
    w = m[eta_inv, m][:, :, None]
    rhs = m[eta[:, :, None], eta[w, c]]
    return check_identity("T_1(a,b,c) = T_2(a,b,c)", lhs, rhs)


def lemma_suites(r: Retraction, z: int) -> list[IdentityCheck]:
    """Every identity of the σ̌ and η̌ calculus on ``r.t``, for one ``z``."""
    naturality = ntl_naturality(r.t, truss_of_brace(r.b), r.pi, z)
    return [
        *ntl_report(r.t, z),
        naturality,
        *hatlambda_report(r, z),
        product_identity_check(r, z),
    ]


def left_nondegeneracy_criterion(r: Retraction, z: int) -> Biconditional:
    """``(every η̌^z_a injective, π bijective)``; the two always agree."""
    require_in_distributor(r.b, int(r.pi[z]), "left_nondegeneracy_criterion")
    eta = eta_table(r, z)
    injective = bool(rows_are_permutations(eta).all())
    bijective = np.unique(r.pi).size == r.t.n
    return Biconditional(injective, bool(bijective))


def right_distributivity_criterion(t: NearTruss) -> Biconditional:
    """``([b,c,d]·a = [ba,ca,da] ∀, [b,1,c]·a = [ba,a,ca] ∀)`` on a unital near-truss."""
    if not t.unital:
        raise UnsupportedStructure(
            "right_distributivity_criterion", "unital near-truss", "near-truss"
        )
    tern, m = t.tern, t.mul.table
    ar = np.arange(t.n)
    # indexed [b, c, d, a]
    full = m[tern[:, :, :, None], ar] == tern[
        m[:, None, None, :], m[None, :, None, :], m[None, None, :, :]
    ]
    # indexed [b, c, a]
    short = m[tern[:, t.unit, :][:, :, None], ar] == tern[m[:, None, :], ar, m[None, :, :]]
    return Biconditional(bool(full.all()), bool(short.all()))


def surjective_transfer(
    t: NearTruss, s: NearTruss, f: Sequence[int] | np.ndarray, z: int
) -> Implication:
    """Right distributivity at ``z`` passes to ``f(z)`` along a surjective ``f``."""
    failure = homomorphism_failure(t, s, f)
    if failure is not None:
        raise AxiomViolation(failure[0], failure[1], "surjective_transfer")
    f = np.asarray(f, dtype=np.int64)

    def distributes_at(u: NearTruss, y: int) -> bool:
        m = u.mul.table
        col = m[:, y]
        return bool(
            (m[u.tern, y] == u.tern[col[:, None, None], col[None, :, None], col[None, None, :]]).all()
        )

    surjective = np.unique(f).size == s.n
    return Implication(surjective and distributes_at(t, z), distributes_at(s, int(f[z])))
