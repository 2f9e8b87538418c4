from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from enum import IntEnum
from functools import cached_property
from typing import Any

import numpy as np

from brace_solutions.lib.core import (
    CarrierSubset,
    IdentityCheck,
    check_identity,
    first_witness,
    regular_family_checks,
    require,
    subset_mask,
)
from brace_solutions.lib.semigroup import (
    CayleyTable,
    associativity_witness,
    build_strong_semilattice,
    clifford_witness,
    cyclic_group,
    direct_product as direct_product_table,
    inverse_array,
    inverse_witness,
    units_mod,
)
from brace_solutions.utils import AxiomViolation, MalformedInput

log = logging.getLogger(__name__)


class Level(IntEnum):
    """How much group structure a weak brace carries.

    The levels are totally ordered: every brace is a skew brace, every
    skew brace is a dual weak brace and every dual weak brace is a
    weak brace.

    """

    WEAK = 0
    DUAL_WEAK = 1
    SKEW = 2
    BRACE = 3

    @classmethod
    def parse(cls, value: Level | str) -> Level:
        if isinstance(value, Level):
            return value
        try:
            return cls[str(value).upper().replace("-", "_")]
        except KeyError:
            raise MalformedInput(
                f"unknown level {value!r}; expected one of "
                f"{[str(x) for x in cls]}"
            ) from None

    def __str__(self) -> str:
        return self.name.lower()


class WeakBrace:
    """A verified weak brace ``(S, +, ∘)`` on the carrier {0, ..., n-1}.

    The class constructor is not intended for users; values are made
    by :func:`verify_weak_brace` or one of the builders, so that every
    instance has passed the axioms exhaustively.

    """

    def __init__(
        self,
        add: CayleyTable,
        mul: CayleyTable,
        level: Level,
        name: str | None = None,
    ) -> None:
        self._add = add
        self._mul = mul
        self._level = level
        self.name = name

    def __repr__(self) -> str:
        name = f"{self.name!r}, " if self.name else ""
        return f"WeakBrace({name}n={self.n}, level={self.level})"

    @property
    def n(self) -> int:
        return self._add.n

    @property
    def add(self) -> CayleyTable:
        return self._add

    @property
    def mul(self) -> CayleyTable:
        return self._mul

    @property
    def level(self) -> Level:
        return self._level

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._mul.labels or self._add.labels

    def label(self, a: int) -> str:
        return str(a) if self.labels is None else self.labels[a]

    @cached_property
    def neg(self) -> np.ndarray:
        """``neg[a]`` is the additive inverse ``-a``."""
        return inverse_array(self._add)

    @cached_property
    def inv(self) -> np.ndarray:
        """``inv[a]`` is the multiplicative inverse ``a^-``."""
        return inverse_array(self._mul)

    @cached_property
    def idem(self) -> CarrierSubset:
        return self._mul.profile.idempotents

    @property
    def identity(self) -> int | None:
        """Common identity of ``+`` and ``∘``; None below skew level."""
        if self._level < Level.SKEW:
            return None
        return self._mul.profile.monoid_identity

    @cached_property
    def lambda_table(self) -> np.ndarray:
        """``lambda_table[a, b] = λ_a(b) = -a + a∘b``."""
        return self._add.table[self.neg[:, None], self._mul.table]

    @cached_property
    def rho_table(self) -> np.ndarray:
        """``rho_table[b, a] = ρ_b(a) = λ_a(b)^- ∘ a ∘ b``."""
        return second_component(self._mul.table, self.inv, self.lambda_table).T

    @cached_property
    def lambda_op_table(self) -> np.ndarray:
        """``lambda_op_table[a, b] = λ^op_a(b) = a∘b - a``."""
        return self._add.table[self._mul.table, self.neg[:, None]]

    @cached_property
    def rho_op_table(self) -> np.ndarray:
        """``rho_op_table[b, a] = ρ^op_b(a) = λ^op_a(b)^- ∘ a ∘ b``."""
        return second_component(self._mul.table, self.inv, self.lambda_op_table).T

    def plus(self, a: int, b: int) -> int:
        return self._add(a, b)

    def circ(self, a: int, b: int) -> int:
        return self._mul(a, b)


def second_component(mul: np.ndarray, inv: np.ndarray, first: np.ndarray) -> np.ndarray:
    """``out[a, b] = first[a, b]^- ∘ a ∘ b``."""
    ar = np.arange(mul.shape[0])
    return mul[mul[inv[first], ar[:, None]], ar[None, :]]


def lambda_(w: WeakBrace, a: int, b: int) -> int:
    return int(w.lambda_table[a, b])


def rho(w: WeakBrace, b: int, a: int) -> int:
    return int(w.rho_table[b, a])


def lambda_op(w: WeakBrace, a: int, b: int) -> int:
    return int(w.lambda_op_table[a, b])


def rho_op(w: WeakBrace, b: int, a: int) -> int:
    return int(w.rho_op_table[b, a])


def _as_table(t: CayleyTable | Any) -> CayleyTable:
    return t if isinstance(t, CayleyTable) else CayleyTable(t)


def _require_inverse_semigroup(t: CayleyTable, symbol: str, name: str | None) -> None:
    witness = associativity_witness(t)
    if witness is not None:
        raise AxiomViolation(f"(S,{symbol}) associative", witness, name)
    witness = inverse_witness(t)
    if witness is not None:
        raise AxiomViolation(f"(S,{symbol}) inverse semigroup", witness, name)


def verify_weak_brace(
    add: CayleyTable | Any,
    mul: CayleyTable | Any,
    required_level: Level | str = Level.WEAK,
    name: str | None = None,
) -> WeakBrace:
    """Verify the weak brace axioms exhaustively.

    Parameters
    ----------
    add : CayleyTable
        The operation ``+``.
    mul : CayleyTable
        The operation ``∘``.
    required_level : Level or str
        The least level the structure must reach.
    name : str, optional
        Name carried by the result and used in error messages.

    Returns
    -------
    WeakBrace
        The structure, tagged with the highest level it attains.

    Raises
    ------
    AxiomViolation
        Naming the first failing axiom and its lexicographically
        smallest witness.

    """
    add, mul = _as_table(add), _as_table(mul)
    required_level = Level.parse(required_level)
    if add.n != mul.n:
        raise MalformedInput(
            f"operations on carriers of different sizes ({add.n} and {mul.n})"
        )
    n = add.n
    ar = np.arange(n)

    _require_inverse_semigroup(add, "+", name)
    _require_inverse_semigroup(mul, "∘", name)
    witness = clifford_witness(add)
    if witness is not None:
        raise AxiomViolation("(S,+) Clifford", witness, name)

    a_, m_ = add.table, mul.table
    neg, inv = inverse_array(add), inverse_array(mul)
    lhs = m_[:, a_]
    rhs = a_[a_[m_[:, :, None], neg[:, None, None]], m_[:, None, :]]
    require(check_identity("a∘(b+c) = a∘b - a + a∘c", lhs, rhs), name)
    require(check_identity("a∘a^- = -a + a", m_[ar, inv], a_[neg, ar]), name)
    require(
        IdentityCheck.from_mask(
            "E(S,+) = E(S,∘)", (a_[ar, ar] == ar) == (m_[ar, ar] == ar)
        ),
        name,
    )

    level = Level.WEAK
    if mul.profile.clifford:
        level = Level.DUAL_WEAK
        if add.profile.group and mul.profile.group:
            level = Level.SKEW
            if add.profile.commutative:
                level = Level.BRACE

    if level < required_level:
        raise AxiomViolation(
            f"level {required_level}", _level_witness(add, mul, level), name
        )
    log.debug("verified %s of order %d at level %s", name or "weak brace", n, level)
    return WeakBrace(add, mul, level, name)


def _level_witness(add: CayleyTable, mul: CayleyTable, level: Level) -> Any:
    if level == Level.WEAK:
        return clifford_witness(mul)
    if level == Level.SKEW:
        return first_witness(add.table == add.table.T)
    return None


def is_two_sided(w: WeakBrace) -> bool:
    """Whether ``(a+b)∘c = a∘c - c + b∘c`` for all ``a, b, c``."""
    return bool(right_distributivity_mask(w).all())


def right_distributivity_mask(w: WeakBrace) -> np.ndarray:
    """``mask[a, b, z]`` is True when ``(a+b)∘z = a∘z - z + b∘z``."""
    a_, m_, neg = w.add.table, w.mul.table, w.neg
    lhs = m_[a_]
    rhs = a_[a_[m_[:, None, :], neg[None, None, :]], m_[None, :, :]]
    return lhs == rhs


def lemma_report(w: WeakBrace) -> list[IdentityCheck]:
    """Check the standard identities relating ``+``, ``∘``, λ and ρ.

    The first block holds in every weak brace; the regularity
    identities of λ and ρ are included for dual weak braces only.

    """
    a_, m_ = w.add.table, w.mul.table
    neg, inv = w.neg, w.inv
    L, R = w.lambda_table, w.rho_table
    n = w.n
    ar = np.arange(n)
    col = ar[:, None]
    idem = subset_mask(n, w.idem)

    checks = [
        check_identity("a∘b = a + λ_a(b)", m_, a_[col, L]),
        check_identity("a + b = a∘λ_{a^-}(b)", a_, m_[col, L[inv]]),
        check_identity("λ_a(b) = a∘b∘ρ_b(a)^-", L, m_[m_, inv[R.T]]),
        check_identity(
            "a∘(-b) = a - a∘b + a", m_[:, neg], a_[a_[col, neg[m_]], col]
        ),
        check_identity("λ_a(b)∘ρ_b(a) = a∘b", m_[L, R.T], m_),
        check_identity("λ_{a∘b} = λ_a λ_b", L[m_], L[:, L]),
        check_identity("ρ_{a∘b} = ρ_b ρ_a", R[m_], np.swapaxes(R[:, R], 0, 1)),
        IdentityCheck.from_mask(
            "E(S,+) = E(S,∘)", (a_[ar, ar] == ar) == (m_[ar, ar] == ar)
        ),
        IdentityCheck.from_mask(
            "e + a = e∘a = λ_e(a)",
            ((a_ == m_) & (m_ == L)) | ~idem[:, None],
        ),
        check_identity(
            "λ^op_a(b) = ρ_{a^-}(b^-)^-",
            w.lambda_op_table,
            inv[R[inv[:, None], inv[None, :]]],
        ),
        check_identity(
            "ρ^op_b(a) = λ_{b^-}(a^-)^-",
            w.rho_op_table,
            inv[L[inv[:, None], inv[None, :]]],
        ),
    ]
    if w.level >= Level.DUAL_WEAK:
        checks += regular_family_checks("λ_a", "λ_{a^-}", L, L[inv])
        checks += regular_family_checks("ρ_a", "ρ_{a^-}", R, R[inv])
    failed = [c.name for c in checks if not c.holds]
    if failed:
        log.debug("lemma report for %s: failing %s", w.name, failed)
    return checks


def opposite(w: WeakBrace) -> WeakBrace:
    """The opposite weak brace ``(S, +^op, ∘)`` with ``a +^op b = b + a``."""
    add = CayleyTable(w.add.table.T, w.add.labels)
    name = f"{w.name}^op" if w.name else None
    return verify_weak_brace(add, w.mul, w.level, name)


def trivial(t: CayleyTable) -> WeakBrace:
    """The trivial weak brace ``a + b := a∘b`` on a Clifford semigroup."""
    return verify_weak_brace(t, t, Level.DUAL_WEAK, "trivial")


def almost_trivial(t: CayleyTable) -> WeakBrace:
    """The almost trivial weak brace ``a + b := b∘a`` on a Clifford semigroup."""
    add = CayleyTable(t.table.T, t.labels)
    return verify_weak_brace(add, t, Level.DUAL_WEAK, "almost_trivial")


def _parity_twist(n: int) -> np.ndarray:
    """``out[k, l] = k + (-1)^k l mod n``."""
    if n < 2 or n % 2:
        raise ValueError(f"the carrier size must be even and positive, got {n}")
    ar = np.arange(n)
    sign = np.where(ar % 2, -1, 1)
    return (ar[:, None] + sign[:, None] * ar[None, :]) % n


def rump_mod(n: int) -> WeakBrace:
    """The brace on Z/nZ with ``a∘b = a + (-1)^a b``, n even."""
    mul = CayleyTable(_parity_twist(n))
    return verify_weak_brace(cyclic_group(n), mul, Level.BRACE, f"rump_mod({n})")


def rump_circle(m: int) -> WeakBrace:
    """The skew brace on the cyclic group (Z/mZ, ∘) with ``k + l = k + (-1)^k l``."""
    add = CayleyTable(_parity_twist(m))
    return verify_weak_brace(add, cyclic_group(m), Level.SKEW, f"rump_circle({m})")


def sandwich_units(m: int) -> WeakBrace:
    """The brace ``(U(Z/mZ), +_1, ·)`` with ``a +_1 b = a - 1 + b``.

    Units are indexed ascending. The units must be closed under
    ``a - 1 + b``; this holds for ``m = 2^k`` and is checked for any
    other modulus.

    """
    mul = units_mod(m)
    units = np.array([int(x) for x in mul.labels], dtype=np.int64)
    total = (units[:, None] - 1 + units[None, :]) % m
    is_unit = np.isin(total, units)
    witness = first_witness(is_unit)
    if witness is not None:
        raise AxiomViolation(
            "closure of units under a - 1 + b", witness, f"sandwich_units({m})"
        )
    add = CayleyTable(np.searchsorted(units, total), mul.labels)
    return verify_weak_brace(add, mul, Level.BRACE, f"sandwich_units({m})")


def direct_product(w1: WeakBrace, w2: WeakBrace) -> WeakBrace:
    """Componentwise product; ``(i, j)`` has index ``i*n2 + j``."""
    add = direct_product_table(w1.add, w2.add)
    mul = direct_product_table(w1.mul, w2.mul)
    labels = [f"({w1.label(i)},{w2.label(j)})" for i in range(w1.n) for j in range(w2.n)]
    add, mul = add.relabel(labels), mul.relabel(labels)
    level = min(w1.level, w2.level)
    name = f"{w1.name or 'W1'} x {w2.name or 'W2'}"
    return verify_weak_brace(add, mul, level, name)


def semilattice_of_braces(
    y_order: Any,
    braces: Sequence[WeakBrace],
    homs: Mapping[tuple[int, int], Sequence[int]],
    name: str = "semilattice_of_braces",
) -> WeakBrace:
    """Strong semilattice of skew braces along brace homomorphisms.

    Both operations are assembled with
    :func:`~brace_solutions.lib.semigroup.build_strong_semilattice`
    from the same structure maps, so every map is checked to be a
    homomorphism of ``+`` and of ``∘``.

    """
    for i, b in enumerate(braces):
        if b.level < Level.SKEW:
            raise AxiomViolation("skew brace component", (i,), "semilattice of braces")
    add = build_strong_semilattice(y_order, [b.add for b in braces], homs)
    mul = build_strong_semilattice(y_order, [b.mul for b in braces], homs)
    return verify_weak_brace(add, mul, Level.DUAL_WEAK, name)


def units_chain(k: int) -> WeakBrace:
    """The chain of sandwich braces ``U(Z/2^i Z)`` for ``i = k, ..., 1``.

    The semilattice is the chain ``0 > 1 > ... > k-1``; component
    ``t`` is the brace on the units mod ``2^(k-t)`` and the structure
    maps are reductions modulo the smaller power of two.

    """
    if k < 1:
        raise ValueError(f"units_chain needs k >= 1, got {k}")
    moduli = [2 ** (k - t) for t in range(k)]
    braces = [sandwich_units(m) for m in moduli]
    ar = np.arange(k)
    meet = np.maximum(ar[:, None], ar[None, :])
    homs: dict[tuple[int, int], list[int]] = {}
    for alpha in range(k):
        source = [int(x) for x in braces[alpha].mul.labels]
        for beta in range(alpha + 1, k):
            target = [int(x) for x in braces[beta].mul.labels]
            homs[(alpha, beta)] = [target.index(u % moduli[beta]) for u in source]
    return semilattice_of_braces(meet, braces, homs, name=f"units_chain({k})")


def build_brace(kind: str, *args: Any, **kwargs: Any) -> WeakBrace:
    """Build one of the supported weak braces by name."""
    try:
        builder = _BRACE_BUILDERS[kind]
    except KeyError:
        raise ValueError(
            f"unknown brace kind {kind!r}; expected one of {sorted(_BRACE_BUILDERS)}"
        ) from None
    return builder(*args, **kwargs)


_BRACE_BUILDERS = {
    "trivial": trivial,
    "almost_trivial": almost_trivial,
    "rump_mod": rump_mod,
    "rump_circle": rump_circle,
    "sandwich_units": sandwich_units,
    "direct_product": direct_product,
    "semilattice_of_braces": semilattice_of_braces,
    "units_chain": units_chain,
}
