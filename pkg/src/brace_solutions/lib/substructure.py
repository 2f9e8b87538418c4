"""Subsets of a weak brace that interact with the right distributor.

Fix, Soc and Ann are defined for skew braces only and refuse
structures of a lower level; the center of ``(S, ∘)`` is defined for
every level.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from typing import NamedTuple

import numpy as np

from brace_solutions.lib.brace import Level, WeakBrace, is_two_sided, verify_weak_brace
from brace_solutions.lib.core import (
    CarrierSubset,
    IdentityCheck,
    Implication,
    subset_mask,
)
from brace_solutions.lib.deform import require_level, right_distributor
from brace_solutions.lib.semigroup import restrict
from brace_solutions.utils import as_index_list

log = logging.getLogger(__name__)


def _members(mask: np.ndarray) -> CarrierSubset:
    return frozenset(int(a) for a in np.flatnonzero(mask))


def center_circ(w: WeakBrace) -> CarrierSubset:
    """The center ``ζ(S, ∘)``."""
    return w.mul.profile.center


def fix_set(b: WeakBrace) -> CarrierSubset:
    """``Fix(B) = {a : λ_x(a) = a for every x}``."""
    require_level(b, Level.SKEW, "fix_set")
    return _members((b.lambda_table == np.arange(b.n)[None, :]).all(axis=0))


def socle(b: WeakBrace) -> CarrierSubset:
    """``Soc(B) = {a : a + x = a∘x and a + x = x + a for every x}``."""
    require_level(b, Level.SKEW, "socle")
    add = b.add.table
    return _members(((add == b.mul.table) & (add == add.T)).all(axis=1))


def annihilator(b: WeakBrace) -> CarrierSubset:
    """``Ann(B) = Soc(B) ∩ ζ(B, ∘)``."""
    require_level(b, Level.SKEW, "annihilator")
    return socle(b) & center_circ(b)


def _closed(table: np.ndarray, mask: np.ndarray) -> bool:
    return bool(mask[table[np.ix_(mask, mask)]].all())


def _is_subgroup(table: np.ndarray, inverse: np.ndarray, mask: np.ndarray) -> bool:
    return bool(mask.any() and _closed(table, mask) and mask[inverse[mask]].all())


def _is_normal(table: np.ndarray, inverse: np.ndarray, mask: np.ndarray) -> bool:
    """Whether ``a·i·a⁻¹`` stays in the subset for every ``a`` and member ``i``."""
    ar = np.arange(table.shape[0])
    members = np.flatnonzero(mask)
    conj = table[table[ar[:, None], members[None, :]], inverse[:, None]]
    return bool(mask[conj].all())


def _invariant(action: np.ndarray, mask: np.ndarray, by: np.ndarray | None = None) -> bool:
    rows = action if by is None else action[by]
    return bool(mask[rows[:, mask]].all())


def lambda_invariance(
    w: WeakBrace, subset: Iterable[int], by: Iterable[int] | None = None
) -> bool:
    """Whether ``λ_a(i)`` lies in ``subset`` for every member ``i``.

    ``a`` ranges over the whole carrier, or over ``by`` when given.

    """
    mask = subset_mask(w.n, subset)
    by_mask = None if by is None else subset_mask(w.n, by)
    return _invariant(w.lambda_table, mask, by_mask)


def is_ideal(b: WeakBrace, subset: Iterable[int]) -> bool:
    """Normal subgroup of ``(B, +)`` and of ``(B, ∘)``, and λ-invariant."""
    require_level(b, Level.SKEW, "is_ideal")
    mask = subset_mask(b.n, subset)
    add, mul = b.add.table, b.mul.table
    return (
        _is_subgroup(add, b.neg, mask)
        and _is_normal(add, b.neg, mask)
        and _is_subgroup(mul, b.inv, mask)
        and _is_normal(mul, b.inv, mask)
        and _invariant(b.lambda_table, mask)
    )


def _coset_rows(table: np.ndarray, mask: np.ndarray, left: bool) -> np.ndarray:
    """Sorted rows of the cosets ``a·I`` (or ``I·a``) for every ``a``."""
    members = np.flatnonzero(mask)
    if left:
        cosets = table[:, members]
    else:
        cosets = table[members, :].T
    return np.sort(cosets, axis=1)


def ideal_via_cosets(b: WeakBrace, subset: Iterable[int]) -> bool:
    """``(I, +)`` is a normal subgroup and ``a∘I = a + I = I∘a`` for every ``a``."""
    require_level(b, Level.SKEW, "ideal_via_cosets")
    mask = subset_mask(b.n, subset)
    add, mul = b.add.table, b.mul.table
    if not (_is_subgroup(add, b.neg, mask) and _is_normal(add, b.neg, mask)):
        return False
    plus = _coset_rows(add, mask, left=True)
    return bool(
        np.array_equal(_coset_rows(mul, mask, left=True), plus)
        and np.array_equal(_coset_rows(mul, mask, left=False), plus)
    )


def ideal_sufficient_condition(b: WeakBrace, subset: Iterable[int]) -> Implication:
    """A λ- and λ^op-invariant normal subgroup of ``(B, ∘)`` is normal in ``(B, +)``."""
    require_level(b, Level.SKEW, "ideal_sufficient_condition")
    mask = subset_mask(b.n, subset)
    mul, add = b.mul.table, b.add.table
    hypothesis = (
        _is_subgroup(mul, b.inv, mask)
        and _is_normal(mul, b.inv, mask)
        and _invariant(b.lambda_table, mask)
        and _invariant(b.lambda_op_table, mask)
    )
    conclusion = _is_subgroup(add, b.neg, mask) and _is_normal(add, b.neg, mask)
    return Implication(hypothesis, conclusion)


def lambda_op_equivalence(b: WeakBrace, subset: Iterable[int]) -> IdentityCheck | None:
    """For ``(I, +)`` normal in ``(B, +)``: ``λ^op_a(i) ∈ I`` iff ``λ_a(i) ∈ I``.

    Returns None when the subset is not a normal additive subgroup.

    """
    require_level(b, Level.SKEW, "lambda_op_equivalence")
    mask = subset_mask(b.n, subset)
    if not (_is_subgroup(b.add.table, b.neg, mask) and _is_normal(b.add.table, b.neg, mask)):
        return None
    members = np.flatnonzero(mask)
    ok = mask[b.lambda_op_table[:, members]] == mask[b.lambda_table[:, members]]
    return IdentityCheck.from_mask("λ^op_a(i) ∈ I iff λ_a(i) ∈ I", ok)


class DistributorStructure(NamedTuple):
    distributor: CarrierSubset
    circ_closed: bool
    inverse_closed: bool
    contains_idempotents: bool
    contains_center: bool
    additive_commutative: bool
    add_closed: bool
    neg_closed: bool
    two_sided_subbrace: bool | None
    lambda_invariant: bool

    @property
    def full_inverse_subsemigroup(self) -> bool:
        return self.circ_closed and self.inverse_closed and self.contains_idempotents

    @property
    def holds(self) -> bool:
        """The closure statements that must hold for this structure."""
        ok = self.full_inverse_subsemigroup and self.contains_center
        if self.additive_commutative:
            ok = ok and self.add_closed and self.neg_closed and bool(self.two_sided_subbrace)
        if self.lambda_invariant:
            ok = ok and self.add_closed and self.neg_closed
        return ok


def distributor_structure(w: WeakBrace) -> DistributorStructure:
    """Closure properties of ``D_r(S)`` inside ``(S, ∘)`` and ``(S, +)``.

    When ``(S, +)`` is commutative the restriction of both operations
    to ``D_r(S)`` is re-verified as a two-sided dual weak brace.

    """
    distributor = right_distributor(w)
    mask = subset_mask(w.n, distributor)
    add, mul = w.add.table, w.mul.table
    add_closed = _closed(add, mask)
    neg_closed = bool(mask[w.neg[mask]].all())
    commutative = w.add.profile.commutative

    two_sided: bool | None = None
    if commutative and add_closed and neg_closed:
        members = as_index_list(distributor)
        sub = verify_weak_brace(
            restrict(w.add, members),
            restrict(w.mul, members),
            Level.DUAL_WEAK,
            f"D_r({w.name})",
        )
        two_sided = is_two_sided(sub)
    elif commutative:
        two_sided = False

    report = DistributorStructure(
        distributor=distributor,
        circ_closed=_closed(mul, mask),
        inverse_closed=bool(mask[w.inv[mask]].all()),
        contains_idempotents=w.idem <= distributor,
        contains_center=center_circ(w) <= distributor,
        additive_commutative=commutative,
        add_closed=add_closed,
        neg_closed=neg_closed,
        two_sided_subbrace=two_sided,
        lambda_invariant=_invariant(w.lambda_table, mask, mask),
    )
    log.debug("distributor structure of %s: %s", w.name, report)
    return report
