from __future__ import annotations

import logging
from typing import NamedTuple

import numpy as np

from brace_solutions.lib.brace import (
    Level,
    WeakBrace,
    is_two_sided,
    right_distributivity_mask,
    second_component,
)
from brace_solutions.lib.core import (
    CarrierSubset,
    IdentityCheck,
    check_identity,
    first_witness,
    map_shards,
    regular_family_checks,
)
from brace_solutions.lib.solution import (
    PairMap,
    check_braid,
    completely_regular_pair,
    compose,
    identity_map,
    intertwines,
    properties,
    regularity_checks,
)
from brace_solutions.utils import PreconditionFailed, UnsupportedStructure

log = logging.getLogger(__name__)


def require_level(w: WeakBrace, level: Level, operation: str) -> None:
    if w.level < level:
        raise UnsupportedStructure(operation, str(level), str(w.level))


def distributor_mask(w: WeakBrace) -> np.ndarray:
    """``mask[z]`` is True when ``(a+b)∘z = a∘z - z + b∘z`` for all ``a, b``."""
    return right_distributivity_mask(w).all(axis=(0, 1))


def right_distributor(w: WeakBrace) -> CarrierSubset:
    """The right distributor ``D_r(S)`` of a dual weak brace.

    Parameters
    ----------
    w : WeakBrace
        A weak brace of level dual weak or higher.

    Returns
    -------
    frozenset of int
        Every ``z`` with ``(a+b)∘z = a∘z - z + b∘z`` for all ``a, b``.

    Examples
    --------
    >>> from brace_solutions.lib.brace import sandwich_units
    >>> sorted(right_distributor(sandwich_units(8)))
    [0, 1, 2, 3]

    """
    require_level(w, Level.DUAL_WEAK, "right_distributor")
    members = frozenset(int(z) for z in np.flatnonzero(distributor_mask(w)))
    log.debug("D_r of %s has %d of %d elements", w.name, len(members), w.n)
    return members


def require_in_distributor(w: WeakBrace, z: int, operation: str) -> None:
    witness = first_witness(right_distributivity_mask(w)[:, :, z])
    if witness is not None:
        raise PreconditionFailed(operation, f"z = {z} in D_r", witness)


class DConditions(NamedTuple):
    """The three equivalent forms of the distributor condition for one ``z``."""

    abcz: IdentityCheck
    d: IdentityCheck
    d_prime: IdentityCheck

    @property
    def agree(self) -> bool:
        return self.abcz.holds == self.d.holds == self.d_prime.holds


def check_D_equivalences(w: WeakBrace, z: int) -> DConditions:
    require_level(w, Level.DUAL_WEAK, "check_D_equivalences")
    a_, m_, neg, inv = w.add.table, w.mul.table, w.neg, w.inv
    ar = np.arange(w.n)
    mz = m_[:, z]

    a3, b3, c3 = ar[:, None, None], ar[None, :, None], ar[None, None, :]
    abcz = check_identity(
        "(a-b+c)∘z = a∘z - b∘z + c∘z",
        m_[a_[a_[a3, neg[b3]], c3], z],
        a_[a_[mz[a3], neg[mz[b3]]], mz[c3]],
    )
    d = IdentityCheck.from_mask(
        "(a+b)∘z = a∘z - z + b∘z", right_distributivity_mask(w)[:, :, z]
    )
    d_prime = check_identity(
        "(a+b)∘z = a∘z + (z^- + b)∘z",
        m_[a_, z],
        a_[mz[:, None], m_[a_[inv[z], ar], z][None, :]],
    )
    return DConditions(abcz, d, d_prime)


def sigma_table(w: WeakBrace, z: int) -> np.ndarray:
    """``out[a, b] = σ^z_a(b) = -a∘z + a∘b∘z``."""
    m_ = w.mul.table
    return w.add.table[w.neg[m_[:, z]][:, None], m_[m_, z]]


def deformed_solution(w: WeakBrace, z: int) -> PairMap:
    """The map ``r_z`` deformed by ``z``.

    The map is built for every ``z``; whether it is a solution is
    exactly the question of ``z`` lying in the right distributor.

    """
    require_level(w, Level.DUAL_WEAK, "deformed_solution")
    first = sigma_table(w, z)
    second = second_component(w.mul.table, w.inv, first)
    return PairMap.from_components(first, second, f"r_{w.label(z)}")


def sigma_check_table(w: WeakBrace, z: int) -> np.ndarray:
    """``out[a, b] = σ̌^z_a(b) = a∘b - a∘z + z``."""
    a_, m_ = w.add.table, w.mul.table
    return a_[a_[m_, w.neg[m_[:, z]][:, None]], z]


def r_check(w: WeakBrace, z: int) -> PairMap:
    """The map ``ř_z(a, b) = (a∘b - a∘z + z, (a∘b - a∘z + z)^- ∘ a∘b)``.

    Raises
    ------
    PreconditionFailed
        If ``z`` is not in the right distributor.

    """
    require_level(w, Level.DUAL_WEAK, "r_check")
    require_in_distributor(w, z, "r_check")
    first = sigma_check_table(w, z)
    second = second_component(w.mul.table, w.inv, first)
    return PairMap.from_components(first, second, f"ř_{w.label(z)}")


def deformed_check_solution(w: WeakBrace, z: int) -> PairMap:
    """The partner ``ř_{z^-}`` of ``r_z``, for ``z`` in the right distributor."""
    require_level(w, Level.DUAL_WEAK, "deformed_check_solution")
    require_in_distributor(w, z, "deformed_check_solution")
    return r_check(w, int(w.inv[z]))


class ZDeformation(NamedTuple):
    is_solution: bool
    r_z: PairMap
    check_partner: PairMap | None
    completely_regular: bool | None


class DeformationReport(NamedTuple):
    distributor: CarrierSubset
    per_z: dict[int, ZDeformation]
    theorem_holds: bool


def _deform_one(z: int, w: WeakBrace, distributor: CarrierSubset) -> ZDeformation:
    r = deformed_solution(w, z)
    is_solution = check_braid(r).holds
    if z not in distributor:
        return ZDeformation(is_solution, r, None, None)
    partner = deformed_check_solution(w, z)
    return ZDeformation(is_solution, r, partner, completely_regular_pair(r, partner))


def deformation_report(w: WeakBrace) -> DeformationReport:
    """Deform by every element and compare solution-hood with ``D_r``.

    The per-element work is computed as independent dask tasks with
    the scheduler named by ``braces.scheduler``.

    """
    distributor = right_distributor(w)
    results = map_shards(_deform_one, list(range(w.n)), w, distributor)
    per_z = dict(enumerate(results))
    theorem_holds = all(
        per_z[z].is_solution == (z in distributor) for z in range(w.n)
    )
    log.debug(
        "deformation report for %s: %d solutions, theorem holds: %s",
        w.name,
        sum(d.is_solution for d in results),
        theorem_holds,
    )
    return DeformationReport(distributor, per_z, theorem_holds)


def sigma_tau_report(w: WeakBrace, z: int) -> list[IdentityCheck]:
    """Identities satisfied by the components of ``r_z`` when ``z`` is in ``D_r``."""
    require_level(w, Level.DUAL_WEAK, "sigma_tau_report")
    require_in_distributor(w, z, "sigma_tau_report")
    a_, m_, inv = w.add.table, w.mul.table, w.inv
    ar = np.arange(w.n)
    r = deformed_solution(w, z)
    S, T = r.first, r.tau
    zz = m_[z, inv[z]]

    b3, c3, a3 = ar[:, None, None], ar[None, :, None], ar[None, None, :]
    abb = m_[m_, inv[None, :]]
    shifted = a_[m_[inv, inv[z]][:, None], ar[None, :]]
    ss = m_[ar, inv]
    return [
        check_identity("σ^z_a(b)∘τ^z_b(a) = a∘b∘z∘z^-", m_[S, r.second], m_[m_, zz]),
        check_identity("τ^z_{b∘c} = τ^z_c τ^z_b", T[m_[b3, c3], a3], T[c3, T[b3, a3]]),
        check_identity(
            "σ^z_a(b) = a∘b∘b^-∘(a^-∘z^- + b)∘z", S, m_[m_[abb, shifted], z]
        ),
        check_identity(
            "σ^z_a(b)∘σ^z_a(b)^- = a∘a^- + b∘b^- + z∘z^-",
            m_[S, inv[S]],
            a_[a_[ss[:, None], ss[None, :]], zz],
        ),
    ]


def regularity_report(w: WeakBrace, z: int) -> list[IdentityCheck]:
    """Complete regularity of ``r_z`` against ``ř_{z^-}`` and of its components."""
    r = deformed_solution(w, z)
    partner = deformed_check_solution(w, z)
    inv = w.inv
    zi = int(inv[z])
    S, Si = sigma_table(w, z), sigma_table(w, zi)
    T = r.tau
    return [
        *regularity_checks(r, partner),
        *regular_family_checks("σ^z_a", "σ^{z^-}_{a^-}", S, Si[inv]),
        *regular_family_checks("τ^z_a", "τ^z_{a^-}", T, T[inv]),
    ]


def star_report(w: WeakBrace, z: int) -> IdentityCheck:
    """``r_z(a, b) = (z^-∘λ_{z∘a}(b)∘z, z^-∘ρ_b(z∘a))`` on every pair."""
    require_level(w, Level.DUAL_WEAK, "star_report")
    require_in_distributor(w, z, "star_report")
    m_, inv = w.mul.table, w.inv
    L, R = w.lambda_table, w.rho_table
    ar = np.arange(w.n)
    za = m_[z, :]
    first = m_[m_[inv[z], L[za[:, None], ar[None, :]]], z]
    second = m_[inv[z], R[ar[None, :], za[:, None]]]
    r = deformed_solution(w, z)
    ok = (r.first == first) & (r.second == second)
    return IdentityCheck.from_mask("(★) rewriting of r_z", ok)


def inverse_pairing_report(b: WeakBrace, z: int) -> list[IdentityCheck]:
    """On a skew brace, ``ř_z`` and ``r_{z^-}`` are mutually inverse.

    Also checks that ``ř_z`` is bijective and non-degenerate, and the
    closed forms of the inverses of the components of ``r_{z^-}``.

    """
    require_level(b, Level.SKEW, "inverse_pairing_report")
    require_in_distributor(b, z, "inverse_pairing_report")
    inv = b.inv
    n = b.n
    ar = np.arange(n)
    rows = ar[:, None]
    zi = int(inv[z])
    check = r_check(b, z)
    r_inv = deformed_solution(b, zi)
    one = identity_map(n)
    props = properties(check)

    def maps_equal(name: str, lhs: PairMap, rhs: PairMap) -> IdentityCheck:
        ok = (lhs.first == rhs.first) & (lhs.second == rhs.second)
        return IdentityCheck.from_mask(name, ok)

    S, Si = sigma_table(b, z), sigma_table(b, zi)
    Ti = r_inv.tau
    check_zi = r_check(b, zi)
    return [
        maps_equal("ř_z r_{z^-} = id", compose(check, r_inv), one),
        maps_equal("r_{z^-} ř_z = id", compose(r_inv, check), one),
        IdentityCheck("ř_z bijective", props.bijective),
        IdentityCheck("ř_z left non-degenerate", props.left_nondeg),
        IdentityCheck("ř_z right non-degenerate", props.right_nondeg),
        check_identity(
            "σ^{z^-}_a σ^z_{a^-} = id", Si[rows, S[inv]], np.broadcast_to(ar, (n, n))
        ),
        check_identity(
            "σ^z_{a^-}(b) = (τ̌^z_a(b^-))^-", S[inv], inv[check.tau[rows, inv[None, :]]]
        ),
        check_identity(
            "τ^{z^-}_b τ^{z^-}_{b^-} = id", Ti[rows, Ti[inv]], np.broadcast_to(ar, (n, n))
        ),
        check_identity(
            "τ^{z^-}_{b^-}(a) = (σ̌^{z^-}_b(a^-))^-",
            Ti[inv],
            inv[check_zi.sigma[rows, inv[None, :]]],
        ),
    ]


class SigmaHom(NamedTuple):
    is_hom: bool
    commutation: bool


def sigma_hom_criterion(w: WeakBrace, z: int) -> SigmaHom:
    """Whether ``a ↦ σ^z_a`` is a homomorphism, and whether ``a∘z = z + a``.

    The two flags agree on every dual weak brace.

    """
    require_level(w, Level.DUAL_WEAK, "sigma_hom_criterion")
    S = sigma_table(w, z)
    m_ = w.mul.table
    is_hom = bool((S[m_] == S[:, S]).all())
    commutation = bool((m_[:, z] == w.add.table[z, :]).all())
    return SigmaHom(is_hom, commutation)


def conjugacy_equivalence(w: WeakBrace, z: int, v: int) -> tuple[int, ...] | None:
    """Equivalence of ``r_z`` and ``r_v`` by an inner map ``a ↦ c^-∘a∘c``.

    For every ``c`` with ``v = c^-∘z∘c``, in ascending order, the map
    is tried: it must be bijective (automatic on a skew brace) and
    must intertwine the two deformed solutions. The first such map is
    returned, None if there is none.

    Raises
    ------
    UnsupportedStructure
        If the weak brace is not two-sided.

    """
    require_level(w, Level.DUAL_WEAK, "conjugacy_equivalence")
    if not is_two_sided(w):
        raise UnsupportedStructure("conjugacy_equivalence", "two-sided", "one-sided")
    m_, inv = w.mul.table, w.inv
    ar = np.arange(w.n)
    conjugated = m_[m_[inv, z], ar]
    rz, rv = deformed_solution(w, z), deformed_solution(w, v)
    for c in np.flatnonzero(conjugated == v):
        phi = m_[m_[inv[c], ar], c]
        if np.unique(phi).size != w.n:
            log.debug("inner map by %d is not bijective, skipped", c)
            continue
        if intertwines(phi, rz, rv):
            return tuple(int(x) for x in phi)
        log.debug("inner map by %d does not intertwine r_%d and r_%d", c, z, v)
    return None
