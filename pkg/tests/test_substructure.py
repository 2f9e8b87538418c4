from __future__ import annotations

import pytest

import brace_solutions.lib.substructure as ss
import brace_solutions.lib.testutils as bstu
from brace_solutions.lib.brace import Level, WeakBrace
from brace_solutions.lib.deform import right_distributor
from brace_solutions.lib.io.registry import builtin
from brace_solutions.utils import UnsupportedStructure


def test_b6_subsets(b6: WeakBrace) -> None:
    assert ss.center_circ(b6) == frozenset({0})
    assert ss.fix_set(b6) == frozenset({0, 3})
    assert ss.socle(b6) == frozenset({0, 2, 4})
    assert ss.annihilator(b6) == frozenset({0})


def test_skew_only(clifford3: WeakBrace) -> None:
    assert ss.center_circ(clifford3) == frozenset({0, 1, 2})
    for func in (ss.fix_set, ss.socle, ss.annihilator):
        with pytest.raises(UnsupportedStructure):
            func(clifford3)
    with pytest.raises(UnsupportedStructure):
        ss.is_ideal(clifford3, {0})


@pytest.mark.parametrize(
    "subset,ideal",
    [
        ({0}, True),
        ({0, 3}, False),
        ({0, 2, 4}, True),
        (set(range(6)), True),
        ({1}, False),
    ],
)
def test_ideals(b6: WeakBrace, subset: set[int], ideal: bool) -> None:
    assert ss.is_ideal(b6, subset) is ideal
    assert ss.ideal_via_cosets(b6, subset) is ideal


@pytest.mark.parametrize("subset", [{0}, {0, 3}, {0, 2, 4}, set(range(6)), {1, 2}])
def test_ideal_sufficient_condition(b6: WeakBrace, subset: set[int]) -> None:
    assert ss.ideal_sufficient_condition(b6, subset).holds


def test_lambda_op_equivalence(b6: WeakBrace) -> None:
    for subset in ({0, 3}, {0, 2, 4}, {0}):
        check = ss.lambda_op_equivalence(b6, subset)
        assert check is not None
        bstu.assert_identity(check)
    assert ss.lambda_op_equivalence(b6, {1}) is None


def test_lambda_invariance(b6: WeakBrace) -> None:
    assert ss.lambda_invariance(b6, {0, 3})
    assert not ss.lambda_invariance(b6, {1})
    assert ss.lambda_invariance(b6, {1}, by={0, 2, 4})


def test_distributor_structure_b6(b6: WeakBrace) -> None:
    report = ss.distributor_structure(b6)
    assert report.distributor == frozenset({0, 3})
    assert report.full_inverse_subsemigroup
    assert report.contains_center
    assert report.additive_commutative
    assert report.add_closed and report.neg_closed
    assert report.two_sided_subbrace
    assert report.lambda_invariant
    assert report.holds


def test_distributor_structure_non_commutative(trivial_s3: WeakBrace) -> None:
    report = ss.distributor_structure(trivial_s3)
    assert not report.additive_commutative
    assert report.two_sided_subbrace is None
    assert report.holds


@pytest.mark.parametrize("name", bstu.DUAL_WEAK_BUILTINS)
def test_distributor_structure_holds(name: str) -> None:
    assert ss.distributor_structure(builtin(name)).holds


@pytest.mark.parametrize("name", bstu.DUAL_WEAK_BUILTINS)
def test_distributor_contains(name: str) -> None:
    w = builtin(name)
    distributor = right_distributor(w)
    assert w.idem <= distributor
    assert ss.center_circ(w) <= distributor
    if w.level >= Level.SKEW:
        assert ss.fix_set(w) <= distributor
        assert ss.annihilator(w) <= distributor


def test_product_distributor_ideal() -> None:
    w = builtin("u8-x-b6")
    d_r = right_distributor(w)
    # {0, 3} is not normal in (B6, ∘): 1∘{0, 3} = {1, 4} but {0, 3}∘1 = {1, 2}
    assert not ss.is_ideal(w, d_r)
    assert not ss.ideal_via_cosets(w, d_r)
    u8_x_zero = {bstu.product_index(i, 0, 6) for i in range(4)}
    assert ss.is_ideal(w, u8_x_zero)
    assert ss.ideal_via_cosets(w, u8_x_zero)


def test_ideal_verdicts_agree() -> None:
    w = builtin("u8-x-b6")
    subsets = [
        {bstu.product_index(i, j, 6) for i in range(4) for j in js}
        for js in ([0], [0, 3], [0, 2, 4], range(6))
    ]
    subsets += [{bstu.product_index(0, j, 6) for j in js} for js in ([0], [0, 2, 4], [0, 3])]
    for subset in subsets:
        assert ss.is_ideal(w, subset) == ss.ideal_via_cosets(w, subset), sorted(subset)
