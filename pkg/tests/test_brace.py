from __future__ import annotations

import numpy as np
import pytest

import brace_solutions.lib.brace as br
import brace_solutions.lib.semigroup as sg
import brace_solutions.lib.testutils as bstu
from brace_solutions.lib.io.registry import builtin
from brace_solutions.utils import AxiomViolation, MalformedInput


@pytest.mark.parametrize(
    "value,expected",
    [
        ("weak", br.Level.WEAK),
        ("dual_weak", br.Level.DUAL_WEAK),
        ("dual-weak", br.Level.DUAL_WEAK),
        ("SKEW", br.Level.SKEW),
        (br.Level.BRACE, br.Level.BRACE),
    ],
)
def test_level_parse(value, expected) -> None:
    assert br.Level.parse(value) is expected


def test_level_order_and_str() -> None:
    assert br.Level.WEAK < br.Level.DUAL_WEAK < br.Level.SKEW < br.Level.BRACE
    assert str(br.Level.DUAL_WEAK) == "dual_weak"
    with pytest.raises(MalformedInput, match="unknown level"):
        br.Level.parse("ring")


def test_rump_mod(b6: br.WeakBrace) -> None:
    assert b6.n == 6
    assert b6.level is br.Level.BRACE
    assert b6.identity == 0
    # 1∘2 = 1 - 2
    assert b6.circ(1, 2) == 5
    assert b6.plus(4, 5) == 3
    assert not br.is_two_sided(b6)
    with pytest.raises(ValueError, match="even"):
        br.rump_mod(5)


def test_lambda_rho(b6: br.WeakBrace) -> None:
    # λ_a(b) = (-1)^a b on B6
    assert br.lambda_(b6, 1, 2) == 4
    assert br.lambda_(b6, 2, 2) == 2
    for a in range(6):
        for b in range(6):
            lam = br.lambda_(b6, a, b)
            assert b6.circ(lam, br.rho(b6, b, a)) == b6.circ(a, b)


def test_opposite_lambda_rho(b6: br.WeakBrace) -> None:
    # (B6, +) is abelian, so λ^op = λ
    for a in range(6):
        for b in range(6):
            assert br.lambda_op(b6, a, b) == br.lambda_(b6, a, b)
            assert b6.circ(br.lambda_op(b6, a, b), br.rho_op(b6, b, a)) == b6.circ(a, b)


def test_sandwich_units(u8: br.WeakBrace) -> None:
    assert u8.n == 4
    assert u8.level is br.Level.BRACE
    assert u8.labels == ("1", "3", "5", "7")
    assert br.is_two_sided(u8)
    # 3 +_1 5 = 3 - 1 + 5 = 7
    assert u8.label(u8.plus(1, 2)) == "7"
    with pytest.raises(AxiomViolation, match="closure of units"):
        br.sandwich_units(12)


def test_trivial_and_almost_trivial(s3: sg.CayleyTable) -> None:
    t = br.trivial(s3)
    a = br.almost_trivial(s3)
    assert t.level is br.Level.SKEW
    assert a.level is br.Level.SKEW
    np.testing.assert_array_equal(a.add.table, s3.table.T)
    np.testing.assert_array_equal(br.opposite(a).add.table, t.add.table)


def test_trivial_requires_clifford() -> None:
    band = sg.CayleyTable([[0, 0], [1, 1]])
    with pytest.raises(AxiomViolation):
        br.trivial(band)


def test_clifford_trivial(clifford3: br.WeakBrace) -> None:
    assert clifford3.level is br.Level.DUAL_WEAK
    assert clifford3.identity is None
    assert clifford3.idem == frozenset({0, 1})
    assert br.is_two_sided(clifford3)


def test_units_chain(units_chain3: br.WeakBrace) -> None:
    assert units_chain3.n == 7
    assert units_chain3.level is br.Level.DUAL_WEAK
    assert len(units_chain3.idem) == 3


def test_rump_circle() -> None:
    assert br.rump_circle(4).level is br.Level.BRACE
    six = br.rump_circle(6)
    assert six.level is br.Level.SKEW
    assert br.is_two_sided(six)


def test_direct_product(u8: br.WeakBrace, b6: br.WeakBrace) -> None:
    p = br.direct_product(u8, b6)
    assert p.n == 24
    assert p.level is br.Level.BRACE
    assert p.labels[7] == "(3,1)"
    # componentwise: (3,1)∘(3,1) = (1, 0)
    assert p.circ(7, 7) == 0


def test_level_requirement_witness(s3: sg.CayleyTable) -> None:
    with pytest.raises(AxiomViolation, match="level brace") as err:
        br.verify_weak_brace(s3, s3, "brace", "S3")
    assert err.value.witness == (1, 2)


def test_verify_rejects_non_associative() -> None:
    magma = sg.CayleyTable([[1, 1], [0, 0]])
    z2 = sg.cyclic_group(2)
    with pytest.raises(AxiomViolation, match=r"\(S,\+\) associative") as err:
        br.verify_weak_brace(magma, z2)
    assert err.value.witness == (0, 0, 0)
    with pytest.raises(AxiomViolation, match="associative"):
        br.verify_weak_brace(z2, magma)


def test_verify_rejects_size_mismatch() -> None:
    with pytest.raises(MalformedInput, match="different sizes"):
        br.verify_weak_brace(sg.cyclic_group(2), sg.cyclic_group(3))


def test_verify_rejects_distributivity() -> None:
    # a∘(b+c) = a∘b - a + a∘c fails for ring multiplication mod 3
    z3 = sg.cyclic_group(3)
    mul = sg.CayleyTable([[0, 0, 0], [0, 1, 2], [0, 2, 1]])
    with pytest.raises(AxiomViolation):
        br.verify_weak_brace(z3, mul)


@pytest.mark.parametrize("name", bstu.DUAL_WEAK_BUILTINS)
def test_lemma_report(name: str) -> None:
    w = builtin(name)
    failed = [c for c in br.lemma_report(w) if not c.holds]
    assert failed == []


def test_build_brace() -> None:
    assert br.build_brace("rump_mod", 4).n == 4
    with pytest.raises(ValueError, match="unknown brace kind"):
        br.build_brace("ring", 4)
