from __future__ import annotations

import dask
import numpy as np
import pytest

import brace_solutions.lib.semigroup as sg
from brace_solutions.utils import AxiomViolation, MalformedInput, UnsupportedStructure


def test_classify_clifford_monoid() -> None:
    t = sg.clifford_monoid_3()
    p = sg.classify(t)
    assert p.associative
    assert p.clifford
    assert not p.group
    assert p.commutative
    assert p.kind == "clifford"
    assert p.idempotents == frozenset({0, 1})
    assert p.monoid_identity == 0
    assert p.inverse_map == (0, 1, 2)
    assert t.labels == ("e", "x", "y")
    assert t.index("y") == 2


def test_classify_non_associative() -> None:
    t = sg.CayleyTable([[1, 1], [0, 0]])
    p = t.profile
    assert not p.associative
    assert p.inverse_map is None
    assert p.kind == "magma"
    assert sg.associativity_witness(t) == (0, 0, 0)
    with pytest.raises(UnsupportedStructure, match="invert"):
        sg.invert(t, 0)


def test_classify_is_cached() -> None:
    t1 = sg.cyclic_group(5)
    t2 = sg.CayleyTable(t1.table.copy())
    assert sg.classify(t1) is sg.classify(t2)


@pytest.mark.parametrize(
    "table,msg",
    [
        ([[0, 1]], "n×n"),
        ([], "n×n"),
        ([[0, 2], [1, 0]], "outside the carrier"),
        ([[0.5, 1], [1, 0]], "integers"),
    ],
)
def test_cayley_table_rejects(table: list, msg: str) -> None:
    with pytest.raises(MalformedInput, match=msg):
        sg.CayleyTable(table)


def test_cayley_table_label_count() -> None:
    with pytest.raises(MalformedInput, match="labels"):
        sg.CayleyTable([[0]], ["a", "b"])


def test_symmetric_group() -> None:
    s3 = sg.symmetric_group(3)
    assert s3.n == 6
    assert s3.profile.group
    assert not s3.profile.commutative
    assert s3.labels[0] == "012"
    assert s3.profile.monoid_identity == 0
    assert s3.profile.center == frozenset({0})
    with pytest.raises(ValueError, match="degree"):
        sg.symmetric_group(5)


def test_dihedral_group() -> None:
    d4 = sg.dihedral_group(4)
    assert d4.n == 8
    assert d4.profile.group
    assert not d4.profile.commutative
    # r^1 s^1 has index 1*4 + 1; reflections are involutions
    assert d4(5, 5) == 0
    # r·r = r^2
    assert d4(1, 1) == 2


def test_units_mod() -> None:
    u8 = sg.units_mod(8)
    assert u8.labels == ("1", "3", "5", "7")
    assert u8.profile.group
    assert u8.profile.inverse_map == (0, 1, 2, 3)
    # 3·5 = 15 = 7
    assert u8.label(u8(1, 2)) == "7"


def test_direct_product_indexing() -> None:
    t = sg.direct_product(sg.cyclic_group(2), sg.cyclic_group(3))
    assert t.n == 6
    assert t.profile.group
    # (1, 2) + (1, 2) = (0, 1)
    assert t(1 * 3 + 2, 1 * 3 + 2) == 0 * 3 + 1
    assert t.labels[5] == "(1,2)"


def test_build_group() -> None:
    assert sg.build_group("cyclic", 4) == sg.cyclic_group(4)
    with pytest.raises(ValueError, match="unknown group kind"):
        sg.build_group("alternating", 4)


def test_is_homomorphism() -> None:
    z4, z2 = sg.cyclic_group(4), sg.cyclic_group(2)
    assert sg.is_homomorphism(z4, z2, [0, 1, 0, 1]) is None
    assert sg.is_homomorphism(z4, z2, [0, 1, 1, 1]) == (1, 1)


def test_restrict() -> None:
    t = sg.clifford_monoid_3()
    sub = sg.restrict(t, {0, 1})
    assert sub.n == 2
    assert sub.labels == ("e", "x")
    with pytest.raises(AxiomViolation, match="closure"):
        sg.restrict(t, {0, 2})


def test_witnesses() -> None:
    t = sg.CayleyTable([[0, 0], [0, 0]])
    # 1 has no unique quasi-inverse: 1·x·1 = 0 != 1
    assert sg.inverse_witness(t) == (1,)
    assert sg.clifford_witness(sg.clifford_monoid_3()) is None


def test_strong_semilattice() -> None:
    t = sg.build_strong_semilattice(
        [[0, 1], [1, 1]], [sg.cyclic_group(2), sg.cyclic_group(1)], {(0, 1): [0, 0]}
    )
    assert t.n == 3
    assert t.profile.kind == "clifford"
    assert t.profile.idempotents == frozenset({0, 2})
    # the element of the lower group absorbs
    assert t(1, 2) == 2


def test_strong_semilattice_rejects() -> None:
    with pytest.raises(MalformedInput, match="missing structure homomorphism"):
        sg.build_strong_semilattice(
            [[0, 1], [1, 1]], [sg.cyclic_group(2), sg.cyclic_group(1)], {}
        )
    with pytest.raises(AxiomViolation, match="semilattice"):
        sg.build_strong_semilattice(
            [[0, 0], [1, 1]], [sg.cyclic_group(2), sg.cyclic_group(1)], {}
        )


def test_table_is_read_only() -> None:
    t = sg.cyclic_group(3)
    with pytest.raises(ValueError):
        t.table[0, 0] = 1
    assert isinstance(t.table, np.ndarray)


def _z4_over_z2() -> sg.CayleyTable:
    return sg.build_strong_semilattice(
        [[0, 1], [1, 1]],
        [sg.cyclic_group(4), sg.cyclic_group(2)],
        {(0, 1): [0, 1, 0, 1]},
    )


def test_strong_semilattice_of_cyclic_groups() -> None:
    t = _z4_over_z2()
    assert t.n == 6
    p = t.profile
    assert p.clifford
    assert not p.group
    assert p.kind == "clifford"
    assert p.idempotents == frozenset({0, 4})
    # 3 ∈ Z4 meets 1 ∈ Z2 as 1 + 1 = 0 in Z2
    assert t(3, 5) == 4


@pytest.mark.parametrize(
    "table",
    [
        sg.clifford_monoid_3(),
        _z4_over_z2(),
        sg.cyclic_group(6),
        sg.symmetric_group(3),
        sg.units_mod(8),
    ],
)
def test_inverse_semigroup_invariants(table: sg.CayleyTable) -> None:
    p = table.profile
    assert p.inverse_map is not None
    for a in range(table.n):
        inv = sg.invert(table, a)
        assert table(table(a, inv), a) == a
        assert table(table(inv, a), inv) == inv
    for e in p.idempotents:
        for f in p.idempotents:
            assert table(e, f) == table(f, e)


def test_inverse_not_clifford() -> None:
    # the Brandt semigroup {0, e11, e12, e21, e22} with e_ij e_kl = e_il when j = k
    b2 = sg.CayleyTable(
        [
            [0, 0, 0, 0, 0],
            [0, 1, 2, 0, 0],
            [0, 0, 0, 1, 2],
            [0, 3, 4, 0, 0],
            [0, 0, 0, 3, 4],
        ]
    )
    p = b2.profile
    assert p.inverse_map is not None
    assert not p.clifford
    assert p.kind == "inverse"


def test_invert() -> None:
    assert sg.invert(sg.cyclic_group(6), 2) == 4
    assert sg.invert(sg.clifford_monoid_3(), 2) == 2
    b6_circ = sg.CayleyTable([[(a + (-1) ** a * b) % 6 for b in range(6)] for a in range(6)])
    assert sg.invert(b6_circ, 4) == 2
    assert sg.invert(b6_circ, 1) == 1


def test_classify_from_threads() -> None:
    tables = [sg.CayleyTable(sg.dihedral_group(5).table.copy()) for _ in range(8)]
    profiles = dask.compute(
        *[dask.delayed(sg.classify)(t) for t in tables], scheduler="threads"
    )
    assert all(p == profiles[0] for p in profiles)
    assert profiles[0].group
