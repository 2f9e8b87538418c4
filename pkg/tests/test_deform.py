from __future__ import annotations

import dask.config
import pytest

import brace_solutions.lib.deform as df
import brace_solutions.lib.testutils as bstu
from brace_solutions.lib.brace import Level, WeakBrace, rump_circle, rump_mod
from brace_solutions.lib.io.registry import builtin
from brace_solutions.lib.solution import check_braid, intertwines, twist_map
from brace_solutions.utils import PreconditionFailed, UnsupportedStructure


@pytest.mark.parametrize(
    "name,expected",
    [
        ("b6", [0, 3]),
        ("rump4", [0, 1, 2, 3]),
        ("rump8", [0, 2, 4, 6]),
        ("u8", [0, 1, 2, 3]),
        ("trivial-s3", [0, 1, 2, 3, 4, 5]),
        ("almost-trivial-s3", [0, 1, 2, 3, 4, 5]),
        ("clifford3", [0, 1, 2]),
        ("trivial-z2", [0, 1]),
    ],
)
def test_right_distributor(name: str, expected: list[int]) -> None:
    assert sorted(df.right_distributor(builtin(name))) == expected


def test_right_distributor_of_product() -> None:
    w = builtin("u8-x-b6")
    expected = [bstu.product_index(i, j, 6) for i in range(4) for j in (0, 3)]
    assert sorted(df.right_distributor(w)) == expected


@pytest.mark.parametrize("m", [6, 8, 10])
def test_rump_mod_distributor_is_four_torsion(m: int) -> None:
    expected = [z for z in range(m) if (4 * z) % m == 0]
    assert sorted(df.right_distributor(rump_mod(m))) == expected


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10, 12])
def test_two_sided_distributor_is_everything(m: int) -> None:
    w = rump_circle(m)
    assert df.right_distributor(w) == frozenset(range(m))


def test_check_D_equivalences(b6: WeakBrace) -> None:
    for z in range(b6.n):
        assert df.check_D_equivalences(b6, z).agree
    bad = df.check_D_equivalences(b6, 1)
    assert not bad.abcz.holds and not bad.d.holds and not bad.d_prime.holds
    good = df.check_D_equivalences(b6, 3)
    assert good.abcz.holds and good.d.holds and good.d_prime.holds


@pytest.mark.parametrize("name", bstu.DUAL_WEAK_BUILTINS)
def test_deformation_theorem(name: str) -> None:
    w = builtin(name)
    report = df.deformation_report(w)
    assert report.theorem_holds
    assert set(report.per_z) == set(range(w.n))
    for z, d in report.per_z.items():
        assert d.is_solution == (z in report.distributor)
        if z in report.distributor:
            assert d.completely_regular
        else:
            assert d.check_partner is None


def test_deformation_report_threaded(b6: WeakBrace) -> None:
    with dask.config.set({"braces.scheduler": "threads"}):
        report = df.deformation_report(b6)
    assert report.distributor == frozenset({0, 3})
    assert report.theorem_holds


def test_b6_values(b6: WeakBrace) -> None:
    r1 = df.deformed_solution(b6, 1)
    assert r1(1, 2) == (4, 1)
    assert not check_braid(r1)
    assert check_braid(df.deformed_solution(b6, 3))
    assert r1.name == "r_1"


def test_u8_values(u8: WeakBrace) -> None:
    # r_3(3, 5) = (5, 3) on the units mod 8
    r = df.deformed_solution(u8, 1)
    assert r(1, 2) == (2, 1)


def test_trivial_z2_gives_the_twist(trivial_z2: WeakBrace) -> None:
    for z in range(2):
        assert df.deformed_solution(trivial_z2, z) == twist_map(2)


def test_r_check_precondition(b6: WeakBrace) -> None:
    with pytest.raises(PreconditionFailed, match="z = 1 in D_r") as err:
        df.r_check(b6, 1)
    assert err.value.witness == (1, 1)
    with pytest.raises(PreconditionFailed):
        df.deformed_check_solution(b6, 1)


def test_r_check_is_a_solution(b6: WeakBrace, u8: WeakBrace) -> None:
    for w in (b6, u8):
        for z in df.right_distributor(w):
            assert check_braid(df.r_check(w, z))


@pytest.mark.parametrize("name", bstu.DUAL_WEAK_BUILTINS)
def test_component_identities(name: str) -> None:
    w = builtin(name)
    for z in sorted(df.right_distributor(w)):
        failed = [c for c in df.sigma_tau_report(w, z) if not c.holds]
        failed += [c for c in df.regularity_report(w, z) if not c.holds]
        assert failed == []
        bstu.assert_identity(df.star_report(w, z))


@pytest.mark.parametrize("name", bstu.SKEW_BUILTINS)
def test_inverse_pairing(name: str) -> None:
    w = builtin(name)
    for z in sorted(df.right_distributor(w)):
        failed = [c for c in df.inverse_pairing_report(w, z) if not c.holds]
        assert failed == []


def test_inverse_pairing_needs_skew(clifford3: WeakBrace) -> None:
    with pytest.raises(UnsupportedStructure, match="skew"):
        df.inverse_pairing_report(clifford3, 0)


def test_sigma_hom_criterion(b6: WeakBrace) -> None:
    assert df.sigma_hom_criterion(b6, 3) == df.SigmaHom(True, True)
    assert df.sigma_hom_criterion(b6, 1) == df.SigmaHom(False, False)


@pytest.mark.parametrize("name", bstu.DUAL_WEAK_BUILTINS)
def test_sigma_hom_flags_agree(name: str) -> None:
    w = builtin(name)
    for z in range(w.n):
        hom = df.sigma_hom_criterion(w, z)
        assert hom.is_hom == hom.commutation, z
    if w.identity is not None:
        assert df.sigma_hom_criterion(w, w.identity) == df.SigmaHom(True, True)


@pytest.mark.parametrize("name", bstu.SKEW_BUILTINS)
def test_skew_builtins(name: str) -> None:
    assert builtin(name).level >= Level.SKEW


def test_conjugacy_equivalence(u8: WeakBrace, b6: WeakBrace) -> None:
    assert df.conjugacy_equivalence(u8, 1, 1) == (0, 1, 2, 3)
    # ∘ is commutative on the units, so only v = z is conjugate to z
    assert df.conjugacy_equivalence(u8, 1, 2) is None
    with pytest.raises(UnsupportedStructure, match="two-sided"):
        df.conjugacy_equivalence(b6, 0, 0)


def test_sigma_check_table(b6: WeakBrace) -> None:
    s = df.sigma_check_table(b6, 3)
    r = df.r_check(b6, 3)
    assert (s == r.first).all()


def test_conjugate_parameters(trivial_s3: WeakBrace) -> None:
    m_, inv = trivial_s3.mul.table, trivial_s3.inv
    pairs = {(z, int(m_[m_[inv[c], z], c])) for z in range(6) for c in range(6)}
    for z, v in sorted(pairs):
        phi = df.conjugacy_equivalence(trivial_s3, z, v)
        assert phi is not None
        rz = df.deformed_solution(trivial_s3, z)
        assert intertwines(phi, rz, df.deformed_solution(trivial_s3, v))


def test_equal_maps_without_conjugacy(trivial_z2: WeakBrace) -> None:
    assert df.deformed_solution(trivial_z2, 0) == df.deformed_solution(trivial_z2, 1)
    # Z/2Z is abelian, so 0 and 1 are not conjugate
    assert df.conjugacy_equivalence(trivial_z2, 0, 1) is None


@pytest.mark.parametrize("name", bstu.DUAL_WEAK_BUILTINS)
def test_idempotent_deformation(name: str) -> None:
    w = builtin(name)
    for e in sorted(w.idem):
        # σ^e_a(b) = λ_a(b) + e
        expected = w.add.table[w.lambda_table, e]
        assert (df.sigma_table(w, e) == expected).all()
