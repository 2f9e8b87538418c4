from __future__ import annotations

import json
from typing import Any

import fsspec
import pytest

import brace_solutions.lib.brace as br
import brace_solutions.lib.semigroup as sg
import brace_solutions.lib.truss as tr
from brace_solutions.lib.io.registry import builtin


def _write(path: Any, obj: Any) -> str:
    with fsspec.open(path, "w") as f:
        print(json.dumps(obj), file=f)
    return str(path)


@pytest.fixture(scope="session")
def b6() -> br.WeakBrace:
    return builtin("b6")


@pytest.fixture(scope="session")
def u8() -> br.WeakBrace:
    return builtin("u8")


@pytest.fixture(scope="session")
def clifford3() -> br.WeakBrace:
    return builtin("clifford3")


@pytest.fixture(scope="session")
def trivial_s3() -> br.WeakBrace:
    return builtin("trivial-s3")


@pytest.fixture(scope="session")
def trivial_z2() -> br.WeakBrace:
    return builtin("trivial-z2")


@pytest.fixture(scope="session")
def units_chain3() -> br.WeakBrace:
    return builtin("units-chain3")


@pytest.fixture(scope="session")
def ring6() -> tr.NearTruss:
    return tr.truss_of_ring_mod(6)


@pytest.fixture(scope="session")
def product_retraction(u8: br.WeakBrace) -> tr.Retraction:
    return tr.product_near_truss(u8, tr.truss_of_ring_mod(5))[1]


@pytest.fixture(scope="session")
def semidirect5() -> tr.Retraction:
    return tr.semidirect_retraction(5)


@pytest.fixture(scope="session")
def identity_b6(b6: br.WeakBrace) -> tr.Retraction:
    return tr.identity_retraction(b6)


@pytest.fixture(scope="session")
def s3() -> sg.CayleyTable:
    return sg.symmetric_group(3)


@pytest.fixture(scope="session")
def b6_file(tmp_path_factory: pytest.TempPathFactory) -> str:
    fname = tmp_path_factory.mktemp("docs") / "b6.json"
    return _write(fname, {"kind": "builder", "name": "b6"})


@pytest.fixture(scope="session")
def b6_full_file(b6: br.WeakBrace, tmp_path_factory: pytest.TempPathFactory) -> str:
    fname = tmp_path_factory.mktemp("docs") / "b6_full.json"
    payload = {"add": b6.add.table.tolist(), "mul": b6.mul.table.tolist()}
    return _write(fname, {"kind": "weak_brace", "n": 6, "payload": payload})


@pytest.fixture(scope="session")
def u8_x_ring5_file(tmp_path_factory: pytest.TempPathFactory) -> str:
    fname = tmp_path_factory.mktemp("docs") / "u8_x_ring5.json"
    doc = {
        "kind": "builder",
        "name": "product_retraction",
        "params": {
            "brace": {"name": "u8"},
            "truss": {"kind": "builder", "name": "truss_of_ring_mod", "params": {"m": 5}},
        },
    }
    return _write(fname, doc)


@pytest.fixture(scope="session")
def twist2_file(tmp_path_factory: pytest.TempPathFactory) -> str:
    fname = tmp_path_factory.mktemp("docs") / "twist2.json"
    payload = {"first": [[0, 1], [0, 1]], "second": [[0, 0], [1, 1]]}
    return _write(fname, {"kind": "pair_map", "n": 2, "payload": payload})


@pytest.fixture(scope="session")
def identity2_file(tmp_path_factory: pytest.TempPathFactory) -> str:
    fname = tmp_path_factory.mktemp("docs") / "identity2.json"
    payload = {"first": [[0, 0], [1, 1]], "second": [[0, 1], [0, 1]]}
    return _write(fname, {"kind": "pair_map", "n": 2, "payload": payload})
