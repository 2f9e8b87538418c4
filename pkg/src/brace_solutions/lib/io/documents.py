"""One text format for every structure the package handles.

A document is a JSON object whose ``kind`` is one of :data:`KINDS`.
Structure documents carry ``n``, a ``payload`` of operation tables as
nested integer arrays (row-major; ternary tables as ``n`` arrays of
``n×n``) and optional ``labels``; builder documents carry a ``name``
from the registry and its ``params``, which may nest further builder
or structure documents. The canonical text of a document has sorted
keys, no insignificant whitespace and a single trailing LF.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping
from typing import Any, NamedTuple

import awkward as ak
import numpy as np
from fsspec.core import url_to_fs

from brace_solutions.lib.brace import WeakBrace, verify_weak_brace
from brace_solutions.lib.core import check_range, first_witness
from brace_solutions.lib.io.registry import BUILTINS, builtin, get_builder
from brace_solutions.lib.semigroup import CayleyTable
from brace_solutions.lib.solution import PairMap
from brace_solutions.lib.truss import (
    Heap,
    NearTruss,
    Retraction,
    build_retraction,
    verify_heap,
    verify_near_truss,
)
from brace_solutions.utils import (
    AxiomViolation,
    MalformedInput,
    PreconditionFailed,
    UnsupportedStructure,
)

log = logging.getLogger(__name__)

KINDS = ("table", "heap", "weak_brace", "near_truss", "retraction", "pair_map", "builder")


class BuilderRef(NamedTuple):
    name: str
    params: dict[str, Any] | None = None


class StructureDoc(NamedTuple):
    kind: str
    n: int | None = None
    payload: Any = None
    labels: tuple[str, ...] | None = None
    builder: BuilderRef | None = None


def _at(prefix: str, field: str) -> str:
    return f"{prefix}.{field}" if prefix else field


def _require_fields(
    obj: Mapping[str, Any], required: set[str], optional: set[str], prefix: str
) -> None:
    for key in sorted(required - obj.keys()):
        raise MalformedInput(f"missing field {key!r}", path=_at(prefix, key))
    for key in sorted(obj.keys() - required - optional):
        raise MalformedInput(f"unexpected field {key!r}", path=_at(prefix, key))


def _int_array(
    value: Any,
    path: str,
    depth: int,
    length: int | None = None,
    bound: int | None = None,
) -> list:
    """Validate a square nested integer array and return it as lists.

    Every axis must have ``length`` entries (only the outer one is
    checked when ``length`` is None) and every entry must lie in
    ``range(bound)`` when ``bound`` is given, otherwise be
    non-negative.

    """
    if not isinstance(value, list):
        raise MalformedInput(f"expected a {depth}-dimensional integer array", path=path)
    try:
        arr = ak.from_iter(value)
        ndim = arr.ndim
    except (TypeError, ValueError) as err:
        raise MalformedInput(
            f"expected a {depth}-dimensional integer array", path=path
        ) from err
    if ndim != depth:
        raise MalformedInput(f"expected a {depth}-dimensional integer array", path=path)
    if length is not None:
        if len(arr) != length:
            raise MalformedInput(f"expected {length} entries, got {len(arr)}", path=path)
        for axis in range(1, depth):
            counts = ak.to_numpy(ak.num(arr, axis=axis))
            bad = np.argwhere(counts != length)
            if bad.size:
                where = tuple(int(i) for i in bad[0])
                raise MalformedInput(
                    f"expected {length} entries, got {int(counts[where])}",
                    path=path + "".join(f"[{i}]" for i in where),
                )
    try:
        out = ak.to_numpy(arr, allow_missing=False)
    except (TypeError, ValueError) as err:
        raise MalformedInput("entries must be integers", path=path) from err
    if out.dtype == np.bool_ or not np.issubdtype(out.dtype, np.integer):
        raise MalformedInput("entries must be integers", path=path)
    if bound is not None:
        check_range(out, bound, path)
    else:
        witness = first_witness(out >= 0)
        if witness is not None:
            raise MalformedInput(
                "entries must be non-negative",
                path=path + "".join(f"[{i}]" for i in witness),
            )
    return out.tolist()


def _parse_table_map(
    payload: Any, keys: tuple[str, ...], n: int, depth: dict[str, int], prefix: str
) -> dict[str, Any]:
    path = _at(prefix, "payload")
    if not isinstance(payload, dict):
        raise MalformedInput("expected an object", path=path)
    return {
        key: _int_array(payload.get(key), _at(path, key), depth.get(key, 2), n, n)
        for key in keys
    }


def _check_ref(obj: Mapping[str, Any], prefix: str) -> BuilderRef:
    name = obj.get("name")
    if not isinstance(name, str):
        raise MalformedInput("builder name must be a string", path=_at(prefix, "name"))
    get_builder(name, _at(prefix, "name"))
    params = obj.get("params")
    if params is not None and not isinstance(params, dict):
        raise MalformedInput("params must be an object", path=_at(prefix, "params"))
    for key, value in (params or {}).items():
        if isinstance(value, dict):
            _parse_param(value, _at(prefix, f"params.{key}"))
    return BuilderRef(name, params)


def _parse_param(value: Mapping[str, Any], prefix: str) -> None:
    if "kind" in value:
        _parse_obj(value, prefix)
    elif "name" in value:
        _require_fields(value, {"name"}, {"params"}, prefix)
        _check_ref(value, prefix)
    else:
        raise MalformedInput("expected a builder or structure document", path=prefix)


def _parse_obj(obj: Any, prefix: str = "") -> StructureDoc:
    if not isinstance(obj, dict):
        raise MalformedInput("a document must be a JSON object", path=prefix or None)
    kind = obj.get("kind")
    if kind not in KINDS:
        raise MalformedInput(
            f"kind must be one of {list(KINDS)}, got {kind!r}", path=_at(prefix, "kind")
        )
    if kind == "builder":
        _require_fields(obj, {"kind", "name"}, {"params"}, prefix)
        return StructureDoc("builder", builder=_check_ref(obj, prefix))

    _require_fields(obj, {"kind", "n", "payload"}, {"labels"}, prefix)
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MalformedInput("n must be a positive integer", path=_at(prefix, "n"))
    labels = obj.get("labels")
    if labels is not None:
        if not (isinstance(labels, list) and all(isinstance(x, str) for x in labels)):
            raise MalformedInput(
                "labels must be a list of strings", path=_at(prefix, "labels")
            )
        if len(labels) != n:
            raise MalformedInput(
                f"{len(labels)} labels given for a carrier of size {n}",
                path=_at(prefix, "labels"),
            )
        labels = tuple(labels)
    payload = _PAYLOAD_PARSERS[kind](obj["payload"], n, prefix)
    return StructureDoc(kind, n, payload, labels)


def _parse_near_truss(payload: Any, n: int, prefix: str) -> dict[str, Any]:
    path = _at(prefix, "payload")
    if isinstance(payload, dict):
        _require_fields(payload, {"tern", "mul"}, {"unit"}, path)
    out = _parse_table_map(payload, ("tern", "mul"), n, {"tern": 3}, prefix)
    unit = payload.get("unit")
    valid = isinstance(unit, int) and not isinstance(unit, bool) and 0 <= unit < n
    if unit is not None and not valid:
        raise MalformedInput(
            f"unit must be an element of the carrier of size {n}", path=_at(path, "unit")
        )
    if unit is not None:
        out["unit"] = unit
    return out


def _parse_retraction(payload: Any, n: int, prefix: str) -> dict[str, Any]:
    path = _at(prefix, "payload")
    if not isinstance(payload, dict):
        raise MalformedInput("expected an object", path=path)
    _require_fields(payload, {"truss", "brace", "pi", "gamma"}, set(), path)
    return {
        "truss": _parse_obj(payload["truss"], _at(path, "truss")),
        "brace": _parse_obj(payload["brace"], _at(path, "brace")),
        "pi": _int_array(payload["pi"], _at(path, "pi"), 1, n),
        "gamma": _int_array(payload["gamma"], _at(path, "gamma"), 1, None, n),
    }


def _parse_pairs(keys: tuple[str, ...]):
    def parse_payload(payload: Any, n: int, prefix: str) -> dict[str, Any]:
        if isinstance(payload, dict):
            _require_fields(payload, set(keys), set(), _at(prefix, "payload"))
        return _parse_table_map(payload, keys, n, {}, prefix)

    return parse_payload


_PAYLOAD_PARSERS = {
    "table": lambda p, n, prefix: _int_array(p, _at(prefix, "payload"), 2, n, n),
    "heap": lambda p, n, prefix: _int_array(p, _at(prefix, "payload"), 3, n, n),
    "weak_brace": _parse_pairs(("add", "mul")),
    "pair_map": _parse_pairs(("first", "second")),
    "near_truss": _parse_near_truss,
    "retraction": _parse_retraction,
}


def parse(text: str | bytes) -> StructureDoc:
    """Read a document from its text.

    Raises
    ------
    MalformedInput
        For invalid UTF-8 or JSON, schema violations, out-of-range
        entries and unknown builders; ``path`` names the offending
        field, for example ``payload[1][2]``.

    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as err:
            raise MalformedInput("document is not valid UTF-8") from err
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedInput(
            f"document is not valid JSON: {err.msg}",
            path=f"line {err.lineno} column {err.colno}",
        ) from err
    return _parse_obj(obj)


def to_json_obj(doc: StructureDoc) -> dict[str, Any]:
    if doc.kind == "builder":
        assert doc.builder is not None
        ref: dict[str, Any] = {"kind": "builder", "name": doc.builder.name}
        if doc.builder.params is not None:
            ref["params"] = doc.builder.params
        return ref
    payload = doc.payload
    if doc.kind == "retraction":
        payload = {
            **payload,
            "truss": to_json_obj(payload["truss"]),
            "brace": to_json_obj(payload["brace"]),
        }
    obj: dict[str, Any] = {"kind": doc.kind, "n": doc.n, "payload": payload}
    if doc.labels is not None:
        obj["labels"] = list(doc.labels)
    return obj


def canonical_json(obj: Any) -> str:
    """Sorted keys, no insignificant whitespace, one trailing LF."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def render(doc: StructureDoc) -> str:
    return canonical_json(to_json_obj(doc))


def _build_ref(ref: BuilderRef, prefix: str) -> Any:
    if ref.name in BUILTINS and not ref.params:
        return builtin(ref.name)
    builder = get_builder(ref.name, _at(prefix, "name"))
    kwargs = {}
    for key, value in (ref.params or {}).items():
        path = _at(prefix, f"params.{key}")
        if isinstance(value, dict):
            value = build(_parse_obj(value, path)) if "kind" in value else _build_ref(
                BuilderRef(value["name"], value.get("params")), path
            )
        kwargs[key] = value
    try:
        return builder(**kwargs)
    except (AxiomViolation, MalformedInput, PreconditionFailed, UnsupportedStructure):
        raise
    except (TypeError, ValueError) as err:
        raise MalformedInput(
            f"cannot build {ref.name!r}: {err}", path=_at(prefix, "params")
        ) from err


def _expect(obj: Any, cls: type, what: str, path: str) -> Any:
    if not isinstance(obj, cls):
        raise MalformedInput(f"expected {what}, got {type(obj).__name__}", path=path)
    return obj


def build(doc: StructureDoc) -> Any:
    """The verified structure a document describes.

    Returns a :class:`CayleyTable`, :class:`Heap`, :class:`WeakBrace`,
    :class:`NearTruss`, :class:`Retraction` or :class:`PairMap`.

    """
    p, labels = doc.payload, doc.labels
    if doc.kind == "builder":
        assert doc.builder is not None
        return _build_ref(doc.builder, "")
    if doc.kind == "table":
        return CayleyTable(p, labels)
    if doc.kind == "heap":
        return verify_heap(p)
    if doc.kind == "weak_brace":
        return verify_weak_brace(CayleyTable(p["add"], labels), CayleyTable(p["mul"], labels))
    if doc.kind == "near_truss":
        return verify_near_truss(p["tern"], CayleyTable(p["mul"], labels), p.get("unit"))
    if doc.kind == "pair_map":
        return PairMap.from_components(p["first"], p["second"])
    if doc.kind == "retraction":
        t = _expect(build(p["truss"]), NearTruss, "a near-truss", "payload.truss")
        b = _expect(build(p["brace"]), WeakBrace, "a weak brace", "payload.brace")
        return build_retraction(t, b, p["pi"], p["gamma"])
    raise MalformedInput(f"unknown kind {doc.kind!r}", path="kind")


def dump(obj: Any) -> StructureDoc:
    """The structure document of an in-memory structure."""
    if isinstance(obj, CayleyTable):
        return StructureDoc("table", obj.n, obj.table.tolist(), obj.labels)
    if isinstance(obj, Heap):
        return StructureDoc("heap", obj.n, obj.tern.tolist())
    if isinstance(obj, WeakBrace):
        payload = {"add": obj.add.table.tolist(), "mul": obj.mul.table.tolist()}
        return StructureDoc("weak_brace", obj.n, payload, obj.labels)
    if isinstance(obj, NearTruss):
        payload = {"tern": obj.tern.tolist(), "mul": obj.mul.table.tolist()}
        if obj.unit is not None:
            payload["unit"] = obj.unit
        return StructureDoc("near_truss", obj.n, payload, obj.labels)
    if isinstance(obj, PairMap):
        payload = {"first": obj.first.tolist(), "second": obj.second.tolist()}
        return StructureDoc("pair_map", obj.n, payload)
    if isinstance(obj, Retraction):
        payload = {
            "truss": dump(obj.t),
            "brace": dump(obj.b),
            "pi": obj.pi.tolist(),
            "gamma": obj.gamma.tolist(),
        }
        return StructureDoc("retraction", obj.t.n, payload)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def read_text(path: str, **storage_options: Any) -> str:
    fs, fspath = url_to_fs(path, **storage_options)
    with fs.open(fspath, mode="rb") as f:
        data = f.read()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as err:
        raise MalformedInput(f"{path} is not valid UTF-8") from err


def write_text(path: str, text: str, **storage_options: Any) -> None:
    """Write ``text`` as UTF-8 bytes, without newline translation."""
    fs, fspath = url_to_fs(path, **storage_options)
    with fs.open(fspath, mode="wb") as f:
        f.write(text.encode("utf-8"))
    log.debug("wrote %d characters to %s", len(text), path)


def read_document(path: str, **storage_options: Any) -> StructureDoc:
    return parse(read_text(path, **storage_options))


def write_document(path: str, doc: StructureDoc, **storage_options: Any) -> None:
    write_text(path, render(doc), **storage_options)


def load(path: str, **storage_options: Any) -> Any:
    """Read, parse and build the document at ``path``."""
    return build(read_document(path, **storage_options))
