"""JSON documents for groups, data, constructor inputs and reports.

Dumps are canonical (sorted keys, compact separators, trailing newline), so
``dumps(load(dumps(x))) == dumps(x)`` byte for byte.  Loaders never trust
their input: every document is re-validated through the same builders the
library uses, and shape problems raise ``SchemaError`` with a JSON path.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .constructors import HandyInput, NonHandyInput
from .errors import BraidedGroupoidError, SchemaError
from .factorization import FactorizationDatum, build_datum
from .groups import FiniteGroup, GroupMorphism, build_group, parse_ref, subgroup

FORMAT_VERSION = 1


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def parse(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc.msg} (line {exc.lineno})", path="$") from exc


def read(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}", path="$") from exc
    return parse(text)


def write(path: str | Path, doc: dict) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


# ---------------------------------------------------------------------------
# field helpers


def _field(doc: dict, key: str, path: str):
    if not isinstance(doc, dict):
        raise SchemaError("expected an object", path=path)
    if key not in doc:
        raise SchemaError(f"missing field {key!r}", path=f"{path}.{key}")
    return doc[key]


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError("expected an integer", path=path)
    return value


def _int_list(value, path: str) -> list[int]:
    if not isinstance(value, list):
        raise SchemaError("expected a list of integers", path=path)
    return [_int(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _matrix(value, path: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise SchemaError("expected a list of rows", path=path)
    rows = [_int_list(r, f"{path}[{i}]") for i, r in enumerate(value)]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        i = next(i for i, r in enumerate(rows) if len(r) != len(rows[0]))
        raise SchemaError("ragged table", path=f"{path}[{i}]")
    return rows


def _kind(doc, expected: str, path: str) -> None:
    kind = _field(doc, "kind", path)
    if kind != expected:
        raise SchemaError(f"expected kind {expected!r}, got {kind!r}", path=f"{path}.kind")


def _rows(a: np.ndarray) -> list:
    return np.asarray(a).tolist()


def _with_path(exc: BraidedGroupoidError, prefix: str) -> BraidedGroupoidError:
    if exc.path is None:
        exc.path = prefix
    elif exc.path.startswith("$") and prefix != "$":
        exc.path = prefix + exc.path[1:]
    return exc


# ---------------------------------------------------------------------------
# groups


def group_to_json(G: FiniteGroup) -> dict:
    return {"label": G.label, "order": G.order, "table": _rows(G.table)}


def group_from_json(doc, path: str = "$") -> FiniteGroup:
    """A group document is ``{"ref": "C2xS3"}`` or ``{"label", "order", "table"}``."""
    if isinstance(doc, str):
        doc = {"ref": doc}
    if isinstance(doc, dict) and "ref" in doc:
        ref = doc["ref"]
        if not isinstance(ref, str):
            raise SchemaError("ref must be a string", path=f"{path}.ref")
        try:
            return parse_ref(ref)
        except BraidedGroupoidError as exc:
            raise _with_path(exc, f"{path}.ref")
    table = _matrix(_field(doc, "table", path), f"{path}.table")
    order = _int(_field(doc, "order", path), f"{path}.order")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SchemaError("label must be a string", path=f"{path}.label")
    if len(table) != order or any(len(r) != order for r in table):
        raise SchemaError(f"table must be {order}x{order}", path=f"{path}.table")
    if any(not 0 <= v < order for r in table for v in r):
        raise SchemaError("table entries must lie in 0..order-1", path=f"{path}.table")
    try:
        return build_group(np.array(table, dtype=np.int64).reshape(order, order), label)
    except BraidedGroupoidError as exc:
        raise _with_path(exc, f"{path}.table")


# ---------------------------------------------------------------------------
# data


def datum_to_json(datum: FactorizationDatum) -> dict:
    return {
        "kind": "datum",
        "version": FORMAT_VERSION,
        "group": group_to_json(datum.D),
        "V": list(datum.V.elements),
        "H": list(datum.H.elements),
        "gamma": list(datum.gamma),
        "phi": None if datum.phi is None else list(datum.phi.images),
    }


def datum_from_json(doc, path: str = "$") -> FactorizationDatum:
    """``phi`` lists the images of ``H`` in ascending order of H elements."""
    _kind(doc, "datum", path)
    D = group_from_json(_field(doc, "group", path), f"{path}.group")
    subs = {}
    for key in ("V", "H"):
        elems = _int_list(_field(doc, key, path), f"{path}.{key}")
        if any(not 0 <= e < D.order for e in elems):
            raise SchemaError("element out of range", path=f"{path}.{key}")
        if elems != sorted(set(elems)):
            raise SchemaError("subgroup elements must be strictly increasing", path=f"{path}.{key}")
        try:
            subs[key] = subgroup(D, elems)
        except BraidedGroupoidError as exc:
            raise _with_path(exc, f"{path}.{key}")
    V, H = subs["V"], subs["H"]
    gamma = _int_list(_field(doc, "gamma", path), f"{path}.gamma")
    if any(not 0 <= g < D.order for g in gamma):
        raise SchemaError("element out of range", path=f"{path}.gamma")
    phi_doc = doc.get("phi")
    phi = None
    if phi_doc is not None:
        images = _int_list(phi_doc, f"{path}.phi")
        if len(images) != H.order:
            raise SchemaError(f"phi must list {H.order} images", path=f"{path}.phi")
        if any(not 0 <= g < D.order for g in images):
            raise SchemaError("element out of range", path=f"{path}.phi")
        phi = GroupMorphism(H, V, tuple(images))
    try:
        return build_datum(D, V, H, gamma, phi)
    except BraidedGroupoidError as exc:
        raise _with_path(exc, path)


def handy_input_to_json(inp: HandyInput) -> dict:
    return {
        "kind": "handy-input",
        "version": FORMAT_VERSION,
        "F": group_to_json(inp.F),
        "tri_left": _rows(inp.tri_left),
        "tri_right": _rows(inp.tri_right),
        "objects": _rows(inp.objects),
        "sigma": _rows(inp.sigma),
        "harpoon": _rows(inp.harpoon),
    }


def handy_input_from_json(doc, path: str = "$") -> HandyInput:
    _kind(doc, "handy-input", path)
    F = group_from_json(_field(doc, "F", path), f"{path}.F")
    tables = {k: _matrix(_field(doc, k, path), f"{path}.{k}")
              for k in ("tri_left", "tri_right", "objects", "sigma", "harpoon")}
    try:
        return HandyInput(F, **tables)
    except BraidedGroupoidError as exc:
        raise _with_path(exc, path)


def nonhandy_input_to_json(inp: NonHandyInput) -> dict:
    return {
        "kind": "nonhandy-input",
        "version": FORMAT_VERSION,
        "A": group_to_json(inp.A),
        "P": group_to_json(inp.P),
        "tri_left": _rows(inp.tri_left),
        "tri_right": _rows(inp.tri_right),
        "psi": _rows(inp.psi),
    }


def nonhandy_input_from_json(doc, path: str = "$") -> NonHandyInput:
    _kind(doc, "nonhandy-input", path)
    A = group_from_json(_field(doc, "A", path), f"{path}.A")
    P = group_from_json(_field(doc, "P", path), f"{path}.P")
    tables = {k: _matrix(_field(doc, k, path), f"{path}.{k}") for k in ("tri_left", "tri_right", "psi")}
    try:
        return NonHandyInput(A, tables["tri_left"], tables["tri_right"], P, tables["psi"])
    except BraidedGroupoidError as exc:
        raise _with_path(exc, path)


LOADERS = {
    "datum": datum_from_json,
    "handy-input": handy_input_from_json,
    "nonhandy-input": nonhandy_input_from_json,
}


def load_any(doc, path: str = "$"):
    kind = _field(doc, "kind", path)
    if kind not in LOADERS:
        raise SchemaError(f"unknown kind {kind!r}", path=f"{path}.kind")
    return LOADERS[kind](doc, path)


def to_json(obj) -> dict:
    if isinstance(obj, FactorizationDatum):
        return datum_to_json(obj)
    if isinstance(obj, HandyInput):
        return handy_input_to_json(obj)
    if isinstance(obj, NonHandyInput):
        return nonhandy_input_to_json(obj)
    if isinstance(obj, FiniteGroup):
        return group_to_json(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"no JSON form for {type(obj).__name__}")
