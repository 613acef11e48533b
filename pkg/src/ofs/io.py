"""JSON documents for ordered face structures.

A document has ``faces`` (dimension -> names), ``gamma``, ``delta`` (a
list of names, or ``{"empty": u}``) and ``tilde`` (dimension -> pairs).
Interface structures carry ``"relaxed_top": true``; split parts carry
their boundary loops in ``open_loops``.
"""

from __future__ import annotations

import json
from typing import Any

from .model import OfsError, OrderedFaceStructure, build


class ParseError(OfsError):
    pass


def to_document(S: OrderedFaceStructure) -> dict:
    doc: dict[str, Any] = {
        "faces": {str(k): list(S.faces(k)) for k in range(S.dim + 1)},
        "gamma": {a: S.gamma[a] for a in sorted(S.gamma)},
        "delta": {},
        "tilde": {},
    }
    for a in sorted(S.gamma):
        doc["delta"][a] = {"empty": S.empty[a]} if a in S.empty else sorted(S.delta[a])
    for k in range(1, S.dim + 1):
        pairs = sorted([a, b] for a, b in S.tilde_at(k))
        if pairs:
            doc["tilde"][str(k)] = pairs
    if S.relaxed_top:
        doc["relaxed_top"] = True
    if S.open_loops:
        doc["open_loops"] = sorted(S.open_loops)
    return doc


def dumps(S: OrderedFaceStructure) -> str:
    return json.dumps(to_document(S), sort_keys=True, indent=2) + "\n"


def _expect(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise ParseError(f"{where}: {msg}")


def from_document(doc: Any) -> OrderedFaceStructure:
    _expect(isinstance(doc, dict), "document", "expected a JSON object")
    unknown = set(doc) - {"faces", "gamma", "delta", "tilde", "relaxed_top", "open_loops"}
    _expect(not unknown, "document", f"unknown keys {sorted(unknown)}")
    faces = doc.get("faces")
    _expect(isinstance(faces, dict), "faces", "expected a map from dimension to names")
    parsed_faces = {}
    for k, names in faces.items():
        _expect(str(k).isdigit(), f"faces.{k}", "dimension must be a non-negative integer")
        _expect(isinstance(names, list) and all(isinstance(n, str) for n in names),
                f"faces.{k}", "expected a list of names")
        parsed_faces[int(k)] = names
    gamma = doc.get("gamma", {})
    delta = doc.get("delta", {})
    _expect(isinstance(gamma, dict), "gamma", "expected a map")
    _expect(isinstance(delta, dict), "delta", "expected a map")
    for a, v in delta.items():
        ok = isinstance(v, str) or (isinstance(v, list) and all(isinstance(x, str) for x in v)) or (
            isinstance(v, dict) and set(v) == {"empty"} and isinstance(v["empty"], str))
        _expect(ok, f"delta.{a}", "expected a list of names or {\"empty\": name}")
    tilde = []
    raw_tilde = doc.get("tilde", {})
    _expect(isinstance(raw_tilde, dict), "tilde", "expected a map from dimension to pairs")
    for k, pairs in raw_tilde.items():
        _expect(isinstance(pairs, list), f"tilde.{k}", "expected a list of pairs")
        for p in pairs:
            _expect(isinstance(p, list) and len(p) == 2, f"tilde.{k}", f"bad pair {p!r}")
            tilde.append((p[0], p[1]))
    relaxed = doc.get("relaxed_top", False)
    _expect(isinstance(relaxed, bool), "relaxed_top", "expected true or false")
    try:
        S = build(parsed_faces, gamma, delta, tilde, relaxed_top=relaxed)
    except OfsError as e:
        raise ParseError(f"{type(e).__name__}: {e}") from e
    for k, pairs in raw_tilde.items():
        for a, b in pairs:
            _expect(S.dims[a] == int(k), f"tilde.{k}", f"pair ({a}, {b}) is not of dimension {k}")
    loops = doc.get("open_loops", [])
    _expect(isinstance(loops, list) and all(x in S.dims for x in loops), "open_loops", "expected face names")
    return S.with_open(loops)


def loads(text: str) -> OrderedFaceStructure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}: {e.msg}") from e
    return from_document(doc)


def load(path: str) -> OrderedFaceStructure:
    with open(path, encoding="utf-8") as fh:
        try:
            return loads(fh.read())
        except ParseError as e:
            raise ParseError(f"{path}: {e}") from e


def save(S: OrderedFaceStructure, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(S))
