"""Canonical document format shared by the CLI and the golden tests.

One self-describing JSON layout for every structure kind; the ``kind``
field dispatches.  Colors render as sorted integer arrays, tables as
sorted record lists, and the byte rendering is canonical: sorted keys,
two-space indent, trailing newline.  ``serialize(parse(text))`` is the
identity on canonical documents.
"""

from __future__ import annotations

import json

from .colors import Color, make_color
from .core import MultipleSet
from .errors import ParseError
from .magma import MagmaStructure
from .reflexive import ReflexiveStructure
from .reversors import ReversorStructure, make_chain
from .stretching import Stretching

FORMAT_VERSION = 1

KINDS = ("multiple-set", "reflexive", "magma", "strict", "reversors", "stretching")


def _color_key(c: Color):
    return (len(c), c)


def _ms_body(ms: MultipleSet) -> dict:
    body = {
        "universe_bound": ms.universe_bound,
        "dim_bound": ms.dim_bound,
        "cells": [
            [list(c), sorted(ms.cells[c])]
            for c in sorted(ms.cells, key=_color_key)
            if ms.cells[c]
        ],
        "faces": [],
    }
    for c in sorted(ms.cells, key=_color_key):
        for d in c:
            stab = ms.src.get((c, d), {})
            ttab = ms.tgt.get((c, d), {})
            for x in sorted(ms.cells[c]):
                body["faces"].append([list(c), d, x, stab.get(x), ttab.get(x)])
    return body


def _refl_records(refl: ReflexiveStructure) -> list:
    out = []
    for (c, l) in sorted(refl.refl, key=lambda k: (_color_key(k[0]), k[1])):
        for x, dx in sorted(refl.refl[(c, l)].items()):
            out.append([list(c), l, x, dx])
    return out


def _comp_records(m: MagmaStructure) -> list:
    out = []
    for (c, d) in sorted(m.comp, key=lambda k: (_color_key(k[0]), k[1])):
        for (a, b), r in sorted(m.comp[(c, d)].items()):
            out.append([list(c), d, a, b, r])
    return out


def _magma_body(m: MagmaStructure) -> dict:
    body = _ms_body(m.base)
    body["comp"] = _comp_records(m)
    if m.refl is not None:
        body["refl"] = _refl_records(m.refl)
    return body


def to_document(obj, kind: str | None = None) -> dict:
    """Build the plain-dict document for any supported structure."""
    if isinstance(obj, MultipleSet):
        kind = kind or "multiple-set"
        body = _ms_body(obj)
    elif isinstance(obj, ReflexiveStructure):
        kind = kind or "reflexive"
        body = _ms_body(obj.base)
        body["refl"] = _refl_records(obj)
    elif isinstance(obj, MagmaStructure):
        kind = kind or "magma"
        body = _magma_body(obj)
    elif isinstance(obj, ReversorStructure):
        kind = kind or "reversors"
        body = _ms_body(obj.base)
        body["m"] = obj.m
        body["reversor_kind"] = obj.kind
        body["chains"] = [
            [
                list(ch.color),
                list(ch.entries),
                [[list(pair) for pair in level] for level in ch.maps],
            ]
            for ch in sorted(obj.chains, key=lambda ch: (ch.color, ch.entries, ch.maps))
        ]
    elif isinstance(obj, Stretching):
        kind = kind or "stretching"
        body = {
            "magma": _magma_body(obj.magma),
            "cat": _magma_body(obj.cat),
            "pi": [
                [list(c), x, obj.pi[c][x]]
                for c in sorted(obj.pi, key=_color_key)
                for x in sorted(obj.pi[c])
            ],
            "brackets": [
                [list(c), r, a, b, cell]
                for (c, r) in sorted(obj.brackets, key=lambda k: (_color_key(k[0]), k[1]))
                for (a, b), cell in sorted(obj.brackets[(c, r)].items())
            ],
        }
        if obj.m is not None:
            body["m"] = obj.m
        if obj.stage_log is not None:
            body["stage_log"] = obj.stage_log
        if obj.stage_of is not None:
            body["stage"] = obj.stage
            body["stage_of"] = [
                [list(c), x, s]
                for (c, x), s in sorted(
                    obj.stage_of.items(), key=lambda kv: (_color_key(kv[0][0]), kv[0][1])
                )
            ]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    if kind not in KINDS:
        raise ValueError(f"unknown document kind {kind!r}")
    return {"format_version": FORMAT_VERSION, "kind": kind, **body}


def serialize(obj, kind: str | None = None) -> str:
    doc = to_document(obj, kind)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _require(doc: dict, key: str):
    if key not in doc:
        raise ParseError(f"document missing required field {key!r}")
    return doc[key]


def _parse_ms(doc: dict) -> MultipleSet:
    try:
        ms = MultipleSet(int(_require(doc, "universe_bound")), int(_require(doc, "dim_bound")))
        for entry in _require(doc, "cells"):
            color_raw, ids = entry
            c = make_color(color_raw)
            ms.cells[c] = [str(x) for x in ids]
        for color_raw, d, x, s, t in _require(doc, "faces"):
            c = make_color(color_raw)
            ms.src.setdefault((c, int(d)), {})[str(x)] = s
            ms.tgt.setdefault((c, int(d)), {})[str(x)] = t
        return ms
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed multiple-set body: {exc}") from exc


def _parse_refl(doc: dict, base: MultipleSet) -> ReflexiveStructure:
    refl = ReflexiveStructure(base=base)
    try:
        for color_raw, l, x, dx in doc.get("refl", []):
            refl.refl.setdefault((make_color(color_raw), int(l)), {})[str(x)] = str(dx)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed reflexive table: {exc}") from exc
    return refl


def _parse_magma(doc: dict) -> MagmaStructure:
    base = _parse_ms(doc)
    m = MagmaStructure(base=base)
    if "refl" in doc:
        m.refl = _parse_refl(doc, base)
    try:
        for color_raw, d, a, b, r in doc.get("comp", []):
            m.comp.setdefault((make_color(color_raw), int(d)), {})[(str(a), str(b))] = str(r)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed composition table: {exc}") from exc
    return m


def from_document(doc: dict):
    """Rebuild the structure named by the document's ``kind``."""
    if not isinstance(doc, dict):
        raise ParseError("document is not an object")
    version = _require(doc, "format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}")
    kind = _require(doc, "kind")
    if kind not in KINDS:
        raise ParseError(f"unknown document kind {kind!r}")
    if kind == "multiple-set":
        return _parse_ms(doc)
    if kind == "reflexive":
        return _parse_refl(doc, _parse_ms(doc))
    if kind in ("magma", "strict"):
        return _parse_magma(doc)
    if kind == "reversors":
        base = _parse_ms(doc)
        try:
            chains = [
                make_chain(
                    make_color(color_raw),
                    [int(e) for e in entries],
                    [dict((str(x), str(y)) for x, y in level) for level in levels],
                )
                for color_raw, entries, levels in doc.get("chains", [])
            ]
            return ReversorStructure(
                base=base,
                m=int(_require(doc, "m")),
                kind=str(_require(doc, "reversor_kind")),
                chains=chains,
            )
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed reversor chains: {exc}") from exc
    # stretching
    try:
        magma = _parse_magma(_require(doc, "magma"))
        cat = _parse_magma(_require(doc, "cat"))
        pi: dict = {}
        for color_raw, x, px in _require(doc, "pi"):
            pi.setdefault(make_color(color_raw), {})[str(x)] = str(px)
        brackets: dict = {}
        for color_raw, r, a, b, cell in doc.get("brackets", []):
            brackets.setdefault((make_color(color_raw), int(r)), {})[
                (str(a), str(b))
            ] = str(cell)
        stage_of = None
        if "stage_of" in doc:
            stage_of = {
                (make_color(color_raw), str(x)): int(s)
                for color_raw, x, s in doc["stage_of"]
            }
        return Stretching(
            magma=magma, cat=cat, pi=pi, brackets=brackets, m=doc.get("m"),
            stage_of=stage_of, stage=int(doc.get("stage", 0)),
            stage_log=doc.get("stage_log"),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed stretching body: {exc}") from exc


def parse(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return from_document(doc)


def document_kind(text: str) -> str:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError("document has no kind field")
    return doc["kind"]


def load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(obj, path: str, kind: str | None = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(obj, kind))
