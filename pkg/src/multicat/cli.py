"""Command-line surface: validate, free, stats, diff.

Exit codes: 0 success, 1 axiom violations or bound/budget failures,
2 I/O or parse errors.  ``MULTICAT_BUDGET`` caps search and saturation
work for the free constructions.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import MultipleSet, validate_multiple_set
from .errors import MulticatError, ParseError
from .magma import MagmaStructure, composable_pairs, validate_magma, validate_reflexive_magma
from .reflexive import ReflexiveStructure, free_reflexive, validate_reflexive
from .reversors import ReversorStructure, validate_reversors
from .serialize import from_document, serialize, to_document
from .strictcat import class_counts, free_strict, quotient_to_category, validate_strict
from .stretching import Stretching, free_weak, validate_stretching


def _read_document(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("document is not an object")
    return doc


def _load(path: str, kind_override: str | None = None):
    doc = _read_document(path)
    if kind_override is not None:
        doc = {**doc, "kind": kind_override}
    return from_document(doc), doc


def _validate_any(obj, args):
    if isinstance(obj, Stretching):
        return validate_stretching(obj)
    if isinstance(obj, ReversorStructure):
        return validate_reversors(obj)
    if isinstance(obj, MagmaStructure):
        if getattr(args, "strict", False) or getattr(args, "_doc_kind", None) == "strict":
            return validate_strict(obj)
        if obj.refl is not None:
            return validate_reflexive_magma(obj)
        return validate_magma(obj)
    if isinstance(obj, ReflexiveStructure):
        return validate_reflexive(obj)
    if isinstance(obj, MultipleSet):
        return validate_multiple_set(obj)
    raise TypeError(f"cannot validate {type(obj).__name__}")


def cmd_validate(args) -> int:
    obj, doc = _load(args.path, args.kind)
    args._doc_kind = doc.get("kind")
    report = _validate_any(obj, args)
    if args.format == "json":
        print(json.dumps(report.to_json(), sort_keys=True))
    elif report.ok:
        print("ok")
    else:
        print(report.render())
    return 0 if report.ok else 1


def _print_counts(counts: dict, label: str):
    for c in sorted(counts, key=lambda c: (len(c), c)):
        print(f"{label} color={list(c)} count={counts[c]}")


def cmd_free(args) -> int:
    obj, doc = _load(args.path)
    if not isinstance(obj, MultipleSet):
        if isinstance(obj, (MagmaStructure, ReflexiveStructure)):
            obj = obj.base
        else:
            raise ParseError("free constructions take a multiple-set document")
    dim = args.dim if args.dim is not None else obj.dim_bound

    if args.mode == "reflexive":
        result = free_reflexive(obj, dim)
        counts = {c: len(result.base.cells_at(c)) for c in result.base.colors()}
        _print_counts(counts, "cells")
        out_obj, out_kind = result, "reflexive"
    elif args.mode == "strict":
        pres = free_strict(obj, dim, args.size, budget=args.budget)
        _print_counts(class_counts(pres), "classes")
        out_obj, out_kind = quotient_to_category(pres), "strict"
    else:
        fw = free_weak(
            obj,
            m=args.m,
            dim_bound=dim,
            size_bound=args.size,
            stages=args.stages,
            budget=args.budget,
        )
        base = fw.stretching.magma.base
        counts = {c: len(base.cells_at(c)) for c in base.colors()}
        _print_counts(counts, "cells")
        brackets = {}
        for (c, r), tab in fw.stretching.brackets.items():
            key = tuple(sorted(set(c) | {r}))
            brackets[key] = brackets.get(key, 0) + len(tab)
        _print_counts(brackets, "brackets")
        for i, entry in enumerate(fw.stage_log, start=1):
            print(f"stage {i}: " + " ".join(f"{k}={v}" for k, v in sorted(entry.items())))
        out_obj, out_kind = fw.stretching, "stretching"

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize(out_obj, out_kind))
    return 0


def cmd_stats(args) -> int:
    obj, doc = _load(args.path)
    base = obj.base if hasattr(obj, "base") else obj
    if isinstance(obj, Stretching):
        base = obj.magma.base
    stats = {
        "cells": {str(list(c)): len(base.cells_at(c)) for c in base.colors()},
        "composable_pairs": {},
        "brackets": {},
    }
    for c in base.colors():
        for d in c:
            try:
                pairs = composable_pairs(base, c, d)
            except MulticatError:
                continue
            stats["composable_pairs"][f"{list(c)}/{d}"] = len(pairs)
    if isinstance(obj, Stretching):
        for (c, r), tab in sorted(obj.brackets.items(), key=lambda kv: (len(kv[0][0]), kv[0])):
            stats["brackets"][f"{list(c)}+{r}"] = len(tab)
        if obj.stage_log:
            stats["stage_log"] = obj.stage_log
    if args.format == "json":
        print(json.dumps(stats, sort_keys=True))
        return 0
    for key, val in stats["cells"].items():
        print(f"cells color={key} count={val}")
    for key, val in stats["composable_pairs"].items():
        print(f"pairs {key} count={val}")
    for key, val in stats["brackets"].items():
        print(f"brackets {key} count={val}")
    for i, entry in enumerate(stats.get("stage_log", []), start=1):
        print(f"stage {i}: " + " ".join(f"{k}={v}" for k, v in sorted(entry.items())))
    return 0


def _flatten(doc, prefix=""):
    out = {}
    if isinstance(doc, dict):
        for k in sorted(doc):
            out.update(_flatten(doc[k], f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(doc, list):
        # record lists: compare as sets of rendered rows
        out[prefix] = {json.dumps(item, sort_keys=True) for item in doc}
    else:
        out[prefix] = doc
    return out


def cmd_diff(args) -> int:
    obj_a, _ = _load(args.path_a)
    obj_b, _ = _load(args.path_b)
    canon_a = to_document(obj_a)
    canon_b = to_document(obj_b)
    flat_a = _flatten(canon_a)
    flat_b = _flatten(canon_b)
    diffs = []
    for key in sorted(set(flat_a) | set(flat_b)):
        va, vb = flat_a.get(key), flat_b.get(key)
        if va == vb:
            continue
        if isinstance(va, set) or isinstance(vb, set):
            va = va or set()
            vb = vb or set()
            for row in sorted(va - vb):
                diffs.append(f"- {key}: {row}")
            for row in sorted(vb - va):
                diffs.append(f"+ {key}: {row}")
        else:
            diffs.append(f"! {key}: {va!r} != {vb!r}")
    if args.format == "json":
        print(json.dumps({"equal": not diffs, "diffs": diffs}))
    else:
        for line in diffs:
            print(line)
        if not diffs:
            print("identical")
    return 0 if not diffs else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multicat")
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="validate a structure document")
    p_val.add_argument("path")
    p_val.add_argument("--kind", choices=(
        "multiple-set", "reflexive", "magma", "strict", "reversors", "stretching"
    ), help="override the document's kind field")
    p_val.add_argument("--strict", action="store_true",
                       help="check the strict-category axioms on a magma document")
    p_val.add_argument("--format", choices=("text", "json"), default="text")
    p_val.set_defaults(func=cmd_validate)

    p_free = sub.add_parser("free", help="run a free construction")
    p_free.add_argument("mode", choices=("reflexive", "strict", "weak"))
    p_free.add_argument("path")
    p_free.add_argument("--dim", type=int, default=None, help="dimension bound N")
    p_free.add_argument("--size", type=int, default=10, help="term size bound")
    p_free.add_argument("--stages", type=int, default=1)
    p_free.add_argument("--m", type=int, default=None, help="reversibility cutoff")
    p_free.add_argument("--budget", type=int, default=None)
    p_free.add_argument("--out", default=None, help="write the result document here")
    p_free.set_defaults(func=cmd_free)

    p_stats = sub.add_parser("stats", help="summarize a structure document")
    p_stats.add_argument("path")
    p_stats.add_argument("--format", choices=("text", "json"), default="text")
    p_stats.set_defaults(func=cmd_stats)

    p_diff = sub.add_parser("diff", help="structural diff of two documents")
    p_diff.add_argument("path_a")
    p_diff.add_argument("path_b")
    p_diff.add_argument("--format", choices=("text", "json"), default="text")
    p_diff.set_defaults(func=cmd_diff)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MulticatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
