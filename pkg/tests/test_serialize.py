import json
import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import multicat as mc
from multicat import fixtures as fx
from multicat.serialize import document_kind, from_document, parse, serialize, to_document

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_paths():
    return sorted(
        os.path.join(FIXTURE_DIR, f)
        for f in os.listdir(FIXTURE_DIR)
        if f.endswith(".mset")
    )


@pytest.mark.parametrize("path", fixture_paths(), ids=os.path.basename)
def test_fixture_roundtrip_byte_exact(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    obj = parse(text)
    assert serialize(obj, document_kind(text)) == text


def test_parse_serialize_canonicalizes():
    # scrambled but equivalent document reserializes canonically
    sq = fx.square()
    doc = to_document(sq)
    doc["cells"] = list(reversed(doc["cells"]))
    scrambled = json.dumps(doc) + "\n"
    assert serialize(parse(scrambled)) == serialize(sq)


def test_every_kind_roundtrips():
    objs = [
        (fx.square(), "multiple-set"),
        (mc.free_reflexive(fx.point(2, 2), 2), "reflexive"),
        (fx.pair_groupoid(2), "magma"),
        (fx.pair_groupoid(2), "strict"),
        (mc.search_reversors(fx.pair_groupoid(2), 0, "minimal")[0], "reversors"),
        (mc.identity_stretching(fx.pair_groupoid(2)), "stretching"),
    ]
    for obj, kind in objs:
        text = serialize(obj, kind)
        again = serialize(parse(text), kind)
        assert text == again
        assert document_kind(text) == kind


def test_parse_rejects_bad_json():
    with pytest.raises(mc.ParseError) as exc:
        parse("{not json")
    assert exc.value.line == 1


def test_parse_rejects_missing_fields():
    with pytest.raises(mc.ParseError):
        parse('{"format_version": 1}')
    with pytest.raises(mc.ParseError):
        parse('{"format_version": 1, "kind": "nope"}')
    with pytest.raises(mc.ParseError):
        parse('{"format_version": 99, "kind": "multiple-set"}')


def test_parse_rejects_malformed_body():
    doc = {
        "format_version": 1,
        "kind": "multiple-set",
        "universe_bound": 1,
        "dim_bound": 1,
        "cells": [["oops", ["x"]]],
        "faces": [],
    }
    with pytest.raises(mc.ParseError):
        from_document(doc)


def test_parsed_structures_validate_like_originals():
    text = serialize(fx.square())
    assert mc.validate_multiple_set(parse(text)).ok
    bad = fx.square()
    bad.src[((1, 2), 2)] = {"A": "e1"}
    report = mc.validate_multiple_set(parse(serialize(bad)))
    assert not report.ok


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2), st.integers(0, 999))
def test_random_multiple_sets_roundtrip(d, sizes, seed):
    ms = mc.random_multiple_set(d, d, sizes=sizes, seed=seed)
    text = serialize(ms)
    assert serialize(parse(text)) == text
