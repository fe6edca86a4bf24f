import json

import pytest

from minipair.errors import FormatError, RuleError, UnresolvedPhraseError
from minipair.templates import (
    dump_paradigm,
    dump_phrase_library,
    link,
    parse_paradigm,
    parse_phrase_library,
    PhraseLibrary,
)

ANAPHOR = {
    "id": "anaphor_demo",
    "phenomenon": "anaphor",
    "source": "test",
    "good": [
        {"kind": "lexical", "constraints": {"pos": "NN", "class": "person"}},
        {"kind": "phrase", "phrase_name": "ReflV", "max_depth": 2},
        {"kind": "matched", "constraints": {"pos": "PN"}, "m_pos": 0,
         "m_feature": "gender", "polarity": "match"},
        {"kind": "direct", "literals": ["自己"]},
        {"kind": "direct", "literals": ["。"]},
    ],
    "bad": [
        {"kind": "lexical", "constraints": {"pos": "NN", "class": "person"}},
        {"kind": "phrase", "phrase_name": "ReflV", "max_depth": 2},
        {"kind": "matched", "constraints": {"pos": "PN"}, "m_pos": 0,
         "m_feature": "gender", "polarity": "mismatch"},
        {"kind": "direct", "literals": ["自己"]},
        {"kind": "direct", "literals": ["。"]},
    ],
}


def test_parse_anaphor_paradigm():
    p = parse_paradigm(json.dumps(ANAPHOR, ensure_ascii=False))
    assert len(p.good.rules) == 5
    kinds = [r.kind for r in p.good.rules]
    assert kinds == ["lexical", "phrase", "matched", "direct", "direct"]
    assert p.good.rules[2].m_pos == 0
    assert p.bad.rules[2].polarity == "mismatch"


def test_self_referencing_m_pos_rejected():
    bad = dict(ANAPHOR)
    bad["good"] = [dict(ANAPHOR["good"][0]),
                   {"kind": "matched", "constraints": {"pos": "PN"}, "m_pos": 1,
                    "m_feature": "gender", "polarity": "match"}]
    with pytest.raises(RuleError):
        parse_paradigm(bad)


def test_forward_m_pos_rejected():
    bad = dict(ANAPHOR)
    bad["good"] = [{"kind": "matched", "constraints": {"pos": "PN"}, "m_pos": 0,
                    "m_feature": "gender", "polarity": "match"},
                   dict(ANAPHOR["good"][0])]
    with pytest.raises(RuleError):
        parse_paradigm(bad)


def test_unknown_rule_kind_rejected():
    bad = dict(ANAPHOR)
    bad["good"] = [{"kind": "weird"}]
    with pytest.raises(RuleError):
        parse_paradigm(bad)


def test_degenerate_single_direct_paradigm_parses():
    p = parse_paradigm({
        "id": "hello", "phenomenon": "x", "source": "",
        "good": [{"kind": "direct", "literals": ["你好"]}],
        "bad": [{"kind": "direct", "literals": ["你好"]}]})
    assert len(p.good.rules) == 1


def test_empty_grammar_rejected():
    with pytest.raises(RuleError):
        parse_paradigm({"id": "x", "phenomenon": "x", "source": "",
                        "good": [], "bad": [{"kind": "direct", "literals": ["a"]}]})


def test_extra_rule_fields_rejected():
    bad = dict(ANAPHOR)
    bad["good"] = [{"kind": "direct", "literals": ["a"], "constraints": {}}]
    with pytest.raises(RuleError):
        parse_paradigm(bad)


def test_canonical_round_trip():
    p = parse_paradigm(ANAPHOR)
    text = dump_paradigm(p)
    again = parse_paradigm(text)
    assert again == p
    assert dump_paradigm(again) == text
    assert not any(line != line.rstrip() for line in text.splitlines())


def test_link_resolves_phrases(demo_phrases):
    p = parse_paradigm(ANAPHOR)
    linked = link(p, demo_phrases)
    assert linked.paradigm is p


def test_link_missing_phrase_named():
    p = parse_paradigm(ANAPHOR)
    with pytest.raises(UnresolvedPhraseError) as err:
        link(p, PhraseLibrary({}))
    assert err.value.details["phrase"] == "ReflV"


def test_link_vacuous_with_empty_library():
    p = parse_paradigm({
        "id": "x", "phenomenon": "x", "source": "",
        "good": [{"kind": "direct", "literals": ["好"]}],
        "bad": [{"kind": "direct", "literals": ["坏"]}]})
    link(p, PhraseLibrary({}))


def test_link_idempotent(demo_phrases):
    p = parse_paradigm(ANAPHOR)
    a = link(p, demo_phrases)
    b = link(p, demo_phrases)
    assert a == b


def test_phrase_library_round_trip(demo_phrases):
    text = dump_phrase_library(demo_phrases)
    again = parse_phrase_library(text)
    assert again == demo_phrases
    assert dump_phrase_library(again) == text


def test_phrase_library_single_alternative_shorthand():
    lib = parse_phrase_library(json.dumps(
        {"X": [{"kind": "direct", "literals": ["a"]}]}))
    assert len(lib.alternatives("X")) == 1


def test_bad_paradigm_id_rejected():
    bad = dict(ANAPHOR)
    bad["id"] = "Not A Slug!"
    with pytest.raises(FormatError):
        parse_paradigm(bad)
