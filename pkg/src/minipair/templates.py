"""Grammar-template representation: rules, grammars, paradigms, phrase library.

A paradigm file is a JSON object with fields id, phenomenon, source, good,
bad; good/bad are arrays of rule objects discriminated by "kind". The
canonical serialization is JSON with sorted keys and 2-space indentation.

A phrase library file maps phrase-name to either a rule array (single
expansion) or an array of rule arrays (alternative expansions). Alternatives
are what make recursive phrases terminate: at the depth limit only
non-recursive alternatives remain admissible.
"""

import json
import re
from dataclasses import dataclass, field

from .errors import FormatError, RuleError, UnresolvedPhraseError

KINDS = ("lexical", "direct", "matched", "phrase")
DEFAULT_MAX_DEPTH = 2

_ID_RE = re.compile(r"^[a-z0-9][a-z0-9_-]*$")


@dataclass(frozen=True)
class Rule:
    kind: str
    constraints: tuple = ()          # lexical, matched: sorted (name, value) pairs
    literals: tuple = ()             # direct
    m_pos: int = -1                  # matched
    m_feature: str = ""              # matched
    polarity: str = ""               # matched: "match" | "mismatch"
    phrase_name: str = ""            # phrase
    max_depth: int = 0               # phrase

    @property
    def constraints_map(self):
        return dict(self.constraints)

    def to_dict(self):
        if self.kind == "lexical":
            return {"kind": "lexical", "constraints": dict(self.constraints)}
        if self.kind == "direct":
            return {"kind": "direct", "literals": list(self.literals)}
        if self.kind == "matched":
            return {"kind": "matched", "constraints": dict(self.constraints),
                    "m_pos": self.m_pos, "m_feature": self.m_feature,
                    "polarity": self.polarity}
        return {"kind": "phrase", "phrase_name": self.phrase_name,
                "max_depth": self.max_depth}


def _constraints_tuple(obj, where):
    if not isinstance(obj, dict) or not obj:
        raise RuleError(f"{where}: 'constraints' must be a non-empty object")
    for k, v in obj.items():
        if not k or not isinstance(v, str) or not v:
            raise RuleError(f"{where}: bad constraint {k!r}: {v!r}")
    return tuple(sorted(obj.items()))


def parse_rule(obj, position, where=""):
    """Parse one rule object; `position` is its 0-based index in the grammar."""
    w = f"{where}rule {position}"
    if not isinstance(obj, dict):
        raise RuleError(f"{w}: not an object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise RuleError(f"{w}: unknown rule kind {kind!r}")
    fields = set(obj) - {"kind"}
    if kind == "lexical":
        if fields != {"constraints"}:
            raise RuleError(f"{w}: lexical rule takes exactly 'constraints'")
        return Rule("lexical", constraints=_constraints_tuple(obj["constraints"], w))
    if kind == "direct":
        if fields != {"literals"}:
            raise RuleError(f"{w}: direct rule takes exactly 'literals'")
        lits = obj["literals"]
        if (not isinstance(lits, list) or not lits
                or any(not isinstance(s, str) or not s for s in lits)):
            raise RuleError(f"{w}: 'literals' must be a non-empty list of non-empty strings")
        return Rule("direct", literals=tuple(lits))
    if kind == "matched":
        if fields != {"constraints", "m_pos", "m_feature", "polarity"}:
            raise RuleError(
                f"{w}: matched rule takes 'constraints', 'm_pos', 'm_feature', 'polarity'")
        m_pos = obj["m_pos"]
        if not isinstance(m_pos, int) or m_pos < 0 or m_pos >= position:
            raise RuleError(
                f"{w}: m_pos must reference a strictly earlier position, got {m_pos!r}")
        if obj["polarity"] not in ("match", "mismatch"):
            raise RuleError(f"{w}: polarity must be 'match' or 'mismatch'")
        if not isinstance(obj["m_feature"], str) or not obj["m_feature"]:
            raise RuleError(f"{w}: m_feature must be a non-empty string")
        return Rule("matched", constraints=_constraints_tuple(obj["constraints"], w),
                    m_pos=m_pos, m_feature=obj["m_feature"], polarity=obj["polarity"])
    # phrase
    if fields - {"phrase_name", "max_depth"} or "phrase_name" not in fields:
        raise RuleError(f"{w}: phrase rule takes 'phrase_name' and optional 'max_depth'")
    name = obj["phrase_name"]
    if not isinstance(name, str) or not name:
        raise RuleError(f"{w}: phrase_name must be a non-empty string")
    depth = obj.get("max_depth", DEFAULT_MAX_DEPTH)
    if not isinstance(depth, int) or depth < 1:
        raise RuleError(f"{w}: max_depth must be a positive integer")
    return Rule("phrase", phrase_name=name, max_depth=depth)


@dataclass(frozen=True)
class Grammar:
    rules: tuple

    def to_list(self):
        return [r.to_dict() for r in self.rules]


def parse_grammar(arr, where=""):
    if not isinstance(arr, list) or not arr:
        raise RuleError(f"{where}grammar must be a non-empty rule array")
    return Grammar(tuple(parse_rule(obj, i, where) for i, obj in enumerate(arr)))


@dataclass(frozen=True)
class Paradigm:
    id: str
    phenomenon: str
    source: str
    good: Grammar
    bad: Grammar

    def to_dict(self):
        return {"id": self.id, "phenomenon": self.phenomenon, "source": self.source,
                "good": self.good.to_list(), "bad": self.bad.to_list()}

    def phrase_names(self):
        names = set()
        for g in (self.good, self.bad):
            for r in g.rules:
                if r.kind == "phrase":
                    names.add(r.phrase_name)
        return names


def parse_paradigm(source):
    """Parse and validate one paradigm from JSON text or a parsed object."""
    obj = json.loads(source) if isinstance(source, (str, bytes)) else source
    if not isinstance(obj, dict):
        raise FormatError("paradigm must be a JSON object")
    missing = {"id", "phenomenon", "source", "good", "bad"} - set(obj)
    if missing:
        raise FormatError(f"paradigm missing fields {sorted(missing)}")
    extra = set(obj) - {"id", "phenomenon", "source", "good", "bad"}
    if extra:
        raise FormatError(f"paradigm has unknown fields {sorted(extra)}")
    pid = obj["id"]
    if not isinstance(pid, str) or not _ID_RE.match(pid):
        raise FormatError(f"paradigm id must be a slug, got {pid!r}")
    return Paradigm(
        id=pid, phenomenon=str(obj["phenomenon"]), source=str(obj["source"]),
        good=parse_grammar(obj["good"], where=f"{pid}/good: "),
        bad=parse_grammar(obj["bad"], where=f"{pid}/bad: "))


def dump_paradigm(paradigm):
    """Canonical serialization: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(paradigm.to_dict(), ensure_ascii=False,
                      sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class PhraseLibrary:
    phrases: dict = field(default_factory=dict)   # name -> tuple of Grammar

    def __contains__(self, name):
        return name in self.phrases

    def alternatives(self, name):
        try:
            return self.phrases[name]
        except KeyError:
            raise UnresolvedPhraseError(f"unknown phrase {name!r}", phrase=name)

    def to_dict(self):
        return {name: [g.to_list() for g in alts]
                for name, alts in self.phrases.items()}


def parse_phrase_library(source):
    obj = json.loads(source) if isinstance(source, (str, bytes)) else source
    if not isinstance(obj, dict):
        raise FormatError("phrase library must be a JSON object")
    phrases = {}
    for name, value in obj.items():
        if not isinstance(value, list) or not value:
            raise FormatError(f"phrase {name!r}: value must be a non-empty array")
        # Single rule array is shorthand for one alternative.
        alts = value if isinstance(value[0], list) else [value]
        phrases[name] = tuple(
            parse_grammar(alt, where=f"phrase {name!r}[{i}]: ")
            for i, alt in enumerate(alts))
    return PhraseLibrary(phrases)


def dump_phrase_library(lib):
    return json.dumps(lib.to_dict(), ensure_ascii=False,
                      sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class LinkedParadigm:
    paradigm: Paradigm
    library: PhraseLibrary


def link(paradigm, library):
    """Check every phrase reference resolves; snapshot the library.

    Recursion is not expanded here; that happens at generation time under
    each rule's depth budget.
    """
    seen = set()
    todo = []
    for side, g in (("good", paradigm.good), ("bad", paradigm.bad)):
        for i, r in enumerate(g.rules):
            if r.kind == "phrase":
                todo.append((f"{side}[{i}]", r.phrase_name))
    while todo:
        where, name = todo.pop()
        if name in seen:
            continue
        seen.add(name)
        if name not in library:
            raise UnresolvedPhraseError(
                f"{where}: unresolved phrase {name!r}", phrase=name, position=where)
        for alt in library.alternatives(name):
            for j, r in enumerate(alt.rules):
                if r.kind == "phrase":
                    todo.append((f"{name}[{j}]", r.phrase_name))
    return LinkedParadigm(paradigm, library)
