"""Feature-annotated vocabulary with constraint queries.

The vocabulary file is UTF-8 JSONL: one object per line with a "surface"
string and a "features" object mapping feature names to string values.
Feature values are opaque atoms compared by exact equality.
"""

import json
from dataclasses import dataclass, field

from .errors import DuplicateEntryError, FormatError, MissingFeatureError


@dataclass(frozen=True)
class LexicalEntry:
    surface: str
    features: dict

    def __post_init__(self):
        if not self.surface or "\n" in self.surface:
            raise FormatError(f"bad surface form: {self.surface!r}")
        for name, value in self.features.items():
            if not isinstance(name, str) or not name:
                raise FormatError(f"empty feature name in entry {self.surface!r}")
            if not isinstance(value, str) or not value:
                raise FormatError(
                    f"empty value for feature {name!r} in entry {self.surface!r}")

    def key(self):
        return (self.surface, tuple(sorted(self.features.items())))

    def to_dict(self):
        return {"surface": self.surface, "features": dict(self.features)}


@dataclass
class Lexicon:
    entries: list = field(default_factory=list)
    _index: dict = field(default_factory=dict, repr=False)
    _keys: set = field(default_factory=set, repr=False)

    def __len__(self):
        return len(self.entries)

    def add(self, entry):
        """Append one entry and update the index. Rejects exact duplicates."""
        k = entry.key()
        if k in self._keys:
            raise DuplicateEntryError(f"duplicate entry {entry.surface!r}")
        pos = len(self.entries)
        self.entries.append(entry)
        self._keys.add(k)
        for name, value in entry.features.items():
            self._index.setdefault((name, value), []).append(pos)

    def query(self, constraints):
        """All entries whose features contain every constraint pair, in file order."""
        if not constraints:
            raise FormatError("query constraints must be non-empty")
        # Intersect index postings, smallest first.
        postings = []
        for name, value in constraints.items():
            p = self._index.get((name, value))
            if not p:
                return []
            postings.append(p)
        postings.sort(key=len)
        hit = set(postings[0])
        for p in postings[1:]:
            hit &= set(p)
        return [self.entries[i] for i in sorted(hit)]

    def query_matched(self, constraints, referent, feature, polarity):
        """Filter query() by (dis)agreement with `referent` on `feature`.

        Entries lacking the feature are excluded under both polarities.
        """
        if feature not in referent.features:
            raise MissingFeatureError(
                f"referent {referent.surface!r} lacks feature {feature!r}",
                feature=feature)
        ref_value = referent.features[feature]
        out = []
        for e in self.query(constraints):
            v = e.features.get(feature)
            if v is None:
                continue
            if (v == ref_value) == (polarity == "match"):
                out.append(e)
        return out


def parse_entry(obj, where=""):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}record is not an object")
    extra = set(obj) - {"surface", "features"}
    if extra:
        raise FormatError(f"{where}unknown fields {sorted(extra)}")
    if "surface" not in obj or "features" not in obj:
        raise FormatError(f"{where}record needs 'surface' and 'features'")
    if not isinstance(obj["features"], dict):
        raise FormatError(f"{where}'features' must be an object")
    return LexicalEntry(obj["surface"], dict(obj["features"]))


def load_lexicon(stream):
    """Load a Lexicon from a JSONL text stream (or iterable of lines)."""
    lex = Lexicon()
    n_lines = 0
    for lineno, line in enumerate(stream, start=1):
        n_lines += 1
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"line {lineno}: invalid JSON: {exc}", line=lineno)
        try:
            entry = parse_entry(obj, where=f"line {lineno}: ")
        except DuplicateEntryError:
            raise
        except FormatError as exc:
            raise FormatError(str(exc), line=lineno)
        try:
            lex.add(entry)
        except DuplicateEntryError as exc:
            raise DuplicateEntryError(f"line {lineno}: {exc.message}", line=lineno)
    if len(lex) == 0:
        raise FormatError("empty vocabulary file")
    return lex


def dump_lexicon(lex):
    """Serialize back to the JSONL form load_lexicon reads (round-trip exact)."""
    lines = []
    for e in lex.entries:
        lines.append(json.dumps(
            {"surface": e.surface, "features": dict(sorted(e.features.items()))},
            ensure_ascii=False, separators=(", ", ": ")))
    return "\n".join(lines) + "\n"
