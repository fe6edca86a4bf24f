"""File-system layout shared by the CLI and the HTTP service.

A workspace directory holds lexicon.jsonl, phrases.json, paradigms/*.json
and optionally catch.json. The shipped demo set under minipair/data follows
the same layout.
"""

import importlib.resources
import pathlib

from .errors import FormatError, NotFoundError
from .lexicon import dump_lexicon, load_lexicon
from .templates import (
    dump_paradigm,
    dump_phrase_library,
    link,
    parse_paradigm,
    parse_phrase_library,
    PhraseLibrary,
)


def demo_data_path():
    return pathlib.Path(importlib.resources.files("minipair") / "data")


class Workspace:
    def __init__(self, root):
        self.root = pathlib.Path(root)
        if not self.root.is_dir():
            raise NotFoundError(f"workspace directory {self.root} not found")

    @property
    def lexicon_path(self):
        return self.root / "lexicon.jsonl"

    @property
    def phrases_path(self):
        return self.root / "phrases.json"

    @property
    def paradigms_dir(self):
        return self.root / "paradigms"

    def load_lexicon(self):
        with self.lexicon_path.open(encoding="utf-8") as fh:
            return load_lexicon(fh)

    def save_lexicon(self, lex):
        _atomic_write(self.lexicon_path, dump_lexicon(lex))

    def load_phrases(self):
        if not self.phrases_path.exists():
            return PhraseLibrary({})
        return parse_phrase_library(
            self.phrases_path.read_text(encoding="utf-8"))

    def save_phrases(self, lib):
        _atomic_write(self.phrases_path, dump_phrase_library(lib))

    def paradigm_ids(self):
        if not self.paradigms_dir.is_dir():
            return []
        return sorted(f.stem for f in self.paradigms_dir.glob("*.json"))

    def load_paradigm(self, pid):
        path = self.paradigms_dir / f"{pid}.json"
        if not path.exists():
            raise NotFoundError(f"paradigm {pid!r} not found", paradigm=pid)
        p = parse_paradigm(path.read_text(encoding="utf-8"))
        if p.id != pid:
            raise FormatError(
                f"paradigm file {path.name} declares id {p.id!r}", paradigm=pid)
        return p

    def load_paradigms(self):
        ids = self.paradigm_ids()
        seen = set()
        out = []
        for pid in ids:
            p = self.load_paradigm(pid)
            if p.id in seen:
                raise FormatError(f"duplicate paradigm id {p.id!r}")
            seen.add(p.id)
            out.append(p)
        return out

    def save_paradigm(self, paradigm):
        self.paradigms_dir.mkdir(exist_ok=True)
        _atomic_write(self.paradigms_dir / f"{paradigm.id}.json",
                      dump_paradigm(paradigm))

    def load_catch_paradigm(self):
        path = self.root / "catch.json"
        if not path.exists():
            raise NotFoundError("no catch.json in workspace")
        return parse_paradigm(path.read_text(encoding="utf-8"))

    def link(self, paradigm):
        return link(paradigm, self.load_phrases())


def _atomic_write(path, text):
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(path)
