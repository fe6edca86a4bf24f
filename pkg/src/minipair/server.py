"""HTTP API backing the authoring UI.

All request/response bodies reuse the on-disk file formats; state lives in
the workspace files, so the CLI and the UI always see the same data.
Paradigm saves carry a content-hash version for conflict warnings.
"""

import hashlib

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import FormatError, MinipairError, NotFoundError
from .generate import (
    dump_pairs,
    generate_paradigm,
    pair_from_record,
    pair_to_record,
)
from .lexicon import parse_entry
from .scoring import ngram_scorer, score_paradigm
from .templates import dump_paradigm, parse_paradigm, parse_phrase_library, link

_STATUS = {
    "not_found": 404,
    "duplicate_entry": 409,
    "version_conflict": 409,
}


def _version_of(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def create_app(workspace, frontend_dir=None):
    app = FastAPI(title="minipair authoring service")

    @app.exception_handler(MinipairError)
    async def _minipair_error(_request: Request, exc: MinipairError):
        status = _STATUS.get(exc.code, 422)
        return JSONResponse(status_code=status, content={"error": exc.to_dict()})

    @app.get("/api/paradigms")
    def list_paradigms():
        out = []
        for pid in workspace.paradigm_ids():
            p = workspace.load_paradigm(pid)
            out.append({"id": p.id, "phenomenon": p.phenomenon})
        return {"paradigms": out}

    @app.get("/api/paradigms/{pid}")
    def get_paradigm(pid: str):
        p = workspace.load_paradigm(pid)
        text = dump_paradigm(p)
        return {"paradigm": p.to_dict(), "version": _version_of(text)}

    @app.put("/api/paradigms/{pid}")
    async def put_paradigm(pid: str, request: Request):
        body = await request.json()
        expect = body.pop("expect_version", None)
        p = parse_paradigm(body.get("paradigm", body))
        if p.id != pid:
            raise FormatError(f"body id {p.id!r} does not match path {pid!r}")
        if expect is not None:
            try:
                current = _version_of(dump_paradigm(workspace.load_paradigm(pid)))
            except NotFoundError:
                current = None
            if current is not None and current != expect:
                exc = MinipairError(
                    f"paradigm {pid!r} changed since it was loaded")
                exc.code = "version_conflict"
                raise exc
        workspace.save_paradigm(p)
        return {"paradigm": p.to_dict(), "version": _version_of(dump_paradigm(p))}

    @app.get("/api/phrases")
    def get_phrases():
        return {"phrases": workspace.load_phrases().to_dict()}

    @app.put("/api/phrases")
    async def put_phrases(request: Request):
        body = await request.json()
        lib = parse_phrase_library(body.get("phrases", body))
        workspace.save_phrases(lib)
        return {"phrases": lib.to_dict()}

    @app.get("/api/lexicon/search")
    def search_lexicon(request: Request):
        constraints = dict(request.query_params)
        limit = int(constraints.pop("limit", "50"))
        lex = workspace.load_lexicon()
        if constraints:
            hits = lex.query(constraints)
        else:
            hits = lex.entries
        return {"total": len(hits),
                "entries": [e.to_dict() for e in hits[:limit]]}

    @app.post("/api/lexicon/entries")
    async def add_entry(request: Request):
        entry = parse_entry(await request.json())
        lex = workspace.load_lexicon()
        lex.add(entry)
        workspace.save_lexicon(lex)
        return {"entry": entry.to_dict(), "size": len(lex)}

    @app.post("/api/preview")
    async def preview(request: Request):
        body = await request.json()
        paradigm = parse_paradigm(body["paradigm"])
        n = int(body.get("n", 5))
        seed = int(body.get("seed", 0))
        linked = link(paradigm, workspace.load_phrases())
        lex = workspace.load_lexicon()
        pairs, report = generate_paradigm(linked, lex, n, seed)
        return {
            "pairs": [pair_to_record(p) for p in pairs],
            "jsonl": dump_pairs(pairs),
            "report": report.to_dict(),
        }

    @app.post("/api/preview/score")
    async def preview_score(request: Request):
        body = await request.json()
        pairs = [pair_from_record(r) for r in body["pairs"]]
        if not pairs:
            raise FormatError("no pairs to score")
        corpus = body.get("corpus")
        if not corpus:
            # Self-corpus oracle: train on the good sentences being previewed.
            corpus = "\n".join(p.good.text for p in pairs)
        backend = ngram_scorer(corpus, int(body.get("order", 2)))
        res = score_paradigm(backend, pairs)
        return {"paradigm_id": res.paradigm_id, "n_pairs": res.n_pairs,
                "n_correct": res.n_correct, "accuracy": res.accuracy}

    if frontend_dir is not None:
        app.mount("/", StaticFiles(directory=frontend_dir, html=True),
                  name="frontend")

    return app
