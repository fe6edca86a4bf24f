"""Command-line entry point: generate, score, analyze, validate, serve.

Every command is reproducible: all randomness comes from --seed options with
constant defaults, never from the clock.
"""

import argparse
import concurrent.futures
import json
import math
import pathlib
import sys

from . import analysis, scoring, validation
from .errors import MinipairError
from .generate import dump_pairs, generate_paradigm, load_pairs
from .workspace import Workspace, demo_data_path, _atomic_write

DEFAULT_SEED = 20240613


def _workspace(args):
    root = args.workspace if args.workspace else demo_data_path()
    return Workspace(root)


def _write_json(path, obj):
    _atomic_write(pathlib.Path(path),
                  json.dumps(obj, ensure_ascii=False, sort_keys=True,
                             indent=2) + "\n")


# ---------------------------------------------------------------------------
# generate

def _generate_one(linked, lexicon, n, seed, budget, out_dir):
    pairs, report = generate_paradigm(linked, lexicon, n, seed, budget)
    pid = linked.paradigm.id
    _atomic_write(out_dir / f"{pid}.jsonl", dump_pairs(pairs))
    _write_json(out_dir / f"{pid}.report.json", report.to_dict())
    return pid, report


def cmd_generate(args):
    ws = _workspace(args)
    lexicon = ws.load_lexicon()
    paradigms = ws.load_paradigms()
    if args.paradigm:
        wanted = set(args.paradigm)
        paradigms = [p for p in paradigms if p.id in wanted]
        missing = wanted - {p.id for p in paradigms}
        if missing:
            print(f"error: unknown paradigm(s) {sorted(missing)}", file=sys.stderr)
            return 2
    if not paradigms:
        print("error: no paradigms found", file=sys.stderr)
        return 2
    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    budget = args.budget_factor * args.n
    linked = [ws.link(p) for p in paradigms]
    shortfall = False
    if args.jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(args.jobs) as ex:
            results = list(ex.map(
                lambda lp: _generate_one(lp, lexicon, args.n, args.seed,
                                         budget, out_dir), linked))
    else:
        results = [_generate_one(lp, lexicon, args.n, args.seed, budget, out_dir)
                   for lp in linked]
    for pid, report in results:
        line = f"{pid}: {report.produced}/{report.requested}"
        if report.rejections:
            line += f" (rejections: {report.to_dict()['rejections']})"
        print(line)
        if report.produced < report.requested:
            shortfall = True
    return 1 if (shortfall and args.strict) else 0


# ---------------------------------------------------------------------------
# score

def _load_pair_files(paths):
    files = []
    for p in paths:
        p = pathlib.Path(p)
        if p.is_dir():
            files.extend(sorted(p.glob("*.jsonl")))
        else:
            files.append(p)
    groups = {}
    for f in files:
        with f.open(encoding="utf-8") as fh:
            for pair in load_pairs(fh):
                groups.setdefault(pair.paradigm_id, []).append(pair)
    return groups


def _make_backend(args):
    if args.oracle_corpus:
        corpus = pathlib.Path(args.oracle_corpus).read_text(encoding="utf-8")
        return scoring.ngram_scorer(corpus, args.order)
    if args.backend:
        return scoring.external_scorer(args.backend, batch_size=args.batch_size)
    raise MinipairError("either --oracle-corpus or --backend is required")


def cmd_score(args):
    groups = _load_pair_files(args.pairs)
    if not groups:
        print("error: no pairs found", file=sys.stderr)
        return 2
    try:
        backend = _make_backend(args)
    except MinipairError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return 2
    per_paradigm = {}
    phenomenon_of = {}
    failed = False
    for pid in sorted(groups):
        pairs = groups[pid]
        phenomenon_of[pid] = pairs[0].phenomenon
        try:
            res = scoring.score_paradigm(backend, pairs)
        except MinipairError as exc:
            per_paradigm[pid] = {"error": exc.to_dict()}
            failed = True
            continue
        per_paradigm[pid] = {
            "phenomenon": phenomenon_of[pid], "n_pairs": res.n_pairs,
            "n_correct": res.n_correct, "accuracy": res.accuracy}
    by_ph = {}
    for pid, rec in per_paradigm.items():
        if "error" in rec:
            continue
        by_ph.setdefault(rec["phenomenon"], []).append(rec["accuracy"])
    phenomena = {ph: math.fsum(v) / len(v) for ph, v in by_ph.items()}
    scored = [r["accuracy"] for r in per_paradigm.values() if "error" not in r]
    result = {
        "paradigms": per_paradigm,
        "phenomena": phenomena,
        "overall": math.fsum(scored) / len(scored) if scored else None,
        "partial": failed,
    }
    _write_json(args.out, result)
    print(f"wrote {args.out} ({len(scored)}/{len(per_paradigm)} paradigms scored)")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# analyze

def _final_acc_by_size(points):
    """Accuracy per model size at the last checkpoint, averaged over seeds."""
    by_size = {}
    for p in points:
        by_size.setdefault(p.model_params, []).append(p)
    out = {}
    for size, pts in by_size.items():
        last_n = max(p.tokens_seen for p in pts)
        finals = [p.accuracy for p in pts if p.tokens_seen == last_n]
        out[size] = math.fsum(finals) / len(finals)
    return out


def cmd_analyze(args):
    if args.mode == "regions":
        groups = _load_pair_files(args.pairs)
        backend = _make_backend(args)
        out = {}
        for pid in sorted(groups):
            delta = analysis.region_decomposition(backend, groups[pid],
                                                  args.split)
            out[pid] = delta.to_dict()
        _write_json(args.out, out)
        print(f"wrote {args.out}")
        return 0

    with open(args.trajectories, encoding="utf-8") as fh:
        groups = analysis.load_trajectories(fh)
    out = {}
    for pid in sorted(groups):
        points = groups[pid]
        if args.mode == "classify":
            cls = analysis.classify_paradigm(_final_acc_by_size(points), pid)
            out[pid] = cls.to_dict()
            continue
        curve = points if args.per_model else analysis.average_curve(points)
        try:
            if args.mode == "ushape":
                out[pid] = analysis.fit_ushape(curve, margin=args.margin).to_dict()
            else:
                out[pid] = analysis.fit_saturation(curve).to_dict()
        except MinipairError as exc:
            out[pid] = {"error": exc.to_dict()}
    _write_json(args.out, out)
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# validate

def cmd_validate(args):
    groups = _load_pair_files(args.pairs)
    catch = _load_pair_files([args.catch_pairs])
    catch_pairs = [p for pairs in catch.values() for p in pairs]
    triples = [(pid, groups[pid][0].phenomenon, groups[pid])
               for pid in sorted(groups)]
    try:
        lists = validation.sample_questionnaires(
            triples, args.per_paradigm, args.lists, args.seed, catch_pairs)
    except MinipairError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return 2
    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for ql in lists:
        _atomic_write(out_dir / f"{ql.list_id}.jsonl", validation.export_list(ql))
    _atomic_write(out_dir / "answer_key.jsonl",
                  validation.export_answer_key(lists))
    print(f"wrote {len(lists)} lists to {out_dir} "
          f"(sizes: {[len(ql.items) for ql in lists]})")
    return 0


def cmd_agreement(args):
    with open(args.answer_key, encoding="utf-8") as fh:
        lists = validation.lists_from_answer_key(fh)
    with open(args.responses, encoding="utf-8") as fh:
        responses = validation.load_responses(fh)
    report = validation.score_agreement(lists, responses)
    _write_json(args.out, report.to_dict())
    print(f"overall agreement: {report.overall:.3f} "
          f"({report.valid_respondents} valid, {report.excluded} excluded)")
    return 0


# ---------------------------------------------------------------------------
# serve

def cmd_serve(args):
    import uvicorn

    from .server import create_app
    frontend = pathlib.Path(args.frontend) if args.frontend else None
    if frontend is not None and not frontend.is_dir():
        print(f"error: frontend directory {frontend} not found", file=sys.stderr)
        return 2
    app = create_app(_workspace(args), frontend_dir=frontend)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="minipair",
        description="Template-driven minimal-pair generation and evaluation")
    sub = parser.add_subparsers(dest="command", required=True)

    def ws_arg(p):
        p.add_argument("--workspace", default=None,
                       help="workspace directory (default: shipped demo set)")

    g = sub.add_parser("generate", help="instantiate paradigms into pair files")
    ws_arg(g)
    g.add_argument("--paradigm", action="append",
                   help="restrict to these paradigm ids (repeatable)")
    g.add_argument("-n", type=int, default=300, help="pairs per paradigm")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--budget-factor", type=int, default=50,
                   help="attempt budget = factor * n")
    g.add_argument("--jobs", type=int, default=1)
    g.add_argument("--strict", action="store_true",
                   help="exit nonzero on any shortfall")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    def backend_args(p):
        p.add_argument("--oracle-corpus", help="train a character n-gram oracle")
        p.add_argument("--order", type=int, default=2, choices=(1, 2, 3))
        p.add_argument("--backend",
                       help="external scorer: 'host:port' or a command line")
        p.add_argument("--batch-size", type=int, default=64)

    s = sub.add_parser("score", help="paradigm accuracy under a scorer backend")
    s.add_argument("--pairs", nargs="+", required=True,
                   help="pair files or directories of *.jsonl")
    backend_args(s)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_score)

    a = sub.add_parser("analyze", help="learning-curve fits and classification")
    a.add_argument("--mode", choices=("fit", "ushape", "classify", "regions"),
                   default="fit")
    a.add_argument("--trajectories", help="JSONL trajectory records")
    a.add_argument("--per-model", action="store_true",
                   help="fit each record stream as-is instead of the averaged curve")
    a.add_argument("--margin", type=float, default=analysis.U_MARGIN_DEFAULT,
                   help="relative residual reduction required to warrant the U-term")
    a.add_argument("--pairs", nargs="+", help="pair files (mode=regions)")
    a.add_argument("--split", type=int, help="token split index (mode=regions)")
    backend_args(a)
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("validate", help="build human-validation questionnaires")
    v.add_argument("--pairs", nargs="+", required=True)
    v.add_argument("--catch-pairs", required=True,
                   help="pair file holding the catch-trial pairs")
    v.add_argument("--per-paradigm", type=int, default=5)
    v.add_argument("--lists", type=int, default=10)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--out", required=True)
    v.set_defaults(func=cmd_validate)

    ag = sub.add_parser("agreement", help="score responses against gold labels")
    ag.add_argument("--answer-key", required=True)
    ag.add_argument("--responses", required=True)
    ag.add_argument("--out", required=True)
    ag.set_defaults(func=cmd_agreement)

    srv = sub.add_parser("serve", help="run the authoring-UI backend")
    ws_arg(srv)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8570)
    srv.add_argument("--frontend",
                     help="directory with the built web UI to serve at /")
    srv.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MinipairError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
