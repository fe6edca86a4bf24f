"""End-to-end acceptance checks, one test per shipped guarantee.

Each test prints a single PASS/FAIL line so a plain `pytest -s
tests/test_acceptance.py` doubles as a checklist.
"""

import hashlib
import json
import math
import shutil
import time
from contextlib import contextmanager

import numpy as np
import pytest
from fastapi.testclient import TestClient

from minipair import analysis, validation
from minipair.cli import main
from minipair.generate import generate_paradigm
from minipair.scoring import ExternalScorer, ngram_scorer, score_paradigm, score_sentences
from minipair.server import create_app
from minipair.workspace import Workspace, demo_data_path
from conftest import GOLDEN

from test_scoring import brute_force_ngram_logprobs, make_pair
from test_external import FakeTransport
from test_validation import CATCH, gold_responses, make_paradigms


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"criterion: {name}: FAIL")
        raise
    print(f"criterion: {name}: PASS")


def test_generation_fidelity(linked_demo, demo_lexicon, tmp_path):
    with criterion("generation fidelity"):
        assert len(linked_demo) >= 15
        start = time.perf_counter()
        for pid, lp in linked_demo.items():
            pairs, report = generate_paradigm(lp, demo_lexicon, 300,
                                              seed=20240613)
            assert report.produced == 300, pid
            keys = {(p.good.text, p.bad.text) for p in pairs}
            assert len(keys) == 300, pid
            for pair in pairs:
                (gs, ge), (bs, be) = pair.critical_good, pair.critical_bad
                assert pair.good.tokens[:gs] == pair.bad.tokens[:bs]
                assert pair.good.tokens[ge:] == pair.bad.tokens[be:]
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"generation took {elapsed:.1f}s"

        manifest = json.loads((GOLDEN / "manifest.json").read_text("utf-8"))
        out = tmp_path / "pairs"
        assert main(["generate", "--out", str(out), "--strict"]) == 0
        got = {f.name: hashlib.sha256(f.read_bytes()).hexdigest()
               for f in sorted(out.glob("*.jsonl"))}
        assert got == manifest["sha256"]


def test_critical_region_fixtures():
    from minipair.generate import critical_region
    from conftest import FIXTURES
    with criterion("critical-region exactness on 15 reference pairs"):
        cases = json.loads((FIXTURES / "table_examples.json").read_text("utf-8"))
        assert len(cases) == 15
        for case in cases:
            span_g, span_b = critical_region(case["good"], case["bad"])
            assert list(span_g) == case["span_good"], case["phenomenon"]
            assert list(span_b) == case["span_bad"], case["phenomenon"]


def test_scoring_oracle_equivalence(linked_demo, demo_lexicon):
    with criterion("n-gram oracle equals brute-force counts (1e-9)"):
        lp = linked_demo["nominal_copula"]
        pairs, _ = generate_paradigm(lp, demo_lexicon, 20, seed=2)
        corpus_lines = [p.good.text for p in pairs]
        assert sum(len(s) for s in corpus_lines) <= 1000
        probes = corpus_lines[:5] + [p.bad.text for p in pairs[:5]]
        for order in (1, 2, 3):
            model = ngram_scorer("\n".join(corpus_lines), order)
            for sent in probes:
                [(_, lps)] = model.score_tokens([sent])
                want = brute_force_ngram_logprobs(corpus_lines, order, sent)
                assert lps == pytest.approx(want, abs=1e-9)

        class Constant:
            def score_tokens(self, sentences):
                return [(list(s), [-1.0] * len(s)) for s in sentences]
        tie_pairs = [make_pair("aa", "bb"), make_pair("cd", "ef")]
        assert score_paradigm(Constant(), tie_pairs).accuracy == 0.0


def test_mlp_normalization():
    with criterion("MLP invariant under token duplication (1e-12)"):
        class Single:
            def score_tokens(self, sentences):
                return [(list(s), [-0.3 * (i + 1) for i in range(len(s))])
                        for s in sentences]

        class Doubled:
            def score_tokens(self, sentences):
                out = []
                for s in sentences:
                    lps = [-0.3 * (i + 1) for i in range(len(s))]
                    out.append((list(s) * 2, lps * 2))
                return out
        for text in ("你好", "这本书很有意思"):
            [a] = score_sentences(Single(), [text])
            [b] = score_sentences(Doubled(), [text])
            assert abs(a.mlp - b.mlp) < 1e-12


def test_curve_fit_recovery():
    with criterion("curve-fit recovery (1% / 5%, U-term warranted flags)"):
        start = time.perf_counter()
        true_sat = dict(p_inf=0.83, p0=0.50, alpha=2.2e-6, beta=0.72)

        def sat(n):
            return true_sat["p_inf"] - (true_sat["p_inf"] - true_sat["p0"]) \
                * math.exp(-true_sat["alpha"] * n ** true_sat["beta"])
        ns = np.logspace(6, math.log10(3e9), 20)
        points = [analysis.TrajectoryPoint(n, sat(n)) for n in ns]
        fit = analysis.fit_saturation(points)
        assert fit.residual < 1e-6
        for name in ("p_inf", "p0", "alpha", "beta"):
            assert getattr(fit, name) == pytest.approx(true_sat[name], rel=0.01)

        true_u = dict(k=0.08, n0=1.2e8, s=6e7)

        def dip(n):
            return sat(n) + true_u["k"] * float(
                analysis.u_term((n - true_u["n0"]) / true_u["s"]))
        ns30 = np.logspace(6, math.log10(3e9), 30)
        upoints = [analysis.TrajectoryPoint(n, dip(n)) for n in ns30]
        ufit = analysis.fit_ushape(upoints)
        assert ufit.warranted
        for name in ("k", "n0", "s"):
            assert getattr(ufit, name) == pytest.approx(true_u[name], rel=0.05)
        plain = analysis.fit_ushape(
            [analysis.TrajectoryPoint(n, sat(n)) for n in ns30])
        assert not plain.warranted
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"fitting took {elapsed:.1f}s"


def test_classification_strict_rules():
    with criterion("difficulty classification incl. boundary values"):
        sizes = [14e6, 70e6, 160e6, 410e6, 1.4e9]

        def rising(lo, hi):
            step = (hi - lo) / (len(sizes) - 1)
            return {s: lo + i * step for i, s in enumerate(sizes)}
        assert analysis.classify_paradigm(rising(0.70, 0.90)).label == "Easy"
        assert analysis.classify_paradigm(rising(0.60, 0.75)).label == "Medium"
        assert analysis.classify_paradigm(rising(0.50, 0.65)).label == "Difficult"
        flat = {14e6: 0.55, 70e6: 0.50, 160e6: 0.56, 410e6: 0.49, 1.4e9: 0.54}
        assert analysis.classify_paradigm(flat).label == "Other"
        # Boundary values: 0.85 and 0.70 are not strictly above the
        # thresholds, and rho must be strictly above 0.80.
        assert analysis.classify_paradigm(rising(0.60, 0.85)).label == "Medium"
        assert analysis.classify_paradigm(rising(0.50, 0.70)).label == "Difficult"
        accs = dict(zip([1e6, 1e7, 1e8, 1e9], [0.50, 0.65, 0.48, 0.66]))
        rho = analysis.pearson([math.log(s) for s in accs],
                               list(accs.values()))
        assert rho <= 0.80
        assert analysis.classify_paradigm(accs).label == "Other"


def test_region_decomposition_consistency():
    with criterion("region decomposition degenerate split and symmetry"):
        class Table:
            def __init__(self, table):
                self.table = table

            def score_tokens(self, sentences):
                return [(list(s), self.table[s]) for s in sentences]

        pairs = [make_pair("abc", "de")]
        backend = Table({"abc": [-1.0, -2.0, -3.0], "de": [-0.5, -0.7]})
        delta = analysis.region_decomposition(backend, pairs, split=[(3, 2)])
        mlp_g = (-1.0 - 2.0 - 3.0) / 3
        mlp_b = (-0.5 - 0.7) / 2
        assert abs(delta.prefix_delta - (mlp_g - mlp_b)) < 1e-12
        assert delta.continuation_delta == 0.0

        sym = Table({"ab": [-1.0, -2.0], "cd": [-1.0, -2.0]})
        delta = analysis.region_decomposition(sym, [make_pair("ab", "cd")],
                                              split=1)
        assert delta.prefix_delta == 0.0
        assert delta.continuation_delta == 0.0


def test_validation_sampler_and_agreement():
    with criterion("questionnaire balance and catch-trial exclusion"):
        paradigms = make_paradigms(118, 8)
        lists = validation.sample_questionnaires(paradigms, 5, 10, seed=1,
                                                 catch_pairs=CATCH)
        real_sizes = [len(ql.items) - len(ql.catch_indices) for ql in lists]
        assert sum(real_sizes) == 590
        assert max(real_sizes) - min(real_sizes) <= 1
        assert all(len(ql.catch_indices) == 2 for ql in lists)

        [ql] = validation.sample_questionnaires(make_paradigms(2, 6), 6, 1,
                                                seed=4, catch_pairs=CATCH)
        real = [i for i in range(len(ql.items)) if not ql.items[i].is_catch]
        responses = (gold_responses(ql, "r1", real[:3])
                     + gold_responses(ql, "r2", ql.catch_indices[:1]))
        report = validation.score_agreement([ql], responses)
        assert report.excluded == 1
        assert report.valid_respondents == 1
        assert report.overall == pytest.approx((12 - 3) / 12)


def test_external_scorer_protocol():
    with criterion("external-scorer batching and violation handling"):
        transport = FakeTransport()
        backend = ExternalScorer(transport, batch_size=64)
        sentences = [f"句子{i}" for i in range(1000)]
        scores = score_sentences(backend, sentences)
        assert len(transport.requests) == 16
        assert [r["id"] for r in transport.requests] == list(range(16))
        assert ["".join(s.tokens) for s in scores] == sentences

        from minipair.errors import ProtocolError

        def violations():
            yield lambda r: r.pop("scores")
            yield lambda r: r["scores"].pop()
            yield lambda r: r.update(id=r["id"] + 1)
            yield lambda r: r["scores"][0].pop("tokens")
            yield lambda r: r["scores"][0].pop("logprobs")
            yield lambda r: r["scores"][0]["logprobs"].append(-1.0)
            yield lambda r: r["scores"][0]["logprobs"].__setitem__(0, 0.5)
        for mutate in violations():
            broken = ExternalScorer(FakeTransport(mutate=mutate), batch_size=4)
            with pytest.raises(ProtocolError):
                broken.score_tokens(["你好", "再见"])


def test_ui_engine_equivalence(tmp_path):
    with criterion("preview endpoint matches batch generation byte-for-byte"):
        root = tmp_path / "ws"
        shutil.copytree(demo_data_path(), root)
        ws = Workspace(root)
        client = TestClient(create_app(ws))
        for pid in ("anaphor_gender_agreement", "ba_subject_order",
                    "verb_phrase_aspect"):
            paradigm = json.loads(
                (ws.paradigms_dir / f"{pid}.json").read_text("utf-8"))
            body = client.post("/api/preview", json={
                "paradigm": paradigm, "n": 20, "seed": 99}).json()
            out = tmp_path / f"out_{pid}"
            assert main(["generate", "--workspace", str(root),
                         "--paradigm", pid, "-n", "20", "--seed", "99",
                         "--out", str(out)]) == 0
            cli_text = (out / f"{pid}.jsonl").read_text("utf-8")
            assert body["jsonl"] == cli_text

        bad = {"id": "x", "phenomenon": "t", "source": "",
               "good": [{"kind": "matched", "constraints": {"pos": "PN"},
                         "m_pos": 0, "m_feature": "gender",
                         "polarity": "match"},
                        {"kind": "direct", "literals": ["好"]}],
               "bad": [{"kind": "direct", "literals": ["坏"]}]}
        assert client.put("/api/paradigms/x",
                          json={"paradigm": bad}).status_code == 422

        pid = "nominal_copula"
        before = (ws.paradigms_dir / f"{pid}.json").read_bytes()
        got = client.get(f"/api/paradigms/{pid}").json()
        assert client.put(f"/api/paradigms/{pid}", json={
            "paradigm": got["paradigm"],
            "expect_version": got["version"]}).status_code == 200
        after = (ws.paradigms_dir / f"{pid}.json").read_bytes()
        assert after == before
