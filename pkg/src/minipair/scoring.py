"""Sentence scoring: mean log-probability and paradigm accuracy.

A scorer backend is anything with score_tokens(sentences) returning one
(tokens, token_logprobs) pair per sentence. Two backends ship here: a
character-level add-one-smoothed n-gram model (the deterministic oracle used
in tests) and an adapter speaking a JSONL request/response protocol to an
external process or socket.

All logs are natural logs. Ties in mean log-probability count as incorrect:
the judgement uses a strict comparison.
"""

import json
import math
import socket
import subprocess
from collections import Counter
from dataclasses import dataclass

from .errors import FormatError, ProtocolError, ScoringError

BOS = "<s>"
EOS = "</s>"


@dataclass(frozen=True)
class SentenceScore:
    tokens: tuple
    token_logprobs: tuple
    total_logprob: float
    mlp: float


@dataclass(frozen=True)
class PairResult:
    pair: object
    good_score: SentenceScore
    bad_score: SentenceScore
    correct: bool


@dataclass(frozen=True)
class ParadigmResult:
    paradigm_id: str
    n_pairs: int
    n_correct: int

    @property
    def accuracy(self):
        return self.n_correct / self.n_pairs


def _make_score(tokens, logprobs, index):
    if len(tokens) == 0 or len(tokens) != len(logprobs):
        raise ScoringError(
            f"sentence {index}: backend returned {len(tokens)} tokens "
            f"and {len(logprobs)} logprobs", sentence=index)
    for lp in logprobs:
        if not (lp <= 0.0):   # also catches NaN
            raise ScoringError(
                f"sentence {index}: positive or invalid token logprob {lp}",
                sentence=index)
    total = math.fsum(logprobs)
    return SentenceScore(tuple(tokens), tuple(float(x) for x in logprobs),
                         total, total / len(tokens))


def score_sentences(backend, sentences):
    """One SentenceScore per sentence, order preserved."""
    for i, s in enumerate(sentences):
        if not s:
            raise ScoringError(f"sentence {i} is empty", sentence=i)
    scored = backend.score_tokens(list(sentences))
    if len(scored) != len(sentences):
        raise ScoringError(
            f"backend returned {len(scored)} results for {len(sentences)} sentences")
    return [_make_score(toks, lps, i) for i, (toks, lps) in enumerate(scored)]


def score_pairs(backend, pairs):
    sentences = []
    for p in pairs:
        sentences.append(p.good.text)
        sentences.append(p.bad.text)
    scores = score_sentences(backend, sentences)
    results = []
    for i, p in enumerate(pairs):
        g, b = scores[2 * i], scores[2 * i + 1]
        results.append(PairResult(p, g, b, g.mlp > b.mlp))
    return results


def score_paradigm(backend, pairs):
    """Accuracy of the strict MLP comparison over one paradigm's pairs."""
    if not pairs:
        raise ScoringError("no pairs to score")
    ids = {p.paradigm_id for p in pairs}
    if len(ids) != 1:
        raise ScoringError(f"mixed paradigm ids: {sorted(ids)}")
    results = score_pairs(backend, pairs)
    n_correct = sum(1 for r in results if r.correct)
    return ParadigmResult(pairs[0].paradigm_id, len(pairs), n_correct)


# ---------------------------------------------------------------------------
# Character n-gram oracle

class NgramScorer:
    """Character-level n-gram model with add-one smoothing.

    The smoothing inventory is the corpus character set plus the end marker;
    the begin marker only ever appears in contexts and is not predicted.
    Tokens are characters, so |S| = len(sentence).
    """

    def __init__(self, corpus, order):
        if order not in (1, 2, 3):
            raise FormatError(f"order must be 1, 2 or 3, got {order}")
        if isinstance(corpus, str):
            lines = corpus.splitlines()
        else:
            lines = [ln.rstrip("\n") for ln in corpus]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise FormatError("empty corpus")
        self.order = order
        self.ngram_counts = Counter()
        self.context_counts = Counter()
        vocab = set()
        for line in lines:
            vocab.update(line)
            seq = [BOS] * (order - 1) + list(line) + [EOS]
            for i in range(order - 1, len(seq)):
                ctx = tuple(seq[i - order + 1:i])
                self.ngram_counts[ctx + (seq[i],)] += 1
                self.context_counts[ctx] += 1
        self.vocab = vocab
        self.vocab_size = len(vocab) + 1   # + end marker

    def logprob(self, context, char):
        c = self.ngram_counts[tuple(context) + (char,)]
        total = self.context_counts[tuple(context)]
        return math.log((c + 1) / (total + self.vocab_size))

    def score_tokens(self, sentences):
        out = []
        for s in sentences:
            chars = list(s)
            seq = [BOS] * (self.order - 1) + chars
            lps = [self.logprob(seq[i - self.order + 1:i], seq[i])
                   for i in range(self.order - 1, len(seq))]
            out.append((chars, lps))
        return out


def ngram_scorer(corpus, order):
    return NgramScorer(corpus, order)


# ---------------------------------------------------------------------------
# External scorer protocol

class ExternalScorer:
    """Adapter for a backend speaking the JSONL scorer protocol.

    Requests are {"id": int, "sentences": [str]}; responses echo the id and
    carry {"scores": [{"tokens": [str], "logprobs": [float]}]} with one score
    per sentence, in order. One response line per request line.
    """

    def __init__(self, transport, batch_size=64):
        if batch_size < 1:
            raise FormatError("batch_size must be >= 1")
        self.transport = transport
        self.batch_size = batch_size
        self._next_id = 0

    def score_tokens(self, sentences):
        out = []
        for start in range(0, len(sentences), self.batch_size):
            batch = sentences[start:start + self.batch_size]
            req_id = self._next_id
            self._next_id += 1
            resp = self.transport.round_trip({"id": req_id, "sentences": batch})
            out.extend(self._parse_response(resp, req_id, len(batch)))
        return out

    @staticmethod
    def _parse_response(resp, req_id, n_expected):
        if not isinstance(resp, dict):
            raise ProtocolError(f"request {req_id}: response is not an object",
                                request=req_id)
        if resp.get("id") != req_id:
            raise ProtocolError(
                f"request {req_id}: response id {resp.get('id')!r} does not match",
                request=req_id)
        scores = resp.get("scores")
        if not isinstance(scores, list) or len(scores) != n_expected:
            raise ProtocolError(
                f"request {req_id}: expected {n_expected} scores, got "
                f"{len(scores) if isinstance(scores, list) else type(scores).__name__}",
                request=req_id)
        parsed = []
        for k, sc in enumerate(scores):
            if (not isinstance(sc, dict) or "tokens" not in sc
                    or "logprobs" not in sc):
                raise ProtocolError(
                    f"request {req_id}: score {k} missing tokens/logprobs",
                    request=req_id, item=k)
            toks, lps = sc["tokens"], sc["logprobs"]
            if (not isinstance(toks, list) or not isinstance(lps, list)
                    or not toks or len(toks) != len(lps)):
                raise ProtocolError(
                    f"request {req_id}: score {k} has inconsistent lengths",
                    request=req_id, item=k)
            for lp in lps:
                if not isinstance(lp, (int, float)) or not (lp <= 0.0):
                    raise ProtocolError(
                        f"request {req_id}: score {k} has invalid logprob {lp!r}",
                        request=req_id, item=k)
            parsed.append((toks, [float(x) for x in lps]))
        return parsed


class _LineChannel:
    """Shared JSONL framing over a (write_line, read_line) pair."""

    def round_trip(self, request):
        line = json.dumps(request, ensure_ascii=False)
        self._write_line(line)
        reply = self._read_line()
        if reply is None:
            raise ProtocolError("backend closed the channel",
                                request=request["id"])
        try:
            return json.loads(reply)
        except json.JSONDecodeError as exc:
            raise ProtocolError(f"invalid JSON from backend: {exc}",
                                request=request["id"])


class SubprocessTransport(_LineChannel):
    """Spawns a command and exchanges JSONL over its standard streams."""

    def __init__(self, argv):
        self.proc = subprocess.Popen(
            argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
            text=True, bufsize=1)

    def _write_line(self, line):
        self.proc.stdin.write(line + "\n")
        self.proc.stdin.flush()

    def _read_line(self):
        line = self.proc.stdout.readline()
        return line.rstrip("\n") if line else None

    def close(self):
        if self.proc.poll() is None:
            self.proc.stdin.close()
            self.proc.wait(timeout=10)


class SocketTransport(_LineChannel):
    """Connects to host:port and exchanges the same JSONL records."""

    def __init__(self, host, port, timeout=30.0):
        self.sock = socket.create_connection((host, port), timeout=timeout)
        self.reader = self.sock.makefile("r", encoding="utf-8")

    def _write_line(self, line):
        self.sock.sendall((line + "\n").encode("utf-8"))

    def _read_line(self):
        line = self.reader.readline()
        return line.rstrip("\n") if line else None

    def close(self):
        self.reader.close()
        self.sock.close()


def external_scorer(endpoint, batch_size=64):
    """Build an ExternalScorer from "host:port" or a command line string."""
    if ":" in endpoint and endpoint.rsplit(":", 1)[1].isdigit():
        host, port = endpoint.rsplit(":", 1)
        transport = SocketTransport(host, int(port))
    else:
        transport = SubprocessTransport(endpoint.split())
    return ExternalScorer(transport, batch_size=batch_size)
