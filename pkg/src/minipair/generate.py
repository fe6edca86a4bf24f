"""Instantiates paradigms into minimal pairs.

Good and bad grammars are aligned by a longest-common-subsequence over rule
equality (plus a second greedy pass that pairs up identical rules left
unaligned by the LCS, which handles word-order paradigms where a rule moves).
Aligned identical rules reuse the good side's sample, so the two sentences
differ only where the grammars differ. Critical regions are computed by
stripping the longest common token prefix and suffix.
"""

import json
import random
from collections import Counter
from dataclasses import dataclass

from .errors import (
    DegenerateParadigmError,
    EmptyCandidatesError,
    FormatError,
    MinipairError,
    MissingFeatureError,
    PhraseDepthError,
)

DEFAULT_BUDGET_FACTOR = 50


@dataclass(frozen=True)
class Sentence:
    tokens: tuple

    @property
    def text(self):
        return "".join(self.tokens)


@dataclass(frozen=True)
class MinimalPair:
    paradigm_id: str
    phenomenon: str
    good: Sentence
    bad: Sentence
    critical_good: tuple   # (start, end), end-exclusive token span
    critical_bad: tuple
    seed: int


@dataclass
class GenerationReport:
    requested: int
    produced: int
    attempts: int
    rejections: dict

    def to_dict(self):
        return {"requested": self.requested, "produced": self.produced,
                "attempts": self.attempts,
                "rejections": dict(sorted(self.rejections.items()))}


def critical_region(good_tokens, bad_tokens):
    """Spans left after stripping the longest common prefix and suffix.

    The suffix is stripped from what remains after the prefix. A pure
    insertion/deletion yields an empty span at the edit point on one side.
    """
    good_tokens = list(good_tokens)
    bad_tokens = list(bad_tokens)
    if good_tokens == bad_tokens:
        raise DegenerateParadigmError("token sequences are identical")
    p = 0
    while (p < len(good_tokens) and p < len(bad_tokens)
           and good_tokens[p] == bad_tokens[p]):
        p += 1
    s = 0
    while (s < len(good_tokens) - p and s < len(bad_tokens) - p
           and good_tokens[-1 - s] == bad_tokens[-1 - s]):
        s += 1
    return (p, len(good_tokens) - s), (p, len(bad_tokens) - s)


# ---------------------------------------------------------------------------
# Rule alignment between the two grammars

def align_rules(good_rules, bad_rules):
    """Map bad position -> good position for rules that share samples."""
    n, m = len(good_rules), len(bad_rules)
    lcs = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            if good_rules[i] == bad_rules[j]:
                lcs[i][j] = 1 + lcs[i + 1][j + 1]
            else:
                lcs[i][j] = max(lcs[i + 1][j], lcs[i][j + 1])
    mapping = {}
    i = j = 0
    while i < n and j < m:
        if good_rules[i] == bad_rules[j]:
            mapping[j] = i
            i += 1
            j += 1
        elif lcs[i + 1][j] >= lcs[i][j + 1]:
            i += 1
        else:
            j += 1
    # Second pass: pair identical rules the LCS skipped (moved positions).
    free_good = [i for i in range(n) if i not in set(mapping.values())]
    free_bad = [j for j in range(m) if j not in mapping]
    for j in free_bad:
        for k, i in enumerate(free_good):
            if good_rules[i] == bad_rules[j]:
                mapping[j] = i
                del free_good[k]
                break
    return mapping


# ---------------------------------------------------------------------------
# Phrase depth bookkeeping

def min_phrase_depths(library):
    """Minimal nesting depth needed to fully expand each phrase (fixpoint)."""
    inf = float("inf")
    depths = {name: inf for name in library.phrases}
    changed = True
    while changed:
        changed = False
        for name, alts in library.phrases.items():
            best = inf
            for g in alts:
                need = 0
                for r in g.rules:
                    if r.kind == "phrase":
                        need = max(need, depths.get(r.phrase_name, inf))
                best = min(best, 1 + need if need else 1)
            if best < depths[name]:
                depths[name] = best
                changed = True
    return depths


# ---------------------------------------------------------------------------
# Sampling

@dataclass
class Outcome:
    tokens: list
    entry: object = None   # LexicalEntry for lexical/matched positions


class _Sampler:
    def __init__(self, lexicon, library, rng, side):
        self.lex = lexicon
        self.lib = library
        self.rng = rng
        self.side = side
        self.depths = min_phrase_depths(library) if library is not None else {}

    def _fail_empty(self, rule, position):
        raise EmptyCandidatesError(
            f"{self.side}[{position}]: no entry satisfies "
            f"{dict(rule.constraints)}"
            + (f" with {rule.polarity} on {rule.m_feature!r}"
               if rule.kind == "matched" else ""),
            side=self.side, position=position, constraints=dict(rule.constraints))

    def _pick(self, items):
        return items[self.rng.randrange(len(items))]

    def sample(self, rule, position, outcomes):
        if rule.kind == "direct":
            return Outcome([self._pick(rule.literals)])
        if rule.kind == "lexical":
            cands = self.lex.query(rule.constraints_map)
            if not cands:
                self._fail_empty(rule, position)
            e = self._pick(cands)
            return Outcome([e.surface], entry=e)
        if rule.kind == "matched":
            ref = outcomes[rule.m_pos].entry
            if ref is None:
                raise MissingFeatureError(
                    f"{self.side}[{position}]: referent position {rule.m_pos} "
                    f"is not a lexical sample", feature=rule.m_feature)
            cands = self.lex.query_matched(
                rule.constraints_map, ref, rule.m_feature, rule.polarity)
            if not cands:
                self._fail_empty(rule, position)
            e = self._pick(cands)
            return Outcome([e.surface], entry=e)
        # phrase
        return Outcome(self.expand_phrase(rule.phrase_name, rule.max_depth, position))

    def matched_candidates(self, rule, outcomes, position):
        ref = outcomes[rule.m_pos].entry
        if ref is None:
            raise MissingFeatureError(
                f"{self.side}[{position}]: referent position {rule.m_pos} "
                f"is not a lexical sample", feature=rule.m_feature)
        return self.lex.query_matched(
            rule.constraints_map, ref, rule.m_feature, rule.polarity)

    def expand_phrase(self, name, budget, position):
        alts = self.lib.alternatives(name)
        admissible = [g for g in alts
                      if self._grammar_depth_need(g) <= budget - 1]
        if not admissible:
            raise PhraseDepthError(
                f"{self.side}[{position}]: phrase {name!r} has no expansion "
                f"within depth {budget}", phrase=name)
        g = self._pick(admissible)
        inner = []
        tokens = []
        for i, r in enumerate(g.rules):
            if r.kind == "phrase":
                sub_budget = min(budget - 1, r.max_depth)
                out = Outcome(self.expand_phrase(r.phrase_name, sub_budget, position))
            else:
                out = self.sample(r, position, inner)
            inner.append(out)
            tokens.extend(out.tokens)
        return tokens

    def _grammar_depth_need(self, grammar):
        need = 0
        for r in grammar.rules:
            if r.kind == "phrase":
                need = max(need, self.depths.get(r.phrase_name, float("inf")))
        return need


def generate_pair(linked, lexicon, seed):
    """One minimal pair, deterministic in (paradigm, lexicon, seed)."""
    paradigm = linked.paradigm
    lib = linked.library
    good_rules = paradigm.good.rules
    bad_rules = paradigm.bad.rules

    sampler_g = _Sampler(lexicon, lib, random.Random(f"{seed}:good"), "good")
    good_out = []
    for i, rule in enumerate(good_rules):
        good_out.append(sampler_g.sample(rule, i, good_out))

    mapping = align_rules(good_rules, bad_rules)
    sampler_b = _Sampler(lexicon, lib, random.Random(f"{seed}:bad"), "bad")
    bad_out = []
    for j, rule in enumerate(bad_rules):
        shared = mapping.get(j)
        if shared is not None:
            reused = good_out[shared]
            if rule.kind == "matched":
                # The shared sample is only valid if it still satisfies the
                # agreement constraint against the bad side's referent.
                cands = sampler_b.matched_candidates(rule, bad_out, j)
                if reused.entry in cands:
                    bad_out.append(reused)
                else:
                    if not cands:
                        sampler_b._fail_empty(rule, j)
                    e = sampler_b._pick(cands)
                    bad_out.append(Outcome([e.surface], entry=e))
            else:
                bad_out.append(reused)
        else:
            bad_out.append(sampler_b.sample(rule, j, bad_out))

    good_tokens = tuple(t for o in good_out for t in o.tokens)
    bad_tokens = tuple(t for o in bad_out for t in o.tokens)
    good = Sentence(good_tokens)
    bad = Sentence(bad_tokens)
    if good.text == bad.text:
        raise DegenerateParadigmError(
            f"paradigm {paradigm.id!r}: good and bad realizations are identical")
    span_g, span_b = critical_region(good_tokens, bad_tokens)
    return MinimalPair(paradigm.id, paradigm.phenomenon, good, bad,
                       span_g, span_b, seed)


def generate_paradigm(linked, lexicon, n, seed, budget=None):
    """Up to n pairs unique by (good.text, bad.text), plus a report.

    Shortfall is not fatal: the report carries attempt and rejection counts
    and the caller decides whether produced < n is an error.
    """
    if n < 1:
        raise FormatError("n must be >= 1")
    if budget is None:
        budget = DEFAULT_BUDGET_FACTOR * n
    if budget < n:
        raise FormatError("budget must be >= n")
    master = random.Random(f"{seed}:stream")
    pairs = []
    seen = set()
    rejections = Counter()
    attempts = 0
    while len(pairs) < n and attempts < budget:
        pair_seed = master.getrandbits(63)
        attempts += 1
        try:
            pair = generate_pair(linked, lexicon, pair_seed)
        except MinipairError as exc:
            rejections[exc.code] += 1
            continue
        key = (pair.good.text, pair.bad.text)
        if key in seen:
            rejections["duplicate"] += 1
            continue
        seen.add(key)
        pairs.append(pair)
    return pairs, GenerationReport(n, len(pairs), attempts, dict(rejections))


# ---------------------------------------------------------------------------
# Pair records (JSONL)

def pair_to_record(pair):
    return {
        "paradigm_id": pair.paradigm_id,
        "phenomenon": pair.phenomenon,
        "good": {"text": pair.good.text, "tokens": list(pair.good.tokens)},
        "bad": {"text": pair.bad.text, "tokens": list(pair.bad.tokens)},
        "critical_good": list(pair.critical_good),
        "critical_bad": list(pair.critical_bad),
        "seed": pair.seed,
    }


def pair_from_record(obj):
    return MinimalPair(
        paradigm_id=obj["paradigm_id"], phenomenon=obj.get("phenomenon", ""),
        good=Sentence(tuple(obj["good"]["tokens"])),
        bad=Sentence(tuple(obj["bad"]["tokens"])),
        critical_good=tuple(obj["critical_good"]),
        critical_bad=tuple(obj["critical_bad"]),
        seed=obj["seed"])


def dump_pairs(pairs):
    """Stable field order, one record per line; byte-exact for golden tests."""
    lines = [json.dumps(pair_to_record(p), ensure_ascii=False,
                        separators=(", ", ": ")) for p in pairs]
    return "\n".join(lines) + ("\n" if lines else "")


def load_pairs(stream):
    out = []
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            out.append(pair_from_record(json.loads(line)))
        except (json.JSONDecodeError, KeyError) as exc:
            raise FormatError(f"line {lineno}: bad pair record: {exc}", line=lineno)
    return out
