"""Human-validation questionnaires and gold-label agreement.

Sampled pairs are spread over lists whose sizes differ by at most one; every
list gets two catch items with blatant contrasts. Presentation order
(good-first vs bad-first) is randomized but balanced within each list.
Respondents failing either catch item are excluded from agreement.
"""

import json
import random
from dataclasses import dataclass, field

from .errors import ValidationError


@dataclass(frozen=True)
class QuestionnaireItem:
    paradigm_id: str
    phenomenon: str
    pair: object
    good_first: bool
    is_catch: bool

    @property
    def sentence_a(self):
        return self.pair.good.text if self.good_first else self.pair.bad.text

    @property
    def sentence_b(self):
        return self.pair.bad.text if self.good_first else self.pair.good.text

    @property
    def gold_choice(self):
        return "A" if self.good_first else "B"


@dataclass
class QuestionnaireList:
    list_id: str
    items: list = field(default_factory=list)

    @property
    def catch_indices(self):
        return [i for i, it in enumerate(self.items) if it.is_catch]


def _balanced_flags(n, rng):
    flags = [i < (n + 1) // 2 for i in range(n)]
    rng.shuffle(flags)
    return flags


def sample_questionnaires(paradigms, pairs_per_paradigm, n_lists, seed,
                          catch_pairs):
    """Build questionnaire lists from (paradigm_id, phenomenon, pairs) triples.

    Sampling is without replacement within each paradigm and deterministic in
    the seed. `catch_pairs` supplies the designated unambiguous pairs; each
    list draws 2 of them.
    """
    if n_lists < 1:
        raise ValidationError("n_lists must be >= 1")
    if len(catch_pairs) < 2:
        raise ValidationError("need at least 2 catch pairs")
    rng = random.Random(f"{seed}:questionnaires")
    sampled = []
    for pid, phenomenon, pairs in paradigms:
        if len(pairs) < pairs_per_paradigm:
            raise ValidationError(
                f"paradigm {pid!r} has only {len(pairs)} pairs, "
                f"need {pairs_per_paradigm}", paradigm=pid)
        chosen = rng.sample(list(pairs), pairs_per_paradigm)
        sampled.extend((pid, phenomenon, p) for p in chosen)
    if n_lists > len(sampled):
        raise ValidationError(
            f"cannot split {len(sampled)} items into {n_lists} lists")
    rng.shuffle(sampled)

    lists = []
    base, extra = divmod(len(sampled), n_lists)
    pos = 0
    for li in range(n_lists):
        size = base + (1 if li < extra else 0)
        chunk = sampled[pos:pos + size]
        pos += size
        catch = rng.sample(list(catch_pairs), 2)
        entries = ([(pid, ph, p, False) for pid, ph, p in chunk]
                   + [(p.paradigm_id, p.phenomenon, p, True) for p in catch])
        rng.shuffle(entries)
        flags = _balanced_flags(len(entries), rng)
        items = [QuestionnaireItem(pid, ph, p, flag, is_catch)
                 for (pid, ph, p, is_catch), flag in zip(entries, flags)]
        lists.append(QuestionnaireList(f"list{li:02d}", items))
    return lists


@dataclass(frozen=True)
class Response:
    list_id: str
    respondent_id: str
    item_index: int
    choice: str   # "A" | "B"


@dataclass
class AgreementReport:
    overall: float
    per_phenomenon: dict
    valid_respondents: int
    excluded: int

    def to_dict(self):
        return {"overall": self.overall,
                "per_phenomenon": dict(sorted(self.per_phenomenon.items())),
                "valid_respondents": self.valid_respondents,
                "excluded": self.excluded}


def score_agreement(lists, responses):
    """Exclude catch-trial failures, then mean agreement with gold labels."""
    by_id = {ql.list_id: ql for ql in lists}
    per_respondent = {}
    for r in responses:
        if r.list_id not in by_id:
            raise ValidationError(f"response to unknown list {r.list_id!r}")
        ql = by_id[r.list_id]
        if not (0 <= r.item_index < len(ql.items)):
            raise ValidationError(
                f"list {r.list_id}: item index {r.item_index} out of range")
        if r.choice not in ("A", "B"):
            raise ValidationError(f"invalid choice {r.choice!r}")
        key = (r.list_id, r.respondent_id)
        answers = per_respondent.setdefault(key, {})
        answers[r.item_index] = r.choice

    excluded = 0
    agree = []
    per_ph = {}
    for (list_id, _respondent), answers in sorted(per_respondent.items()):
        ql = by_id[list_id]
        if set(answers) != set(range(len(ql.items))):
            raise ValidationError(
                f"incomplete response to list {list_id}: "
                f"{len(answers)}/{len(ql.items)} items answered")
        if any(answers[i] != ql.items[i].gold_choice for i in ql.catch_indices):
            excluded += 1
            continue
        for i, item in enumerate(ql.items):
            if item.is_catch:
                continue
            hit = answers[i] == item.gold_choice
            agree.append(hit)
            per_ph.setdefault(item.phenomenon, []).append(hit)
    if not agree:
        raise ValidationError("no valid responses")
    return AgreementReport(
        overall=sum(agree) / len(agree),
        per_phenomenon={ph: sum(v) / len(v) for ph, v in per_ph.items()},
        valid_respondents=len(per_respondent) - excluded,
        excluded=excluded)


# ---------------------------------------------------------------------------
# Export / import

def export_list(ql):
    """Questionnaire file (is_catch and gold withheld) as JSONL text."""
    lines = []
    for i, item in enumerate(ql.items):
        lines.append(json.dumps(
            {"list_id": ql.list_id, "item": i,
             "sentence_a": item.sentence_a, "sentence_b": item.sentence_b},
            ensure_ascii=False, separators=(", ", ": ")))
    return "\n".join(lines) + "\n"


def export_answer_key(lists):
    lines = []
    for ql in lists:
        for i, item in enumerate(ql.items):
            lines.append(json.dumps(
                {"list_id": ql.list_id, "item": i, "gold": item.gold_choice,
                 "is_catch": item.is_catch, "paradigm_id": item.paradigm_id,
                 "phenomenon": item.phenomenon},
                ensure_ascii=False, separators=(", ", ": ")))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class _KeyItem:
    paradigm_id: str
    phenomenon: str
    gold_choice: str
    is_catch: bool


def lists_from_answer_key(stream):
    """Rebuild just enough list structure from an answer-key file to score
    agreement (sentences are not needed for that)."""
    by_list = {}
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            item = _KeyItem(obj["paradigm_id"], obj["phenomenon"],
                            obj["gold"], bool(obj["is_catch"]))
            by_list.setdefault(obj["list_id"], {})[int(obj["item"])] = item
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ValidationError(f"line {lineno}: bad answer-key record: {exc}",
                                  line=lineno)
    lists = []
    for list_id in sorted(by_list):
        items = by_list[list_id]
        if set(items) != set(range(len(items))):
            raise ValidationError(f"list {list_id}: non-contiguous item indices")
        ql = QuestionnaireList(list_id, [items[i] for i in range(len(items))])
        lists.append(ql)
    return lists


def load_responses(stream):
    out = []
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            out.append(Response(obj["list_id"], str(obj["respondent_id"]),
                                int(obj["item"]), obj["choice"]))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ValidationError(f"line {lineno}: bad response record: {exc}",
                                  line=lineno)
    return out
