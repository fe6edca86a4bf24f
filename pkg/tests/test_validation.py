import pytest

from minipair.errors import ValidationError
from minipair.generate import MinimalPair, Sentence
from minipair.validation import (
    Response,
    export_answer_key,
    export_list,
    lists_from_answer_key,
    load_responses,
    sample_questionnaires,
    score_agreement,
)


def make_pair(pid, phenomenon, i):
    good = Sentence((f"好{pid}", str(i), "。"))
    bad = Sentence((f"坏{pid}", str(i), "。"))
    return MinimalPair(pid, phenomenon, good, bad, (0, 1), (0, 1), i)


def make_paradigms(n_paradigms, n_pairs):
    out = []
    for k in range(n_paradigms):
        pid = f"p{k:03d}"
        ph = f"ph{k % 13}"
        out.append((pid, ph, [make_pair(pid, ph, i) for i in range(n_pairs)]))
    return out


CATCH = [make_pair("catch", "catch", i) for i in range(4)]


def test_list_sizes_and_catch_counts():
    paradigms = make_paradigms(118, 8)
    lists = sample_questionnaires(paradigms, 5, 10, seed=1, catch_pairs=CATCH)
    assert len(lists) == 10
    sizes = [len(ql.items) for ql in lists]
    # 118 * 5 = 590 real items over 10 lists plus 2 catch items each.
    assert sum(sizes) == 590 + 20
    real_sizes = [len(ql.items) - len(ql.catch_indices) for ql in lists]
    assert max(real_sizes) - min(real_sizes) <= 1
    for ql in lists:
        assert len(ql.catch_indices) == 2


def test_sampling_without_replacement():
    paradigms = make_paradigms(6, 9)
    lists = sample_questionnaires(paradigms, 9, 3, seed=5, catch_pairs=CATCH)
    seen = [(it.paradigm_id, it.pair.seed) for ql in lists
            for it in ql.items if not it.is_catch]
    assert len(seen) == len(set(seen)) == 54


def test_one_paradigm_spread_over_lists():
    paradigms = make_paradigms(1, 5)
    lists = sample_questionnaires(paradigms, 5, 5, seed=2, catch_pairs=CATCH)
    real = [len(ql.items) - 2 for ql in lists]
    assert real == [1, 1, 1, 1, 1]


def test_good_first_balanced_within_list():
    paradigms = make_paradigms(20, 6)
    lists = sample_questionnaires(paradigms, 6, 4, seed=3, catch_pairs=CATCH)
    for ql in lists:
        flags = [it.good_first for it in ql.items]
        assert abs(sum(flags) - (len(flags) - sum(flags))) <= 1


def test_deterministic_in_seed():
    paradigms = make_paradigms(10, 6)
    a = sample_questionnaires(paradigms, 4, 3, seed=9, catch_pairs=CATCH)
    b = sample_questionnaires(paradigms, 4, 3, seed=9, catch_pairs=CATCH)
    assert [export_list(x) for x in a] == [export_list(x) for x in b]
    assert export_answer_key(a) == export_answer_key(b)
    c = sample_questionnaires(paradigms, 4, 3, seed=10, catch_pairs=CATCH)
    assert export_answer_key(a) != export_answer_key(c)


def test_insufficient_pairs_rejected():
    paradigms = make_paradigms(3, 4)
    with pytest.raises(ValidationError):
        sample_questionnaires(paradigms, 5, 2, seed=1, catch_pairs=CATCH)


def test_too_many_lists_rejected():
    paradigms = make_paradigms(1, 3)
    with pytest.raises(ValidationError):
        sample_questionnaires(paradigms, 3, 4, seed=1, catch_pairs=CATCH)


def test_too_few_catch_pairs_rejected():
    paradigms = make_paradigms(2, 4)
    with pytest.raises(ValidationError):
        sample_questionnaires(paradigms, 4, 2, seed=1, catch_pairs=CATCH[:1])


def gold_responses(ql, respondent, flip_indices=()):
    out = []
    for i, item in enumerate(ql.items):
        choice = item.gold_choice
        if i in flip_indices:
            choice = "B" if choice == "A" else "A"
        out.append(Response(ql.list_id, respondent, i, choice))
    return out


def test_agreement_hand_tallied():
    paradigms = make_paradigms(2, 6)
    [ql] = sample_questionnaires(paradigms, 6, 1, seed=4, catch_pairs=CATCH)
    real = [i for i in range(len(ql.items)) if not ql.items[i].is_catch]
    # r1 all-gold; r2 misses 3 real items; both pass the catch trials.
    responses = gold_responses(ql, "r1") + gold_responses(ql, "r2", real[:3])
    report = score_agreement([ql], responses)
    assert report.valid_respondents == 2
    assert report.excluded == 0
    assert report.overall == pytest.approx((12 + 9) / 24)


def test_catch_failure_excludes_respondent():
    paradigms = make_paradigms(2, 6)
    [ql] = sample_questionnaires(paradigms, 6, 1, seed=4, catch_pairs=CATCH)
    bad_catch = ql.catch_indices[:1]
    responses = gold_responses(ql, "r1") + gold_responses(ql, "r2", bad_catch)
    report = score_agreement([ql], responses)
    assert report.valid_respondents == 1
    assert report.excluded == 1
    assert report.overall == 1.0


def test_per_phenomenon_breakdown():
    paradigms = make_paradigms(2, 6)
    [ql] = sample_questionnaires(paradigms, 6, 1, seed=4, catch_pairs=CATCH)
    ph0 = [i for i in range(len(ql.items))
           if not ql.items[i].is_catch and ql.items[i].phenomenon == "ph0"]
    responses = gold_responses(ql, "r1", ph0[:2])
    report = score_agreement([ql], responses)
    assert report.per_phenomenon["ph0"] == pytest.approx((6 - 2) / 6)
    assert report.per_phenomenon["ph1"] == 1.0


def test_incomplete_response_rejected():
    paradigms = make_paradigms(2, 4)
    [ql] = sample_questionnaires(paradigms, 4, 1, seed=4, catch_pairs=CATCH)
    responses = gold_responses(ql, "r1")[:-1]
    with pytest.raises(ValidationError):
        score_agreement([ql], responses)


def test_unknown_list_and_bad_choice_rejected():
    paradigms = make_paradigms(2, 4)
    [ql] = sample_questionnaires(paradigms, 4, 1, seed=4, catch_pairs=CATCH)
    with pytest.raises(ValidationError):
        score_agreement([ql], [Response("list99", "r", 0, "A")])
    with pytest.raises(ValidationError):
        score_agreement([ql], [Response(ql.list_id, "r", 0, "C")])
    with pytest.raises(ValidationError):
        score_agreement([ql], [Response(ql.list_id, "r", 999, "A")])


def test_answer_key_round_trip_scores_identically():
    paradigms = make_paradigms(5, 6)
    lists = sample_questionnaires(paradigms, 5, 2, seed=6, catch_pairs=CATCH)
    key_text = export_answer_key(lists)
    rebuilt = lists_from_answer_key(key_text.splitlines())
    responses = []
    for ql in lists:
        responses += gold_responses(ql, "r1")
        flips = [i for i in range(len(ql.items))
                 if not ql.items[i].is_catch][:2]
        responses += gold_responses(ql, "r2", flips)
    direct = score_agreement(lists, responses)
    via_key = score_agreement(rebuilt, responses)
    assert direct.to_dict() == via_key.to_dict()


def test_export_withholds_gold_labels():
    paradigms = make_paradigms(2, 4)
    [ql] = sample_questionnaires(paradigms, 4, 1, seed=4, catch_pairs=CATCH)
    text = export_list(ql)
    assert '"gold"' not in text
    assert '"is_catch"' not in text
    assert text.count("\n") == len(ql.items)


def test_load_responses_round_trip():
    lines = ['{"list_id": "list00", "respondent_id": "r1", "item": 0, '
             '"choice": "A"}']
    [resp] = load_responses(lines)
    assert resp == Response("list00", "r1", 0, "A")
    with pytest.raises(ValidationError):
        load_responses(['{"list_id": "x"}'])
