"""Regenerates the shipped demo vocabulary, phrase library and paradigms.

Run from the repo root:  python tools/build_demo_data.py
The output under src/minipair/data/ is committed; this script exists so the
demo set stays reproducible and in canonical form.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from minipair.lexicon import LexicalEntry, Lexicon, dump_lexicon  # noqa: E402
from minipair.templates import (  # noqa: E402
    dump_paradigm, dump_phrase_library, parse_paradigm, parse_phrase_library,
)

DATA = pathlib.Path(__file__).resolve().parents[1] / "src" / "minipair" / "data"


def entries():
    out = []

    def add(surface, **features):
        out.append(LexicalEntry(surface, features))

    # People (gendered nouns for agreement paradigms)
    males = ["王先生", "李先生", "张先生", "刘先生", "陈先生", "赵先生",
             "孙先生", "周先生", "弟弟", "哥哥", "爸爸", "叔叔", "爷爷", "舅舅"]
    females = ["王女士", "李女士", "张女士", "刘女士", "陈女士", "赵女士",
               "孙女士", "周女士", "妹妹", "姐姐", "妈妈", "阿姨", "奶奶", "姑姑"]
    for w in males:
        add(w, pos="NN", **{"class": "person"}, gender="m")
    for w in females:
        add(w, pos="NN", **{"class": "person"}, gender="f")

    # Pronouns
    add("他", pos="PN", gender="m")
    add("她", pos="PN", gender="f")
    for w in ["他们", "她们", "我们", "你们"]:
        add(w, pos="PN", number="pl")

    # Attitude verbs (take reflexive or relativized objects)
    for w in ["喜欢", "讨厌", "相信", "怀疑", "欣赏", "批评", "认识", "想念"]:
        add(w, pos="VV", vclass="att")

    # Adverbs
    for w in ["非常", "很", "特别", "十分", "一直"]:
        add(w, pos="AD")

    # Activity verbs with objects vs unaccusatives (argument structure)
    for w in ["预习", "复习", "阅读", "购买", "借阅", "翻译"]:
        add(w, pos="VV", vclass="study")
    for w in ["出现", "消失", "发生", "到达"]:
        add(w, pos="VV", vclass="unacc")
    for w in ["教材", "课本", "小说", "杂志", "报纸", "词典"]:
        add(w, pos="NN", **{"class": "book"})

    # BA construction material
    for w in ["那条鱼", "那本书", "那杯茶", "那把伞", "那件衣服", "那台电脑"]:
        add(w, pos="NP", **{"class": "portable"})
    for w in ["池塘", "桌子", "房间", "院子", "车库", "厨房"]:
        add(w, pos="NN", **{"class": "place"})

    # Classifiers and classifier-typed nouns
    for w, c in [("位", "person"), ("条", "long"), ("只", "animal"),
                 ("本", "volume"), ("杯", "cup")]:
        add(w, pos="M", cls=c)
    for w in ["八", "三", "五", "两", "几"]:
        add(w, pos="CD")
    for w in ["舞者", "歌手", "医生", "教授", "演员"]:
        add(w, pos="NN", cls="person")
    for w in ["鱼", "蛇", "河"]:
        add(w, pos="NN", cls="long")
    for w in ["猫", "狗", "鸟"]:
        add(w, pos="NN", cls="animal")
    for w in ["字典", "画册"]:
        add(w, pos="NN", cls="volume")
    for w in ["茶", "咖啡"]:
        add(w, pos="NN", cls="cup")

    # Modals: epistemic set (control/raising) and permission set (FCI)
    for w in ["会", "可能", "应该", "必须"]:
        add(w, pos="MD", epi="yes")
    add("能", pos="MD", epi="yes", perm="yes")
    add("可以", pos="MD", perm="yes")
    add("有权", pos="MD", perm="yes")
    for w in ["变质", "倒塌", "融化", "褪色", "破裂", "消退"]:
        add(w, pos="VV", vclass="change")
    for w in ["那杯红酒", "那块冰", "那件衬衫", "那座桥", "那幅画", "那扇门",
              "那台冰箱", "那盆花", "那张桌子", "那把椅子", "那栋房子", "那面墙"]:
        add(w, pos="NP", **{"class": "thing"})

    # Ellipsis verbs carry a lemma feature for identity matching
    for w in ["读", "写", "画", "买", "卖"]:
        add(w, pos="VV", vclass="etr", lemma=w)
    for w in ["笑", "哭", "跑", "玩", "睡"]:
        add(w, pos="VV", vclass="eintr", lemma=w)

    # Generic people for FCI / NPI
    for w in ["人", "学生", "老师", "员工", "成员", "顾客", "乘客", "游客",
              "选手", "读者", "居民", "市民"]:
        add(w, pos="NN", **{"class": "generic"})
    for w in ["去", "参加", "报名", "发言", "投票", "加入", "申请", "提问",
              "退出", "尝试"]:
        add(w, pos="VV", vclass="go")
    for w in ["来", "回来", "出来", "进来", "上来", "下来", "过来", "离开"]:
        add(w, pos="VV", vclass="come")

    # Nominal predicates
    for w in ["司机", "律师", "工程师", "厨师", "记者", "护士", "教师",
              "画家", "作家", "设计师", "编辑", "警察"]:
        add(w, pos="NN", **{"class": "occupation"})

    # Passive material
    for w in ["秘密", "消息", "计划", "细节", "答案", "结果", "真相", "数据"]:
        add(w, pos="NN", **{"class": "secret"})
    for w in ["知道", "了解", "掌握", "泄露", "公开"]:
        add(w, pos="VV", vclass="know")

    # Consumption verbs and objects (quantifier / topicalization / aspect)
    for w in ["吃", "拿", "偷", "藏", "尝"]:
        add(w, pos="VV", vclass="consume")
    for w in ["啤酒", "牛奶", "咖啡", "米饭", "苹果", "蛋糕", "饺子", "面条"]:
        add(w, pos="NN", **{"class": "consumable"})

    # A-not-A question verbs (lemma for the V-not-V copy)
    for w in ["喝", "吃", "买", "看", "要", "换", "尝"]:
        add(w, pos="VV", vclass="anota", lemma=w)

    # Relativization heads
    for w in ["领导", "教练", "主任", "经理", "校长", "馆长"]:
        add(w, pos="NN", **{"class": "title"})

    return out


def lexical(**constraints):
    return {"kind": "lexical", "constraints": constraints}


def direct(*literals):
    return {"kind": "direct", "literals": list(literals)}


def matched(m_pos, m_feature, polarity, **constraints):
    return {"kind": "matched", "constraints": constraints, "m_pos": m_pos,
            "m_feature": m_feature, "polarity": polarity}


def phrase(name, max_depth=2):
    return {"kind": "phrase", "phrase_name": name, "max_depth": max_depth}


PHRASES = {
    # Predicate taking a reflexive object, optionally adverb-modified.
    "ReflV": [
        [lexical(pos="VV", vclass="att")],
        [lexical(pos="AD"), lexical(pos="VV", vclass="att")],
    ],
    # Recursive adverb stack; terminates at the depth limit via the
    # single-adverb alternative.
    "AdvP": [
        [lexical(pos="AD")],
        [lexical(pos="AD"), phrase("AdvP")],
    ],
}


def paradigms():
    full_stop = direct("。")
    ps = []

    ps.append({
        "id": "anaphor_gender_agreement",
        "phenomenon": "anaphor",
        "source": "reflexive ziji must agree in gender with its antecedent",
        "good": [lexical(pos="NN", **{"class": "person"}), phrase("ReflV"),
                 matched(0, "gender", "match", pos="PN"), direct("自己"),
                 full_stop],
        "bad": [lexical(pos="NN", **{"class": "person"}), phrase("ReflV"),
                matched(0, "gender", "mismatch", pos="PN"), direct("自己"),
                full_stop],
    })

    ps.append({
        "id": "argument_structure_verb_class",
        "phenomenon": "argument_structure",
        "source": "unaccusative verbs reject a direct object",
        "good": [lexical(pos="NN", **{"class": "person"}),
                 lexical(pos="VV", vclass="study"), direct("了"),
                 lexical(pos="NN", **{"class": "book"}), full_stop],
        "bad": [lexical(pos="NN", **{"class": "person"}),
                lexical(pos="VV", vclass="unacc"), direct("了"),
                lexical(pos="NN", **{"class": "book"}), full_stop],
    })

    ps.append({
        "id": "ba_subject_order",
        "phenomenon": "ba",
        "source": "the subject precedes the BA phrase",
        "good": [lexical(pos="NN", **{"class": "person"}), direct("把"),
                 lexical(pos="NP", **{"class": "portable"}), direct("放在"),
                 lexical(pos="NN", **{"class": "place"}), direct("里"),
                 full_stop],
        "bad": [direct("把"), lexical(pos="NP", **{"class": "portable"}),
                lexical(pos="NN", **{"class": "person"}), direct("放在"),
                lexical(pos="NN", **{"class": "place"}), direct("里"),
                full_stop],
    })

    ps.append({
        "id": "classifier_noun_match",
        "phenomenon": "classifier",
        "source": "a classifier selects nouns of its sortal class",
        "good": [direct("那边", "这边", "门口", "楼下"),
                 direct("站着", "坐着", "躺着"), lexical(pos="CD"),
                 lexical(pos="M"), matched(3, "cls", "match", pos="NN"),
                 full_stop],
        "bad": [direct("那边", "这边", "门口", "楼下"),
                direct("站着", "坐着", "躺着"), lexical(pos="CD"),
                lexical(pos="M"), matched(3, "cls", "mismatch", pos="NN"),
                full_stop],
    })

    ps.append({
        "id": "control_raising_modal_order",
        "phenomenon": "control_raising",
        "source": "the modal follows the raised subject",
        "good": [lexical(pos="NP", **{"class": "thing"}),
                 lexical(pos="MD", epi="yes"),
                 lexical(pos="VV", vclass="change"), full_stop],
        "bad": [lexical(pos="MD", epi="yes"),
                lexical(pos="NP", **{"class": "thing"}),
                lexical(pos="VV", vclass="change"), full_stop],
    })

    ps.append({
        "id": "ellipsis_verb_identity",
        "phenomenon": "ellipsis",
        "source": "object ellipsis needs a transitive antecedent clause",
        "good": [direct("你们", "他们", "孩子们"),
                 lexical(pos="VV", vclass="etr"), direct("了"),
                 lexical(pos="NN", **{"class": "book"}), direct("，"),
                 direct("我们", "她们"), direct("也"),
                 matched(1, "lemma", "match", pos="VV"), direct("了"),
                 full_stop],
        "bad": [direct("你们", "他们", "孩子们"),
                lexical(pos="VV", vclass="eintr"), direct("了"),
                direct("一天", "一年", "一小时"), direct("，"),
                direct("我们", "她们"), direct("也"),
                matched(1, "lemma", "match", pos="VV"), direct("了"),
                full_stop],
    })

    ps.append({
        "id": "fci_dou_licensing",
        "phenomenon": "fci_licensing",
        "source": "free-choice renhe needs dou",
        "good": [direct("任何"), lexical(pos="NN", **{"class": "generic"}),
                 direct("都"), lexical(pos="MD", perm="yes"),
                 lexical(pos="VV", vclass="go"), full_stop],
        "bad": [direct("任何"), lexical(pos="NN", **{"class": "generic"}),
                lexical(pos="MD", perm="yes"),
                lexical(pos="VV", vclass="go"), full_stop],
    })

    ps.append({
        "id": "nominal_copula",
        "phenomenon": "nominal_expression",
        "source": "a bare nominal predicate needs the copula",
        "good": [lexical(pos="NN", **{"class": "person"}), direct("是"),
                 lexical(pos="NN", **{"class": "occupation"}), full_stop],
        "bad": [lexical(pos="NN", **{"class": "person"}),
                lexical(pos="NN", **{"class": "occupation"}), full_stop],
    })

    ps.append({
        "id": "npi_negation_order",
        "phenomenon": "npi_licensing",
        "source": "NPI renhe must be inside the scope of negation",
        "good": [direct("昨天", "今天", "刚才", "上周", "昨晚"), direct("没有"),
                 direct("任何"), lexical(pos="NN", **{"class": "generic"}),
                 lexical(pos="VV", vclass="come"), direct("了"), full_stop],
        "bad": [direct("昨天", "今天", "刚才", "上周", "昨晚"), direct("任何"),
                lexical(pos="NN", **{"class": "generic"}), direct("没有"),
                lexical(pos="VV", vclass="come"), direct("了"), full_stop],
    })

    ps.append({
        "id": "passive_agent_deletion",
        "phenomenon": "passive",
        "source": "the bei...suo passive requires an overt agent",
        "good": [direct("那些"), lexical(pos="NN", **{"class": "secret"}),
                 direct("不可以", "不能", "不应该"), direct("被"),
                 lexical(pos="PN"), direct("所"),
                 lexical(pos="VV", vclass="know"), full_stop],
        "bad": [direct("那些"), lexical(pos="NN", **{"class": "secret"}),
                direct("不可以", "不能", "不应该"), direct("被"), direct("所"),
                lexical(pos="VV", vclass="know"), full_stop],
    })

    ps.append({
        "id": "quantifier_modifier",
        "phenomenon": "quantifiers",
        "source": "downward-entailing contexts reject zhishao",
        "good": [direct("没有人"), lexical(pos="VV", vclass="consume"),
                 direct("了"), direct("超过"),
                 direct("三", "五", "七", "九", "十", "十二", "二十"),
                 direct("块", "颗", "袋"), direct("糖果", "饼干", "巧克力"),
                 full_stop],
        "bad": [direct("没有人"), lexical(pos="VV", vclass="consume"),
                direct("了"), direct("至少"),
                direct("三", "五", "七", "九", "十", "十二", "二十"),
                direct("块", "颗", "袋"), direct("糖果", "饼干", "巧克力"),
                full_stop],
    })

    ps.append({
        "id": "question_daodi",
        "phenomenon": "question",
        "source": "nandao is incompatible with A-not-A questions",
        "good": [direct("你", "你们", "他", "她", "我们", "他们"),
                 direct("到底"), lexical(pos="VV", vclass="anota"),
                 direct("不"), matched(2, "lemma", "match", pos="VV"),
                 lexical(pos="NN", **{"class": "consumable"}), direct("？")],
        "bad": [direct("你", "你们", "他", "她", "我们", "他们"),
                direct("难道"), lexical(pos="VV", vclass="anota"),
                direct("不"), matched(2, "lemma", "match", pos="VV"),
                lexical(pos="NN", **{"class": "consumable"}), direct("？")],
    })

    ps.append({
        "id": "relativization_resumptive",
        "phenomenon": "relativization",
        "source": "no resumptive pronoun in a suo relative",
        "good": [direct("我", "你", "她", "他们"), direct("所"),
                 lexical(pos="VV", vclass="att"), direct("的"),
                 direct("那位"), lexical(pos="NN", **{"class": "title"}),
                 direct("来了", "走了", "到了"), full_stop],
        "bad": [direct("我", "你", "她", "他们"), direct("所"),
                lexical(pos="VV", vclass="att"), direct("他", "她"),
                direct("的"), direct("那位"),
                lexical(pos="NN", **{"class": "title"}),
                direct("来了", "走了", "到了"), full_stop],
    })

    ps.append({
        "id": "topicalization_object_fronting",
        "phenomenon": "topicalization",
        "source": "the progressive resists object fronting",
        "good": [lexical(pos="NN", **{"class": "person"}),
                 direct("在", "正在"), lexical(pos="VV", vclass="consume"),
                 direct("一杯咖啡", "一碗面", "一幅画", "一篇文章", "一块蛋糕"),
                 full_stop],
        "bad": [direct("一杯咖啡", "一碗面", "一幅画", "一篇文章", "一块蛋糕"),
                lexical(pos="NN", **{"class": "person"}),
                direct("在", "正在"), lexical(pos="VV", vclass="consume"),
                full_stop],
    })

    ps.append({
        "id": "verb_phrase_aspect",
        "phenomenon": "verb_phrase",
        "source": "meiyou negation takes guo, not le",
        "good": [lexical(pos="NN", **{"class": "person"}), direct("没有"),
                 lexical(pos="VV", vclass="consume"), direct("过"),
                 lexical(pos="NN", **{"class": "consumable"}), full_stop],
        "bad": [lexical(pos="NN", **{"class": "person"}), direct("没有"),
                lexical(pos="VV", vclass="consume"), direct("了"),
                lexical(pos="NN", **{"class": "consumable"}), full_stop],
    })

    return ps


CATCH = {
    "id": "catch_word_salad",
    "phenomenon": "catch",
    "source": "blatant word-salad contrast for attention checks",
    "good": [direct("我"), direct("喜欢", "讨厌"), direct("苹果", "香蕉"),
             direct("。")],
    "bad": [direct("苹果", "香蕉"), direct("喜欢", "讨厌"), direct("。"),
            direct("我")],
}


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "paradigms").mkdir(exist_ok=True)

    lex = Lexicon()
    for e in entries():
        lex.add(e)
    (DATA / "lexicon.jsonl").write_text(dump_lexicon(lex), encoding="utf-8")

    lib = parse_phrase_library(json.dumps(PHRASES, ensure_ascii=False))
    (DATA / "phrases.json").write_text(dump_phrase_library(lib),
                                       encoding="utf-8")

    for obj in paradigms():
        p = parse_paradigm(obj)
        (DATA / "paradigms" / f"{p.id}.json").write_text(
            dump_paradigm(p), encoding="utf-8")
    catch = parse_paradigm(CATCH)
    (DATA / "catch.json").write_text(dump_paradigm(catch), encoding="utf-8")
    print(f"wrote {len(lex)} lexical entries, {len(paradigms())} paradigms")


if __name__ == "__main__":
    main()
