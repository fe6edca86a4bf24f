import { describe, expect, it } from "vitest";

import type { Paradigm, Rule } from "../src/types.js";
import { defaultRule, isSubmittable, switchRuleKind, validateDraft } from "../src/validate.js";

function draft(good: Rule[], bad: Rule[] = [{ kind: "direct", literals: ["好"] }]): Paradigm {
  return { id: "test_paradigm", phenomenon: "test", source: "", good, bad };
}

const LEXICAL: Rule = { kind: "lexical", constraints: { pos: "NN" } };

describe("validateDraft", () => {
  it("accepts a well-formed anaphor-style draft", () => {
    const rules: Rule[] = [
      { kind: "lexical", constraints: { pos: "NN", class: "person" } },
      { kind: "phrase", phrase_name: "ReflV", max_depth: 2 },
      {
        kind: "matched",
        constraints: { pos: "PN" },
        m_pos: 0,
        m_feature: "gender",
        polarity: "match",
      },
      { kind: "direct", literals: ["自己", "。"] },
    ];
    expect(validateDraft(draft(rules))).toEqual([]);
    expect(isSubmittable(draft(rules))).toBe(true);
  });

  it("blocks forward m_pos references", () => {
    const rules: Rule[] = [
      {
        kind: "matched",
        constraints: { pos: "PN" },
        m_pos: 1,
        m_feature: "gender",
        polarity: "match",
      },
      LEXICAL,
    ];
    const issues = validateDraft(draft(rules));
    expect(issues.some((i) => i.message.includes("earlier position"))).toBe(true);
    expect(isSubmittable(draft(rules))).toBe(false);
  });

  it("blocks self-referencing m_pos", () => {
    const rules: Rule[] = [
      LEXICAL,
      {
        kind: "matched",
        constraints: { pos: "PN" },
        m_pos: 1,
        m_feature: "gender",
        polarity: "match",
      },
    ];
    expect(isSubmittable(draft(rules))).toBe(false);
  });

  it("requires at least one rule per side", () => {
    const issues = validateDraft(draft([]));
    expect(issues).toHaveLength(1);
    expect(issues[0]).toMatchObject({ side: "good", position: -1 });
  });

  it("rejects empty constraints, literals, and phrase names", () => {
    expect(isSubmittable(draft([{ kind: "lexical", constraints: {} }]))).toBe(false);
    expect(isSubmittable(draft([{ kind: "direct", literals: [] }]))).toBe(false);
    expect(isSubmittable(draft([{ kind: "direct", literals: [""] }]))).toBe(false);
    expect(isSubmittable(draft([{ kind: "phrase", phrase_name: "", max_depth: 2 }]))).toBe(false);
    expect(
      isSubmittable(draft([{ kind: "phrase", phrase_name: "X", max_depth: 0 }])),
    ).toBe(false);
  });

  it("rejects malformed ids and empty phenomena", () => {
    const d = draft([LEXICAL]);
    expect(isSubmittable({ ...d, id: "Not A Slug" })).toBe(false);
    expect(isSubmittable({ ...d, phenomenon: " " })).toBe(false);
  });

  it("reports the side and position of each problem", () => {
    const bad: Rule[] = [{ kind: "direct", literals: [] }];
    const issues = validateDraft(draft([LEXICAL], bad));
    expect(issues).toHaveLength(1);
    expect(issues[0]).toMatchObject({ side: "bad", position: 0 });
  });
});

describe("switchRuleKind", () => {
  it("resets kind-specific fields on a kind change", () => {
    const rules: Rule[] = [
      { kind: "lexical", constraints: { pos: "NN" } },
      { kind: "direct", literals: ["好"] },
    ];
    const next = switchRuleKind(rules, 0, "direct");
    expect(next[0]).toEqual({ kind: "direct", literals: [] });
    expect(next[1]).toBe(rules[1]);
  });

  it("keeps the rule when the kind is unchanged", () => {
    const rules: Rule[] = [{ kind: "lexical", constraints: { pos: "NN" } }];
    expect(switchRuleKind(rules, 0, "lexical")[0]).toBe(rules[0]);
  });

  it("produces valid defaults for matched and phrase kinds", () => {
    expect(defaultRule("matched")).toMatchObject({ m_pos: 0, polarity: "match" });
    expect(defaultRule("phrase")).toMatchObject({ max_depth: 2 });
  });
});
