/** Client-side structural validation of paradigm drafts.
 *
 * Only the shape of the draft is checked here; semantic feasibility
 * (whether the lexicon can satisfy the constraints) is the engine's job and
 * surfaces through preview reports instead.
 */

import type { Paradigm, Rule, RuleKind, Side } from "./types.js";

export interface Issue {
  side: Side | "paradigm";
  position: number;
  message: string;
}

const ID_PATTERN = /^[a-z0-9][a-z0-9_]*$/;

export function defaultRule(kind: RuleKind): Rule {
  switch (kind) {
    case "lexical":
      return { kind, constraints: {} };
    case "direct":
      return { kind, literals: [] };
    case "matched":
      return { kind, constraints: {}, m_pos: 0, m_feature: "", polarity: "match" };
    case "phrase":
      return { kind, phrase_name: "", max_depth: 2 };
  }
}

/** Replace the rule at `position`, resetting kind-specific fields when the
 * kind changes. */
export function switchRuleKind(rules: Rule[], position: number, kind: RuleKind): Rule[] {
  return rules.map((r, i) =>
    i === position && r.kind !== kind ? defaultRule(kind) : r,
  );
}

function checkConstraints(
  constraints: Record<string, string>,
  side: Side,
  position: number,
  required: boolean,
  issues: Issue[],
): void {
  const entries = Object.entries(constraints);
  if (required && entries.length === 0) {
    issues.push({ side, position, message: "at least one constraint is required" });
  }
  for (const [name, value] of entries) {
    if (name.trim() === "" || value.trim() === "") {
      issues.push({ side, position, message: "constraint names and values must be non-empty" });
    }
  }
}

function checkRule(rule: Rule, side: Side, position: number, issues: Issue[]): void {
  switch (rule.kind) {
    case "lexical":
      checkConstraints(rule.constraints, side, position, true, issues);
      break;
    case "direct":
      if (rule.literals.length === 0) {
        issues.push({ side, position, message: "at least one literal is required" });
      }
      if (rule.literals.some((s) => s === "")) {
        issues.push({ side, position, message: "literals must be non-empty" });
      }
      break;
    case "matched":
      if (!Number.isInteger(rule.m_pos) || rule.m_pos < 0) {
        issues.push({ side, position, message: "m_pos must be a non-negative integer" });
      } else if (rule.m_pos >= position) {
        issues.push({
          side,
          position,
          message: `m_pos ${rule.m_pos} must reference an earlier position (< ${position})`,
        });
      }
      if (rule.m_feature.trim() === "") {
        issues.push({ side, position, message: "m_feature is required" });
      }
      if (rule.polarity !== "match" && rule.polarity !== "mismatch") {
        issues.push({ side, position, message: "polarity must be match or mismatch" });
      }
      checkConstraints(rule.constraints, side, position, true, issues);
      break;
    case "phrase":
      if (rule.phrase_name.trim() === "") {
        issues.push({ side, position, message: "phrase_name is required" });
      }
      if (!Number.isInteger(rule.max_depth) || rule.max_depth < 1) {
        issues.push({ side, position, message: "max_depth must be an integer >= 1" });
      }
      break;
  }
}

export function validateDraft(draft: Paradigm): Issue[] {
  const issues: Issue[] = [];
  if (!ID_PATTERN.test(draft.id)) {
    issues.push({
      side: "paradigm",
      position: -1,
      message: "id must be a lowercase slug (letters, digits, underscores)",
    });
  }
  if (draft.phenomenon.trim() === "") {
    issues.push({ side: "paradigm", position: -1, message: "phenomenon is required" });
  }
  for (const side of ["good", "bad"] as const) {
    const rules = draft[side];
    if (rules.length === 0) {
      issues.push({ side, position: -1, message: "grammar needs at least one rule" });
    }
    rules.forEach((rule, i) => checkRule(rule, side, i, issues));
  }
  return issues;
}

export function isSubmittable(draft: Paradigm): boolean {
  return validateDraft(draft).length === 0;
}
