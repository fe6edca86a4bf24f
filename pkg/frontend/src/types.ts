/** Wire types mirroring the service's JSON formats. */

export type RuleKind = "lexical" | "direct" | "matched" | "phrase";

export interface LexicalRule {
  kind: "lexical";
  constraints: Record<string, string>;
}

export interface DirectRule {
  kind: "direct";
  literals: string[];
}

export interface MatchedRule {
  kind: "matched";
  constraints: Record<string, string>;
  m_pos: number;
  m_feature: string;
  polarity: "match" | "mismatch";
}

export interface PhraseRule {
  kind: "phrase";
  phrase_name: string;
  max_depth: number;
}

export type Rule = LexicalRule | DirectRule | MatchedRule | PhraseRule;

export type Side = "good" | "bad";

export interface Paradigm {
  id: string;
  phenomenon: string;
  source: string;
  good: Rule[];
  bad: Rule[];
}

export interface PairRecord {
  paradigm_id: string;
  phenomenon: string;
  good: { text: string; tokens: string[] };
  bad: { text: string; tokens: string[] };
  critical_good: [number, number];
  critical_bad: [number, number];
  seed: number;
}

export interface GenerationReport {
  requested: number;
  produced: number;
  attempts: number;
  rejections: Record<string, number>;
}

export interface PreviewResponse {
  pairs: PairRecord[];
  jsonl: string;
  report: GenerationReport;
}

export interface ScoreResponse {
  paradigm_id: string;
  n_pairs: number;
  n_correct: number;
  accuracy: number;
}

export interface LexicalEntry {
  surface: string;
  features: Record<string, string>;
}

export interface SearchResponse {
  total: number;
  entries: LexicalEntry[];
}

export interface ParadigmSummary {
  id: string;
  phenomenon: string;
}

export interface ParadigmEnvelope {
  paradigm: Paradigm;
  version: string;
}

export interface ApiError {
  code: string;
  message: string;
  details: Record<string, unknown>;
}
