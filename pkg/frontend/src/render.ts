/** HTML fragments for the preview panel. Pure string builders so they can
 * be tested without a DOM. */

import type { GenerationReport, PairRecord } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Tokens joined with the [start, end) span wrapped in <mark>. An empty
 * span (pure insertion on the other side) renders a caret marker at the
 * edit point. */
export function highlightTokens(tokens: string[], span: [number, number]): string {
  const [start, end] = span;
  const before = tokens.slice(0, start).map(escapeHtml).join("");
  const inside = tokens.slice(start, end).map(escapeHtml).join("");
  const after = tokens.slice(end).map(escapeHtml).join("");
  const marked = inside === "" ? '<mark class="empty">&#8226;</mark>' : `<mark>${inside}</mark>`;
  return `${before}${marked}${after}`;
}

export function renderPair(pair: PairRecord): string {
  return [
    '<div class="pair">',
    `<div class="good">${highlightTokens(pair.good.tokens, pair.critical_good)}</div>`,
    `<div class="bad">${highlightTokens(pair.bad.tokens, pair.critical_bad)}</div>`,
    "</div>",
  ].join("");
}

export function renderReport(report: GenerationReport): string {
  const parts = [`${report.produced}/${report.requested} pairs`];
  if (report.produced < report.requested) {
    parts.push(`after ${report.attempts} attempts`);
  }
  const rejections = Object.entries(report.rejections)
    .sort(([a], [b]) => (a < b ? -1 : 1))
    .map(([code, count]) => `${escapeHtml(code)}: ${count}`);
  const summary = escapeHtml(parts.join(" "));
  const cls = report.produced < report.requested ? "report shortfall" : "report";
  const detail = rejections.length > 0 ? ` <span class="rejections">(${rejections.join(", ")})</span>` : "";
  return `<div class="${cls}">${summary}${detail}</div>`;
}
