/** DOM wiring for the authoring studio. All logic lives in the other
 * modules; this file only moves values between the store and the page. */

import * as api from "./api.js";
import { renderPair, renderReport, escapeHtml } from "./render.js";
import { EditorStore, emptyDraft } from "./state.js";
import type { Paradigm, Rule, RuleKind, Side } from "./types.js";
import { defaultRule } from "./validate.js";

const store = new EditorStore();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setStatus(text: string, isError = false): void {
  const node = el<HTMLDivElement>("status");
  node.textContent = text;
  node.className = isError ? "status error" : "status";
}

// ---------------------------------------------------------------------------
// Rule forms

function constraintsToText(constraints: Record<string, string>): string {
  return Object.entries(constraints)
    .map(([k, v]) => `${k}=${v}`)
    .join(", ");
}

function textToConstraints(text: string): Record<string, string> {
  const out: Record<string, string> = {};
  for (const part of text.split(",")) {
    const trimmed = part.trim();
    if (trimmed === "") continue;
    const eq = trimmed.indexOf("=");
    if (eq < 0) {
      out[trimmed] = "";
    } else {
      out[trimmed.slice(0, eq).trim()] = trimmed.slice(eq + 1).trim();
    }
  }
  return out;
}

function ruleFields(rule: Rule, side: Side, position: number): string {
  const p = `${side}-${position}`;
  switch (rule.kind) {
    case "lexical":
      return `<input id="${p}-constraints" placeholder="pos=NN, class=person"
        value="${escapeHtml(constraintsToText(rule.constraints))}">`;
    case "direct":
      return `<input id="${p}-literals" placeholder="literals, comma separated"
        value="${escapeHtml(rule.literals.join(", "))}">`;
    case "matched":
      return `
        <input id="${p}-constraints" placeholder="pos=PN"
          value="${escapeHtml(constraintsToText(rule.constraints))}">
        <input id="${p}-mpos" type="number" min="0" value="${rule.m_pos}" title="m_pos">
        <input id="${p}-mfeature" placeholder="feature" value="${escapeHtml(rule.m_feature)}">
        <select id="${p}-polarity">
          <option value="match"${rule.polarity === "match" ? " selected" : ""}>match</option>
          <option value="mismatch"${rule.polarity === "mismatch" ? " selected" : ""}>mismatch</option>
        </select>`;
    case "phrase":
      return `
        <input id="${p}-phrase" placeholder="phrase name" value="${escapeHtml(rule.phrase_name)}">
        <input id="${p}-depth" type="number" min="1" value="${rule.max_depth}" title="max_depth">`;
  }
}

function readRule(kind: RuleKind, side: Side, position: number): Rule {
  const p = `${side}-${position}`;
  const value = (suffix: string) => el<HTMLInputElement>(`${p}-${suffix}`).value;
  switch (kind) {
    case "lexical":
      return { kind, constraints: textToConstraints(value("constraints")) };
    case "direct":
      return {
        kind,
        literals: value("literals").split(",").map((s) => s.trim()).filter((s) => s !== ""),
      };
    case "matched":
      return {
        kind,
        constraints: textToConstraints(value("constraints")),
        m_pos: Number(value("mpos")),
        m_feature: value("mfeature"),
        polarity: el<HTMLSelectElement>(`${p}-polarity`).value as "match" | "mismatch",
      };
    case "phrase":
      return { kind, phrase_name: value("phrase"), max_depth: Number(value("depth")) };
  }
}

function renderSide(side: Side): string {
  const rows = store.draft[side].map((rule, i) => {
    const kindOptions = (["lexical", "direct", "matched", "phrase"] as const)
      .map((k) => `<option value="${k}"${rule.kind === k ? " selected" : ""}>${k}</option>`)
      .join("");
    return `<div class="rule" data-side="${side}" data-pos="${i}">
      <span class="pos">${i}</span>
      <select class="kind" data-side="${side}" data-pos="${i}">${kindOptions}</select>
      ${ruleFields(rule, side, i)}
      <button class="remove" data-side="${side}" data-pos="${i}">x</button>
    </div>`;
  });
  return rows.join("");
}

function renderEditor(): void {
  el<HTMLInputElement>("draft-id").value = store.draft.id;
  el<HTMLInputElement>("draft-phenomenon").value = store.draft.phenomenon;
  el<HTMLInputElement>("draft-source").value = store.draft.source;
  el<HTMLDivElement>("good-rules").innerHTML = renderSide("good");
  el<HTMLDivElement>("bad-rules").innerHTML = renderSide("bad");
  const issues = store.issues;
  el<HTMLUListElement>("issues").innerHTML = issues
    .map((i) => `<li>${escapeHtml(`${i.side}[${i.position}]: ${i.message}`)}</li>`)
    .join("");
  el<HTMLButtonElement>("preview-btn").disabled = !store.submittable;
  el<HTMLButtonElement>("save-btn").disabled = !store.submittable;
  el<HTMLSpanElement>("dirty").textContent = store.dirty ? "unsaved changes" : "";
  if (store.previewStale) {
    el<HTMLDivElement>("preview").classList.add("stale");
  } else {
    el<HTMLDivElement>("preview").classList.remove("stale");
  }
}

function syncDraftFromForms(): void {
  store.setMeta({
    id: el<HTMLInputElement>("draft-id").value,
    phenomenon: el<HTMLInputElement>("draft-phenomenon").value,
    source: el<HTMLInputElement>("draft-source").value,
  });
  for (const side of ["good", "bad"] as const) {
    store.draft[side].forEach((rule, i) => {
      store.editRule(side, i, readRule(rule.kind, side, i));
    });
  }
}

// ---------------------------------------------------------------------------
// Actions

async function refreshParadigmList(): Promise<void> {
  const { paradigms } = await api.listParadigms();
  el<HTMLUListElement>("paradigm-list").innerHTML = paradigms
    .map(
      (p) =>
        `<li><a href="#" data-id="${escapeHtml(p.id)}">${escapeHtml(p.id)}</a>
         <span class="phenomenon">${escapeHtml(p.phenomenon)}</span></li>`,
    )
    .join("");
}

async function openParadigm(id: string): Promise<void> {
  const { paradigm, version } = await api.getParadigm(id);
  store.loadSaved(paradigm, version);
  el<HTMLDivElement>("preview").innerHTML = "";
  setStatus(`loaded ${id} (version ${version})`);
}

async function runPreview(): Promise<void> {
  syncDraftFromForms();
  if (!store.submittable) return;
  const n = Number(el<HTMLInputElement>("preview-n").value) || 5;
  const seed = Number(el<HTMLInputElement>("preview-seed").value) || 0;
  try {
    const resp = await api.preview(store.draft, n, seed);
    store.recordPreview(resp, n, seed);
    el<HTMLDivElement>("preview").innerHTML =
      renderReport(resp.report) + resp.pairs.map(renderPair).join("");
    setStatus(`previewed ${resp.pairs.length} pairs`);
  } catch (err) {
    if (err instanceof api.ServiceError) {
      setStatus(`${err.code}: ${err.message}`, true);
    } else {
      throw err;
    }
  }
}

async function runSave(): Promise<void> {
  syncDraftFromForms();
  if (!store.submittable) return;
  try {
    const { version } = await api.saveParadigm(store.draft, store.version ?? undefined);
    store.recordSave(version);
    setStatus(`saved ${store.draft.id} (version ${version})`);
    await refreshParadigmList();
  } catch (err) {
    if (err instanceof api.ServiceError && err.code === "version_conflict") {
      setStatus("save conflict: the paradigm changed on disk; reload before saving", true);
    } else if (err instanceof api.ServiceError) {
      setStatus(`${err.code}: ${err.message}`, true);
    } else {
      throw err;
    }
  }
}

async function runLexiconSearch(): Promise<void> {
  const constraints = textToConstraints(el<HTMLInputElement>("lexicon-query").value);
  const resp = await api.searchLexicon(constraints);
  el<HTMLDivElement>("lexicon-results").innerHTML =
    `<div class="total">${resp.total} entries</div>` +
    resp.entries
      .map(
        (e) =>
          `<div class="entry"><b>${escapeHtml(e.surface)}</b>
           <span>${escapeHtml(constraintsToText(e.features))}</span></div>`,
      )
      .join("");
}

function wire(): void {
  store.subscribe(renderEditor);
  el<HTMLButtonElement>("preview-btn").addEventListener("click", () => void runPreview());
  el<HTMLButtonElement>("save-btn").addEventListener("click", () => void runSave());
  el<HTMLButtonElement>("new-btn").addEventListener("click", () => {
    store.loadSaved(emptyDraft(), "");
  });
  el<HTMLButtonElement>("lexicon-search-btn").addEventListener("click", () =>
    void runLexiconSearch(),
  );
  for (const side of ["good", "bad"] as const) {
    el<HTMLButtonElement>(`${side}-add`).addEventListener("click", () => {
      syncDraftFromForms();
      store.addRule(side, defaultRule("lexical"));
    });
  }
  const editor = el<HTMLDivElement>("editor");
  editor.addEventListener("change", (ev) => {
    const target = ev.target as HTMLElement;
    if (target.classList.contains("kind")) {
      const side = target.dataset.side as Side;
      const pos = Number(target.dataset.pos);
      syncDraftFromForms();
      store.setRuleKind(side, pos, (target as HTMLSelectElement).value as RuleKind);
    } else {
      syncDraftFromForms();
    }
  });
  editor.addEventListener("click", (ev) => {
    const target = ev.target as HTMLElement;
    if (target.classList.contains("remove")) {
      store.removeRule(target.dataset.side as Side, Number(target.dataset.pos));
    }
  });
  el<HTMLUListElement>("paradigm-list").addEventListener("click", (ev) => {
    const target = ev.target as HTMLElement;
    const id = target.dataset.id;
    if (id) {
      ev.preventDefault();
      void openParadigm(id);
    }
  });
}

wire();
void refreshParadigmList().catch((err: unknown) => {
  setStatus(`cannot reach the service: ${String(err)}`, true);
});
renderEditor();

export type { Paradigm };
