/** Editor state for one paradigm draft.
 *
 * The store is deliberately dumb: the service owns all persisted state, so
 * everything here can be rebuilt from a reload. The preview snapshot
 * remembers which draft revision it was generated from, so stale previews
 * are detectable after further edits.
 */

import type { Paradigm, PreviewResponse, Rule, RuleKind, Side } from "./types.js";
import { switchRuleKind, validateDraft, type Issue } from "./validate.js";

export interface PreviewSnapshot {
  response: PreviewResponse;
  draftRevision: number;
  n: number;
  seed: number;
}

export function emptyDraft(): Paradigm {
  return { id: "new_paradigm", phenomenon: "", source: "", good: [], bad: [] };
}

export class EditorStore {
  private draftState: Paradigm;
  private revision = 0;
  private savedRevision = 0;
  private savedVersion: string | null = null;
  private previewState: PreviewSnapshot | null = null;
  private listeners: Array<() => void> = [];

  constructor(draft: Paradigm = emptyDraft(), version: string | null = null) {
    this.draftState = draft;
    this.savedVersion = version;
  }

  get draft(): Paradigm {
    return this.draftState;
  }

  get dirty(): boolean {
    return this.revision !== this.savedRevision;
  }

  get version(): string | null {
    return this.savedVersion;
  }

  get preview(): PreviewSnapshot | null {
    return this.previewState;
  }

  get previewStale(): boolean {
    return this.previewState !== null && this.previewState.draftRevision !== this.revision;
  }

  get issues(): Issue[] {
    return validateDraft(this.draftState);
  }

  get submittable(): boolean {
    return this.issues.length === 0;
  }

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private mutate(next: Paradigm): void {
    this.draftState = next;
    this.revision += 1;
    this.listeners.forEach((l) => l());
  }

  loadSaved(paradigm: Paradigm, version: string): void {
    this.draftState = paradigm;
    this.revision += 1;
    this.savedRevision = this.revision;
    this.savedVersion = version;
    this.previewState = null;
    this.listeners.forEach((l) => l());
  }

  setMeta(fields: Partial<Pick<Paradigm, "id" | "phenomenon" | "source">>): void {
    this.mutate({ ...this.draftState, ...fields });
  }

  addRule(side: Side, rule: Rule): void {
    this.mutate({ ...this.draftState, [side]: [...this.draftState[side], rule] });
  }

  removeRule(side: Side, position: number): void {
    const rules = this.draftState[side].filter((_, i) => i !== position);
    this.mutate({ ...this.draftState, [side]: rules });
  }

  editRule(side: Side, position: number, rule: Rule): void {
    const rules = this.draftState[side].map((r, i) => (i === position ? rule : r));
    this.mutate({ ...this.draftState, [side]: rules });
  }

  setRuleKind(side: Side, position: number, kind: RuleKind): void {
    this.mutate({
      ...this.draftState,
      [side]: switchRuleKind(this.draftState[side], position, kind),
    });
  }

  recordPreview(response: PreviewResponse, n: number, seed: number): void {
    this.previewState = { response, draftRevision: this.revision, n, seed };
    this.listeners.forEach((l) => l());
  }

  recordSave(version: string): void {
    this.savedRevision = this.revision;
    this.savedVersion = version;
    this.listeners.forEach((l) => l());
  }
}
