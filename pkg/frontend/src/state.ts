// Single in-memory state store plus the two async transitions of the page:
// run a search, run a summarize. One request in flight at a time.

import type { ApiClient, ComparativeSummary, SearchResult } from "./api.js";

export interface UiState {
  query: string;
  results: SearchResult[];
  selected: string[]; // ordered: selection order becomes column order
  features: string[];
  summary: ComparativeSummary | null;
  busy: boolean;
  error: string | null;
}

export function initialState(): UiState {
  return {
    query: "",
    results: [],
    selected: [],
    features: [],
    summary: null,
    busy: false,
    error: null,
  };
}

export type Listener = (state: UiState) => void;

export class Store {
  state: UiState = initialState();
  private listeners: Listener[] = [];

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  update(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }
}

export function toggleSelection(store: Store, docId: string, checked: boolean): void {
  const selected = store.state.selected.filter((d) => d !== docId);
  if (checked) selected.push(docId);
  store.update({ selected });
}

export function parseFeatures(text: string): string[] {
  return text
    .split(",")
    .map((f) => f.trim())
    .filter((f) => f.length > 0);
}

export async function runSearch(store: Store, api: ApiClient, query: string): Promise<void> {
  if (!query.trim()) {
    store.update({ error: "Enter a query first." });
    return;
  }
  if (store.state.busy) return;
  store.update({ busy: true, error: null });
  try {
    const results = await api.search(query, 10);
    const known = new Set(results.map((r) => r.doc_id));
    store.update({
      query,
      results,
      selected: store.state.selected.filter((id) => known.has(id)),
      busy: false,
    });
  } catch (err) {
    // keep prior results and selection on failure
    store.update({ busy: false, error: `Search failed: ${(err as Error).message}` });
  }
}

export async function runSummarize(
  store: Store,
  api: ApiClient,
  featuresText: string,
  maxSentences: number,
): Promise<void> {
  const features = parseFeatures(featuresText);
  if (store.state.selected.length === 0) {
    store.update({ error: "Select at least one result." });
    return;
  }
  if (features.length === 0) {
    store.update({ error: "Enter at least one feature keyword." });
    return;
  }
  if (store.state.busy) return;
  store.update({ busy: true, error: null, features });
  try {
    const summary = await api.summarize({
      doc_ids: [...store.state.selected],
      query: store.state.query,
      features,
      max_sentences: maxSentences,
    });
    store.update({ summary, busy: false });
  } catch (err) {
    store.update({ busy: false, error: `Summarize failed: ${(err as Error).message}` });
  }
}
