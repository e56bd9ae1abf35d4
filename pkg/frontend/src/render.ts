// DOM rendering. Sentence text is always set via textContent so the table
// shows exactly what the API returned.

import type { ComparativeSummary, SearchResult } from "./api.js";
import type { UiState } from "./state.js";

export function renderError(banner: HTMLElement, error: string | null): void {
  banner.textContent = error ?? "";
  banner.classList.toggle("hidden", error === null);
}

export function renderResults(
  list: HTMLElement,
  results: SearchResult[],
  selected: string[],
  onToggle: (docId: string, checked: boolean) => void,
): void {
  list.replaceChildren();
  for (const result of results) {
    const item = document.createElement("li");
    const label = document.createElement("label");
    const checkbox = document.createElement("input");
    checkbox.type = "checkbox";
    checkbox.className = "result-checkbox";
    checkbox.dataset.docId = result.doc_id;
    checkbox.checked = selected.includes(result.doc_id);
    checkbox.addEventListener("change", () => onToggle(result.doc_id, checkbox.checked));

    const title = document.createElement("span");
    title.className = "result-title";
    title.textContent = result.title;

    const snippet = document.createElement("span");
    snippet.className = "result-snippet";
    snippet.textContent = result.snippet;

    label.append(checkbox, title, snippet);
    item.appendChild(label);
    list.appendChild(item);
  }
}

export function renderSummary(container: HTMLElement, summary: ComparativeSummary | null): void {
  container.replaceChildren();
  if (summary === null) return;

  const table = document.createElement("table");
  table.id = "summary-table";

  const head = table.createTHead();
  const headRow = head.insertRow();
  for (const column of summary.columns) {
    const th = document.createElement("th");
    th.textContent = column.title;
    th.dataset.docId = column.doc_id;
    headRow.appendChild(th);
  }

  const body = table.createTBody();
  const row = body.insertRow();
  for (const column of summary.columns) {
    const cell = row.insertCell();
    cell.dataset.docId = column.doc_id;
    for (const section of column.sections) {
      const subtitle = document.createElement("p");
      const strong = document.createElement("strong");
      strong.textContent = section.subtitle;
      subtitle.appendChild(strong);
      cell.appendChild(subtitle);
      for (const sentence of section.sentences) {
        const p = document.createElement("p");
        p.className = "summary-sentence";
        p.textContent = sentence.text;
        cell.appendChild(p);
      }
    }
  }
  container.appendChild(table);
}

export function renderBusy(state: UiState, buttons: HTMLButtonElement[]): void {
  for (const button of buttons) button.disabled = state.busy;
}
