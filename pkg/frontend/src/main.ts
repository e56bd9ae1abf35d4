import { httpClient, type ApiClient } from "./api.js";
import { Store, runSearch, runSummarize, toggleSelection } from "./state.js";
import { renderError, renderResults, renderSummary } from "./render.js";

export function setupApp(root: Document, api: ApiClient): Store {
  const store = new Store();

  const searchForm = root.getElementById("search-form") as HTMLFormElement;
  const queryInput = root.getElementById("query-input") as HTMLInputElement;
  const searchButton = root.getElementById("search-button") as HTMLButtonElement;
  const resultsList = root.getElementById("results") as HTMLElement;
  const summarizeForm = root.getElementById("summarize-form") as HTMLFormElement;
  const featuresInput = root.getElementById("features-input") as HTMLInputElement;
  const sentencesInput = root.getElementById("sentences-input") as HTMLInputElement;
  const summarizeButton = root.getElementById("summarize-button") as HTMLButtonElement;
  const summaryDiv = root.getElementById("summary") as HTMLElement;
  const banner = root.getElementById("error-banner") as HTMLElement;

  store.subscribe((state) => {
    renderError(banner, state.error);
    renderResults(resultsList, state.results, state.selected, (docId, checked) =>
      toggleSelection(store, docId, checked),
    );
    renderSummary(summaryDiv, state.summary);
    searchButton.disabled = state.busy;
    summarizeButton.disabled = state.busy || state.selected.length === 0;
  });

  searchForm.addEventListener("submit", (event) => {
    event.preventDefault();
    void runSearch(store, api, queryInput.value);
  });

  summarizeForm.addEventListener("submit", (event) => {
    event.preventDefault();
    const maxSentences = Math.max(1, Number(sentencesInput.value) || 6);
    void runSummarize(store, api, featuresInput.value, maxSentences);
  });

  return store;
}

if (typeof window !== "undefined" && !("__COMPSUM_TEST__" in window)) {
  setupApp(document, httpClient());
}
