// Scripted interaction loop against the real DOM wiring (jsdom stands in for
// the browser): search, pick three results, enter features, read the table.

import { beforeEach, describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { ApiClient, ComparativeSummary } from "../src/api.js";
import type { Store } from "../src/state.js";

const here = dirname(fileURLToPath(import.meta.url));

function loadMarkup(): void {
  const html = readFileSync(join(here, "..", "index.html"), "utf-8");
  const body = html.slice(html.indexOf("<body>") + 6, html.indexOf("</body>"));
  document.body.innerHTML = body;
}

const CORPUS = ["college-a", "college-b", "college-c", "college-d"];

function serverSummary(docIds: string[], features: string[]): ComparativeSummary {
  return {
    query: "engineering college",
    features,
    columns: docIds.map((d) => ({
      doc_id: d,
      title: `${d} title`,
      sections: [
        {
          subtitle: "IT",
          sentences: [
            { seq_no: 3, text: `The ${d} placement cell invites recruiters. [${features.join("+")}]`, score: 0.51 },
          ],
        },
        {
          subtitle: "CSE",
          sentences: [{ seq_no: 8, text: `${d} CSE placement drive details.`, score: 0.4 }],
        },
      ],
    })),
  };
}

let lastSummary: ComparativeSummary | null = null;

const api: ApiClient = {
  search: async () =>
    CORPUS.map((d) => ({
      doc_id: d,
      source: `${d}.html`,
      title: `${d} title`,
      score: 4.2,
      snippet: `${d} snippet`,
    })),
  summarize: async (req) => {
    lastSummary = serverSummary(req.doc_ids, req.features);
    return lastSummary;
  },
};

async function bootApp(): Promise<Store> {
  (window as unknown as Record<string, unknown>).__COMPSUM_TEST__ = true;
  loadMarkup();
  const { setupApp } = await import("../src/main.js");
  return setupApp(document, api);
}

function submit(formId: string): void {
  const form = document.getElementById(formId) as HTMLFormElement;
  form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
}

async function settle(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
}

function checkbox(docId: string): HTMLInputElement {
  const box = document.querySelector(`input[data-doc-id="${docId}"]`);
  expect(box).not.toBeNull();
  return box as HTMLInputElement;
}

function click(box: HTMLInputElement): void {
  box.checked = !box.checked;
  box.dispatchEvent(new Event("change", { bubbles: true }));
}

describe("search → select → features → comparative table", () => {
  beforeEach(() => {
    lastSummary = null;
  });

  it("runs the full loop and keeps the table faithful to the API data", async () => {
    await bootApp();

    (document.getElementById("query-input") as HTMLInputElement).value = "engineering college";
    submit("search-form");
    await settle();

    const boxes = document.querySelectorAll(".result-checkbox");
    expect(boxes.length).toBe(4);

    // select three, deliberately not in list order
    click(checkbox("college-c"));
    click(checkbox("college-a"));
    click(checkbox("college-d"));

    (document.getElementById("features-input") as HTMLInputElement).value = "placement, recruiters";
    submit("summarize-form");
    await settle();

    const table = document.getElementById("summary-table");
    expect(table).not.toBeNull();
    const headers = Array.from(document.querySelectorAll("#summary-table th"));
    expect(headers.map((h) => (h as HTMLElement).dataset.docId)).toEqual([
      "college-c",
      "college-a",
      "college-d",
    ]);

    // every sentence in the DOM is exactly the JSON sentence text
    const domTexts = Array.from(document.querySelectorAll(".summary-sentence")).map(
      (p) => p.textContent,
    );
    const apiTexts = lastSummary!.columns.flatMap((c) =>
      c.sections.flatMap((s) => s.sentences.map((x) => x.text)),
    );
    expect(domTexts).toEqual(apiTexts);
  });

  it("re-running with edited features replaces the table and keeps the selection", async () => {
    await bootApp();

    (document.getElementById("query-input") as HTMLInputElement).value = "engineering college";
    submit("search-form");
    await settle();

    click(checkbox("college-b"));
    click(checkbox("college-a"));

    const features = document.getElementById("features-input") as HTMLInputElement;
    features.value = "placement";
    submit("summarize-form");
    await settle();
    const firstTexts = Array.from(document.querySelectorAll(".summary-sentence")).map(
      (p) => p.textContent,
    );
    expect(firstTexts.join(" ")).toContain("[placement]");

    features.value = "placement, recruiters";
    submit("summarize-form");
    await settle();

    expect(document.querySelectorAll("#summary-table").length).toBe(1);
    const secondTexts = Array.from(document.querySelectorAll(".summary-sentence")).map(
      (p) => p.textContent,
    );
    expect(secondTexts.join(" ")).toContain("[placement+recruiters]");
    expect(secondTexts).not.toEqual(firstTexts);

    expect(checkbox("college-b").checked).toBe(true);
    expect(checkbox("college-a").checked).toBe(true);
    const headers = Array.from(document.querySelectorAll("#summary-table th"));
    expect(headers.map((h) => (h as HTMLElement).dataset.docId)).toEqual([
      "college-b",
      "college-a",
    ]);
  });

  it("disables the compare button until something is selected", async () => {
    await bootApp();
    const button = document.getElementById("summarize-button") as HTMLButtonElement;

    (document.getElementById("query-input") as HTMLInputElement).value = "college";
    submit("search-form");
    await settle();
    expect(button.disabled).toBe(true);

    click(checkbox("college-a"));
    expect(button.disabled).toBe(false);
  });
});
