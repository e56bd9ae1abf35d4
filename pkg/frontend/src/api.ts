// Typed client for the two endpoints the page talks to.

export interface SearchResult {
  doc_id: string;
  source: string;
  title: string;
  score: number;
  snippet: string;
}

export interface SummarySentence {
  seq_no: number;
  text: string;
  score: number;
}

export interface SummarySection {
  subtitle: string;
  sentences: SummarySentence[];
}

export interface SummaryColumn {
  doc_id: string;
  title: string;
  sections: SummarySection[];
}

export interface ComparativeSummary {
  query: string;
  features: string[];
  columns: SummaryColumn[];
}

export interface SummarizeRequest {
  doc_ids: string[];
  query: string;
  features: string[];
  max_sentences: number;
}

export interface ApiClient {
  search(query: string, limit: number): Promise<SearchResult[]>;
  summarize(req: SummarizeRequest): Promise<ComparativeSummary>;
}

async function post<T>(url: string, body: unknown): Promise<T> {
  const response = await fetch(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const data = await response.json();
      if (data && data.detail) detail = `${data.detail}`;
    } catch {
      // non-JSON error body: keep the status code
    }
    throw new Error(detail);
  }
  return (await response.json()) as T;
}

export function httpClient(base = ""): ApiClient {
  return {
    search: (query, limit) =>
      post<SearchResult[]>(`${base}/api/search`, { query, limit }),
    summarize: (req) => post<ComparativeSummary>(`${base}/api/summarize`, req),
  };
}
