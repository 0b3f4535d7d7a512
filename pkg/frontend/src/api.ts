/** Request plumbing. URLs are pure functions of state; the client keeps
 * at most one search in flight and aborts the older one on overlap.
 */
import { AppState, PAGE_SIZE } from "./state.js";
import { DocumentDetail, SearchResponse } from "./types.js";

export function searchUrl(state: AppState, base = "/api/search"): string {
  const p = new URLSearchParams({ q: state.query });
  if (state.level) p.set("level", state.level);
  const limit = PAGE_SIZE[state.view];
  p.set("offset", String(state.page * limit));
  p.set("limit", String(limit));
  return `${base}?${p.toString()}`;
}

export function documentUrl(docId: string, query = ""): string {
  const base = `/api/document/${encodeURIComponent(docId)}`;
  if (!query) return base;
  const p = new URLSearchParams({ q: query });
  return `${base}?${p.toString()}`;
}

async function errorDetail(res: Response): Promise<string> {
  try {
    const body = (await res.json()) as { detail?: string };
    if (body && typeof body.detail === "string") return body.detail;
  } catch {
    // non-JSON error body; fall through to the status line
  }
  return `request failed (${res.status})`;
}

export class SearchClient {
  private inflight: AbortController | null = null;

  constructor(private fetcher: typeof fetch = fetch) {}

  async search(state: AppState): Promise<SearchResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const res = await this.fetcher(searchUrl(state), {
      signal: controller.signal,
    });
    if (!res.ok) throw new Error(await errorDetail(res));
    return (await res.json()) as SearchResponse;
  }

  async document(docId: string, query = ""): Promise<DocumentDetail> {
    const res = await this.fetcher(documentUrl(docId, query));
    if (!res.ok) throw new Error(await errorDetail(res));
    return (await res.json()) as DocumentDetail;
  }
}
