/** View state and its URL encoding. The address bar is the source of
 * truth: every control writes state here and the back button replays it.
 */
import { LevelSlug } from "./types.js";

export type ViewMode = "list" | "grid";

export const PAGE_SIZE: Record<ViewMode, number> = { list: 6, grid: 12 };

export const DEFAULT_VIEW: ViewMode = "list";

export interface AppState {
  query: string;
  view: ViewMode;
  level: LevelSlug | null;
  page: number; // zero-based
}

export function defaultState(view: ViewMode = DEFAULT_VIEW): AppState {
  return { query: "", view, level: null, page: 0 };
}

export function parseState(
  search: string,
  fallbackView: ViewMode = DEFAULT_VIEW,
): AppState {
  const p = new URLSearchParams(search);
  const view = p.get("view");
  const level = p.get("level");
  const page = Number.parseInt(p.get("page") ?? "", 10);
  return {
    query: p.get("q") ?? "",
    view: view === "grid" || view === "list" ? view : fallbackView,
    level:
      level === "high" || level === "medium" || level === "low" ? level : null,
    page: Number.isFinite(page) && page > 0 ? page : 0,
  };
}

export function encodeState(state: AppState): string {
  const p = new URLSearchParams();
  if (state.query) p.set("q", state.query);
  p.set("view", state.view);
  if (state.level) p.set("level", state.level);
  if (state.page > 0) p.set("page", String(state.page));
  return p.toString();
}

/** Flip list/grid; the query and filter survive, the page resets. */
export function toggleView(state: AppState): AppState {
  return { ...state, view: state.view === "list" ? "grid" : "list", page: 0 };
}

export function withQuery(state: AppState, query: string): AppState {
  return { ...state, query, page: 0 };
}

export function withLevel(state: AppState, level: LevelSlug | null): AppState {
  return { ...state, level, page: 0 };
}

export function withPage(state: AppState, page: number): AppState {
  return { ...state, page: Math.max(0, page) };
}

export function pageCount(totalHits: number, view: ViewMode): number {
  return Math.max(1, Math.ceil(totalHits / PAGE_SIZE[view]));
}
