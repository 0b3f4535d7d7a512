/** DOM wiring: controls write AppState, the URL mirrors it, and every
 * state change issues one API call (newer calls abort older ones).
 */
import { SearchClient } from "./api.js";
import {
  renderDocument,
  renderError,
  renderPager,
  renderResults,
  renderSummary,
} from "./render.js";
import {
  AppState,
  DEFAULT_VIEW,
  ViewMode,
  encodeState,
  parseState,
  toggleView,
  withLevel,
  withPage,
  withQuery,
} from "./state.js";
import { LevelSlug } from "./types.js";

const VIEW_PREF_KEY = "fuzzyrank.view";

function storedView(): ViewMode {
  const v = localStorage.getItem(VIEW_PREF_KEY);
  return v === "grid" || v === "list" ? v : DEFAULT_VIEW;
}

function grab<T extends Element>(selector: string): T {
  const el = document.querySelector<T>(selector);
  if (!el) throw new Error(`missing element ${selector}`);
  return el;
}

const form = grab<HTMLFormElement>("#search-form");
const input = grab<HTMLInputElement>("#query");
const levelSelect = grab<HTMLSelectElement>("#level-filter");
const viewButton = grab<HTMLButtonElement>("#view-toggle");
const summaryBox = grab<HTMLElement>("#summary");
const resultsBox = grab<HTMLElement>("#results");
const pagerBox = grab<HTMLElement>("#pager");
const docPanel = grab<HTMLElement>("#document");

const client = new SearchClient();
let state: AppState = parseState(location.search, storedView());

function syncControls(): void {
  input.value = state.query;
  levelSelect.value = state.level ?? "";
  viewButton.textContent = state.view === "list" ? "Grid view" : "List view";
  viewButton.setAttribute("aria-pressed", String(state.view === "grid"));
}

async function show(next: AppState, push: boolean): Promise<void> {
  state = next;
  syncControls();
  if (push) {
    history.pushState(null, "", `${location.pathname}?${encodeState(state)}`);
  }
  docPanel.hidden = true;
  if (!state.query.trim()) {
    summaryBox.innerHTML = "";
    resultsBox.innerHTML = "";
    pagerBox.innerHTML = "";
    return;
  }
  try {
    const response = await client.search(state);
    summaryBox.innerHTML = renderSummary(response);
    resultsBox.innerHTML = renderResults(response, state);
    pagerBox.innerHTML = renderPager(state, response.total_hits);
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") return;
    const message = err instanceof Error ? err.message : String(err);
    summaryBox.innerHTML = "";
    resultsBox.innerHTML = renderError(message);
    pagerBox.innerHTML = "";
  }
}

form.addEventListener("submit", (event) => {
  event.preventDefault();
  void show(withQuery(state, input.value.trim()), true);
});

levelSelect.addEventListener("change", () => {
  const v = levelSelect.value;
  const level: LevelSlug | null =
    v === "high" || v === "medium" || v === "low" ? v : null;
  void show(withLevel(state, level), true);
});

viewButton.addEventListener("click", () => {
  const next = toggleView(state);
  localStorage.setItem(VIEW_PREF_KEY, next.view);
  void show(next, true);
});

pagerBox.addEventListener("click", (event) => {
  const el = event.target as HTMLElement;
  if (el.matches(".page-prev:not([disabled])")) {
    void show(withPage(state, state.page - 1), true);
  } else if (el.matches(".page-next:not([disabled])")) {
    void show(withPage(state, state.page + 1), true);
  }
});

resultsBox.addEventListener("click", (event) => {
  const el = event.target as HTMLElement;
  if (el.matches(".abstract-toggle")) {
    const rest = el.parentElement?.querySelector<HTMLElement>(".abstract-rest");
    if (rest) {
      rest.hidden = !rest.hidden;
      el.textContent = rest.hidden ? "more" : "less";
    }
    return;
  }
  const link = el.closest<HTMLElement>("[data-doc]");
  if (link) {
    event.preventDefault();
    const docId = link.dataset.doc ?? "";
    client
      .document(docId, state.query)
      .then((detail) => {
        docPanel.innerHTML = renderDocument(detail);
        docPanel.hidden = false;
      })
      .catch((err: unknown) => {
        const message = err instanceof Error ? err.message : String(err);
        docPanel.innerHTML = renderError(message);
        docPanel.hidden = false;
      });
  }
});

docPanel.addEventListener("click", (event) => {
  if ((event.target as HTMLElement).matches(".doc-close")) {
    docPanel.hidden = true;
  }
});

window.addEventListener("popstate", () => {
  void show(parseState(location.search, storedView()), false);
});

syncControls();
if (state.query) {
  void show(state, false);
}
