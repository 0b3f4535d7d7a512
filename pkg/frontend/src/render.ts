/** HTML renderers. Every function is a pure string builder over API
 * payloads, so the contract tests run against stubbed responses with no
 * DOM. Display order is exactly the API order; the grid's per-level
 * bands only group neighbouring runs of an already level-sorted list.
 */
import { LEVEL_TEXT, shadeCss } from "./palette.js";
import { AppState, pageCount } from "./state.js";
import {
  DocumentDetail,
  LEVEL_ORDER,
  SearchHit,
  SearchResponse,
} from "./types.js";

export const ABSTRACT_WORD_LIMIT = 40;

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function splitAbstract(
  text: string,
  limit = ABSTRACT_WORD_LIMIT,
): { lead: string; rest: string } {
  const words = text.split(/\s+/).filter(Boolean);
  if (words.length <= limit) return { lead: words.join(" "), rest: "" };
  return {
    lead: words.slice(0, limit).join(" "),
    rest: words.slice(limit).join(" "),
  };
}

function abstractHtml(text: string): string {
  const { lead, rest } = splitAbstract(text);
  if (!rest) return `<p class="abstract">${escapeHtml(lead)}</p>`;
  return (
    `<p class="abstract">` +
    `<span class="abstract-lead">${escapeHtml(lead)}</span>` +
    `<span class="abstract-rest" hidden> ${escapeHtml(rest)}</span> ` +
    `<button type="button" class="abstract-toggle">more</button></p>`
  );
}

function dateHtml(date: string | null): string {
  return date ? `<span class="date">(${escapeHtml(date)})</span>` : "";
}

function titleHtml(hit: SearchHit): string {
  return (
    `<a href="#" class="doc-link" data-doc="${escapeHtml(hit.doc_id)}">` +
    `${escapeHtml(hit.title)}</a>`
  );
}

function listItem(hit: SearchHit): string {
  const chip =
    `<span class="level-chip" style="background:${shadeCss(hit.level)};` +
    `color:${LEVEL_TEXT[hit.level]}">${escapeHtml(hit.level_label)}</span>`;
  return (
    `<li class="result-row">` +
    `<div class="result-head">${chip}${titleHtml(hit)} ${dateHtml(hit.date)}</div>` +
    abstractHtml(hit.abstract) +
    `</li>`
  );
}

export function renderList(hits: SearchHit[]): string {
  return `<ol class="result-list">${hits.map(listItem).join("")}</ol>`;
}

function gridBlock(hit: SearchHit): string {
  // the whole block is the click target; no inner link needed
  return (
    `<article class="grid-block" data-doc="${escapeHtml(hit.doc_id)}" ` +
    `style="background:${shadeCss(hit.level)};color:${LEVEL_TEXT[hit.level]}">` +
    `<h3 class="block-title">${escapeHtml(hit.title)} ${dateHtml(hit.date)}</h3>` +
    abstractHtml(hit.abstract) +
    `</article>`
  );
}

export function renderGrid(hits: SearchHit[]): string {
  const bands = LEVEL_ORDER.map((slug) => ({
    slug,
    hits: hits.filter((h) => h.level === slug),
  })).filter((band) => band.hits.length > 0);
  return bands
    .map(
      (band) =>
        `<section class="grid-band">` +
        `<h2 class="band-label">${escapeHtml(band.hits[0].level_label)}</h2>` +
        `<div class="band-blocks">${band.hits.map(gridBlock).join("")}</div>` +
        `</section>`,
    )
    .join("");
}

export function renderResults(response: SearchResponse, state: AppState): string {
  if (response.results.length === 0) {
    return `<p class="no-results">No results for ${escapeHtml(response.query)}.</p>`;
  }
  return state.view === "grid"
    ? renderGrid(response.results)
    : renderList(response.results);
}

export function renderSummary(response: SearchResponse): string {
  if (response.total_hits === 0) return "";
  const counts = LEVEL_ORDER.filter((slug) => response.level_counts[slug] > 0)
    .map((slug) => `${response.level_counts[slug]} ${slug}`)
    .join(", ");
  const hits = response.total_hits === 1 ? "hit" : "hits";
  return `<p class="summary">${response.total_hits} ${hits} (${counts})</p>`;
}

export function renderPager(state: AppState, totalHits: number): string {
  const pages = pageCount(totalHits, state.view);
  if (pages <= 1) return "";
  const prev = state.page > 0 ? "" : " disabled";
  const next = state.page < pages - 1 ? "" : " disabled";
  return (
    `<button type="button" class="page-prev"${prev}>previous</button>` +
    `<span class="page-where">page ${state.page + 1} of ${pages}</span>` +
    `<button type="button" class="page-next"${next}>next</button>`
  );
}

export function renderError(message: string): string {
  return `<div class="error-banner" role="alert">${escapeHtml(message)}</div>`;
}

export function renderDocument(detail: DocumentDetail): string {
  const bd = detail.breakdown;
  const head =
    `<button type="button" class="doc-close">close</button>` +
    `<h2>${escapeHtml(detail.title)} ${dateHtml(detail.date)}</h2>` +
    `<p class="doc-abstract">${escapeHtml(detail.abstract)}</p>` +
    `<p class="doc-meta">document ${escapeHtml(detail.doc_id)}, ` +
    `${detail.n_tokens} tokens</p>`;
  if (!bd || bd.occurrences.length === 0) return head;
  const rows = bd.occurrences
    .map(
      (o) =>
        `<tr class="${o.scored ? "scored" : "unscored"}">` +
        `<td>${escapeHtml(o.term)}</td><td>${escapeHtml(o.match_type)}</td>` +
        `<td>${escapeHtml(o.zone)}</td><td>${o.zone_weight}</td>` +
        `<td>${o.ontology_weight}</td><td>${o.score}</td>` +
        `<td>${o.in_context ? "x5" : ""}</td></tr>`,
    )
    .join("");
  return (
    head +
    `<p class="doc-score">${escapeHtml(bd.label)}, score ${bd.total} ` +
    `for ${escapeHtml(bd.query)}</p>` +
    `<table class="breakdown"><thead><tr><th>term</th><th>match</th>` +
    `<th>zone</th><th>zone w</th><th>ontology w</th><th>score</th>` +
    `<th>context</th></tr></thead><tbody>${rows}</tbody></table>`
  );
}
