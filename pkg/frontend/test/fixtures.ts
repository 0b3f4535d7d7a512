/** Stubbed API payloads in the exact wire shape the server emits. */
import { LevelSlug, SearchHit, SearchResponse } from "../src/types.js";

export const LABELS: Record<LevelSlug, string> = {
  high: "Highly relevant",
  medium: "Relevant",
  low: "Somewhat relevant",
};

const SCORES: Record<LevelSlug, number> = { high: 32, medium: 22, low: 7 };

export function hit(
  id: string,
  level: LevelSlug,
  over: Partial<SearchHit> = {},
): SearchHit {
  return {
    doc_id: id,
    title: `Planted article ${id}`,
    date: "2008",
    abstract: "Material from the excavation records is described.",
    level,
    level_label: LABELS[level],
    score: SCORES[level],
    zone_component: SCORES[level] - 10,
    ontology_component: 10,
    n_occurrences: 2,
    ...over,
  };
}

export function response(
  hits: SearchHit[],
  over: Partial<SearchResponse> = {},
): SearchResponse {
  const counts: Record<LevelSlug, number> = { high: 0, medium: 0, low: 0 };
  for (const h of hits) counts[h.level] += 1;
  return {
    query: "allosaurus",
    total_hits: hits.length,
    offset: 0,
    limit: 20,
    level_counts: counts,
    results: hits,
    ...over,
  };
}

/** Twelve hits, four per level, ordered the way the API orders them. */
export function plantedTwelve(): SearchHit[] {
  const out: SearchHit[] = [];
  const levels: LevelSlug[] = ["high", "medium", "low"];
  let n = 1;
  for (const level of levels) {
    for (let i = 0; i < 4; i += 1) {
      out.push(hit(String(n), level));
      n += 1;
    }
  }
  return out;
}
