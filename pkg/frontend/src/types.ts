/** Wire types for the search API; field names follow the server exactly. */

export const LEVEL_ORDER = ["high", "medium", "low"] as const;

export type LevelSlug = (typeof LEVEL_ORDER)[number];

export interface SearchHit {
  doc_id: string;
  title: string;
  date: string | null;
  abstract: string;
  level: LevelSlug;
  level_label: string;
  score: number;
  zone_component: number;
  ontology_component: number;
  n_occurrences: number;
}

export interface SearchResponse {
  query: string;
  total_hits: number;
  offset: number;
  limit: number;
  level_counts: Record<LevelSlug, number>;
  results: SearchHit[];
}

export interface BreakdownRow {
  term: string;
  match_type: string;
  zone: string;
  caption_index: number | null;
  sentence_id: number;
  position: number;
  scored: boolean;
  in_context: boolean;
  zone_weight: number;
  ontology_weight: number;
  score: number;
}

export interface Breakdown {
  query: string;
  doc_id: string;
  total: number;
  zone_component: number;
  ontology_component: number;
  level: LevelSlug | "not_relevant";
  label: string;
  occurrences: BreakdownRow[];
}

export interface DocumentDetail {
  doc_id: string;
  title: string;
  date: string | null;
  abstract: string;
  n_tokens: number;
  breakdown?: Breakdown;
}
