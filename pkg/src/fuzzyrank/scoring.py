"""Zone-weighted relevance scoring with fuzzy output levels.

Every occurrence of a query or expansion term contributes a zone weight
(where it appears) plus an ontology weight (how it relates to the
query); the document score is the sum over occurrences and maps onto
High / Medium / Low / NotRelevant.

Two query-independent passes refine the weights. Sentences that mention
terms from at least two different indexes (organism, time, region) are
context sentences: occurrences inside them count fivefold. Captions
that mention two or more organism names are organism-list captions:
their zone weight is dampened. Reference-list occurrences are recorded
but never scored.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from .config import ScoringConfig
from .ingest import BODY_KINDS, ZonedDocument, ZoneKind
from .ontology import ExpandedQuery, IndexKind, MatchType, Term
from .textproc import Pipeline


class RelevanceLevel(IntEnum):
    NOT_RELEVANT = 0
    LOW = 1
    MEDIUM = 2
    HIGH = 3

    @property
    def label(self) -> str:
        return _LEVEL_LABELS[self]


_LEVEL_LABELS = {
    RelevanceLevel.HIGH: "Highly relevant",
    RelevanceLevel.MEDIUM: "Relevant",
    RelevanceLevel.LOW: "Somewhat relevant",
    RelevanceLevel.NOT_RELEVANT: "Not relevant",
}

_HEAD_ZONES = frozenset(
    {ZoneKind.TITLE, ZoneKind.ABSTRACT, ZoneKind.ERSATZ_ABSTRACT, ZoneKind.KEYWORDS}
)


@dataclass(frozen=True)
class KeptToken:
    """One token of the stopword-filtered stream, in document order."""

    stem: str
    zone: ZoneKind
    caption_index: int | None
    sentence_id: int
    body_word_position: int | None
    position: int  # index within the kept stream


def kept_stream(doc: ZonedDocument, pipe: Pipeline) -> list[KeptToken]:
    out: list[KeptToken] = []
    for tok in doc.tokens:
        if pipe.is_stop(tok.surface, tok.stem):
            continue
        out.append(
            KeptToken(
                stem=tok.stem,
                zone=tok.zone,
                caption_index=tok.caption_index,
                sentence_id=tok.sentence_id,
                body_word_position=tok.body_word_position,
                position=len(out),
            )
        )
    return out


def _term_at(kept: list[KeptToken], i: int, term: Term) -> bool:
    """Term match at kept position i; multi-word terms stay in one sentence."""
    n = len(term)
    if i + n > len(kept):
        return False
    if kept[i + n - 1].sentence_id != kept[i].sentence_id:
        return False
    return all(kept[i + k].stem == term[k] for k in range(n))


# ---------------------------------------------------------------------------
# Query-independent document features


@dataclass(frozen=True)
class Mention:
    term: Term
    kind: IndexKind
    position: int


@dataclass(frozen=True)
class DocAux:
    """Per-document features shared by every query."""

    context_sentences: frozenset[int]
    caption_organism_counts: dict[int, int]  # caption_index -> mentions


def scan_mentions(
    kept: list[KeptToken], catalog: dict[Term, IndexKind]
) -> list[Mention]:
    """Maximal non-overlapping catalog mentions, greedy left to right.

    At each position the longest matching term wins and consumes its
    tokens, so "Allosaurus fragilis" is one mention, not two.
    """
    max_len = max((len(t) for t in catalog), default=1)
    out: list[Mention] = []
    i = 0
    while i < len(kept):
        hit = None
        for n in range(min(max_len, len(kept) - i), 0, -1):
            term = tuple(kept[i + k].stem for k in range(n))
            if term in catalog and _term_at(kept, i, term):
                hit = Mention(term=term, kind=catalog[term], position=i)
                break
        if hit is None:
            i += 1
        else:
            out.append(hit)
            i += len(hit.term)
    return out


def compute_doc_aux(
    kept: list[KeptToken], catalog: dict[Term, IndexKind]
) -> DocAux:
    mentions = scan_mentions(kept, catalog)
    kinds_by_sentence: dict[int, set[IndexKind]] = {}
    caption_counts: dict[int, int] = {}
    for m in mentions:
        tok = kept[m.position]
        kinds_by_sentence.setdefault(tok.sentence_id, set()).add(m.kind)
        if tok.zone == ZoneKind.CAPTION and m.kind == IndexKind.ORGANISM:
            assert tok.caption_index is not None
            caption_counts[tok.caption_index] = (
                caption_counts.get(tok.caption_index, 0) + 1
            )
    context = frozenset(
        sid for sid, kinds in kinds_by_sentence.items() if len(kinds) >= 2
    )
    return DocAux(context_sentences=context, caption_organism_counts=caption_counts)


# ---------------------------------------------------------------------------
# Occurrence collection and weighting


@dataclass(frozen=True)
class RawMatch:
    term: Term
    match_type: MatchType
    position: int
    zone: ZoneKind
    caption_index: int | None
    sentence_id: int


@dataclass(frozen=True)
class Occurrence:
    term: Term
    match_type: MatchType
    zone: ZoneKind
    caption_index: int | None
    sentence_id: int
    position: int
    scored: bool  # False only for reference-list occurrences
    in_context: bool
    zone_weight: float
    ontology_weight: float
    score: float


@dataclass
class OccurrenceProfile:
    doc_id: str
    query: str
    occurrences: list[Occurrence]
    zone_component: float
    ontology_component: float

    @property
    def total(self) -> float:
        return self.zone_component + self.ontology_component

    def scored_occurrences(self) -> list[Occurrence]:
        return [o for o in self.occurrences if o.scored]


def find_matches(kept: list[KeptToken], expanded: ExpandedQuery) -> list[RawMatch]:
    out: list[RawMatch] = []
    for term, mtype in expanded.terms.items():
        for i in range(len(kept)):
            if _term_at(kept, i, term):
                tok = kept[i]
                out.append(
                    RawMatch(
                        term=term,
                        match_type=mtype,
                        position=i,
                        zone=tok.zone,
                        caption_index=tok.caption_index,
                        sentence_id=tok.sentence_id,
                    )
                )
    out.sort(key=lambda m: (m.position, -len(m.term), m.match_type.value))
    return out


def _suppress_literal(matches: list[RawMatch], literal: Term) -> list[RawMatch]:
    """Drop literal matches strictly inside a longer expansion match.

    Only the literal query term is suppressed; expansion terms never
    suppress each other, so overlapping expansion matches all count.
    """
    spans = [
        (m.position, m.position + len(m.term))
        for m in matches
        if m.term != literal
    ]
    n = len(literal)
    kept: list[RawMatch] = []
    for m in matches:
        if m.term == literal:
            s, e = m.position, m.position + n
            if any(js <= s and e <= je and je - js > e - s for js, je in spans):
                continue
        kept.append(m)
    return kept


def profile_from_matches(
    doc_id: str,
    query: str,
    matches: list[RawMatch],
    literal: Term,
    aux: DocAux,
    cfg: ScoringConfig,
) -> OccurrenceProfile:
    occurrences: list[Occurrence] = []
    zone_total = 0.0
    ont_total = 0.0
    for m in _suppress_literal(matches, literal):
        scored = m.zone != ZoneKind.REFERENCES
        if m.zone == ZoneKind.CAPTION and (
            aux.caption_organism_counts.get(m.caption_index or 0, 0) >= 2
        ):
            zw = cfg.caption_dampened_weight
        else:
            zw = cfg.zone_weights[m.zone.value]
        ow = cfg.ontology_weights[m.match_type.value]
        in_context = scored and m.sentence_id in aux.context_sentences
        mult = cfg.context_multiplier if in_context else 1.0
        score = (zw + ow) * mult if scored else 0.0
        if scored:
            zone_total += zw * mult
            ont_total += ow * mult
        occurrences.append(
            Occurrence(
                term=m.term,
                match_type=m.match_type,
                zone=m.zone,
                caption_index=m.caption_index,
                sentence_id=m.sentence_id,
                position=m.position,
                scored=scored,
                in_context=in_context,
                zone_weight=zw,
                ontology_weight=ow,
                score=score,
            )
        )
    return OccurrenceProfile(
        doc_id=doc_id,
        query=query,
        occurrences=occurrences,
        zone_component=zone_total,
        ontology_component=ont_total,
    )


def score_document(
    doc: ZonedDocument,
    expanded: ExpandedQuery,
    catalog: dict[Term, IndexKind],
    cfg: ScoringConfig,
    pipe: Pipeline,
) -> OccurrenceProfile:
    """Score one document against an expanded query, index-free."""
    kept = kept_stream(doc, pipe)
    aux = compute_doc_aux(kept, catalog)
    matches = find_matches(kept, expanded)
    return profile_from_matches(
        doc.id, expanded.query, matches, expanded.literal, aux, cfg
    )


# ---------------------------------------------------------------------------
# Level assignment


def assign_level(profile: OccurrenceProfile, cfg: ScoringConfig) -> RelevanceLevel:
    if cfg.level_mode == "score_threshold":
        total = profile.total
        if total >= cfg.high_threshold:
            return RelevanceLevel.HIGH
        if total >= cfg.medium_threshold:
            return RelevanceLevel.MEDIUM
        if total > 0:
            return RelevanceLevel.LOW
        return RelevanceLevel.NOT_RELEVANT
    return _zone_rule_level(profile)


def _zone_rule_level(profile: OccurrenceProfile) -> RelevanceLevel:
    scored = profile.scored_occurrences()
    body = sum(1 for o in scored if o.zone in BODY_KINDS)
    if any(o.zone in _HEAD_ZONES for o in scored) or body >= 3:
        return RelevanceLevel.HIGH
    if any(o.zone == ZoneKind.CAPTION for o in scored) or body == 2:
        return RelevanceLevel.MEDIUM
    if scored:
        return RelevanceLevel.LOW
    return RelevanceLevel.NOT_RELEVANT


def baseline_level(profile: OccurrenceProfile) -> RelevanceLevel:
    """Location-blind baseline: level from the scored-occurrence count.

    Shares expansion and suppression with the main scorer but ignores
    zones and weights entirely (reference lists stay excluded).
    """
    n = len(profile.scored_occurrences())
    if n >= 5:
        return RelevanceLevel.HIGH
    if n >= 3:
        return RelevanceLevel.MEDIUM
    if n >= 1:
        return RelevanceLevel.LOW
    return RelevanceLevel.NOT_RELEVANT


def score_breakdown(profile: OccurrenceProfile, cfg: ScoringConfig) -> dict:
    """JSON-ready explanation of one document's score."""
    level = assign_level(profile, cfg)
    return {
        "doc_id": profile.doc_id,
        "query": profile.query,
        "zone_component": profile.zone_component,
        "ontology_component": profile.ontology_component,
        "total": profile.total,
        "level": level.name.lower(),
        "label": level.label,
        "occurrences": [
            {
                "term": " ".join(o.term),
                "match_type": o.match_type.value,
                "zone": o.zone.value,
                "caption_index": o.caption_index,
                "sentence_id": o.sentence_id,
                "position": o.position,
                "scored": o.scored,
                "in_context": o.in_context,
                "zone_weight": o.zone_weight,
                "ontology_weight": o.ontology_weight,
                "score": o.score,
            }
            for o in profile.occurrences
        ],
    }
