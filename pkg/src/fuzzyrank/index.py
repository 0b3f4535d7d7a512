"""Positional zone index with a versioned on-disk format.

The index stores a posting per kept unigram and per same-sentence
adjacent bigram, each carrying the zone facts scoring needs, plus the
query-independent per-document features (context sentences, caption
organism counts). Longer terms are matched at query time by chaining
bigram postings at consecutive positions.

The on-disk format is length-prefixed binary: magic, format version, a
JSON header carrying the payload checksum, then the JSON payload.
Loading is fail-closed: wrong magic, unknown version, truncation, or a
checksum mismatch all raise instead of returning a partial index. An
index also pins the config fingerprint it was built under; searching
with a different effective config raises ConfigMismatch.
"""
from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from pathlib import Path

from .config import AppConfig, config_from_dict, config_to_dict
from .ingest import Corpus, ZoneKind
from .ontology import (
    ExpandedQuery,
    IndexKind,
    Taxonomy,
    Term,
    expand_query,
    load_taxonomies,
    term_catalog,
)
from .scoring import (
    DocAux,
    OccurrenceProfile,
    RawMatch,
    RelevanceLevel,
    assign_level,
    compute_doc_aux,
    kept_stream,
    profile_from_matches,
    score_breakdown,
)
from .textproc import Pipeline, build_pipeline

INDEX_MAGIC = b"FZRK"
INDEX_VERSION = 1


class IndexFormatError(ValueError):
    """Unreadable or corrupt index file."""


class VersionMismatch(IndexFormatError):
    """Index written by an incompatible format version."""


class ConfigMismatch(ValueError):
    """Index fingerprint differs from the effective configuration."""


@dataclass(frozen=True)
class Posting:
    doc_id: str
    zone: ZoneKind
    caption_index: int | None
    body_word_position: int | None
    sentence_id: int
    position: int  # index within the document's kept-token stream


@dataclass(frozen=True)
class DocMeta:
    title: str
    date: str | None
    abstract: str
    n_tokens: int


@dataclass
class SearchIndex:
    fingerprint: str
    config: AppConfig
    postings: dict[Term, list[Posting]]
    doc_aux: dict[str, DocAux]
    doc_meta: dict[str, DocMeta]

    @property
    def doc_ids(self) -> list[str]:
        return sorted(self.doc_meta)


def taxonomy_content_hash(tax: Taxonomy) -> str:
    rows = sorted(
        (n.id, n.name, n.rank, n.parent_id or "") for n in tax.nodes.values()
    )
    blob = json.dumps(rows, ensure_ascii=False, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def config_fingerprint(
    cfg: AppConfig, taxonomies: dict[IndexKind, Taxonomy]
) -> str:
    """Digest of the full configuration plus taxonomy contents.

    Any change that could alter scoring or tokenization changes the
    fingerprint, so stale indexes are refused rather than silently
    producing different numbers.
    """
    canonical = {
        "config": config_to_dict(cfg),
        "taxonomies": {
            kind.value: taxonomy_content_hash(tax)
            for kind, tax in sorted(taxonomies.items(), key=lambda kv: kv[0].value)
        },
    }
    blob = json.dumps(canonical, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def build_index(
    corpus: Corpus,
    cfg: AppConfig,
    pipe: Pipeline | None = None,
    taxonomies: dict[IndexKind, Taxonomy] | None = None,
) -> SearchIndex:
    """Index a corpus: postings, per-document features, and metadata."""
    pipe = pipe or build_pipeline(cfg.pipeline)
    taxonomies = taxonomies or load_taxonomies(pipe)
    catalog = term_catalog(taxonomies)

    postings: dict[Term, list[Posting]] = {}
    doc_aux: dict[str, DocAux] = {}
    doc_meta: dict[str, DocMeta] = {}
    for doc_id in sorted(corpus.documents):
        doc = corpus.documents[doc_id]
        kept = kept_stream(doc, pipe)
        doc_aux[doc_id] = compute_doc_aux(kept, catalog)
        doc_meta[doc_id] = DocMeta(
            title=doc.title,
            date=doc.date,
            abstract=doc.abstract_text,
            n_tokens=len(doc.tokens),
        )
        for tok in kept:
            postings.setdefault((tok.stem,), []).append(
                Posting(
                    doc_id=doc_id,
                    zone=tok.zone,
                    caption_index=tok.caption_index,
                    body_word_position=tok.body_word_position,
                    sentence_id=tok.sentence_id,
                    position=tok.position,
                )
            )
        for a, b in zip(kept, kept[1:]):
            if a.sentence_id != b.sentence_id:
                continue
            postings.setdefault((a.stem, b.stem), []).append(
                Posting(
                    doc_id=doc_id,
                    zone=a.zone,
                    caption_index=a.caption_index,
                    body_word_position=a.body_word_position,
                    sentence_id=a.sentence_id,
                    position=a.position,
                )
            )
    return SearchIndex(
        fingerprint=config_fingerprint(cfg, taxonomies),
        config=cfg,
        postings=postings,
        doc_aux=doc_aux,
        doc_meta=doc_meta,
    )


# ---------------------------------------------------------------------------
# Serialization


def _index_payload(index: SearchIndex) -> dict:
    return {
        "fingerprint": index.fingerprint,
        "config": config_to_dict(index.config),
        "postings": {
            " ".join(term): [
                [
                    p.doc_id,
                    p.zone.value,
                    p.caption_index,
                    p.body_word_position,
                    p.sentence_id,
                    p.position,
                ]
                for p in plist
            ]
            for term, plist in index.postings.items()
        },
        "doc_aux": {
            doc_id: {
                "context_sentences": sorted(aux.context_sentences),
                "caption_organism_counts": {
                    str(k): v for k, v in sorted(aux.caption_organism_counts.items())
                },
            }
            for doc_id, aux in index.doc_aux.items()
        },
        "doc_meta": {
            doc_id: {
                "title": m.title,
                "date": m.date,
                "abstract": m.abstract,
                "n_tokens": m.n_tokens,
            }
            for doc_id, m in index.doc_meta.items()
        },
    }


def save_index(index: SearchIndex, path: str | Path) -> None:
    """Write the index; identical inputs produce identical bytes."""
    payload = json.dumps(
        _index_payload(index), sort_keys=True, ensure_ascii=False, separators=(",", ":")
    ).encode("utf-8")
    header = json.dumps(
        {
            "version": INDEX_VERSION,
            "payload_len": len(payload),
            "payload_sha256": hashlib.sha256(payload).hexdigest(),
            "fingerprint": index.fingerprint,
        },
        sort_keys=True,
        separators=(",", ":"),
    ).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(INDEX_MAGIC)
        fh.write(struct.pack(">I", INDEX_VERSION))
        fh.write(struct.pack(">I", len(header)))
        fh.write(header)
        fh.write(payload)


def load_index(path: str | Path) -> SearchIndex:
    """Read an index file, verifying magic, version, length, and checksum."""
    blob = Path(path).read_bytes()
    if len(blob) < 12 or blob[:4] != INDEX_MAGIC:
        raise IndexFormatError(f"{path}: not an index file")
    (version,) = struct.unpack(">I", blob[4:8])
    if version != INDEX_VERSION:
        raise VersionMismatch(
            f"{path}: format version {version}, expected {INDEX_VERSION}"
        )
    (header_len,) = struct.unpack(">I", blob[8:12])
    if len(blob) < 12 + header_len:
        raise IndexFormatError(f"{path}: truncated header")
    try:
        header = json.loads(blob[12 : 12 + header_len])
    except ValueError as exc:
        raise IndexFormatError(f"{path}: unreadable header: {exc}") from exc
    payload = blob[12 + header_len :]
    if len(payload) != header.get("payload_len"):
        raise IndexFormatError(f"{path}: truncated payload")
    if hashlib.sha256(payload).hexdigest() != header.get("payload_sha256"):
        raise IndexFormatError(f"{path}: payload checksum mismatch")
    try:
        data = json.loads(payload)
        return _index_from_payload(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise IndexFormatError(f"{path}: malformed payload: {exc}") from exc


def _index_from_payload(data: dict) -> SearchIndex:
    postings: dict[Term, list[Posting]] = {}
    for key, rows in data["postings"].items():
        term = tuple(key.split(" "))
        postings[term] = [
            Posting(
                doc_id=row[0],
                zone=ZoneKind(row[1]),
                caption_index=row[2],
                body_word_position=row[3],
                sentence_id=row[4],
                position=row[5],
            )
            for row in rows
        ]
    doc_aux = {
        doc_id: DocAux(
            context_sentences=frozenset(raw["context_sentences"]),
            caption_organism_counts={
                int(k): v for k, v in raw["caption_organism_counts"].items()
            },
        )
        for doc_id, raw in data["doc_aux"].items()
    }
    doc_meta = {
        doc_id: DocMeta(
            title=raw["title"],
            date=raw["date"],
            abstract=raw["abstract"],
            n_tokens=raw["n_tokens"],
        )
        for doc_id, raw in data["doc_meta"].items()
    }
    return SearchIndex(
        fingerprint=data["fingerprint"],
        config=config_from_dict(data["config"]),
        postings=postings,
        doc_aux=doc_aux,
        doc_meta=doc_meta,
    )


# ---------------------------------------------------------------------------
# Search


@dataclass
class SearchResult:
    doc_id: str
    title: str
    date: str | None
    abstract: str
    level: RelevanceLevel
    total: float
    zone_component: float
    ontology_component: float
    n_occurrences: int
    breakdown: dict | None = None

    @property
    def label(self) -> str:
        return self.level.label

    def to_dict(self) -> dict:
        out = {
            "doc_id": self.doc_id,
            "title": self.title,
            "date": self.date,
            "abstract": self.abstract,
            "level": self.level.name.lower(),
            "label": self.label,
            "total": self.total,
            "zone_component": self.zone_component,
            "ontology_component": self.ontology_component,
            "n_occurrences": self.n_occurrences,
        }
        if self.breakdown is not None:
            out["breakdown"] = self.breakdown
        return out


@dataclass
class Searcher:
    """Query evaluator bound to one index and its configuration."""

    index: SearchIndex
    pipe: Pipeline
    taxonomies: dict[IndexKind, Taxonomy]

    @classmethod
    def from_index(
        cls,
        index: SearchIndex,
        config: AppConfig | None = None,
        taxonomy_paths: dict[IndexKind, str | Path] | None = None,
    ) -> "Searcher":
        """Bind an index, refusing any configuration drift.

        The effective config (an explicit override or the one stored in
        the index) plus the loaded taxonomies must reproduce the
        fingerprint the index was built under.
        """
        cfg = config or index.config
        pipe = build_pipeline(cfg.pipeline)
        taxonomies = load_taxonomies(pipe, taxonomy_paths)
        fp = config_fingerprint(cfg, taxonomies)
        if fp != index.fingerprint:
            raise ConfigMismatch(
                "index was built under a different configuration; rebuild it "
                f"(index fingerprint {index.fingerprint[:12]}, current {fp[:12]})"
            )
        return cls(index=index, pipe=pipe, taxonomies=taxonomies)

    def expand(self, query: str) -> ExpandedQuery:
        return expand_query(
            query, self.taxonomies, self.pipe, self.index.config.expansion_depth
        )

    def _term_matches(self, term: Term) -> dict[str, list[Posting]]:
        """Match positions per document; long terms chain bigram postings."""
        if len(term) <= 2:
            by_doc: dict[str, list[Posting]] = {}
            for p in self.index.postings.get(term, []):
                by_doc.setdefault(p.doc_id, []).append(p)
            return by_doc
        first = self.index.postings.get(term[0:2], [])
        chain: dict[str, dict[int, Posting]] = {}
        for p in first:
            chain.setdefault(p.doc_id, {})[p.position] = p
        alive: dict[str, set[int]] = {
            d: set(pos.keys()) for d, pos in chain.items()
        }
        for k in range(1, len(term) - 1):
            nxt: dict[str, set[int]] = {}
            for p in self.index.postings.get(term[k : k + 2], []):
                nxt.setdefault(p.doc_id, set()).add(p.position)
            alive = {
                d: {i for i in starts if i + k in nxt.get(d, set())}
                for d, starts in alive.items()
            }
        return {
            d: [chain[d][i] for i in sorted(starts)]
            for d, starts in alive.items()
            if starts
        }

    def profiles(self, expanded: ExpandedQuery) -> dict[str, OccurrenceProfile]:
        """Occurrence profiles for every document with at least one match."""
        raw: dict[str, list[RawMatch]] = {}
        for term, mtype in expanded.terms.items():
            for doc_id, plist in self._term_matches(term).items():
                raw.setdefault(doc_id, []).extend(
                    RawMatch(
                        term=term,
                        match_type=mtype,
                        position=p.position,
                        zone=p.zone,
                        caption_index=p.caption_index,
                        sentence_id=p.sentence_id,
                    )
                    for p in plist
                )
        out: dict[str, OccurrenceProfile] = {}
        for doc_id, matches in raw.items():
            matches.sort(key=lambda m: (m.position, -len(m.term), m.match_type.value))
            out[doc_id] = profile_from_matches(
                doc_id,
                expanded.query,
                matches,
                expanded.literal,
                self.index.doc_aux[doc_id],
                self.index.config.scoring,
            )
        return out

    def search(
        self,
        query: str,
        level: RelevanceLevel | None = None,
        offset: int = 0,
        limit: int | None = None,
        explain: bool = False,
    ) -> list[SearchResult]:
        """Ranked results: level, then total score, then document id."""
        expanded = self.expand(query)
        scfg = self.index.config.scoring
        results: list[SearchResult] = []
        for doc_id, profile in self.profiles(expanded).items():
            lvl = assign_level(profile, scfg)
            if lvl == RelevanceLevel.NOT_RELEVANT:
                continue
            if level is not None and lvl != level:
                continue
            meta = self.index.doc_meta[doc_id]
            results.append(
                SearchResult(
                    doc_id=doc_id,
                    title=meta.title,
                    date=meta.date,
                    abstract=meta.abstract,
                    level=lvl,
                    total=profile.total,
                    zone_component=profile.zone_component,
                    ontology_component=profile.ontology_component,
                    n_occurrences=len(profile.scored_occurrences()),
                    breakdown=score_breakdown(profile, scfg) if explain else None,
                )
            )
        results.sort(key=lambda r: (-int(r.level), -r.total, r.doc_id))
        if offset:
            results = results[offset:]
        if limit is not None:
            results = results[:limit]
        return results

    def document_profile(self, query: str, doc_id: str) -> OccurrenceProfile:
        """Profile for one document (empty profile when nothing matches)."""
        expanded = self.expand(query)
        profile = self.profiles(expanded).get(doc_id)
        if profile is None:
            profile = OccurrenceProfile(
                doc_id=doc_id,
                query=query,
                occurrences=[],
                zone_component=0.0,
                ontology_component=0.0,
            )
        return profile
