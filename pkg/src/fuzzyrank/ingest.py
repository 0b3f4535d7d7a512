"""Corpus ingest: zone segmentation of plain-text and tagged articles.

Plain text is segmented by line heuristics (first non-empty line is the
title, marker lines open the abstract/keywords/references, caption lines
match a figure/table pattern). Tagged input uses a minimal XML schema:

    <article id="..."><title/><date/><abstract/><keywords/>
      <body>text<caption>...</caption>text</body><references/></article>

Body text is split into an early zone (words 1..body_early_limit) and a
late zone (the rest), counting words before stopword removal. When no
abstract exists, the first body paragraph serves as an ersatz abstract.
"""
from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .config import IngestConfig, PipelineConfig
from .textproc import Pipeline, build_pipeline, split_sentences, tokenize


class ZoneKind(str, Enum):
    TITLE = "title"
    ABSTRACT = "abstract"
    ERSATZ_ABSTRACT = "ersatz_abstract"
    KEYWORDS = "keywords"
    CAPTION = "caption"
    BODY_EARLY = "body_early"
    BODY_LATE = "body_late"
    REFERENCES = "references"


BODY_KINDS = frozenset({ZoneKind.BODY_EARLY, ZoneKind.BODY_LATE})


class MalformedXml(ValueError):
    """Tagged input that cannot be parsed."""


class EmptyDocument(ValueError):
    """Document with no tokens after segmentation."""


class NoDocumentsFound(ValueError):
    """Corpus directory with no loadable article files."""


@dataclass(frozen=True)
class Zone:
    kind: ZoneKind
    text: str
    caption_index: int | None = None  # 1-based, captions only


@dataclass(frozen=True)
class PositionedToken:
    surface: str
    stem: str
    zone: ZoneKind
    caption_index: int | None
    sentence_id: int
    body_word_position: int | None  # 1-based over body zones, pre-stopword
    offset: int  # character offset within the zone text


@dataclass(frozen=True)
class RawArticle:
    id: str
    path: str
    format: str  # "text" or "xml"
    content: str


@dataclass
class ZonedDocument:
    id: str
    title: str
    date: str | None
    zones: list[Zone]
    tokens: list[PositionedToken]

    @property
    def abstract_text(self) -> str:
        for z in self.zones:
            if z.kind in (ZoneKind.ABSTRACT, ZoneKind.ERSATZ_ABSTRACT):
                return z.text
        return ""


@dataclass
class Corpus:
    documents: dict[str, ZonedDocument] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents.values())

    def stats(self) -> dict[str, int]:
        return {
            "documents": len(self.documents),
            "tokens": sum(len(d.tokens) for d in self.documents.values()),
        }


@dataclass(frozen=True)
class LoadRecord:
    path: str
    status: str  # "ok" or "error"
    error: str | None = None


# ---------------------------------------------------------------------------
# Segmentation


@dataclass
class _Seg:
    """Intermediate segment; body chunks are split and retyped later."""

    kind: ZoneKind | None  # None marks a raw body chunk
    text: str
    caption_index: int | None = None


_PAR_BREAK_RE = re.compile(r"\n[ \t]*\n")
_YEAR_IN_PARENS_RE = re.compile(r"\([^()]*?\b((?:1[6-9]|20)\d{2})\b[^()]*?\)")


def _text_segments(text: str, cfg: IngestConfig) -> list[_Seg]:
    abstract_re = re.compile(cfg.abstract_pattern)
    keywords_re = re.compile(cfg.keywords_pattern)
    caption_re = re.compile(cfg.caption_pattern)
    references_re = re.compile(cfg.references_pattern)

    lines = text.splitlines()
    segs: list[_Seg] = []
    caption_count = 0
    body_lines: list[str] = []
    keyword_seg: _Seg | None = None
    i = 0

    # Title: first non-empty line.
    while i < len(lines) and not lines[i].strip():
        i += 1
    if i < len(lines):
        segs.append(_Seg(ZoneKind.TITLE, lines[i].strip()))
        i += 1

    def flush_body() -> None:
        chunk = "\n".join(body_lines).strip()
        body_lines.clear()
        if chunk:
            segs.append(_Seg(None, chunk))

    in_abstract = False
    abstract_lines: list[str] = []

    def close_abstract() -> None:
        nonlocal in_abstract
        if in_abstract:
            content = "\n".join(abstract_lines).strip()
            if content:
                segs.append(_Seg(ZoneKind.ABSTRACT, content))
            abstract_lines.clear()
            in_abstract = False

    have_abstract = False
    while i < len(lines):
        line = lines[i]
        stripped = line.strip()
        if references_re.match(stripped):
            close_abstract()
            flush_body()
            rest = "\n".join(lines[i + 1 :]).strip()
            if rest:
                segs.append(_Seg(ZoneKind.REFERENCES, rest))
            i = len(lines)
            break
        if caption_re.match(stripped):
            close_abstract()
            flush_body()
            caption_count += 1
            segs.append(_Seg(ZoneKind.CAPTION, stripped, caption_count))
        elif keywords_re.match(stripped):
            close_abstract()
            flush_body()
            content = keywords_re.sub("", stripped).lstrip(" \t:.—–-")
            # One keywords zone, anchored where the first marker line sits.
            if keyword_seg is None:
                keyword_seg = _Seg(ZoneKind.KEYWORDS, content)
                segs.append(keyword_seg)
            else:
                keyword_seg.text = (keyword_seg.text + " " + content).strip()
        elif not have_abstract and not in_abstract and abstract_re.match(stripped):
            flush_body()
            have_abstract = True
            in_abstract = True
            content = abstract_re.sub("", stripped).lstrip(" \t:.—–-")
            if content:
                abstract_lines.append(content)
        elif in_abstract:
            if not stripped:
                close_abstract()
            else:
                abstract_lines.append(stripped)
        else:
            body_lines.append(line)
        i += 1
    close_abstract()
    flush_body()

    if keyword_seg is not None and not keyword_seg.text.strip():
        segs.remove(keyword_seg)
    return segs


def _split_first_paragraph(chunk: str) -> tuple[str, str]:
    m = _PAR_BREAK_RE.search(chunk)
    if m is None:
        return chunk, ""
    return chunk[: m.start()], chunk[m.end() :]


def _resolve_body(segs: list[_Seg], cfg: IngestConfig) -> list[Zone]:
    """Assign ersatz abstract and split body chunks at the early/late bound."""
    have_abstract = any(s.kind == ZoneKind.ABSTRACT for s in segs)
    if not have_abstract:
        for n, seg in enumerate(segs):
            if seg.kind is None:
                first, rest = _split_first_paragraph(seg.text)
                toks = tokenize(first)
                if len(toks) > cfg.ersatz_cap_words:
                    cut = toks[cfg.ersatz_cap_words][1]
                    first, rest = first[:cut].rstrip(), (first[cut:] + "\n\n" + rest)
                ersatz = _Seg(ZoneKind.ERSATZ_ABSTRACT, first.strip())
                rest = rest.strip()
                if rest:
                    segs[n : n + 1] = [ersatz, _Seg(None, rest)]
                else:
                    segs[n] = ersatz
                break

    zones: list[Zone] = []
    count = 0
    limit = cfg.body_early_limit
    for seg in segs:
        if seg.kind is not None:
            zones.append(Zone(seg.kind, seg.text, seg.caption_index))
            continue
        toks = tokenize(seg.text)
        if count + len(toks) <= limit:
            zones.append(Zone(ZoneKind.BODY_EARLY, seg.text))
        elif count >= limit:
            zones.append(Zone(ZoneKind.BODY_LATE, seg.text))
        else:
            cut = toks[limit - count][1]
            early, late = seg.text[:cut].rstrip(), seg.text[cut:].strip()
            if early:
                zones.append(Zone(ZoneKind.BODY_EARLY, early))
            if late:
                zones.append(Zone(ZoneKind.BODY_LATE, late))
        count += len(toks)
    return zones


def segment_zones(text: str, cfg: IngestConfig | None = None) -> list[Zone]:
    """Segment plain text into zones, in document order."""
    cfg = cfg or IngestConfig()
    return _resolve_body(_text_segments(text, cfg), cfg)


# ---------------------------------------------------------------------------
# Tagged input


def _element_text(el: ET.Element) -> str:
    return "".join(el.itertext()).strip()


def _xml_segments(root: ET.Element) -> list[_Seg]:
    segs: list[_Seg] = []
    caption_count = 0
    seen: set[str] = set()
    for el in root:
        tag = el.tag.lower()
        if tag in ("title", "abstract", "keywords", "references", "date"):
            if tag in seen:
                continue
            seen.add(tag)
            kind = {
                "title": ZoneKind.TITLE,
                "abstract": ZoneKind.ABSTRACT,
                "keywords": ZoneKind.KEYWORDS,
                "references": ZoneKind.REFERENCES,
                "date": None,
            }[tag]
            if kind is not None and _element_text(el):
                segs.append(_Seg(kind, _element_text(el)))
        elif tag == "body":
            chunk_parts: list[str] = [el.text or ""]

            def flush_chunk() -> None:
                chunk = "".join(chunk_parts).strip()
                chunk_parts.clear()
                if chunk:
                    segs.append(_Seg(None, chunk))

            for child in el:
                if child.tag.lower() == "caption":
                    flush_chunk()
                    caption_count += 1
                    segs.append(
                        _Seg(ZoneKind.CAPTION, _element_text(child), caption_count)
                    )
                # Unknown elements are ignored; their tail text stays in the body.
                chunk_parts.append(child.tail or "")
            flush_chunk()
        # Unknown top-level elements are ignored.
    return segs


def parse_xml_article(
    content: str, fallback_id: str, cfg: IngestConfig
) -> tuple[str, str | None, list[Zone]]:
    try:
        root = ET.fromstring(content)
    except ET.ParseError as exc:
        raise MalformedXml(f"cannot parse tagged article: {exc}") from exc
    if root.tag.lower() != "article":
        raise MalformedXml(f"root element must be <article>, got <{root.tag}>")
    doc_id = root.get("id") or fallback_id
    date = None
    for el in root:
        if el.tag.lower() == "date" and _element_text(el):
            date = _element_text(el)
            break
    return doc_id, date, _resolve_body(_xml_segments(root), cfg)


def _looks_tagged(content: str) -> bool:
    return content.lstrip().startswith("<")


def _extract_date(text: str) -> str | None:
    """First four-digit year inside parentheses in the header block."""
    header = "\n".join(line for line in text.splitlines()[:12])
    m = _YEAR_IN_PARENS_RE.search(header)
    return m.group(1) if m else None


# ---------------------------------------------------------------------------
# Document assembly


def parse_document(
    raw: RawArticle, cfg: IngestConfig | None = None, pipe: Pipeline | None = None
) -> ZonedDocument:
    """Parse one article into zones and positioned tokens.

    Raises MalformedXml for broken tagged input and EmptyDocument when
    segmentation yields no tokens at all.
    """
    cfg = cfg or IngestConfig()
    pipe = pipe or build_pipeline(PipelineConfig())

    if raw.format == "xml" or _looks_tagged(raw.content):
        doc_id, date, zones = parse_xml_article(raw.content, raw.id, cfg)
    else:
        doc_id = raw.id
        date = _extract_date(raw.content)
        zones = segment_zones(raw.content, cfg)

    tokens: list[PositionedToken] = []
    sentence_id = 0
    body_pos = 0
    for zone in zones:
        spans = split_sentences(zone.text, pipe.abbreviations)
        toks = tokenize(zone.text)
        ti = 0
        for start, end in spans:
            for surface, offset in toks[ti:]:
                if offset >= end:
                    break
                ti += 1
                if zone.kind in BODY_KINDS:
                    body_pos += 1
                    bwp: int | None = body_pos
                else:
                    bwp = None
                tokens.append(
                    PositionedToken(
                        surface=surface,
                        stem=pipe.stem(surface),
                        zone=zone.kind,
                        caption_index=zone.caption_index,
                        sentence_id=sentence_id,
                        body_word_position=bwp,
                        offset=offset,
                    )
                )
            sentence_id += 1
    if not tokens:
        raise EmptyDocument(f"document {doc_id!r} has no tokens")

    title = next((z.text for z in zones if z.kind == ZoneKind.TITLE), "")
    return ZonedDocument(id=doc_id, title=title, date=date, zones=zones, tokens=tokens)


_TOP_LEVEL_TAGS = {
    ZoneKind.TITLE: "title",
    ZoneKind.ABSTRACT: "abstract",
    ZoneKind.KEYWORDS: "keywords",
    ZoneKind.REFERENCES: "references",
}


def document_to_xml(doc: ZonedDocument) -> str:
    """Serialize a document to the tagged schema.

    Zones are written in document order; runs of body text and captions
    share one body element and a non-body zone closes it, so reparsing
    reproduces the zone list exactly. The ersatz abstract rejoins the
    body as its leading paragraph and is re-derived on parse.
    """
    root = ET.Element("article", {"id": doc.id})
    if doc.date:
        ET.SubElement(root, "date").text = doc.date
    body: ET.Element | None = None
    last_caption: ET.Element | None = None

    for zone in doc.zones:
        tag = _TOP_LEVEL_TAGS.get(zone.kind)
        if tag is not None:
            ET.SubElement(root, tag).text = zone.text
            body = None
            last_caption = None
        elif zone.kind == ZoneKind.CAPTION:
            if body is None:
                body = ET.SubElement(root, "body")
            last_caption = ET.SubElement(body, "caption")
            last_caption.text = zone.text
        else:  # ersatz abstract and body chunks
            if body is None:
                body = ET.SubElement(root, "body")
                last_caption = None
            if last_caption is not None:
                tail = (last_caption.tail or "").strip("\n")
                tail = f"{tail}\n\n{zone.text}" if tail else zone.text
                last_caption.tail = f"\n{tail}\n"
            elif body.text and body.text.strip():
                body.text = body.text.strip("\n") + f"\n\n{zone.text}\n"
            else:
                body.text = f"\n{zone.text}\n"
    return ET.tostring(root, encoding="unicode")


# ---------------------------------------------------------------------------
# Corpus loading


def read_article(path: str | Path) -> RawArticle:
    p = Path(path)
    content = p.read_bytes().decode("utf-8")  # strict: invalid bytes rejected
    fmt = "xml" if p.suffix.lower() == ".xml" or _looks_tagged(content) else "text"
    return RawArticle(id=p.stem, path=str(p), format=fmt, content=content)


def load_corpus(
    directory: str | Path,
    cfg: IngestConfig | None = None,
    pipe: Pipeline | None = None,
) -> tuple[Corpus, list[LoadRecord]]:
    """Load every .txt/.xml article under a directory.

    Returns the corpus plus one load record per file; files that fail to
    parse become error records instead of aborting the load.
    """
    d = Path(directory)
    if not d.is_dir():
        raise NoDocumentsFound(f"corpus directory not found: {d}")
    files = sorted(
        p for p in d.iterdir() if p.is_file() and p.suffix.lower() in (".txt", ".xml")
    )
    if not files:
        raise NoDocumentsFound(f"no .txt or .xml articles under {d}")

    docs: dict[str, ZonedDocument] = {}
    records: list[LoadRecord] = []
    for path in files:
        try:
            doc = parse_document(read_article(path), cfg, pipe)
            if doc.id in docs:
                raise ValueError(f"duplicate document id {doc.id!r}")
            docs[doc.id] = doc
            records.append(LoadRecord(path=str(path), status="ok"))
        except (ValueError, OSError, UnicodeDecodeError) as exc:
            records.append(LoadRecord(path=str(path), status="error", error=str(exc)))
    corpus = Corpus(documents={k: docs[k] for k in sorted(docs)})
    return corpus, records
