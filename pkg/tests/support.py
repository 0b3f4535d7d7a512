"""Shared test helpers: document factories and random case generation."""
from __future__ import annotations

import random

from fuzzyrank.config import AppConfig, default_config
from fuzzyrank.ingest import RawArticle, ZonedDocument, Zone, parse_document
from fuzzyrank.textproc import Pipeline, tokenize

# Surfaces that resolve to taxonomy nodes (multi-word ones included).
TAXON_SURFACES = (
    "Allosaurus",
    "Allosaurus fragilis",
    "Tyrannosaurus",
    "Tyrannosaurus rex",
    "Theropoda",
    "conodont",
    "Hindeodus parvus",
    "Ginkgo",
    "Ginkgo biloba",
    "Glossopteris",
    "Jurassic",
    "Cretaceous",
    "Upper Jurassic",
    "Permian",
    "Holocene",
    "Wyoming",
    "Montana",
    "Patagonia",
    "Poland",
    "North America",
)

FILLER = (
    "sample", "deposit", "quarry", "matrix", "horizon", "sediment",
    "fragment", "section", "survey", "record", "texture", "grain",
    "exposure", "locality", "study", "pattern", "archive",
)

STOPS = ("the", "of", "and", "in", "with", "from")

QUERIES = (
    "allosaurus",
    "Allosaurus fragilis",
    "tyrannosaurus",
    "conodont",
    "ginkgo",
    "Ginkgo biloba",
    "jurassic",
    "cretaceous",
    "wyoming",
    "quarry",          # not a taxonomy node: literal-only
    "quarry deposit",  # two-word literal-only
)


def make_doc(
    text: str, cfg: AppConfig | None = None, pipe: Pipeline | None = None, id: str = "d"
) -> ZonedDocument:
    cfg = cfg or default_config()
    return parse_document(
        RawArticle(id=id, path="<test>", format="text", content=text),
        cfg.ingest,
        pipe,
    )


def _words(rng: random.Random, n: int) -> str:
    out: list[str] = []
    while len(out) < n:
        roll = rng.random()
        if roll < 0.40:
            out.append(rng.choice(FILLER))
        elif roll < 0.78:
            out.extend(rng.choice(TAXON_SURFACES).split())
        else:
            out.append(rng.choice(STOPS))
    return " ".join(out[:n])


def _sentence(rng: random.Random, n: int) -> str:
    s = _words(rng, n)
    return s[0].upper() + s[1:] + "."


def random_article_text(rng: random.Random, max_tokens: int = 50) -> str:
    """A small zoned article; total token count stays under the cap."""
    budget = max_tokens
    parts: list[str] = []

    title = _words(rng, rng.randint(2, 4))
    parts.append(title)
    budget -= len(tokenize(title))

    if rng.random() < 0.7 and budget > 14:
        abstract = _sentence(rng, rng.randint(4, 7))
        parts.extend(["", "Abstract", abstract])
        budget -= len(tokenize(abstract)) + 1
    if rng.random() < 0.4 and budget > 12:
        kw = _words(rng, rng.randint(2, 3))
        parts.extend(["", "Keywords: " + kw])
        budget -= len(tokenize(kw)) + 1
    n_caps = rng.choice((0, 0, 1, 1, 2))
    for k in range(n_caps):
        if budget < 12:
            break
        cap = _sentence(rng, rng.randint(3, 6))
        parts.extend(["", f"Figure {k + 1}. " + cap])
        budget -= len(tokenize(cap)) + 2
    if budget > 8:
        body = _sentence(rng, rng.randint(3, min(8, budget - 4)))
        parts.extend(["", body])
        budget -= len(tokenize(body))
    if rng.random() < 0.5 and budget > 6:
        ref = _sentence(rng, rng.randint(3, 5))
        parts.extend(["", "References", "1. " + ref])
    return "\n".join(parts) + "\n"


def random_query(rng: random.Random) -> str:
    return rng.choice(QUERIES)


def append_sentence_to_zone(doc: ZonedDocument, zone_index: int, sentence: str) -> list[Zone]:
    """Zone list with one more sentence at the end of the chosen zone."""
    zones = list(doc.zones)
    z = zones[zone_index]
    zones[zone_index] = Zone(z.kind, (z.text + " " + sentence).strip(), z.caption_index)
    return zones
