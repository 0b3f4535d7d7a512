"""Synthetic judged corpus with planted relevance evidence.

Thirty articles are generated around two single-word queries. For each
query, four articles plant term occurrences that should read as highly
relevant (title plus abstract), four as relevant (caption plus early
body), and four as somewhat relevant (a single mention deep in the
body). Six more articles mention both query terms only inside their
reference lists and so should match nothing. Three synthetic judges
file every article unanimously at its planted level.

Filler text is drawn from a vocabulary whose stems are disjoint from
every taxonomy term, so planted occurrences are the only matches and
the expected level of every (query, article) pair is known by
construction. A location-blind occurrence-count baseline misreads the
title/abstract and caption/body plants (two occurrences each), which
is exactly the contrast the comparison report measures.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .config import AppConfig, default_config
from .ingest import Corpus, RawArticle, parse_document
from .scoring import RelevanceLevel
from .evaluation import Judgment, JudgmentSet
from .textproc import Pipeline, build_pipeline, tokenize

PLANT_QUERIES = ("allosaurus", "ginkgo")

JUDGES = ("j1", "j2", "j3")

# Stems of these words never collide with taxonomy terms (tested).
FILLER_WORDS = (
    "specimen", "sample", "matrix", "deposit", "sediment", "horizon",
    "assemblage", "fragment", "preservation", "excavation", "quarry",
    "locality", "stratum", "section", "exposure", "outcrop", "survey",
    "measurement", "analysis", "comparison", "description", "texture",
    "grain", "composition", "mineral", "carbonate", "shale", "sandstone",
    "mudstone", "limestone", "bed", "lamination", "structure", "feature",
    "margin", "profile", "record", "archive", "collection", "inventory",
    "study", "review", "method", "procedure", "protocol", "result",
    "finding", "observation", "interpretation", "discussion", "pattern",
    "variation", "distribution", "abundance", "frequency", "density",
)


@dataclass(frozen=True)
class PlantedSpec:
    doc_id: str
    query: str | None  # None: terms appear only in the reference list
    level: RelevanceLevel


def planted_layout() -> list[PlantedSpec]:
    """The fixed 30-article plan: 12 per query (4 per level), 6 with none."""
    specs: list[PlantedSpec] = []
    doc = 0
    for query in PLANT_QUERIES:
        for level in (RelevanceLevel.HIGH, RelevanceLevel.MEDIUM, RelevanceLevel.LOW):
            for _ in range(4):
                doc += 1
                specs.append(PlantedSpec(str(doc), query, level))
    for _ in range(6):
        doc += 1
        specs.append(PlantedSpec(str(doc), None, RelevanceLevel.NOT_RELEVANT))
    return specs


def _sentence(rng: random.Random, n_words: int | None = None) -> str:
    n = n_words or rng.randint(8, 14)
    words = [rng.choice(FILLER_WORDS) for _ in range(n)]
    return words[0].capitalize() + " " + " ".join(words[1:]) + "."


def _paragraph(rng: random.Random, n_sentences: int | None = None) -> str:
    n = n_sentences or rng.randint(3, 5)
    return " ".join(_sentence(rng) for _ in range(n))


def _reference_lines(rng: random.Random, extra_terms: tuple[str, ...]) -> list[str]:
    lines = []
    n = 1
    for term in extra_terms:
        lines.append(
            f"{n}. Catalog entry on {term} material, archive series {rng.randint(2, 9)}."
        )
        n += 1
    for _ in range(2):
        lines.append(f"{n}. {_sentence(rng, 7)}")
        n += 1
    return lines


def article_text(spec: PlantedSpec, rng: random.Random, cfg: AppConfig) -> str:
    """One plain-text article realizing a plant's evidence placement."""
    term = spec.query
    year = rng.randint(1998, 2024)
    parts: list[str] = []

    if spec.level is RelevanceLevel.HIGH:
        assert term is not None
        parts.append(f"{term.capitalize()} specimens from a quarry assemblage")
    else:
        parts.append(_sentence(rng, 7).rstrip("."))
    parts.append(f"Survey collective ({year})")
    parts.append("")

    parts.append("Abstract")
    if spec.level is RelevanceLevel.HIGH:
        parts.append(
            f"The material assigned to {term} is described from excavation records. "
            + _sentence(rng)
        )
    else:
        parts.append(_paragraph(rng, 2))
    parts.append("")

    refs: tuple[str, ...] = ()
    if spec.level is RelevanceLevel.HIGH:
        parts.append(_paragraph(rng))
        parts.append("")
        parts.append(_paragraph(rng))
    elif spec.level is RelevanceLevel.MEDIUM:
        assert term is not None
        parts.append(_paragraph(rng))
        parts.append("")
        parts.append(f"Figure 1. Recovered {term} material in matrix blocks.")
        parts.append("")
        parts.append(
            _sentence(rng)
            + f" Further {term} fragments appear throughout the section. "
            + _sentence(rng)
        )
    elif spec.level is RelevanceLevel.LOW:
        assert term is not None
        count = 0
        target = cfg.ingest.body_early_limit + 10
        while count < target:
            p = _paragraph(rng)
            count += len(tokenize(p))
            parts.append(p)
            parts.append("")
        parts.append(
            _sentence(rng) + f" A single {term} fragment closes the inventory."
        )
    else:
        parts.append(_paragraph(rng))
        refs = PLANT_QUERIES  # the only place the query terms appear

    parts.append("")
    parts.append("References")
    parts.extend(_reference_lines(rng, refs))
    return "\n".join(parts) + "\n"


def build_planted_corpus(
    cfg: AppConfig | None = None,
    pipe: Pipeline | None = None,
    seed: int = 2026,
) -> tuple[Corpus, JudgmentSet]:
    """Generate the corpus and its unanimous three-judge judgment set."""
    cfg = cfg or default_config()
    pipe = pipe or build_pipeline(cfg.pipeline)
    rng = random.Random(seed)
    docs = {}
    judgments: list[Judgment] = []
    for spec in planted_layout():
        raw = RawArticle(
            id=spec.doc_id,
            path=f"<planted:{spec.doc_id}>",
            format="text",
            content=article_text(spec, rng, cfg),
        )
        doc = parse_document(raw, cfg.ingest, pipe)
        docs[doc.id] = doc
        for judge in JUDGES:
            judgments.append(
                Judgment(
                    judge_id=judge,
                    query=spec.query,
                    article_id=spec.doc_id,
                    level=spec.level,
                )
            )
    corpus = Corpus(documents={k: docs[k] for k in sorted(docs)})
    return corpus, JudgmentSet(judgments)


def write_planted_corpus(
    directory: str | Path, cfg: AppConfig | None = None, seed: int = 2026
) -> list[Path]:
    """Write the generated articles as .txt files (one per article)."""
    cfg = cfg or default_config()
    rng = random.Random(seed)
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for spec in planted_layout():
        path = out / f"{spec.doc_id}.txt"
        path.write_text(article_text(spec, rng, cfg), encoding="utf-8")
        written.append(path)
    return written
