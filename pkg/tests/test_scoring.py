"""Scoring tests: zone weights, expansion weights, suppression, context,
caption dampening, level assignment, and oracle equivalence."""
from __future__ import annotations

import dataclasses
import json
import random

import pytest

from fuzzyrank.ingest import ZoneKind
from fuzzyrank.ontology import MatchType, expand_query
from fuzzyrank.scoring import (
    Occurrence,
    OccurrenceProfile,
    RelevanceLevel,
    assign_level,
    baseline_level,
    compute_doc_aux,
    kept_stream,
    scan_mentions,
    score_breakdown,
    score_document,
)

from oracle import brute_force_components, brute_force_level
from support import make_doc, random_article_text, random_query

NEUTRAL_ABSTRACT = "Abstract\nNeutral material is described from the archive.\n"
NEUTRAL_BODY = "Neutral body text continues the record here.\n"


def profile(text, query, cfg, pipe, taxa, catalog):
    doc = make_doc(text, cfg, pipe)
    expanded = expand_query(query, taxa, pipe)
    return score_document(doc, expanded, catalog, cfg.scoring, pipe)


# ---------------------------------------------------------------------------
# Single-occurrence weight arithmetic, one zone at a time. The query is a
# one-word taxonomy name, so each hit scores zone_weight + 5.

ZONE_VECTORS = [
    ("title", 17.0),
    ("keywords", 17.0),
    ("abstract", 15.0),
    ("ersatz_abstract", 14.0),
    ("caption", 13.0),
    ("body_early", 9.0),
    ("body_late", 7.0),
    ("references", 0.0),
]


def single_zone_text(zone: str) -> str:
    if zone == "title":
        return f"Allosaurus survey\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}"
    if zone == "keywords":
        return (
            f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n"
            f"Keywords: Allosaurus, matrix\n\n{NEUTRAL_BODY}"
        )
    if zone == "abstract":
        return (
            "Neutral survey\n\nAbstract\n"
            f"Allosaurus material is described here.\n\n{NEUTRAL_BODY}"
        )
    if zone == "ersatz_abstract":
        # no marker: the first body paragraph stands in for the abstract
        return f"Neutral survey\n\nAllosaurus material opens the account.\n\n{NEUTRAL_BODY}"
    if zone == "caption":
        return (
            f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}\n"
            "Figure 1. Allosaurus limb in matrix.\n"
        )
    if zone == "body_early":
        return f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\nAllosaurus bones were recovered.\n"
    if zone == "body_late":
        filler = " ".join("filler" for _ in range(2005)) + "."
        return (
            f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n{filler}\n\n"
            "Allosaurus bones close the account.\n"
        )
    if zone == "references":
        return (
            f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}\n"
            "References\n1. Allosaurus catalog entry.\n"
        )
    raise AssertionError(zone)


@pytest.mark.parametrize("zone,expected", ZONE_VECTORS)
def test_single_occurrence_zone_scores(zone, expected, cfg, pipe, taxa, catalog):
    prof = profile(single_zone_text(zone), "allosaurus", cfg, pipe, taxa, catalog)
    assert len(prof.occurrences) == 1
    occ = prof.occurrences[0]
    assert occ.zone == ZoneKind(zone)
    assert prof.total == expected
    assert occ.scored == (zone != "references")


def test_reference_occurrence_recorded_but_unscored(cfg, pipe, taxa, catalog):
    prof = profile(single_zone_text("references"), "allosaurus", cfg, pipe, taxa, catalog)
    occ = prof.occurrences[0]
    assert occ.scored is False
    assert occ.score == 0.0
    assert prof.scored_occurrences() == []
    assert assign_level(prof, cfg.scoring) == RelevanceLevel.NOT_RELEVANT
    assert baseline_level(prof) == RelevanceLevel.NOT_RELEVANT


def test_two_word_query_scores_exact2(cfg, pipe, taxa, catalog):
    # The two-word literal scores 12 + 10 in the title; the one-word genus
    # inside it is a parent expansion term and is never suppressed.
    text = f"Allosaurus fragilis survey\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}"
    prof = profile(text, "Allosaurus fragilis", cfg, pipe, taxa, catalog)
    by_type = {o.match_type: o.score for o in prof.occurrences}
    assert by_type[MatchType.EXACT2] == 22.0
    assert by_type[MatchType.PARENT] == 14.0
    assert prof.total == 36.0


# ---------------------------------------------------------------------------
# Literal suppression


def test_literal_suppressed_inside_longer_child_match(cfg, pipe, taxa, catalog):
    text = f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\nAllosaurus fragilis bones appear.\n"
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    assert len(prof.occurrences) == 1
    occ = prof.occurrences[0]
    assert occ.term == ("allosauru", "fragili")
    assert occ.match_type == MatchType.CHILD
    assert prof.total == 7.0  # body_early 4 + child 3


def test_expansion_terms_never_suppress_each_other(cfg, pipe, taxa, catalog):
    # "Hindeodus" sits inside "Hindeodus parvus"; both are expansion terms
    # of "conodont" and both count, alongside the literal.
    text = f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\nThe conodont Hindeodus parvus appeared.\n"
    prof = profile(text, "conodont", cfg, pipe, taxa, catalog)
    assert sorted(" ".join(o.term) for o in prof.occurrences) == [
        "conodont",
        "hindeodu",
        "hindeodu parvu",
    ]
    assert sorted(o.score for o in prof.occurrences) == [7.0, 7.0, 9.0]
    assert prof.total == 23.0


def test_standalone_literal_not_suppressed(cfg, pipe, taxa, catalog):
    text = f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\nConodonts occur in the section.\n"
    prof = profile(text, "conodont", cfg, pipe, taxa, catalog)
    assert [o.match_type for o in prof.occurrences] == [MatchType.EXACT1]
    assert prof.total == 9.0


# ---------------------------------------------------------------------------
# Context bonus: a sentence mentioning two different taxonomy kinds
# multiplies both components of every scored occurrence in it.


def test_context_multiplier_in_body(cfg, pipe, taxa, catalog):
    text = f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\nAllosaurus bones from Jurassic strata.\n"
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    occ = prof.occurrences[0]
    assert occ.in_context is True
    assert occ.score == 45.0  # (4 + 5) * 5
    assert prof.zone_component == 20.0
    assert prof.ontology_component == 25.0


def test_context_multiplier_in_title(cfg, pipe, taxa, catalog):
    text = f"Allosaurus from the Jurassic\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}"
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    assert prof.total == 85.0  # (12 + 5) * 5


def test_same_kind_mentions_do_not_create_context(cfg, pipe, taxa, catalog):
    text = f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\nAllosaurus and Tyrannosaurus co-occur.\n"
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    assert prof.occurrences[0].in_context is False
    assert prof.total == 9.0


def test_context_is_query_independent(cfg, pipe, taxa, catalog):
    # the query term is not a taxonomy name, yet the time + region pair
    # in the sentence still triggers the bonus for its occurrence
    text = f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\nQuarry records from Jurassic Wyoming.\n"
    prof = profile(text, "quarry", cfg, pipe, taxa, catalog)
    occ = prof.occurrences[0]
    assert occ.in_context is True
    assert occ.score == 45.0


def test_context_stops_at_sentence_boundary(cfg, pipe, taxa, catalog):
    text = (
        f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n"
        "Allosaurus bones were found. Jurassic strata hosted Wyoming sections.\n"
    )
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    assert prof.occurrences[0].in_context is False
    assert prof.total == 9.0


def test_unscored_reference_hits_get_no_context(cfg, pipe, taxa, catalog):
    text = (
        f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}\n"
        "References\n1. Allosaurus finds of Jurassic Wyoming.\n"
    )
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    occ = prof.occurrences[0]
    assert occ.scored is False and occ.in_context is False
    assert prof.total == 0.0


# ---------------------------------------------------------------------------
# Caption dampening: two or more organism mentions in one caption drop its
# zone weight to the dampened value.


def test_caption_with_one_organism_keeps_weight(cfg, pipe, taxa, catalog):
    prof = profile(single_zone_text("caption"), "allosaurus", cfg, pipe, taxa, catalog)
    assert prof.total == 13.0


def test_caption_with_two_organisms_dampened(cfg, pipe, taxa, catalog):
    text = (
        f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}\n"
        "Figure 1. Allosaurus and Tyrannosaurus limbs in matrix.\n"
    )
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    assert prof.occurrences[0].zone_weight == 3.0
    assert prof.total == 8.0  # (3 + 5)


def test_dampened_caption_with_two_query_hits(cfg, pipe, taxa, catalog):
    text = (
        f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}\n"
        "Figure 1. Allosaurus skull beside Tyrannosaurus; a second Allosaurus element.\n"
    )
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    assert len(prof.occurrences) == 2
    assert prof.total == 16.0


def test_species_binomial_counts_as_one_mention(cfg, pipe, taxa, catalog):
    # greedy longest matching: "Allosaurus fragilis" is one organism
    # mention, so the caption keeps its full weight
    text = (
        f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}\n"
        "Figure 1. Allosaurus fragilis limb in matrix.\n"
    )
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    assert len(prof.occurrences) == 1
    assert prof.total == 11.0  # caption 8 + child 3


def test_time_mention_does_not_dampen_caption(cfg, pipe, taxa, catalog):
    # one organism + one time mention: no dampening, but the pair of
    # kinds makes the caption sentence a context sentence
    text = (
        f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}\n"
        "Figure 1. Allosaurus remains from Jurassic matrix.\n"
    )
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    occ = prof.occurrences[0]
    assert occ.zone_weight == 8.0
    assert occ.in_context is True
    assert prof.total == 65.0  # (8 + 5) * 5


def test_dampening_is_per_caption(cfg, pipe, taxa, catalog):
    text = (
        f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n{NEUTRAL_BODY}\n"
        "Figure 1. Allosaurus and Tyrannosaurus limbs.\n\n"
        "Figure 2. Allosaurus trackway detail.\n"
    )
    prof = profile(text, "allosaurus", cfg, pipe, taxa, catalog)
    weights = sorted(o.zone_weight for o in prof.occurrences)
    assert weights == [3.0, 8.0]


# ---------------------------------------------------------------------------
# Mention scanning and document aux data


def test_scan_mentions_greedy_longest(cfg, pipe, taxa, catalog):
    doc = make_doc(
        f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\nUpper Jurassic beds of Wyoming.\n",
        cfg,
        pipe,
    )
    kept = kept_stream(doc, pipe)
    mentions = scan_mentions(kept, catalog)
    assert [(" ".join(m.term)) for m in mentions] == ["upper jurass", "wyom"]


def test_mentions_do_not_overlap(cfg, pipe, taxa, catalog):
    doc = make_doc(
        f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\nAllosaurus fragilis of Wyoming.\n",
        cfg,
        pipe,
    )
    kept = kept_stream(doc, pipe)
    mentions = scan_mentions(kept, catalog)
    spans = [(m.position, m.position + len(m.term)) for m in mentions]
    ordered = sorted(spans)
    for (s1, e1), (s2, e2) in zip(ordered, ordered[1:]):
        assert e1 <= s2


def test_compute_doc_aux_context_and_caption_counts(cfg, pipe, taxa, catalog):
    text = (
        f"Neutral survey\n\n{NEUTRAL_ABSTRACT}\n"
        "Allosaurus bones from Jurassic strata. A plain sentence follows.\n\n"
        "Figure 1. Allosaurus and Tyrannosaurus limbs.\n"
    )
    doc = make_doc(text, cfg, pipe)
    kept = kept_stream(doc, pipe)
    aux = compute_doc_aux(kept, catalog)
    context_sentences = {
        kept[m.position].sentence_id for m in scan_mentions(kept, catalog)
    }
    assert aux.context_sentences <= context_sentences
    assert len(aux.context_sentences) == 1
    assert aux.caption_organism_counts == {1: 2}


# ---------------------------------------------------------------------------
# Level assignment


def synthetic_profile(zone_component=0.0, ontology_component=0.0, occurrences=None):
    return OccurrenceProfile(
        doc_id="d",
        query="q",
        occurrences=occurrences or [],
        zone_component=zone_component,
        ontology_component=ontology_component,
    )


@pytest.mark.parametrize(
    "total,expected",
    [
        (24.0, RelevanceLevel.HIGH),
        (23.999, RelevanceLevel.MEDIUM),
        (10.0, RelevanceLevel.MEDIUM),
        (9.999, RelevanceLevel.LOW),
        (0.001, RelevanceLevel.LOW),
        (0.0, RelevanceLevel.NOT_RELEVANT),
    ],
)
def test_threshold_levels(total, expected, cfg):
    prof = synthetic_profile(zone_component=total)
    assert assign_level(prof, cfg.scoring) == expected


def test_level_labels():
    assert RelevanceLevel.HIGH.label == "Highly relevant"
    assert RelevanceLevel.MEDIUM.label == "Relevant"
    assert RelevanceLevel.LOW.label == "Somewhat relevant"
    assert RelevanceLevel.NOT_RELEVANT.label == "Not relevant"
    assert RelevanceLevel.HIGH > RelevanceLevel.MEDIUM > RelevanceLevel.LOW


def _occ(zone, scored=True):
    return Occurrence(
        term=("t",),
        match_type=MatchType.EXACT1,
        zone=zone,
        caption_index=1 if zone == ZoneKind.CAPTION else None,
        sentence_id=0,
        position=0,
        scored=scored,
        in_context=False,
        zone_weight=0.0,
        ontology_weight=0.0,
        score=0.0,
    )


def zone_rule_cfg(cfg):
    return dataclasses.replace(cfg.scoring, level_mode="zone_rule")


@pytest.mark.parametrize(
    "zones,expected",
    [
        ([ZoneKind.TITLE], RelevanceLevel.HIGH),
        ([ZoneKind.ABSTRACT], RelevanceLevel.HIGH),
        ([ZoneKind.ERSATZ_ABSTRACT], RelevanceLevel.HIGH),
        ([ZoneKind.KEYWORDS], RelevanceLevel.HIGH),
        ([ZoneKind.BODY_EARLY] * 3, RelevanceLevel.HIGH),
        ([ZoneKind.CAPTION], RelevanceLevel.MEDIUM),
        ([ZoneKind.BODY_EARLY, ZoneKind.BODY_LATE], RelevanceLevel.MEDIUM),
        ([ZoneKind.BODY_EARLY], RelevanceLevel.LOW),
        ([ZoneKind.BODY_LATE], RelevanceLevel.LOW),
        ([], RelevanceLevel.NOT_RELEVANT),
    ],
)
def test_zone_rule_levels(zones, expected, cfg):
    prof = synthetic_profile(occurrences=[_occ(z) for z in zones])
    assert assign_level(prof, zone_rule_cfg(cfg)) == expected


def test_zone_rule_ignores_unscored(cfg):
    prof = synthetic_profile(
        occurrences=[_occ(ZoneKind.REFERENCES, scored=False)]
    )
    assert assign_level(prof, zone_rule_cfg(cfg)) == RelevanceLevel.NOT_RELEVANT


@pytest.mark.parametrize(
    "count,expected",
    [
        (0, RelevanceLevel.NOT_RELEVANT),
        (1, RelevanceLevel.LOW),
        (2, RelevanceLevel.LOW),
        (3, RelevanceLevel.MEDIUM),
        (4, RelevanceLevel.MEDIUM),
        (5, RelevanceLevel.HIGH),
        (6, RelevanceLevel.HIGH),
        (10, RelevanceLevel.HIGH),
    ],
)
def test_baseline_step_function(count, expected):
    prof = synthetic_profile(
        occurrences=[_occ(ZoneKind.BODY_EARLY) for _ in range(count)]
    )
    assert baseline_level(prof) == expected


def test_baseline_ignores_reference_occurrences():
    occs = [_occ(ZoneKind.REFERENCES, scored=False) for _ in range(8)]
    assert baseline_level(synthetic_profile(occurrences=occs)) == (
        RelevanceLevel.NOT_RELEVANT
    )


# ---------------------------------------------------------------------------
# Breakdown serialization


def test_score_breakdown_shape(cfg, pipe, taxa, catalog):
    prof = profile(single_zone_text("title"), "allosaurus", cfg, pipe, taxa, catalog)
    bd = score_breakdown(prof, cfg.scoring)
    assert bd["total"] == 17.0
    assert bd["level"] == "medium"
    assert bd["label"] == "Relevant"
    assert bd["occurrences"][0]["term"] == "allosauru"
    assert bd["occurrences"][0]["zone"] == "title"
    json.dumps(bd)  # JSON-ready throughout


# ---------------------------------------------------------------------------
# Oracle equivalence and structural invariants on random articles


def test_matches_brute_force_oracle(cfg, pipe, taxa, catalog):
    rng = random.Random(4177)
    checked = 0
    for _ in range(300):
        text = random_article_text(rng)
        query = random_query(rng)
        try:
            doc = make_doc(text, cfg, pipe)
        except ValueError:
            continue
        expanded = expand_query(query, taxa, pipe)
        prof = score_document(doc, expanded, catalog, cfg.scoring, pipe)
        zc, oc = brute_force_components(doc, expanded, catalog, cfg.scoring, pipe)
        assert prof.zone_component == zc
        assert prof.ontology_component == oc
        level = assign_level(prof, cfg.scoring)
        assert level.name.lower() == brute_force_level(prof.total, cfg.scoring)
        checked += 1
    assert checked > 250


def test_profile_invariants_on_random_articles(cfg, pipe, taxa, catalog):
    rng = random.Random(912)
    for _ in range(150):
        try:
            doc = make_doc(random_article_text(rng), cfg, pipe)
        except ValueError:
            continue
        expanded = expand_query(random_query(rng), taxa, pipe)
        prof = score_document(doc, expanded, catalog, cfg.scoring, pipe)
        total = 0.0
        for o in prof.occurrences:
            if not o.scored:
                assert o.zone == ZoneKind.REFERENCES
                assert o.score == 0.0
                continue
            mult = cfg.scoring.context_multiplier if o.in_context else 1.0
            assert o.score == (o.zone_weight + o.ontology_weight) * mult
            assert o.term in expanded.terms
            total += o.score
        assert prof.total == total
        positions = [(o.position, o.term) for o in prof.occurrences]
        assert len(positions) == len(set(positions))
