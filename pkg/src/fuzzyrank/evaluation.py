"""Judged evaluation: inter-judge agreement and system-vs-judge rates.

Judges file each article they review into one of the per-query
relevance piles (query crossed with High/Medium/Low) or into a shared
neither pile. A judge's derived level for a (query, article) pair is
their explicit vote for that query when present, NotRelevant when they
reviewed the article but filed it elsewhere, and undefined when they
never reviewed it.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Callable

from .scoring import RelevanceLevel, assign_level, baseline_level

_LEVEL_BY_NAME = {
    "high": RelevanceLevel.HIGH,
    "medium": RelevanceLevel.MEDIUM,
    "low": RelevanceLevel.LOW,
    "not_relevant": RelevanceLevel.NOT_RELEVANT,
}


class JudgmentError(ValueError):
    """Malformed judgment rows."""


class CoverageGap(ValueError):
    """A system could not produce a level for a judged pair."""


class AgreementRule(str, Enum):
    TWO_OF_THREE = "two_of_three"
    UNANIMOUS = "unanimous"


class AgreementPolicy(str, Enum):
    AT_LEAST_ONE = "at_least_one"
    MAJORITY = "majority"


@dataclass(frozen=True)
class Judgment:
    judge_id: str
    query: str | None  # None: the neither pile
    article_id: str
    level: RelevanceLevel


@dataclass
class JudgmentSet:
    judgments: list[Judgment]
    _by_article: dict[str, list[Judgment]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        seen: set[tuple[str, str]] = set()
        self._by_article = {}
        for j in self.judgments:
            key = (j.judge_id, j.article_id)
            if key in seen:
                raise JudgmentError(
                    f"judge {j.judge_id!r} filed article {j.article_id!r} twice"
                )
            seen.add(key)
            self._by_article.setdefault(j.article_id, []).append(j)

    @property
    def queries(self) -> list[str]:
        return sorted({j.query for j in self.judgments if j.query is not None})

    @property
    def judges(self) -> list[str]:
        return sorted({j.judge_id for j in self.judgments})

    @property
    def articles(self) -> list[str]:
        return sorted(self._by_article, key=_article_sort_key)

    def votes_for_article(self, article_id: str) -> list[Judgment]:
        return list(self._by_article.get(article_id, ()))

    def derived_level(
        self, query: str, article_id: str, judge_id: str
    ) -> RelevanceLevel | None:
        """The judge's level for a pair; None when they never saw the article."""
        votes = self._by_article.get(article_id, ())
        mine = [j for j in votes if j.judge_id == judge_id]
        if not mine:
            return None
        for j in mine:
            if j.query == query:
                return j.level
        return RelevanceLevel.NOT_RELEVANT


def _article_sort_key(article_id: str):
    return (0, int(article_id)) if article_id.isdigit() else (1, article_id)


def load_judgments(path: str | Path | None = None) -> JudgmentSet:
    """Read judgment rows (bundled study data by default)."""
    if path is None:
        handle = (
            resources.files("fuzzyrank.data")
            .joinpath("judgments_fixture.csv")
            .open("r", encoding="utf-8")
        )
    else:
        handle = open(path, "r", encoding="utf-8")
    with handle:
        lines = [ln for ln in handle if not ln.lstrip().startswith("#")]
    judgments: list[Judgment] = []
    for row in csv.DictReader(lines):
        if not row.get("judge_id"):
            continue
        level_name = (row.get("level") or "").strip().lower()
        if level_name not in _LEVEL_BY_NAME:
            raise JudgmentError(f"unknown level {row.get('level')!r}")
        level = _LEVEL_BY_NAME[level_name]
        query = (row.get("query") or "").strip() or None
        if query is None and level is not RelevanceLevel.NOT_RELEVANT:
            raise JudgmentError("a vote without a query must be not_relevant")
        if query is not None and level is RelevanceLevel.NOT_RELEVANT:
            raise JudgmentError("a not_relevant vote must not name a query")
        judgments.append(
            Judgment(
                judge_id=row["judge_id"].strip(),
                query=query,
                article_id=row["article_id"].strip(),
                level=level,
            )
        )
    return JudgmentSet(judgments)


# ---------------------------------------------------------------------------
# Inter-judge agreement


@dataclass(frozen=True)
class RateStat:
    agreements: int
    candidates: int

    @property
    def rate(self) -> float:
        return self.agreements / self.candidates if self.candidates else 0.0


@dataclass
class InterJudgeReport:
    rule: AgreementRule
    not_relevant: RateStat
    relevant: RateStat
    unanimous_overall: RateStat


def _pile(j: Judgment) -> tuple[str | None, int]:
    return (j.query, int(j.level))


def _relevant_agree(votes: list[Judgment], rule: AgreementRule) -> bool:
    piles = [_pile(j) for j in votes if j.query is not None]
    if not piles:
        return False
    if rule is AgreementRule.UNANIMOUS:
        return len(votes) == len(piles) and len(set(piles)) == 1
    return any(piles.count(p) >= 2 for p in set(piles))


def inter_judge_agreement(
    js: JudgmentSet,
    query: str | None = None,
    rule: AgreementRule = AgreementRule.TWO_OF_THREE,
) -> InterJudgeReport:
    """How often judges land in the same pile.

    The not-relevant side counts articles someone filed as not relevant
    and asks whether everyone did. The relevant side counts articles
    someone filed into a relevance pile and asks whether enough judges
    (two, or all of them under the unanimous rule) chose the same pile.
    Passing a query restricts votes to that query's piles first.
    """
    nr_agree = nr_cand = rel_agree = rel_cand = unanimous = 0
    articles = js.articles
    for article_id in articles:
        votes = js.votes_for_article(article_id)
        if query is not None:
            votes = [
                Judgment(
                    j.judge_id,
                    j.query if j.query == query else None,
                    j.article_id,
                    j.level if j.query == query else RelevanceLevel.NOT_RELEVANT,
                )
                for j in votes
            ]
        piles = {_pile(j) for j in votes}
        if len(piles) == 1:
            unanimous += 1
        if any(j.query is None for j in votes):
            nr_cand += 1
            if all(j.query is None for j in votes):
                nr_agree += 1
        if any(j.query is not None for j in votes):
            rel_cand += 1
            if _relevant_agree(votes, rule):
                rel_agree += 1
    return InterJudgeReport(
        rule=rule,
        not_relevant=RateStat(nr_agree, nr_cand),
        relevant=RateStat(rel_agree, rel_cand),
        unanimous_overall=RateStat(unanimous, len(articles)),
    )


# ---------------------------------------------------------------------------
# System-versus-judge agreement

System = Callable[[str, str], "RelevanceLevel | None"]


@dataclass
class SystemAgreementReport:
    policy: AgreementPolicy
    agreements: int
    pairs: int
    per_query: dict[str, RateStat]

    @property
    def rate(self) -> float:
        return self.agreements / self.pairs if self.pairs else 0.0


def system_agreement(
    system: System,
    js: JudgmentSet,
    policy: AgreementPolicy = AgreementPolicy.AT_LEAST_ONE,
) -> SystemAgreementReport:
    """Rate at which a system's level matches the judges'.

    One pair per judged article per query. Under AT_LEAST_ONE the system
    scores when any judge derived the same level; under MAJORITY more
    than half of the deriving judges must share its level.
    """
    agreements = 0
    pairs = 0
    per_query: dict[str, RateStat] = {}
    for query in js.queries:
        q_agree = q_pairs = 0
        for article_id in js.articles:
            system_level = system(query, article_id)
            if system_level is None:
                raise CoverageGap(
                    f"system produced no level for query {query!r}, "
                    f"article {article_id!r}"
                )
            derived = [
                lvl
                for judge in js.judges
                if (lvl := js.derived_level(query, article_id, judge)) is not None
            ]
            if not derived:
                continue
            pairs += 1
            q_pairs += 1
            same = sum(1 for lvl in derived if lvl == system_level)
            if policy is AgreementPolicy.AT_LEAST_ONE:
                ok = same >= 1
            else:
                ok = same * 2 > len(derived)
            if ok:
                agreements += 1
                q_agree += 1
        per_query[query] = RateStat(q_agree, q_pairs)
    return SystemAgreementReport(
        policy=policy, agreements=agreements, pairs=pairs, per_query=per_query
    )


@dataclass
class ComparisonReport:
    fuzzy: SystemAgreementReport
    baseline: SystemAgreementReport

    @property
    def gap_points(self) -> float:
        return (self.fuzzy.rate - self.baseline.rate) * 100.0


def compare_rankers(
    fuzzy_system: System,
    baseline_system: System,
    js: JudgmentSet,
    policy: AgreementPolicy = AgreementPolicy.MAJORITY,
) -> ComparisonReport:
    """Judge-agreement comparison of the zone-weighted ranker vs a baseline."""
    return ComparisonReport(
        fuzzy=system_agreement(fuzzy_system, js, policy),
        baseline=system_agreement(baseline_system, js, policy),
    )


def searcher_systems(searcher) -> tuple[System, System]:
    """Adapt a Searcher into (fuzzy, baseline) system callables."""
    cache: dict[str, dict] = {}

    def profiles_for(query: str) -> dict:
        if query not in cache:
            cache[query] = searcher.profiles(searcher.expand(query))
        return cache[query]

    def fuzzy(query: str, article_id: str) -> RelevanceLevel | None:
        if article_id not in searcher.index.doc_meta:
            return None
        profile = profiles_for(query).get(article_id)
        if profile is None:
            return RelevanceLevel.NOT_RELEVANT
        return assign_level(profile, searcher.index.config.scoring)

    def baseline(query: str, article_id: str) -> RelevanceLevel | None:
        if article_id not in searcher.index.doc_meta:
            return None
        profile = profiles_for(query).get(article_id)
        if profile is None:
            return RelevanceLevel.NOT_RELEVANT
        return baseline_level(profile)

    return fuzzy, baseline


# ---------------------------------------------------------------------------
# Reporting


def _rate_dict(stat: RateStat) -> dict:
    return {
        "agreements": stat.agreements,
        "candidates": stat.candidates,
        "rate": stat.rate,
    }


def _system_dict(report: SystemAgreementReport) -> dict:
    return {
        "policy": report.policy.value,
        "agreements": report.agreements,
        "pairs": report.pairs,
        "rate": report.rate,
        "per_query": {
            q: _rate_dict(stat) for q, stat in sorted(report.per_query.items())
        },
    }


def report_to_dict(
    js: JudgmentSet,
    comparison: ComparisonReport | None = None,
) -> dict:
    """JSON-ready evaluation report (see evaluation_report.schema.json)."""
    two = inter_judge_agreement(js, rule=AgreementRule.TWO_OF_THREE)
    una = inter_judge_agreement(js, rule=AgreementRule.UNANIMOUS)
    out: dict = {
        "judges": js.judges,
        "queries": js.queries,
        "n_articles": len(js.articles),
        "inter_judge": {
            "not_relevant": _rate_dict(two.not_relevant),
            "relevant_two_of_three": _rate_dict(two.relevant),
            "relevant_unanimous": _rate_dict(una.relevant),
            "unanimous_overall": _rate_dict(two.unanimous_overall),
        },
    }
    if comparison is not None:
        out["system_comparison"] = {
            "policy": comparison.fuzzy.policy.value,
            "fuzzy": _system_dict(comparison.fuzzy),
            "baseline": _system_dict(comparison.baseline),
            "gap_points": comparison.gap_points,
        }
    return out
