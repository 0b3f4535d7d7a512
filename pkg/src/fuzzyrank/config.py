"""Dataclass configuration for ingest, text pipeline, scoring, and expansion."""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any


class ConfigError(ValueError):
    """Raised when a config file cannot be read or fails validation."""


def _default_zone_weights() -> dict[str, float]:
    return {
        "title": 12.0,
        "keywords": 12.0,
        "abstract": 10.0,
        "ersatz_abstract": 9.0,
        "caption": 8.0,
        "body_early": 4.0,
        "body_late": 2.0,
        "references": 0.0,
    }


def _default_ontology_weights() -> dict[str, float]:
    return {"exact2": 10.0, "exact1": 5.0, "child": 3.0, "parent": 2.0}


@dataclass(frozen=True)
class IngestConfig:
    """Plain-text zone heuristics and structural bounds."""

    abstract_pattern: str = r"^(Abstract|ABSTRACT)\b"
    keywords_pattern: str = r"^(Keywords|Index Terms)\b"
    caption_pattern: str = r"^(Fig\.?|Figure|Table)\s*\d"
    references_pattern: str = r"^(References|REFERENCES|Bibliography)\s*$"
    ersatz_cap_words: int = 300
    body_early_limit: int = 2000


@dataclass(frozen=True)
class PipelineConfig:
    """Tokenization support: stemmer switch and word-list overrides."""

    stemmer: str = "porter"  # "porter" or "off"
    stopwords_path: str | None = None  # None = bundled list
    abbreviations_path: str | None = None  # None = bundled list


@dataclass(frozen=True)
class ScoringConfig:
    """Zone and ontology weights, context boost, and level assignment."""

    zone_weights: dict[str, float] = field(default_factory=_default_zone_weights)
    ontology_weights: dict[str, float] = field(default_factory=_default_ontology_weights)
    caption_dampened_weight: float = 3.0
    context_multiplier: float = 5.0
    high_threshold: float = 24.0
    medium_threshold: float = 10.0
    level_mode: str = "score_threshold"  # "score_threshold" or "zone_rule"


@dataclass(frozen=True)
class AppConfig:
    ingest: IngestConfig = field(default_factory=IngestConfig)
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    scoring: ScoringConfig = field(default_factory=ScoringConfig)
    expansion_depth: int | None = None  # None = unlimited ancestor/descendant depth


_ZONE_KEYS = frozenset(_default_zone_weights())
_ONTOLOGY_KEYS = frozenset(_default_ontology_weights())


def validate_config(cfg: AppConfig) -> None:
    """Raise ConfigError on out-of-range or unknown values."""
    if cfg.pipeline.stemmer not in ("porter", "off"):
        raise ConfigError(f"unknown stemmer {cfg.pipeline.stemmer!r}")
    if cfg.scoring.level_mode not in ("score_threshold", "zone_rule"):
        raise ConfigError(f"unknown level_mode {cfg.scoring.level_mode!r}")
    if set(cfg.scoring.zone_weights) != _ZONE_KEYS:
        raise ConfigError("zone_weights must define exactly the known zones")
    if set(cfg.scoring.ontology_weights) != _ONTOLOGY_KEYS:
        raise ConfigError("ontology_weights must define exactly the known match types")
    for name, w in {**cfg.scoring.zone_weights, **cfg.scoring.ontology_weights}.items():
        if w < 0:
            raise ConfigError(f"weight {name} must be >= 0, got {w}")
    if cfg.scoring.caption_dampened_weight < 0:
        raise ConfigError("caption_dampened_weight must be >= 0")
    if cfg.scoring.context_multiplier <= 0:
        raise ConfigError("context_multiplier must be > 0")
    if not cfg.scoring.high_threshold > cfg.scoring.medium_threshold > 0:
        raise ConfigError("thresholds must satisfy high > medium > 0")
    if cfg.ingest.ersatz_cap_words <= 0 or cfg.ingest.body_early_limit <= 0:
        raise ConfigError("ersatz_cap_words and body_early_limit must be > 0")
    if cfg.expansion_depth is not None and cfg.expansion_depth < 0:
        raise ConfigError("expansion_depth must be >= 0 or null")


def config_to_dict(cfg: AppConfig) -> dict[str, Any]:
    return dataclasses.asdict(cfg)


def config_from_dict(data: dict[str, Any]) -> AppConfig:
    """Build an AppConfig from a nested dict; unknown keys are rejected."""
    try:
        ingest = IngestConfig(**data.get("ingest", {}))
        pipeline = PipelineConfig(**data.get("pipeline", {}))
        scoring_data = dict(data.get("scoring", {}))
        scoring = ScoringConfig(**scoring_data)
        extra = set(data) - {"ingest", "pipeline", "scoring", "expansion_depth"}
        if extra:
            raise ConfigError(f"unknown config sections: {sorted(extra)}")
        cfg = AppConfig(
            ingest=ingest,
            pipeline=pipeline,
            scoring=scoring,
            expansion_depth=data.get("expansion_depth"),
        )
    except TypeError as exc:  # unknown dataclass field
        raise ConfigError(str(exc)) from exc
    validate_config(cfg)
    return cfg


def load_config(path: str | Path) -> AppConfig:
    """Load a JSON config file."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot parse config {p}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be an object: {p}")
    return config_from_dict(data)


def default_config() -> AppConfig:
    return AppConfig()
