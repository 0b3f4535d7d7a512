"""Zone-weighted scholarly article search with fuzzy relevance levels."""

__version__ = "0.1.0"

from .config import AppConfig, ConfigError, default_config, load_config
from .index import (
    ConfigMismatch,
    SearchIndex,
    Searcher,
    build_index,
    load_index,
    save_index,
)
from .ingest import Corpus, ZonedDocument, load_corpus, parse_document
from .ontology import ExpandedQuery, IndexKind, MatchType, expand_query, load_taxonomies
from .scoring import OccurrenceProfile, RelevanceLevel, assign_level, score_document
from .textproc import Pipeline, build_pipeline

__all__ = [
    "AppConfig",
    "ConfigError",
    "ConfigMismatch",
    "Corpus",
    "ExpandedQuery",
    "IndexKind",
    "MatchType",
    "OccurrenceProfile",
    "Pipeline",
    "RelevanceLevel",
    "SearchIndex",
    "Searcher",
    "ZonedDocument",
    "assign_level",
    "build_index",
    "build_pipeline",
    "default_config",
    "expand_query",
    "load_config",
    "load_corpus",
    "load_index",
    "load_taxonomies",
    "parse_document",
    "save_index",
    "score_document",
]
