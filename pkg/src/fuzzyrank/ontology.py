"""Term taxonomies and ontology-based query expansion.

Three taxonomies are indexed: organism names, geologic time, and
regions. Each is a forest of named nodes; a query naming a node expands
transitively to its descendants (child matches) and ancestors (parent
matches). Terms are compared in normalized form, so "Allosaurus
fragilis" and "allosaurus fragilis." meet in the same key.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterator

from .textproc import Pipeline

Term = tuple[str, ...]  # normalized: stemmed tokens, stopwords removed


class IndexKind(str, Enum):
    ORGANISM = "organism"
    TIME = "time"
    REGION = "region"


class MatchType(str, Enum):
    """How a matched term relates to the query; keys of ontology_weights."""

    EXACT2 = "exact2"  # literal query, two or more words
    EXACT1 = "exact1"  # literal query, single word
    CHILD = "child"  # descendant of the query node
    PARENT = "parent"  # ancestor of the query node


class TaxonomyError(ValueError):
    """Structurally invalid taxonomy file."""


class QueryError(ValueError):
    """Query with no content terms after normalization."""


_DEFAULT_FILES = {
    IndexKind.ORGANISM: "organism_names.csv",
    IndexKind.TIME: "geologic_time.csv",
    IndexKind.REGION: "regions.csv",
}


@dataclass(frozen=True)
class TaxNode:
    id: str
    name: str
    rank: str
    parent_id: str | None


@dataclass
class Taxonomy:
    kind: IndexKind
    nodes: dict[str, TaxNode]
    children: dict[str, tuple[str, ...]]
    term_index: dict[Term, str]  # normalized name -> node id

    def node(self, node_id: str) -> TaxNode:
        return self.nodes[node_id]

    def descendants(self, node_id: str, depth: int | None = None) -> Iterator[str]:
        """Yield descendant ids breadth-first, at most `depth` levels down."""
        frontier = [node_id]
        level = 0
        while frontier and (depth is None or level < depth):
            level += 1
            frontier = [c for n in frontier for c in self.children.get(n, ())]
            yield from frontier

    def ancestors(self, node_id: str, depth: int | None = None) -> Iterator[str]:
        """Yield ancestor ids walking rootward, at most `depth` levels up."""
        level = 0
        parent = self.nodes[node_id].parent_id
        while parent is not None and (depth is None or level < depth):
            level += 1
            yield parent
            parent = self.nodes[parent].parent_id


def _read_rows(path: str | Path | None, kind: IndexKind) -> list[dict[str, str]]:
    if path is None:
        handle = (
            resources.files("fuzzyrank.data")
            .joinpath(_DEFAULT_FILES[kind])
            .open("r", encoding="utf-8")
        )
    else:
        handle = open(path, "r", encoding="utf-8")
    with handle:
        lines = [ln for ln in handle if not ln.lstrip().startswith("#")]
    reader = csv.DictReader(lines)
    cols = set(reader.fieldnames or ())
    if not {"id", "name", "parent_id"} <= cols:
        raise TaxonomyError(f"{kind.value} taxonomy needs id,name,parent_id columns")
    return [row for row in reader if row.get("id")]


def load_taxonomy(
    kind: IndexKind, pipe: Pipeline, path: str | Path | None = None
) -> Taxonomy:
    """Load one taxonomy, validating structure and name uniqueness."""
    nodes: dict[str, TaxNode] = {}
    for row in _read_rows(path, kind):
        node = TaxNode(
            id=row["id"].strip(),
            name=row["name"].strip(),
            rank=(row.get("rank") or "").strip(),
            parent_id=(row["parent_id"].strip() or None),
        )
        if node.id in nodes:
            raise TaxonomyError(f"duplicate node id {node.id!r}")
        nodes[node.id] = node

    children: dict[str, list[str]] = {}
    for node in nodes.values():
        if node.parent_id is not None:
            if node.parent_id not in nodes:
                raise TaxonomyError(
                    f"node {node.id!r} references missing parent {node.parent_id!r}"
                )
            children.setdefault(node.parent_id, []).append(node.id)

    for node in nodes.values():  # reject parent cycles
        seen = {node.id}
        cur = node.parent_id
        while cur is not None:
            if cur in seen:
                raise TaxonomyError(f"parent cycle through node {cur!r}")
            seen.add(cur)
            cur = nodes[cur].parent_id

    term_index: dict[Term, str] = {}
    for node in nodes.values():
        term = pipe.normalize(node.name)
        if not term:
            raise TaxonomyError(f"node {node.id!r} name normalizes to nothing")
        if term in term_index:
            raise TaxonomyError(
                f"nodes {term_index[term]!r} and {node.id!r} share the name {node.name!r}"
            )
        term_index[term] = node.id

    return Taxonomy(
        kind=kind,
        nodes=nodes,
        children={k: tuple(v) for k, v in children.items()},
        term_index=term_index,
    )


def load_taxonomies(
    pipe: Pipeline, paths: dict[IndexKind, str | Path] | None = None
) -> dict[IndexKind, Taxonomy]:
    """Load all three taxonomies (bundled files unless paths override)."""
    paths = paths or {}
    return {
        kind: load_taxonomy(kind, pipe, paths.get(kind)) for kind in IndexKind
    }


def term_catalog(taxonomies: dict[IndexKind, Taxonomy]) -> dict[Term, IndexKind]:
    """Every known term across taxonomies, mapped to its index kind.

    Drives the query-independent passes: context-sentence detection and
    caption organism counts.
    """
    catalog: dict[Term, IndexKind] = {}
    for kind in IndexKind:
        tax = taxonomies.get(kind)
        if tax is None:
            continue
        for term in tax.term_index:
            catalog.setdefault(term, kind)
    return catalog


@dataclass
class ExpandedQuery:
    query: str
    literal: Term
    literal_type: MatchType
    terms: dict[Term, MatchType]  # literal plus expansion terms
    index_kind: IndexKind | None = None  # taxonomy the query matched, if any
    node_id: str | None = None

    def __post_init__(self) -> None:
        assert self.literal in self.terms

    @property
    def max_len(self) -> int:
        return max(len(t) for t in self.terms)


def expand_query(
    query: str,
    taxonomies: dict[IndexKind, Taxonomy],
    pipe: Pipeline,
    depth: int | None = None,
) -> ExpandedQuery:
    """Normalize a query and expand it through the taxonomy it names.

    The literal term scores as an exact match (two-word literals above
    one-word ones); descendants join as child matches and ancestors as
    parent matches, each carrying its own match type. A query naming no
    taxonomy node stays literal-only.
    """
    literal = pipe.normalize(query)
    if not literal:
        raise QueryError(f"query {query!r} has no content terms")
    literal_type = MatchType.EXACT1 if len(literal) == 1 else MatchType.EXACT2
    terms: dict[Term, MatchType] = {literal: literal_type}

    index_kind: IndexKind | None = None
    node_id: str | None = None
    for kind in IndexKind:
        tax = taxonomies.get(kind)
        if tax is None:
            continue
        hit = tax.term_index.get(literal)
        if hit is None:
            continue
        index_kind, node_id = kind, hit
        for did in tax.descendants(hit, depth):
            terms.setdefault(pipe.normalize(tax.node(did).name), MatchType.CHILD)
        for aid in tax.ancestors(hit, depth):
            terms.setdefault(pipe.normalize(tax.node(aid).name), MatchType.PARENT)
        break
    return ExpandedQuery(
        query=query,
        literal=literal,
        literal_type=literal_type,
        terms=terms,
        index_kind=index_kind,
        node_id=node_id,
    )
