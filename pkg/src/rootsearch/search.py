"""Centralized search engines: exact surface match and root expansion.

``search_exact`` is the baseline: one exact lookup of the normalized query
word. ``search_expanded`` wraps the same unmodified lookup with a query
expansion layer that replaces the word by all of its root-mates in the
corpus vocabulary and unions the per-term results. A query whose root
cannot be resolved degrades to exact search instead of failing.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownRoot
from .index import InvertedIndex
from .morphology import RootLexicon, extract_root
from .normalize import normalize

BASELINE = "baseline"
EXPANDED = "expanded"
P2P_SIMPLE = "p2p-simple"
P2P_ADVANCED = "p2p-advanced"
ENGINES = (BASELINE, EXPANDED, P2P_SIMPLE, P2P_ADVANCED)


@dataclass(frozen=True)
class Query:
    query_id: str
    raw: str
    normalized: str

    @classmethod
    def parse(cls, query_id: str, raw: str) -> "Query":
        """Parse and normalize a single-word query.

        Raises:
            ValueError: empty input, multiple words, or non-Arabic text.
        """
        tokens = raw.split()
        if len(tokens) != 1:
            raise ValueError(f"queries are single words, got {raw!r}")
        return cls(query_id, raw, normalize(tokens[0]))


@dataclass(frozen=True)
class SearchResult:
    query_id: str
    engine: str
    found: tuple[str, ...]
    expanded_terms: tuple[str, ...] = ()
    degraded: bool = field(default=False, kw_only=True)


def search_exact(query: Query, index: InvertedIndex) -> SearchResult:
    """Exact lookup of the query word; no expansion."""
    return SearchResult(query.query_id, BASELINE, tuple(index.lookup(query.normalized)))


def expansion_terms(query: Query, lexicon: RootLexicon) -> tuple[list[str], bool]:
    """Expansion terms plus a degraded flag (True when no root resolves)."""
    try:
        root = extract_root(query.normalized, lexicon)
    except UnknownRoot:
        return [query.normalized], True
    return sorted(lexicon.words_of(root)), False


def expand_query(query: Query, lexicon: RootLexicon) -> list[str]:
    """All corpus-vocabulary words sharing the query's root, sorted.

    Falls back to ``[query.normalized]`` when no root resolves, so the
    caller degrades to exact search.
    """
    return expansion_terms(query, lexicon)[0]


def search_expanded(
    query: Query, index: InvertedIndex, lexicon: RootLexicon
) -> SearchResult:
    """Union of exact lookups over the expanded term set."""
    terms, degraded = expansion_terms(query, lexicon)
    found: set[str] = set()
    for term in terms:
        found.update(index.entries.get(term, ()))
    return SearchResult(
        query.query_id,
        EXPANDED,
        tuple(sorted(found)),
        tuple(terms),
        degraded=degraded,
    )
