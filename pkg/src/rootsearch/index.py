"""Inverted index over single-word documents, in two indexation modes.

SIMPLE indexes each document under exactly one key: the word it contains.
ADVANCED indexes each document under every vocabulary word that shares the
document word's root, so an exact lookup of any root-mate retrieves the
whole root group. Keys are normalized words in both modes; lookups never
expand anything themselves.
"""
from __future__ import annotations

import pickle
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable

from .corpus import Document
from .errors import UnknownRoot
from .morphology import RootLexicon

_SNAPSHOT_MAGIC = "rootsearch-index"
_SNAPSHOT_VERSION = 1


class IndexMode(Enum):
    SIMPLE = "simple"
    ADVANCED = "advanced"


@dataclass(eq=False)
class InvertedIndex:
    """Keyword -> doc_id postings, plus the root groups the build used."""

    mode: IndexMode
    entries: dict[str, set[str]]
    root_groups: dict[str, frozenset[str]]
    doc_count: int

    def lookup(self, key: str) -> list[str]:
        """Exact-key postings, sorted by doc_id; absent keys yield []."""
        return sorted(self.entries.get(key, ()))

    def __len__(self) -> int:
        return len(self.entries)


def build_index(
    docs: Iterable[Document], mode: IndexMode, lexicon: RootLexicon
) -> InvertedIndex:
    """Build an index over ``docs`` in the given mode.

    Raises:
        UnknownRoot: in ADVANCED mode, a document word is not in the lexicon.
    """
    docs = sorted(docs, key=lambda d: d.doc_id)
    entries: dict[str, set[str]] = {}
    root_groups: dict[str, frozenset[str]] = {}

    if mode is IndexMode.SIMPLE:
        for doc in docs:
            entries.setdefault(doc.word, set()).add(doc.doc_id)
            root = lexicon.root_of(doc.word)
            if root is not None and root not in root_groups:
                root_groups[root] = lexicon.words_of(root)
        return InvertedIndex(mode, entries, root_groups, len(docs))

    by_root: dict[str, set[str]] = {}
    for doc in docs:
        root = lexicon.root_of(doc.word)
        if root is None:
            raise UnknownRoot(f"document word {doc.word!r} not in lexicon")
        by_root.setdefault(root, set()).add(doc.doc_id)
    for root in sorted(by_root):
        ids = by_root[root]
        root_groups[root] = lexicon.words_of(root)
        for word in sorted(root_groups[root]):
            # One shared posting set per root: every root-mate key retrieves
            # the same documents, and the index is immutable once built.
            existing = entries.get(word)
            if existing is None:
                entries[word] = ids
            else:
                existing.update(ids)
    return InvertedIndex(mode, entries, root_groups, len(docs))


def save_index(index: InvertedIndex, path: str | Path) -> None:
    """Write a snapshot (convenience only; rebuilding is cheap)."""
    payload = {
        "format": _SNAPSHOT_MAGIC,
        "version": _SNAPSHOT_VERSION,
        "mode": index.mode.value,
        "entries": {key: sorted(ids) for key, ids in sorted(index.entries.items())},
        "root_groups": {
            root: sorted(words) for root, words in sorted(index.root_groups.items())
        },
        "doc_count": index.doc_count,
    }
    Path(path).write_bytes(pickle.dumps(payload, protocol=4))


def load_index(path: str | Path) -> InvertedIndex:
    payload = pickle.loads(Path(path).read_bytes())
    if payload.get("format") != _SNAPSHOT_MAGIC or payload.get("version") != _SNAPSHOT_VERSION:
        raise ValueError(f"not a rootsearch index snapshot: {path}")
    return InvertedIndex(
        mode=IndexMode(payload["mode"]),
        entries={key: set(ids) for key, ids in payload["entries"].items()},
        root_groups={
            root: frozenset(words) for root, words in payload["root_groups"].items()
        },
        doc_count=payload["doc_count"],
    )
