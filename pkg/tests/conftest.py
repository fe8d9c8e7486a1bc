from __future__ import annotations

import json
from pathlib import Path

import pytest

from anascore.corpus import CorpusFile, parse_corpus
from anascore.model import DocumentSet, Entity, MentionSpan, flatten, validate

FIXTURES = Path(__file__).parent / "fixtures"


def ent(
    eid: str,
    tokens: list[int],
    elements: list[str] | None = None,
    doc_id: str = "story",
) -> Entity:
    """Entity whose mentions are the single-token spans at ``tokens``."""
    return Entity(
        id=eid,
        mentions=frozenset(MentionSpan(doc_id, t, t + 1) for t in tokens),
        set_elements=tuple(elements) if elements is not None else None,
    )


def doc(entities: list[Entity], doc_id: str = "story") -> DocumentSet:
    return DocumentSet.from_entities(doc_id, entities)


def load_corpus(name: str) -> CorpusFile:
    return parse_corpus((FIXTURES / name).read_bytes())


def load_document(name: str) -> DocumentSet:
    """Single-document fixture, validated and flattened."""
    corpus = load_corpus(name)
    assert len(corpus.documents) == 1
    doc = corpus.documents[0]
    assert not validate(doc)
    return flatten(doc)


def docset_from_dict(payload: dict) -> DocumentSet:
    wrapper = {"format_version": "1.0", "documents": [payload]}
    doc = parse_corpus(json.dumps(wrapper)).documents[0]
    assert not validate(doc), validate(doc)
    return flatten(doc)


@pytest.fixture(scope="session")
def example_key() -> DocumentSet:
    return load_document("example_key.json")


@pytest.fixture(scope="session")
def example_systems() -> dict[str, DocumentSet]:
    return {
        name: load_document(f"example_system_{name}.json") for name in "abcd"
    }
