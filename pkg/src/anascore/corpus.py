"""JSON interchange format for key/response corpora.

One JSON document per file::

    {"format_version": "1.0",
     "documents": [
       {"doc_id": "d1",
        "entities": [
          {"id": "e1",
           "mentions": [{"start": 0, "end": 1}],
           "set_elements": ["e2", "e3"]}]}]}

Spans are token-indexed, end-exclusive. ``set_elements`` is optional and
names the element entities of an accommodated set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .model import DocumentSet, Entity, MentionSpan

FORMAT_VERSION = "1.0"


class CorpusParseError(ValueError):
    """Structurally invalid corpus file."""


@dataclass(frozen=True)
class CorpusFile:
    format_version: str
    documents: list[DocumentSet]

    def by_doc_id(self) -> dict[str, DocumentSet]:
        return {d.doc_id: d for d in self.documents}


def parse_corpus(data: bytes | str) -> CorpusFile:
    """Parse a corpus file; only structural checks happen here, model-level
    validation is the caller's job (see model.validate)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as err:
        raise CorpusParseError(
            f"malformed JSON at line {err.lineno}, column {err.colno}: {err.msg}"
        ) from None
    if not isinstance(raw, dict):
        raise CorpusParseError("top level must be an object")
    version = raw.get("format_version")
    if version != FORMAT_VERSION:
        raise CorpusParseError(
            f"unknown format_version {version!r} (expected {FORMAT_VERSION!r})"
        )
    documents_raw = raw.get("documents")
    if not isinstance(documents_raw, list):
        raise CorpusParseError('"documents" must be a list')
    documents = []
    seen_ids: set[str] = set()
    for pos, doc_raw in enumerate(documents_raw):
        doc = _parse_document(doc_raw, pos)
        if doc.doc_id in seen_ids:
            raise CorpusParseError(f"duplicate doc_id {doc.doc_id!r}")
        seen_ids.add(doc.doc_id)
        documents.append(doc)
    return CorpusFile(format_version=version, documents=documents)


def _parse_document(raw, pos: int) -> DocumentSet:
    where = f"documents[{pos}]"
    if not isinstance(raw, dict):
        raise CorpusParseError(f"{where} must be an object")
    doc_id = raw.get("doc_id")
    if not isinstance(doc_id, str) or not doc_id:
        raise CorpusParseError(f"{where}.doc_id must be a non-empty string")
    entities_raw = raw.get("entities")
    if not isinstance(entities_raw, list):
        raise CorpusParseError(f"{where}.entities must be a list")
    entities: list[Entity] = []
    seen: set[str] = set()
    for epos, ent_raw in enumerate(entities_raw):
        ewhere = f"{where}.entities[{epos}]"
        if not isinstance(ent_raw, dict):
            raise CorpusParseError(f"{ewhere} must be an object")
        eid = ent_raw.get("id")
        if not isinstance(eid, str) or not eid:
            raise CorpusParseError(f"{ewhere}.id must be a non-empty string")
        if eid in seen:
            raise CorpusParseError(f"{ewhere}: duplicate entity id {eid!r}")
        seen.add(eid)
        mentions_raw = ent_raw.get("mentions")
        if not isinstance(mentions_raw, list):
            raise CorpusParseError(f"{ewhere}.mentions must be a list")
        mentions = []
        for mpos, m in enumerate(mentions_raw):
            if (
                not isinstance(m, dict)
                or not isinstance(m.get("start"), int)
                or not isinstance(m.get("end"), int)
                or isinstance(m.get("start"), bool)
                or isinstance(m.get("end"), bool)
            ):
                raise CorpusParseError(
                    f"{ewhere}.mentions[{mpos}] must have integer start/end"
                )
            mentions.append(MentionSpan(doc_id=doc_id, start=m["start"], end=m["end"]))
        set_elements = ent_raw.get("set_elements")
        if set_elements is not None:
            if not isinstance(set_elements, list) or not all(
                isinstance(x, str) for x in set_elements
            ):
                raise CorpusParseError(
                    f"{ewhere}.set_elements must be a list of entity ids"
                )
            set_elements = tuple(set_elements)
        entities.append(
            Entity(id=eid, mentions=frozenset(mentions), set_elements=set_elements)
        )
    return DocumentSet.from_entities(doc_id, entities)


def render_corpus(corpus: CorpusFile) -> bytes:
    """Serialize back to the interchange format (lossless round-trip)."""
    payload = {
        "format_version": corpus.format_version,
        "documents": [
            {
                "doc_id": doc.doc_id,
                "entities": [
                    _entity_payload(entity) for entity in doc.entities.values()
                ],
            }
            for doc in corpus.documents
        ],
    }
    return (json.dumps(payload, indent=2, sort_keys=False) + "\n").encode("utf-8")


def _entity_payload(entity: Entity) -> dict:
    payload = {
        "id": entity.id,
        "mentions": [
            {"start": m.start, "end": m.end} for m in sorted(entity.mentions)
        ],
    }
    if entity.set_elements is not None:
        payload["set_elements"] = list(entity.set_elements)
    return payload
