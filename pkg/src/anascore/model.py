"""Data model: mention spans, entities, document sets.

An entity is a coreference chain of mentions, optionally carrying an
accommodated set: the collection of other entities that jointly serve as
antecedent of a split-antecedent anaphor ("John met Mary ... [they]").
Accommodated sets may initially reference entities that themselves carry
accommodated sets; ``flatten`` rewrites them so every element is atomic.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True, order=True)
class MentionSpan:
    """A token-anchored mention. ``start`` inclusive, ``end`` exclusive.

    Two mentions in different documents (or with different boundaries) are
    never considered the same mention; equality is exact equality of
    (doc_id, start, end).
    """

    doc_id: str
    start: int
    end: int


@dataclass(frozen=True)
class Entity:
    """A coreference chain plus an optional accommodated-set component.

    ``mentions`` holds the regular mentions (single-antecedent references).
    ``set_elements`` lists the ids of the element entities of the
    accommodated set, or is None for atomic entities.
    """

    id: str
    mentions: frozenset[MentionSpan]
    set_elements: tuple[str, ...] | None = None

    @property
    def has_set(self) -> bool:
        return self.set_elements is not None

    @property
    def cardinality(self) -> int:
        """Chain length; an accommodated set counts as one extra element."""
        return len(self.mentions) + (1 if self.set_elements is not None else 0)


@dataclass(frozen=True)
class DocumentSet:
    """All entities of one side (key or response) for one document."""

    doc_id: str
    entities: dict[str, Entity] = field(default_factory=dict)

    @classmethod
    def from_entities(cls, doc_id: str, entities: list[Entity]) -> "DocumentSet":
        return cls(doc_id=doc_id, entities={e.id: e for e in entities})

    def mention_index(self) -> dict[MentionSpan, str]:
        """Map from each regular mention to the id of the entity holding it.

        Assumes well-formedness (no mention repeated across entities).
        """
        index: dict[MentionSpan, str] = {}
        for entity in self.entities.values():
            for mention in entity.mentions:
                index[mention] = entity.id
        return index

    def set_owners(self) -> list[Entity]:
        """Entities carrying an accommodated set, in id order."""
        return sorted(
            (e for e in self.entities.values() if e.has_set), key=lambda e: e.id
        )

    def elements_of(self, entity: Entity) -> list[Entity]:
        """The element entities of ``entity``'s accommodated set."""
        if entity.set_elements is None:
            return []
        return [self.entities[eid] for eid in entity.set_elements]


class CyclicSetError(ValueError):
    """Raised when accommodated-set references form a cycle."""

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("cyclic accommodated-set reference: " + " -> ".join(cycle))


@dataclass(frozen=True)
class Violation:
    entity_id: str
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.entity_id}] {self.rule}: {self.detail}"


def validate(docset: DocumentSet) -> list[Violation]:
    """Check well-formedness; returns an empty list iff the docset is valid.

    Callers decide whether violations are fatal (strict mode) or warnings.
    """
    violations: list[Violation] = []
    seen_mentions: dict[MentionSpan, str] = {}
    for entity in docset.entities.values():
        if not entity.mentions:
            violations.append(
                Violation(entity.id, "empty entity", "entity has no mentions")
            )
        for mention in sorted(entity.mentions):
            if mention.start >= mention.end:
                violations.append(
                    Violation(
                        entity.id,
                        "invalid span",
                        f"start {mention.start} must precede end {mention.end}",
                    )
                )
            if mention.doc_id != docset.doc_id:
                violations.append(
                    Violation(
                        entity.id,
                        "foreign mention",
                        f"mention belongs to document {mention.doc_id!r}",
                    )
                )
            holder = seen_mentions.setdefault(mention, entity.id)
            if holder != entity.id:
                violations.append(
                    Violation(
                        entity.id,
                        "repeated mention",
                        f"({mention.start},{mention.end}) already in entity {holder!r}",
                    )
                )
        if entity.set_elements is None:
            continue
        elements = entity.set_elements
        if len(set(elements)) < 2:
            violations.append(
                Violation(
                    entity.id,
                    "undersized set",
                    "an accommodated set needs at least 2 distinct elements",
                )
            )
        if entity.id in elements:
            violations.append(
                Violation(entity.id, "self-referential set", "set contains its owner")
            )
        for eid in elements:
            if eid not in docset.entities:
                violations.append(
                    Violation(
                        entity.id,
                        "dangling element reference",
                        f"unknown entity id {eid!r}",
                    )
                )
    try:
        _check_acyclic(docset)
    except CyclicSetError as err:
        violations.append(
            Violation(err.cycle[0], "cyclic set reference", str(err))
        )
    return violations


def _check_acyclic(docset: DocumentSet) -> None:
    state: dict[str, int] = {}  # 1 = on stack, 2 = done

    def visit(eid: str, stack: list[str]) -> None:
        if state.get(eid) == 2:
            return
        if state.get(eid) == 1:
            cycle = stack[stack.index(eid):] + [eid]
            raise CyclicSetError(cycle)
        state[eid] = 1
        stack.append(eid)
        entity = docset.entities.get(eid)
        if entity is not None and entity.set_elements:
            for child in entity.set_elements:
                visit(child, stack)
        stack.pop()
        state[eid] = 2

    for eid in docset.entities:
        visit(eid, [])


def flatten(docset: DocumentSet) -> DocumentSet:
    """Expand nested accommodated sets so all elements are atomic.

    Element ids pointing at set-bearing entities are recursively replaced by
    those entities' own elements. Duplicates introduced by the expansion are
    removed and the result is sorted by id for determinism. Mention sets are
    never touched. Raises CyclicSetError on cyclic references.
    """
    _check_acyclic(docset)

    cache: dict[str, tuple[str, ...]] = {}

    def atomic_elements(eid: str) -> tuple[str, ...]:
        if eid in cache:
            return cache[eid]
        entity = docset.entities.get(eid)
        if entity is None or not entity.set_elements:
            result = (eid,)
        else:
            expanded: list[str] = []
            for child in entity.set_elements:
                expanded.extend(atomic_elements(child))
            result = tuple(sorted(set(expanded)))
        cache[eid] = result
        return result

    entities: dict[str, Entity] = {}
    for entity in docset.entities.values():
        if entity.set_elements:
            flat: list[str] = []
            for child in entity.set_elements:
                flat.extend(atomic_elements(child))
            entity = replace(entity, set_elements=tuple(sorted(set(flat))))
        entities[entity.id] = entity
    return DocumentSet(doc_id=docset.doc_id, entities=entities)


def cardinality(entity: Entity) -> int:
    """Generalized chain length of an entity from a flattened docset."""
    return entity.cardinality
