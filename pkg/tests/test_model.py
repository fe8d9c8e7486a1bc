"""Data model: validation, flattening, cardinality."""

import pytest
from conftest import doc, ent, load_corpus
from hypothesis import given
from hypothesis import strategies as st

from anascore.model import (
    CyclicSetError,
    DocumentSet,
    Entity,
    MentionSpan,
    cardinality,
    flatten,
    validate,
)
from anascore.oracle import RandomInstanceSpec, generate_instance


def rules(docset):
    return {v.rule for v in validate(docset)}


class TestValidate:
    def test_valid_fixture_has_no_violations(self):
        for document in load_corpus("example_key.json").documents:
            assert validate(document) == []

    def test_empty_entity(self):
        assert "empty entity" in rules(doc([ent("e1", [])]))

    def test_invalid_span(self):
        bad = Entity("e1", frozenset({MentionSpan("story", 3, 3)}))
        assert "invalid span" in rules(doc([bad]))

    def test_foreign_mention(self):
        bad = Entity("e1", frozenset({MentionSpan("other", 0, 1)}))
        assert "foreign mention" in rules(doc([bad]))

    def test_repeated_mention_across_entities(self):
        violations = rules(doc([ent("e1", [0, 1]), ent("e2", [1, 2])]))
        assert "repeated mention" in violations

    def test_undersized_set(self):
        d = doc([ent("e1", [0]), ent("e2", [1], elements=["e1"])])
        assert "undersized set" in rules(d)

    def test_duplicate_elements_count_once_for_size(self):
        d = doc([ent("e1", [0]), ent("e2", [1], elements=["e1", "e1"])])
        assert "undersized set" in rules(d)

    def test_self_referential_set(self):
        d = doc([ent("e1", [0]), ent("e2", [1], elements=["e1", "e2"])])
        assert "self-referential set" in rules(d)

    def test_dangling_element_reference(self):
        d = doc([ent("e1", [0]), ent("e2", [1], elements=["e1", "ghost"])])
        assert "dangling element reference" in rules(d)

    def test_cyclic_set_reference(self):
        d = doc(
            [
                ent("a", [0], elements=["b", "x"]),
                ent("b", [1], elements=["a", "x"]),
                ent("x", [2]),
            ]
        )
        assert "cyclic set reference" in rules(d)

    def test_violation_str_names_entity_and_rule(self):
        violation = validate(doc([ent("e1", [])]))[0]
        assert "e1" in str(violation) and "empty entity" in str(violation)


class TestFlatten:
    def test_atomic_docset_unchanged(self):
        d = doc([ent("e1", [0, 1]), ent("e2", [2])])
        assert flatten(d) == d

    def test_nested_set_expands_to_atomic_elements(self):
        raw = load_corpus("example_key.json").documents[0]
        flat = flatten(raw)
        # K6 references K3 (itself a set over K1, K2) and K4.
        assert flat.entities["K6"].set_elements == ("K1", "K2", "K4")
        # Expansion never touches mention chains or atomic entities.
        for eid, entity in flat.entities.items():
            assert entity.mentions == raw.entities[eid].mentions
        assert flat.entities["K7"].set_elements == ("K1", "K2", "K4", "K5")

    def test_expansion_dedupes_and_sorts(self):
        d = doc(
            [
                ent("a", [0]),
                ent("b", [1]),
                ent("inner", [2], elements=["b", "a"]),
                ent("outer", [3], elements=["inner", "a"]),
            ]
        )
        assert flatten(d).entities["outer"].set_elements == ("a", "b")

    def test_deeply_nested_chain(self):
        d = doc(
            [
                ent("a", [0]),
                ent("b", [1]),
                ent("s1", [2], elements=["a", "b"]),
                ent("s2", [3], elements=["s1", "a"]),
                ent("s3", [4], elements=["s2", "b"]),
            ]
        )
        flat = flatten(d)
        assert flat.entities["s3"].set_elements == ("a", "b")

    def test_cycle_raises(self):
        d = doc(
            [
                ent("a", [0], elements=["b", "x"]),
                ent("b", [1], elements=["a", "x"]),
                ent("x", [2]),
            ]
        )
        with pytest.raises(CyclicSetError):
            flatten(d)

    @given(seed=st.integers(min_value=0, max_value=10_000))
    def test_flatten_is_idempotent(self, seed):
        key, _ = generate_instance(
            RandomInstanceSpec(seed=seed, set_probability=0.6)
        )
        flat = flatten(key)
        assert flatten(flat) == flat
        atomic = {e.id for e in flat.entities.values() if not e.has_set}
        for entity in flat.entities.values():
            for eid in entity.set_elements or ():
                assert eid in atomic


class TestCardinality:
    def test_plain_chain(self):
        assert cardinality(ent("e1", [0, 1, 2])) == 3

    def test_set_counts_as_one_extra_element(self):
        assert cardinality(ent("e1", [0], elements=["a", "b"])) == 2

    def test_fixture_values(self, example_key):
        cards = {eid: e.cardinality for eid, e in example_key.entities.items()}
        assert cards == {
            "K1": 2, "K2": 3, "K3": 4, "K4": 3, "K5": 2, "K6": 2, "K7": 2,
        }


class TestDocumentSet:
    def test_mention_index_covers_all_mentions(self, example_key):
        index = example_key.mention_index()
        assert index[MentionSpan("story", 3, 4)] == "K2"
        assert len(index) == sum(
            len(e.mentions) for e in example_key.entities.values()
        )

    def test_set_owners_sorted_by_id(self, example_key):
        assert [e.id for e in example_key.set_owners()] == ["K3", "K6", "K7"]

    def test_elements_of(self, example_key):
        k3 = example_key.entities["K3"]
        assert [e.id for e in example_key.elements_of(k3)] == ["K1", "K2"]
        assert example_key.elements_of(example_key.entities["K1"]) == []
