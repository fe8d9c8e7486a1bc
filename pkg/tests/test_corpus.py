"""Interchange format: parsing, error positions, round-trips."""

import json

import pytest
from conftest import load_corpus

from anascore.corpus import CorpusParseError, parse_corpus, render_corpus
from anascore.model import MentionSpan


def wrap(documents):
    return json.dumps({"format_version": "1.0", "documents": documents})


class TestParse:
    def test_fixture_parses(self):
        corpus = load_corpus("example_key.json")
        assert corpus.format_version == "1.0"
        assert [d.doc_id for d in corpus.documents] == ["story"]
        entity = corpus.documents[0].entities["K3"]
        assert MentionSpan("story", 6, 7) in entity.mentions
        assert entity.set_elements == ("K1", "K2")

    def test_accepts_bytes_and_str(self):
        payload = wrap([])
        assert parse_corpus(payload) == parse_corpus(payload.encode("utf-8"))

    def test_malformed_json_reports_position(self):
        with pytest.raises(CorpusParseError, match=r"line 1, column"):
            parse_corpus("{not json")

    def test_top_level_must_be_object(self):
        with pytest.raises(CorpusParseError, match="top level"):
            parse_corpus("[]")

    def test_unknown_format_version(self):
        data = json.dumps({"format_version": "2.0", "documents": []})
        with pytest.raises(CorpusParseError, match="format_version"):
            parse_corpus(data)

    def test_missing_format_version(self):
        with pytest.raises(CorpusParseError, match="format_version"):
            parse_corpus(json.dumps({"documents": []}))

    def test_duplicate_doc_id(self):
        document = {"doc_id": "d", "entities": []}
        with pytest.raises(CorpusParseError, match="duplicate doc_id"):
            parse_corpus(wrap([document, document]))

    def test_duplicate_entity_id_reports_path(self):
        entities = [
            {"id": "e1", "mentions": [{"start": 0, "end": 1}]},
            {"id": "e1", "mentions": [{"start": 1, "end": 2}]},
        ]
        with pytest.raises(
            CorpusParseError, match=r"documents\[0\].entities\[1\]"
        ):
            parse_corpus(wrap([{"doc_id": "d", "entities": entities}]))

    def test_non_integer_span(self):
        entities = [{"id": "e1", "mentions": [{"start": "0", "end": 1}]}]
        with pytest.raises(CorpusParseError, match=r"mentions\[0\]"):
            parse_corpus(wrap([{"doc_id": "d", "entities": entities}]))

    def test_boolean_span_rejected(self):
        entities = [{"id": "e1", "mentions": [{"start": True, "end": 1}]}]
        with pytest.raises(CorpusParseError, match=r"mentions\[0\]"):
            parse_corpus(wrap([{"doc_id": "d", "entities": entities}]))

    def test_set_elements_must_be_strings(self):
        entities = [
            {"id": "e1", "mentions": [{"start": 0, "end": 1}]},
            {"id": "e2", "mentions": [{"start": 1, "end": 2}],
             "set_elements": [1, 2]},
        ]
        with pytest.raises(CorpusParseError, match="set_elements"):
            parse_corpus(wrap([{"doc_id": "d", "entities": entities}]))

    def test_empty_doc_id_rejected(self):
        with pytest.raises(CorpusParseError, match="doc_id"):
            parse_corpus(wrap([{"doc_id": "", "entities": []}]))


class TestRoundTrip:
    @pytest.mark.parametrize(
        "name",
        ["example_key.json"] + [f"example_system_{s}.json" for s in "abcd"],
    )
    def test_render_parse_is_lossless(self, name):
        corpus = load_corpus(name)
        assert parse_corpus(render_corpus(corpus)) == corpus

    def test_render_is_deterministic(self):
        corpus = load_corpus("example_key.json")
        assert render_corpus(corpus) == render_corpus(corpus)

    def test_set_elements_order_preserved(self):
        entities = [
            {"id": "b", "mentions": [{"start": 0, "end": 1}]},
            {"id": "a", "mentions": [{"start": 1, "end": 2}]},
            {"id": "s", "mentions": [{"start": 2, "end": 3}],
             "set_elements": ["b", "a"]},
        ]
        corpus = parse_corpus(wrap([{"doc_id": "d", "entities": entities}]))
        again = parse_corpus(render_corpus(corpus))
        assert again.documents[0].entities["s"].set_elements == ("b", "a")
