"""Corpus-level scoring: pairs documents by id, micro-aggregates metrics."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import metrics as m
from .corpus import CorpusFile
from .model import DocumentSet, flatten, validate, Violation


@dataclass(frozen=True)
class ScoreReport:
    metrics: dict[m.Metric, m.MetricResult | m.BlancResult]
    conll: float | None
    split_only: dict[m.Metric, m.MetricResult | m.BlancResult] | None
    split_conll: float | None
    key_has_splits: bool
    doc_ids: list[str]
    warnings: list[str] = field(default_factory=list)
    lea_beta: float = 1.0


def validate_corpus(corpus: CorpusFile) -> list[Violation]:
    violations: list[Violation] = []
    for doc in corpus.documents:
        violations.extend(validate(doc))
    return violations


def _doc_pairs(
    key: CorpusFile, response: CorpusFile, warnings: list[str]
) -> list[tuple[str, DocumentSet, DocumentSet]]:
    key_docs = key.by_doc_id()
    resp_docs = response.by_doc_id()
    pairs = []
    for doc_id in sorted(set(key_docs) | set(resp_docs)):
        if doc_id not in resp_docs:
            warnings.append(f"document {doc_id!r} missing from response; scored empty")
            resp = DocumentSet(doc_id=doc_id)
        else:
            resp = resp_docs[doc_id]
        if doc_id not in key_docs:
            warnings.append(f"document {doc_id!r} missing from key; scored empty")
            keyd = DocumentSet(doc_id=doc_id)
        else:
            keyd = key_docs[doc_id]
        pairs.append((doc_id, flatten(keyd), flatten(resp)))
    return pairs


def _has_splits(doc: DocumentSet) -> bool:
    return any(e.has_set for e in doc.entities.values())


def _aggregate(results):
    if isinstance(results[0], m.BlancResult):
        return m.BlancResult(
            coref=m.sum_results([r.coref for r in results]),
            noncoref=m.sum_results([r.noncoref for r in results]),
        )
    return m.sum_results(results)


def score_corpora(
    key: CorpusFile,
    response: CorpusFile,
    selected: tuple[m.Metric, ...] = m.ALL_METRICS,
    lea_beta: float = 1.0,
    include_split_only: bool = False,
    only_docs_with_splits: bool = False,
) -> ScoreReport:
    warnings: list[str] = []
    pairs = _doc_pairs(key, response, warnings)
    if only_docs_with_splits:
        pairs = [(d, k, r) for d, k, r in pairs if _has_splits(k)]
    lea_config = m.LeaConfig(beta=lea_beta)
    per_metric: dict[m.Metric, m.MetricResult | m.BlancResult] = {}
    for metric in selected:
        per_doc = [
            m.evaluate_document(metric, keyd, respd, lea_config)
            for _, keyd, respd in pairs
        ]
        per_metric[metric] = (
            _aggregate(per_doc)
            if per_doc
            else m.MetricResult(0.0, 0.0, 0.0, 0.0)
        )
    conll = None
    if all(metric in per_metric for metric in m.CONLL_METRICS):
        conll = m.conll_average(*(per_metric[x].f1 for x in m.CONLL_METRICS))
    split_only = None
    split_conll = None
    key_has_splits = any(_has_splits(keyd) for _, keyd, _ in pairs)
    if include_split_only:
        split_only = {}
        for metric in selected:
            per_doc = [
                m.split_only_components(keyd, respd, metric)
                for _, keyd, respd in pairs
            ]
            split_only[metric] = (
                _aggregate(per_doc)
                if per_doc
                else m.MetricResult(0.0, 0.0, 0.0, 0.0)
            )
        if all(metric in split_only for metric in m.CONLL_METRICS):
            split_conll = m.conll_average(
                *(split_only[x].f1 for x in m.CONLL_METRICS)
            )
    return ScoreReport(
        metrics=per_metric,
        conll=conll,
        split_only=split_only,
        split_conll=split_conll,
        key_has_splits=key_has_splits,
        doc_ids=[d for d, _, _ in pairs],
        warnings=warnings,
        lea_beta=lea_beta,
    )
