"""Coreference scoring toolkit with split-antecedent anaphora support."""

from .assignment import SetAlignment, km_assign
from .corpus import CorpusFile, CorpusParseError, parse_corpus, render_corpus
from .metrics import (
    ALL_METRICS,
    BlancResult,
    LeaConfig,
    Metric,
    MetricResult,
    align_sets,
    conll_average,
    evaluate,
    evaluate_document,
    sub_metric_eval,
)
from .model import (
    CyclicSetError,
    DocumentSet,
    Entity,
    MentionSpan,
    Violation,
    cardinality,
    flatten,
    validate,
)
from .scoring import ScoreReport, score_corpora, validate_corpus

__version__ = "0.1.0"

__all__ = [
    "ALL_METRICS",
    "BlancResult",
    "CorpusFile",
    "CorpusParseError",
    "CyclicSetError",
    "DocumentSet",
    "Entity",
    "LeaConfig",
    "MentionSpan",
    "Metric",
    "MetricResult",
    "ScoreReport",
    "SetAlignment",
    "Violation",
    "align_sets",
    "cardinality",
    "conll_average",
    "evaluate",
    "evaluate_document",
    "flatten",
    "km_assign",
    "parse_corpus",
    "render_corpus",
    "score_corpora",
    "sub_metric_eval",
    "validate",
    "validate_corpus",
]
