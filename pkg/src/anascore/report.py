"""Report rendering: a plain-text table and a machine-readable JSON form.

The JSON form carries every numerator/denominator so downstream consumers
can audit (and re-derive) each ratio.
"""

from __future__ import annotations

import json

from .metrics import BlancResult, Metric, MetricResult
from .scoring import ScoreReport

_LABELS = {
    Metric.MUC: "MUC",
    Metric.B3: "B3",
    Metric.CEAF_M: "CEAF-M",
    Metric.CEAF_E: "CEAF-E",
    Metric.LEA: "LEA",
    Metric.BLANC: "BLANC",
}


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def render_text(report: ScoreReport) -> str:
    lines = []
    lines.append(f"documents scored: {len(report.doc_ids)}")
    for warning in report.warnings:
        lines.append(f"warning: {warning}")
    lines.append("")
    lines.append(f"{'metric':<8}{'R':>9}{'P':>9}{'F1':>9}")
    for metric, result in report.metrics.items():
        lines.append(
            f"{_LABELS[metric]:<8}"
            f"{_fmt(result.recall):>9}{_fmt(result.precision):>9}{_fmt(result.f1):>9}"
        )
    if report.conll is not None:
        lines.append(f"{'CoNLL':<8}{'':>9}{'':>9}{_fmt(report.conll):>9}")
    if report.lea_beta != 1.0 and Metric.LEA in report.metrics:
        lines.append(f"(LEA importance beta = {report.lea_beta:g})")
    if report.split_only is not None:
        lines.append("")
        lines.append("split-antecedent report")
        if not report.key_has_splits:
            lines.append("no split-antecedent anaphors in key")
        else:
            lines.append(f"{'metric':<8}{'F1':>9}")
            for metric, result in report.split_only.items():
                lines.append(f"{_LABELS[metric]:<8}{_fmt(result.f1):>9}")
            if report.split_conll is not None:
                lines.append(f"{'CoNLL':<8}{_fmt(report.split_conll):>9}")
    return "\n".join(lines) + "\n"


def _result_payload(result: MetricResult | BlancResult) -> dict:
    if isinstance(result, BlancResult):
        return {
            "coref": _result_payload(result.coref),
            "noncoref": _result_payload(result.noncoref),
            "recall": result.recall,
            "precision": result.precision,
            "f1": result.blanc,
        }
    return {
        "recall_num": result.recall_num,
        "recall_den": result.recall_den,
        "precision_num": result.precision_num,
        "precision_den": result.precision_den,
        "recall": result.recall,
        "precision": result.precision,
        "f1": result.f1,
    }


def report_payload(report: ScoreReport) -> dict:
    payload: dict = {
        "doc_ids": report.doc_ids,
        "warnings": report.warnings,
        "lea_beta": report.lea_beta,
        "metrics": {
            metric.value: _result_payload(result)
            for metric, result in report.metrics.items()
        },
        "conll": report.conll,
    }
    if report.split_only is not None:
        payload["split_only"] = {
            "key_has_splits": report.key_has_splits,
            "metrics": {
                metric.value: _result_payload(result)
                for metric, result in report.split_only.items()
            },
            "conll": report.split_conll,
        }
    return payload


def render_json(report: ScoreReport) -> str:
    return json.dumps(report_payload(report), indent=2, sort_keys=True) + "\n"
