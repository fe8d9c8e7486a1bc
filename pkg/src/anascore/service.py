"""HTTP scoring service: accepts key/response corpora, returns reports."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .corpus import FORMAT_VERSION, CorpusFile
from .metrics import ALL_METRICS, Metric
from .model import DocumentSet, Entity, MentionSpan
from .report import report_payload
from .scoring import score_corpora, validate_corpus


class MentionModel(BaseModel):
    start: int
    end: int


class EntityModel(BaseModel):
    id: str
    mentions: list[MentionModel]
    set_elements: list[str] | None = None


class DocumentModel(BaseModel):
    doc_id: str
    entities: list[EntityModel]


class CorpusModel(BaseModel):
    format_version: str = FORMAT_VERSION
    documents: list[DocumentModel]

    def to_corpus(self) -> CorpusFile:
        documents = []
        for doc in self.documents:
            entities = [
                Entity(
                    id=ent.id,
                    mentions=frozenset(
                        MentionSpan(doc.doc_id, m.start, m.end) for m in ent.mentions
                    ),
                    set_elements=(
                        tuple(ent.set_elements)
                        if ent.set_elements is not None
                        else None
                    ),
                )
                for ent in doc.entities
            ]
            documents.append(DocumentSet.from_entities(doc.doc_id, entities))
        return CorpusFile(format_version=self.format_version, documents=documents)


class ScoreRequest(BaseModel):
    key: CorpusModel
    response: CorpusModel
    metrics: list[str] = Field(default_factory=lambda: ["all"])
    lea_beta: float = 1.0
    split_only: bool = False
    only_docs_with_splits: bool = False
    strict: bool = False


class ValidateRequest(BaseModel):
    corpus: CorpusModel


def parse_metric_names(names: list[str]) -> tuple[Metric, ...]:
    if "all" in names:
        return ALL_METRICS
    try:
        selected = tuple(Metric(name) for name in names)
    except ValueError as err:
        raise ValueError(f"unknown metric in {names!r}") from err
    if not selected:
        raise ValueError("metrics must be non-empty")
    return selected


app = FastAPI(title="anascore", version="0.1.0")


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "format_version": FORMAT_VERSION}


@app.post("/validate")
def validate_endpoint(request: ValidateRequest) -> dict:
    violations = validate_corpus(request.corpus.to_corpus())
    return {"valid": not violations, "violations": [str(v) for v in violations]}


@app.post("/score")
def score_endpoint(request: ScoreRequest) -> dict:
    try:
        selected = parse_metric_names(request.metrics)
    except ValueError as err:
        raise HTTPException(status_code=422, detail=str(err))
    for side in (request.key, request.response):
        if side.format_version != FORMAT_VERSION:
            raise HTTPException(
                status_code=422,
                detail=f"unknown format_version {side.format_version!r}",
            )
    key = request.key.to_corpus()
    response = request.response.to_corpus()
    violations = [str(v) for v in validate_corpus(key) + validate_corpus(response)]
    if violations and request.strict:
        raise HTTPException(
            status_code=400, detail={"violations": violations}
        )
    report = score_corpora(
        key,
        response,
        selected=selected,
        lea_beta=request.lea_beta,
        include_split_only=request.split_only,
        only_docs_with_splits=request.only_docs_with_splits,
    )
    payload = report_payload(report)
    payload["violations"] = violations
    return payload
