"""The five coreference metrics, generalized to split-antecedent anaphors.

Every metric keeps its standard formulation for regular mentions and adds a
partial-credit term (``delta``) for accommodated sets: the element entities
of a key set and of the response set aligned with it are compared *with the
same metric*, treating the two element collections as a miniature
key/response document pair. Alignment between accommodated sets is a
maximum-F1 one-to-one matching computed per metric (``align_sets``).

All functions expect flattened, validated document sets.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .assignment import SetAlignment, km_assign, max_assignment
from .model import DocumentSet, Entity, MentionSpan


class Metric(str, enum.Enum):
    MUC = "muc"
    B3 = "b3"
    CEAF_M = "ceafm"
    CEAF_E = "ceafe"
    LEA = "lea"
    BLANC = "blanc"


ALL_METRICS = tuple(Metric)
CONLL_METRICS = (Metric.MUC, Metric.B3, Metric.CEAF_E)


@dataclass(frozen=True)
class LeaConfig:
    """LEA importance weighting; entities holding an accommodated set get
    importance ``beta * cardinality`` instead of plain cardinality."""

    beta: float = 1.0

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("beta must be non-negative")


@dataclass(frozen=True)
class MetricResult:
    recall_num: float
    recall_den: float
    precision_num: float
    precision_den: float

    @property
    def recall(self) -> float:
        return _ratio(self.recall_num, self.recall_den, self.precision_den)

    @property
    def precision(self) -> float:
        return _ratio(self.precision_num, self.precision_den, self.recall_den)

    @property
    def f1(self) -> float:
        return f_score(self.recall, self.precision)

    @property
    def empty(self) -> bool:
        """True when neither side has anything to score."""
        return self.recall_den == 0 and self.precision_den == 0


@dataclass(frozen=True)
class BlancResult:
    coref: MetricResult
    noncoref: MetricResult

    @property
    def blanc(self) -> float:
        # A component with no links on either side is vacuous; when exactly
        # one component is vacuous the other carries the whole score.
        parts = [r.f1 for r in (self.coref, self.noncoref) if not r.empty]
        if not parts:
            return 1.0
        return sum(parts) / len(parts)

    # Uniform surface with MetricResult for reporting.
    @property
    def recall(self) -> float:
        parts = [r.recall for r in (self.coref, self.noncoref) if not r.empty]
        return sum(parts) / len(parts) if parts else 1.0

    @property
    def precision(self) -> float:
        parts = [r.precision for r in (self.coref, self.noncoref) if not r.empty]
        return sum(parts) / len(parts) if parts else 1.0

    @property
    def f1(self) -> float:
        return self.blanc


def _ratio(num: float, den: float, other_den: float) -> float:
    """Empty-denominator convention: vacuous on both sides scores 1,
    vacuous on one side only scores 0."""
    if den > 0:
        return num / den
    return 0.0 if other_den > 0 else 1.0


def f_score(recall: float, precision: float) -> float:
    if recall + precision == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def conll_average(muc_f1: float, b3_f1: float, ceafe_f1: float) -> float:
    """Arithmetic mean of the MUC, B-cubed and entity-CEAF F1 values."""
    return (muc_f1 + b3_f1 + ceafe_f1) / 3.0


# ---------------------------------------------------------------------------
# Sub-metric evaluation: element collections as miniature document pairs
# ---------------------------------------------------------------------------

class Side(str, enum.Enum):
    RECALL = "recall"
    PRECISION = "precision"
    F1 = "f1"


def _mini_docset(elements: list[Entity], doc_id: str) -> DocumentSet:
    entities = {
        e.id: Entity(id=e.id, mentions=e.mentions) for e in elements
    }
    return DocumentSet(doc_id=doc_id, entities=entities)


def sub_metric_eval(
    key_elements: list[Entity],
    resp_elements: list[Entity],
    metric: Metric,
    side: Side = Side.F1,
) -> float:
    """Score the element entities of two accommodated sets against each
    other, treating them as a miniature key/response document pair.

    This single evaluator backs every partial-credit term and the set
    alignment. Elements must be atomic; their full mention chains are used.
    """
    key = _mini_docset(key_elements, "sub:key")
    resp = _mini_docset(resp_elements, "sub:resp")
    result = evaluate(metric, key, resp, SetAlignment())
    if metric is Metric.BLANC and side is Side.F1:
        return result.blanc
    return getattr(result, side.value)


def _blanc_sub_component(
    key_elements: list[Entity],
    resp_elements: list[Entity],
    coref: bool,
    side: Side,
) -> float:
    """One of the four BLANC link components for a pair of element
    collections (used as partial credit for links touching sets)."""
    key = _mini_docset(key_elements, "sub:key")
    resp = _mini_docset(resp_elements, "sub:resp")
    result = blanc(key, resp, SetAlignment())
    component = result.coref if coref else result.noncoref
    return getattr(component, side.value)


# ---------------------------------------------------------------------------
# Accommodated-set alignment
# ---------------------------------------------------------------------------

def align_sets(
    key: DocumentSet, response: DocumentSet, metric: Metric
) -> SetAlignment:
    """One-to-one alignment between key and response accommodated sets
    maximizing cumulative same-metric F1. Pairs scoring exactly 0 are left
    unaligned."""
    key_owners = key.set_owners()
    resp_owners = response.set_owners()
    if not key_owners or not resp_owners:
        return SetAlignment()
    matrix = np.zeros((len(key_owners), len(resp_owners)))
    for i, kent in enumerate(key_owners):
        for j, rent in enumerate(resp_owners):
            matrix[i, j] = sub_metric_eval(
                key.elements_of(kent), response.elements_of(rent), metric
            )
    pairs = km_assign(matrix)
    return SetAlignment(
        pairs={key_owners[i].id: resp_owners[j].id for i, j in sorted(pairs)}
    )


def _sorted_entities(docset: DocumentSet) -> list[Entity]:
    # Deterministic summation order: scores must not depend on the order
    # entities appear in the input file (float addition is not associative).
    return sorted(docset.entities.values(), key=lambda e: e.id)


def _aligned_partner(
    entity: Entity, other: DocumentSet, mapping: dict[str, str]
) -> Entity | None:
    """The entity in ``other`` owning the set aligned with ``entity``'s."""
    if not entity.has_set:
        return None
    partner_id = mapping.get(entity.id)
    return other.entities[partner_id] if partner_id is not None else None


# ---------------------------------------------------------------------------
# MUC
# ---------------------------------------------------------------------------

def partition_count(mentions: frozenset[MentionSpan], other: DocumentSet) -> int:
    """Number of cells the mention set is split into by the other side's
    entities: one cell per intersecting entity plus one singleton cell per
    mention the other side lacks."""
    index = other.mention_index()
    cells = {index[m] for m in mentions if m in index}
    missing = sum(1 for m in mentions if m not in index)
    return len(cells) + missing


def _muc_half(
    first: DocumentSet, second: DocumentSet, mapping: dict[str, str], side: Side
) -> tuple[float, float]:
    """One direction of generalized MUC. With ``first`` = key this is the
    recall fraction; swapping sides (and the alignment) gives precision."""
    num = 0.0
    den = 0.0
    for entity in _sorted_entities(first):
        card = entity.cardinality
        den += max(card - 1, 0)
        delta = 0.0
        if entity.has_set:
            partner = _aligned_partner(entity, second, mapping)
            # The recovered link needs a matching regular mention on the
            # response entity holding the aligned set; otherwise the link
            # cannot be anchored and the full missing-link penalty applies.
            if partner is not None and entity.mentions & partner.mentions:
                delta = 1.0 - _muc_set_score(first, entity, second, partner, side)
            else:
                delta = 1.0
        num += card - partition_count(entity.mentions, second) - delta
    return num, den


def _muc_set_score(
    first: DocumentSet,
    entity: Entity,
    second: DocumentSet,
    partner: Entity,
    side: Side,
) -> float:
    # The side's own component compares the element entities; for both
    # directions this reduces to recall of first-side elements in
    # second-side elements.
    if side is Side.RECALL:
        return sub_metric_eval(
            first.elements_of(entity), second.elements_of(partner),
            Metric.MUC, Side.RECALL,
        )
    return sub_metric_eval(
        second.elements_of(partner), first.elements_of(entity),
        Metric.MUC, Side.PRECISION,
    )


def muc(key: DocumentSet, response: DocumentSet, tau: SetAlignment) -> MetricResult:
    r_num, r_den = _muc_half(key, response, tau.pairs, Side.RECALL)
    p_num, p_den = _muc_half(response, key, tau.inverse, Side.PRECISION)
    return MetricResult(r_num, r_den, p_num, p_den)


def muc_delta_terms(
    key: DocumentSet, response: DocumentSet, tau: SetAlignment
) -> dict[str, float]:
    """Recall-side missing-link penalties per set-bearing key entity."""
    deltas: dict[str, float] = {}
    for entity in key.set_owners():
        partner = _aligned_partner(entity, response, tau.pairs)
        if partner is not None and entity.mentions & partner.mentions:
            deltas[entity.id] = 1.0 - sub_metric_eval(
                key.elements_of(entity), response.elements_of(partner),
                Metric.MUC, Side.RECALL,
            )
        else:
            deltas[entity.id] = 1.0
    return deltas


# ---------------------------------------------------------------------------
# B-cubed
# ---------------------------------------------------------------------------

def _pair_delta(
    first: DocumentSet,
    entity: Entity,
    second: DocumentSet,
    other: Entity,
    metric: Metric,
    mapping: dict[str, str],
    side: Side,
) -> float:
    """Partial credit between two entities' accommodated sets, nonzero only
    when the sets are aligned with each other."""
    if not (entity.has_set and other.has_set):
        return 0.0
    if mapping.get(entity.id) != other.id:
        return 0.0
    if side is Side.RECALL:
        return sub_metric_eval(
            first.elements_of(entity), second.elements_of(other), metric, Side.RECALL
        )
    return sub_metric_eval(
        second.elements_of(other), first.elements_of(entity), metric, Side.PRECISION
    )


def _b3_half(
    first: DocumentSet, second: DocumentSet, mapping: dict[str, str], side: Side
) -> tuple[float, float]:
    index = second.mention_index()
    num = 0.0
    den = 0.0
    for entity in _sorted_entities(first):
        card = entity.cardinality
        den += card
        if card == 0:
            continue
        overlaps: dict[str, int] = {}
        for m in entity.mentions:
            if m in index:
                overlaps[index[m]] = overlaps.get(index[m], 0) + 1
        partners = set(overlaps)
        if entity.has_set and entity.id in mapping:
            partners.add(mapping[entity.id])
        for other_id in sorted(partners):
            other = second.entities[other_id]
            n = overlaps.get(other_id, 0)
            delta = _pair_delta(first, entity, second, other, Metric.B3, mapping, side)
            num += (n + delta) ** 2 / card
    return num, den


def b3(key: DocumentSet, response: DocumentSet, tau: SetAlignment) -> MetricResult:
    r_num, r_den = _b3_half(key, response, tau.pairs, Side.RECALL)
    p_num, p_den = _b3_half(response, key, tau.inverse, Side.PRECISION)
    return MetricResult(r_num, r_den, p_num, p_den)


def pair_delta_terms(
    key: DocumentSet, response: DocumentSet, tau: SetAlignment, metric: Metric
) -> dict[tuple[str, str], float]:
    """Recall-side set-comparison credits for each aligned (key, response)
    entity pair; used by B-cubed, CEAF and LEA."""
    deltas: dict[tuple[str, str], float] = {}
    for kid, rid in tau.pairs.items():
        deltas[(kid, rid)] = sub_metric_eval(
            key.elements_of(key.entities[kid]),
            response.elements_of(response.entities[rid]),
            metric,
            Side.RECALL,
        )
    return deltas


# ---------------------------------------------------------------------------
# CEAF
# ---------------------------------------------------------------------------

def _ceaf_phi(kent: Entity, rent: Entity, delta: float, metric: Metric) -> float:
    overlap = len(kent.mentions & rent.mentions)
    if metric is Metric.CEAF_M:
        return overlap + delta
    if kent.cardinality + rent.cardinality == 0:
        return 0.0
    return 2.0 * (overlap + delta) / (kent.cardinality + rent.cardinality)


def _ceaf_self(entity: Entity, metric: Metric) -> float:
    # Self-similarity counts a held set as a perfectly resolved element.
    overlap = len(entity.mentions) + (1 if entity.has_set else 0)
    if metric is Metric.CEAF_M:
        return float(overlap)
    return 1.0 if overlap else 0.0


def ceaf(
    key: DocumentSet, response: DocumentSet, tau: SetAlignment, metric: Metric
) -> MetricResult:
    """Entity-alignment metric, mention-overlap or Dice flavored.

    One entity alignment is computed (with F1-backed set credit, matching
    the single-alignment structure of the standard metric); recall and
    precision then re-score the fixed pairs with their own component.
    """
    if metric not in (Metric.CEAF_M, Metric.CEAF_E):
        raise ValueError(f"not a CEAF variant: {metric}")
    kents = _sorted_entities(key)
    rents = _sorted_entities(response)
    r_den = sum(_ceaf_self(e, metric) for e in kents)
    p_den = sum(_ceaf_self(e, metric) for e in rents)
    r_num = 0.0
    p_num = 0.0
    if kents and rents:
        def set_delta(kent: Entity, rent: Entity, side: Side) -> float:
            if not (kent.has_set and tau.pairs.get(kent.id) == rent.id):
                return 0.0
            return sub_metric_eval(
                key.elements_of(kent), response.elements_of(rent), metric, side
            )

        align_matrix = np.zeros((len(kents), len(rents)))
        for i, kent in enumerate(kents):
            for j, rent in enumerate(rents):
                align_matrix[i, j] = _ceaf_phi(
                    kent, rent, set_delta(kent, rent, Side.F1), metric
                )
        for i, j in max_assignment(align_matrix):
            kent, rent = kents[i], rents[j]
            r_num += _ceaf_phi(kent, rent, set_delta(kent, rent, Side.RECALL), metric)
            p_num += _ceaf_phi(
                kent, rent, set_delta(kent, rent, Side.PRECISION), metric
            )
    return MetricResult(r_num, r_den, p_num, p_den)


# ---------------------------------------------------------------------------
# LEA
# ---------------------------------------------------------------------------

def _lea_half(
    first: DocumentSet,
    second: DocumentSet,
    mapping: dict[str, str],
    side: Side,
    beta: float,
) -> tuple[float, float]:
    index = second.mention_index()
    num = 0.0
    den = 0.0
    for entity in _sorted_entities(first):
        card = entity.cardinality
        importance = (beta if entity.has_set else 1.0) * card
        den += importance
        if card == 0:
            continue
        if card == 1:
            # Singleton convention: a lone mention resolves correctly iff it
            # is also a singleton on the other side.
            mention = next(iter(entity.mentions))
            holder = index.get(mention)
            if holder is not None and second.entities[holder].cardinality == 1:
                num += importance
            continue
        total_links = card * (card - 1) / 2.0
        overlaps: dict[str, int] = {}
        for m in entity.mentions:
            if m in index:
                overlaps[index[m]] = overlaps.get(index[m], 0) + 1
        partners = set(overlaps)
        if entity.has_set and entity.id in mapping:
            partners.add(mapping[entity.id])
        common = 0.0
        for other_id in sorted(partners):
            other = second.entities[other_id]
            n = overlaps.get(other_id, 0)
            delta = _pair_delta(first, entity, second, other, Metric.LEA, mapping, side)
            # delta scales the n links that can pair a common mention with
            # the set; full credit makes them count like regular links,
            # giving C(n + 1, 2) in total.
            common += n * (n - 1) / 2.0 + delta * n
        num += importance * common / total_links
    return num, den


def lea(
    key: DocumentSet,
    response: DocumentSet,
    tau: SetAlignment,
    config: LeaConfig | None = None,
) -> MetricResult:
    config = config or LeaConfig()
    r_num, r_den = _lea_half(key, response, tau.pairs, Side.RECALL, config.beta)
    p_num, p_den = _lea_half(response, key, tau.inverse, Side.PRECISION, config.beta)
    return MetricResult(r_num, r_den, p_num, p_den)


# ---------------------------------------------------------------------------
# BLANC
# ---------------------------------------------------------------------------

# A node is either a regular mention or the synthetic node standing for an
# entity's accommodated set, tagged by owner id.
_SET = "set"


def _entity_nodes(entity: Entity):
    nodes = [("m", m) for m in sorted(entity.mentions)]
    if entity.has_set:
        nodes.append((_SET, entity.id))
    return nodes


def _link_sets(docset: DocumentSet):
    """Coreference links (within entities) and non-coreference links
    (across entities), as frozensets of nodes."""
    coref: set[frozenset] = set()
    noncoref: set[frozenset] = set()
    per_entity = [_entity_nodes(e) for e in docset.entities.values()]
    for nodes in per_entity:
        for a, b in itertools.combinations(nodes, 2):
            coref.add(frozenset((a, b)))
    for nodes_a, nodes_b in itertools.combinations(per_entity, 2):
        for a in nodes_a:
            for b in nodes_b:
                noncoref.add(frozenset((a, b)))
    return coref, noncoref


def _blanc_credit(
    first: DocumentSet,
    second: DocumentSet,
    link: frozenset,
    second_links: set[frozenset],
    mapping: dict[str, str],
    coref: bool,
    side: Side,
) -> float:
    """Credit a first-side link earns from its (unique) matching link on the
    other side: translate set nodes through the alignment and look the
    translated link up over there. ``first`` is the key for recall and the
    response for precision; the set sub-scores keep canonical key-first
    orientation either way."""
    translated = []
    set_pairs: list[tuple[str, str]] = []
    for kind, value in link:
        if kind == _SET:
            partner = mapping.get(value)
            if partner is None:
                return 0.0
            translated.append((_SET, partner))
            set_pairs.append((value, partner))
        else:
            translated.append((kind, value))
    if frozenset(translated) not in second_links:
        return 0.0
    credit = 1.0
    for own_id, partner_id in set_pairs:
        own = first.elements_of(first.entities[own_id])
        partner = second.elements_of(second.entities[partner_id])
        if side is Side.RECALL:
            credit *= _blanc_sub_component(own, partner, coref, side)
        else:
            credit *= _blanc_sub_component(partner, own, coref, side)
    return credit


def blanc(key: DocumentSet, response: DocumentSet, tau: SetAlignment) -> BlancResult:
    key_coref, key_noncoref = _link_sets(key)
    resp_coref, resp_noncoref = _link_sets(response)
    inverse = tau.inverse
    results = {}
    for name, k_links, r_links in (
        ("coref", key_coref, resp_coref),
        ("noncoref", key_noncoref, resp_noncoref),
    ):
        is_coref = name == "coref"
        # Sorted iteration keeps the summation order (and hence the exact
        # float result) independent of set iteration order.
        ordered = lambda links: sorted(links, key=lambda l: tuple(sorted(l)))
        r_num = sum(
            _blanc_credit(key, response, link, r_links, tau.pairs, is_coref, Side.RECALL)
            for link in ordered(k_links)
        )
        p_num = sum(
            _blanc_credit(
                response, key, link, k_links, inverse, is_coref, Side.PRECISION
            )
            for link in ordered(r_links)
        )
        results[name] = MetricResult(r_num, len(k_links), p_num, len(r_links))
    return BlancResult(coref=results["coref"], noncoref=results["noncoref"])


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def evaluate(
    metric: Metric,
    key: DocumentSet,
    response: DocumentSet,
    tau: SetAlignment,
    lea_config: LeaConfig | None = None,
) -> MetricResult | BlancResult:
    if metric is Metric.MUC:
        return muc(key, response, tau)
    if metric is Metric.B3:
        return b3(key, response, tau)
    if metric in (Metric.CEAF_M, Metric.CEAF_E):
        return ceaf(key, response, tau, metric)
    if metric is Metric.LEA:
        return lea(key, response, tau, lea_config)
    if metric is Metric.BLANC:
        return blanc(key, response, tau)
    raise ValueError(f"unknown metric: {metric}")


def evaluate_document(
    metric: Metric,
    key: DocumentSet,
    response: DocumentSet,
    lea_config: LeaConfig | None = None,
) -> MetricResult | BlancResult:
    """Align accommodated sets for this metric, then score."""
    tau = align_sets(key, response, metric)
    return evaluate(metric, key, response, tau, lea_config)


# ---------------------------------------------------------------------------
# Split-antecedent-only report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitOnlyScores:
    per_metric: dict[Metric, float]
    conll: float

    @property
    def has_splits(self) -> bool:
        return bool(self.per_metric)


def split_only_components(
    key: DocumentSet, response: DocumentSet, metric: Metric
) -> MetricResult | BlancResult:
    """Micro components over all accommodated-set pairs of one document:
    aligned pairs score element collections against each other, unaligned
    sets are paired with an empty collection."""
    tau = align_sets(key, response, metric)
    pairs: list[tuple[list[Entity], list[Entity]]] = []
    for kent in key.set_owners():
        rid = tau.get(kent.id)
        relems = (
            response.elements_of(response.entities[rid]) if rid is not None else []
        )
        pairs.append((key.elements_of(kent), relems))
    aligned_rids = set(tau.pairs.values())
    for rent in response.set_owners():
        if rent.id not in aligned_rids:
            pairs.append(([], response.elements_of(rent)))
    if metric is Metric.BLANC:
        comps = [
            blanc(_mini_docset(k, "sub:key"), _mini_docset(r, "sub:resp"), SetAlignment())
            for k, r in pairs
        ]
        return BlancResult(
            coref=sum_results([c.coref for c in comps]),
            noncoref=sum_results([c.noncoref for c in comps]),
        )
    results = [
        evaluate(
            metric,
            _mini_docset(k, "sub:key"),
            _mini_docset(r, "sub:resp"),
            SetAlignment(),
        )
        for k, r in pairs
    ]
    return sum_results(results)


def sum_results(results: list[MetricResult]) -> MetricResult:
    return MetricResult(
        recall_num=sum(r.recall_num for r in results),
        recall_den=sum(r.recall_den for r in results),
        precision_num=sum(r.precision_num for r in results),
        precision_den=sum(r.precision_den for r in results),
    )
