"""Independent reference implementations used by the test suite.

Everything here is a deliberately naive transliteration of the standard
metric definitions (or exhaustive search), sharing no code with the
generalized metric implementations: agreement between the two paths is the
point. Only accommodated-set-free document sets are accepted.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .metrics import BlancResult, Metric, MetricResult
from .model import DocumentSet, Entity, MentionSpan


def _require_set_free(docset: DocumentSet) -> None:
    for entity in docset.entities.values():
        if entity.set_elements is not None:
            raise ValueError(
                f"oracle metrics only handle plain chains; {entity.id} has a set"
            )


def standard_metric(
    metric: Metric, key: DocumentSet, response: DocumentSet
) -> MetricResult | BlancResult:
    _require_set_free(key)
    _require_set_free(response)
    fn = {
        Metric.MUC: _muc,
        Metric.B3: _b3,
        Metric.CEAF_M: lambda k, r: _ceaf(k, r, mention_based=True),
        Metric.CEAF_E: lambda k, r: _ceaf(k, r, mention_based=False),
        Metric.LEA: _lea,
        Metric.BLANC: _blanc,
    }[metric]
    return fn(key, response)


def _chains(docset: DocumentSet) -> list[set[MentionSpan]]:
    return [set(e.mentions) for e in docset.entities.values()]


def _muc_half(first: list[set], second: list[set]) -> tuple[float, float]:
    second_mentions = set().union(*second) if second else set()
    num = 0.0
    den = 0.0
    for chain in first:
        cells = [chain & other for other in second if chain & other]
        cells += [{m} for m in chain - second_mentions]
        num += len(chain) - len(cells)
        den += len(chain) - 1
    return num, den


def _muc(key: DocumentSet, response: DocumentSet) -> MetricResult:
    r_num, r_den = _muc_half(_chains(key), _chains(response))
    p_num, p_den = _muc_half(_chains(response), _chains(key))
    return MetricResult(r_num, r_den, p_num, p_den)


def _b3_half(first: list[set], second: list[set]) -> tuple[float, float]:
    num = 0.0
    den = 0.0
    for chain in first:
        den += len(chain)
        for other in second:
            num += len(chain & other) ** 2 / len(chain)
    return num, den


def _b3(key: DocumentSet, response: DocumentSet) -> MetricResult:
    r_num, r_den = _b3_half(_chains(key), _chains(response))
    p_num, p_den = _b3_half(_chains(response), _chains(key))
    return MetricResult(r_num, r_den, p_num, p_den)


def _ceaf(key: DocumentSet, response: DocumentSet, mention_based: bool) -> MetricResult:
    kchains = _chains(key)
    rchains = _chains(response)

    def phi(a: set, b: set) -> float:
        if mention_based:
            return float(len(a & b))
        return 2.0 * len(a & b) / (len(a) + len(b))

    total = 0.0
    if kchains and rchains:
        sim = np.array([[phi(a, b) for b in rchains] for a in kchains])
        rows, cols = linear_sum_assignment(sim, maximize=True)
        total = float(sim[rows, cols].sum())
    r_den = sum(phi(a, a) for a in kchains)
    p_den = sum(phi(b, b) for b in rchains)
    return MetricResult(total, r_den, total, p_den)


def _lea_half(first: list[set], second: list[set]) -> tuple[float, float]:
    num = 0.0
    den = 0.0
    for chain in first:
        size = len(chain)
        den += size
        if size == 1:
            mention = next(iter(chain))
            # A singleton resolves correctly iff it is a singleton over there.
            if any(mention in other and len(other) == 1 for other in second):
                num += size
            continue
        links = size * (size - 1) / 2.0
        common = sum(
            len(chain & other) * (len(chain & other) - 1) / 2.0 for other in second
        )
        num += size * common / links
    return num, den


def _lea(key: DocumentSet, response: DocumentSet) -> MetricResult:
    r_num, r_den = _lea_half(_chains(key), _chains(response))
    p_num, p_den = _lea_half(_chains(response), _chains(key))
    return MetricResult(r_num, r_den, p_num, p_den)


def _blanc_links(chains: list[set]) -> tuple[set, set]:
    coref = set()
    for chain in chains:
        for a, b in itertools.combinations(sorted(chain), 2):
            coref.add(frozenset((a, b)))
    noncoref = set()
    for chain_a, chain_b in itertools.combinations(chains, 2):
        for a in chain_a:
            for b in chain_b:
                noncoref.add(frozenset((a, b)))
    return coref, noncoref


def _blanc(key: DocumentSet, response: DocumentSet) -> BlancResult:
    kc, kn = _blanc_links(_chains(key))
    rc, rn = _blanc_links(_chains(response))
    return BlancResult(
        coref=MetricResult(len(kc & rc), len(kc), len(kc & rc), len(rc)),
        noncoref=MetricResult(len(kn & rn), len(kn), len(kn & rn), len(rn)),
    )


# ---------------------------------------------------------------------------
# Brute-force assignment
# ---------------------------------------------------------------------------

def brute_force_assignment(matrix: np.ndarray) -> float:
    """Exhaustive-permutation maximum total of a score matrix."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return 0.0
    rows, cols = matrix.shape
    transposed = False
    if rows > cols:
        matrix = matrix.T
        rows, cols = cols, rows
        transposed = True
    if rows > 7:
        raise ValueError("brute force is limited to min dimension <= 7")
    best = 0.0
    for perm in itertools.permutations(range(cols), rows):
        best = max(best, sum(matrix[r, c] for r, c in enumerate(perm)))
    return best


# ---------------------------------------------------------------------------
# Random instance generation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RandomInstanceSpec:
    seed: int = 0
    min_entities: int = 2
    max_entities: int = 6
    min_mentions: int = 1
    max_mentions: int = 4
    set_probability: float = 0.0
    drop_mention_rate: float = 0.0
    move_mention_rate: float = 0.0
    drop_set_element_rate: float = 0.0
    spurious_entity_rate: float = 0.0

    def __post_init__(self):
        if self.min_entities < 1 or self.max_entities < self.min_entities:
            raise ValueError("bad entity count range")
        if self.min_mentions < 1 or self.max_mentions < self.min_mentions:
            raise ValueError("bad mentions-per-entity range")
        for rate in (
            self.set_probability,
            self.drop_mention_rate,
            self.move_mention_rate,
            self.drop_set_element_rate,
            self.spurious_entity_rate,
        ):
            if not 0.0 <= rate <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")


def generate_instance(spec: RandomInstanceSpec) -> tuple[DocumentSet, DocumentSet]:
    """Deterministic (key, response) pair; the response is the key warped by
    the configured perturbations. Both sides pass validation."""
    rng = random.Random(spec.seed)
    doc_id = f"rand-{spec.seed}"
    n = rng.randint(spec.min_entities, spec.max_entities)
    token = 0
    key_entities: list[Entity] = []
    atomic_ids: list[str] = []
    for i in range(n):
        eid = f"e{i + 1}"
        count = rng.randint(spec.min_mentions, spec.max_mentions)
        mentions = []
        for _ in range(count):
            mentions.append(MentionSpan(doc_id, token, token + 1))
            token += 1
        set_elements = None
        if len(atomic_ids) >= 2 and rng.random() < spec.set_probability:
            size = rng.randint(2, len(atomic_ids))
            set_elements = tuple(sorted(rng.sample(atomic_ids, size)))
        else:
            atomic_ids.append(eid)
        key_entities.append(
            Entity(id=eid, mentions=frozenset(mentions), set_elements=set_elements)
        )
    key = DocumentSet.from_entities(doc_id, key_entities)

    # Perturb a mutable copy of the key.
    chains: dict[str, set[MentionSpan]] = {
        e.id: set(e.mentions) for e in key_entities
    }
    sets: dict[str, list[str]] = {
        e.id: list(e.set_elements) for e in key_entities if e.set_elements
    }
    ids = [e.id for e in key_entities]
    for eid in ids:
        for mention in sorted(chains[eid]):
            if rng.random() < spec.drop_mention_rate:
                chains[eid].discard(mention)
            elif rng.random() < spec.move_mention_rate and len(ids) > 1:
                target = rng.choice([x for x in ids if x != eid])
                chains[eid].discard(mention)
                chains[target].add(mention)
    for eid in list(sets):
        kept = [x for x in sets[eid] if rng.random() >= spec.drop_set_element_rate]
        kept = [x for x in kept if chains.get(x)]  # element must survive
        if len(kept) >= 2:
            sets[eid] = kept
        else:
            del sets[eid]
    if rng.random() < spec.spurious_entity_rate:
        extra = frozenset(
            MentionSpan(doc_id, token + i, token + i + 1)
            for i in range(rng.randint(1, 3))
        )
        chains["spurious"] = set(extra)
    resp_entities = []
    for eid, mentions in chains.items():
        if not mentions:
            continue  # empty chains disappear; dependent sets were pruned
        resp_entities.append(
            Entity(
                id=eid,
                mentions=frozenset(mentions),
                set_elements=tuple(sets[eid]) if eid in sets else None,
            )
        )
    response = DocumentSet.from_entities(doc_id, resp_entities)
    return key, response
