"""Per-fact entailment scoring with adaptive granularity expansion.

Stage one scores every (document sentence, fact) pair and takes each fact's
column maximum of the entailment probability. When the triple behind that
maximum is not entailment-dominant, the fact likely needs multi-sentence
context: consecutive windows of up to `gran` sentences around the best row
are re-scored as joined premises, and the fact's final score is the maximum
of the original and the window scores. The pair's score is the minimum over
facts, so a single unsupported fact marks the whole summary.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

from .decompose import AtomicFact
from .errors import ContractViolation, EmptyFactSet
from .filtering import DroppedFact
from .nli import NliScorer, NliTriple
from .segmentation import SentenceList, count_tokens

WINDOW_JOIN = " "


@dataclass(frozen=True)
class ScoreMatrix:
    """Grid of triples: rows are document sentences, columns are facts."""

    triples: tuple[tuple[NliTriple, ...], ...]

    def __post_init__(self) -> None:
        if not self.triples or not self.triples[0]:
            raise ContractViolation("score matrix must be nonempty")
        widths = {len(row) for row in self.triples}
        if len(widths) != 1:
            raise ContractViolation("score matrix rows have uneven lengths")

    @property
    def num_sentences(self) -> int:
        return len(self.triples)

    @property
    def num_facts(self) -> int:
        return len(self.triples[0])


class BaseScore(NamedTuple):
    t: float
    m_idx: int
    needs_expansion: bool


@dataclass(frozen=True)
class FactScore:
    """Scoring record for one fact; `best_window` always contains `base_best_index`."""

    fact_index: int
    base_best_index: int
    base_score: float
    expanded: bool
    windows_tried: tuple[tuple[int, ...], ...]
    final_score: float
    best_window: tuple[int, ...]


def score_pairwise(
    doc: SentenceList, facts: list[AtomicFact], nli: NliScorer, max_workers: int = 1
) -> ScoreMatrix:
    """Score every document sentence against every fact."""
    if len(doc) == 0:
        raise ContractViolation("document has no sentences")
    if not facts:
        raise ContractViolation("no facts to score")
    pairs = [(sentence.text, fact.text) for sentence in doc for fact in facts]
    if max_workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            flat = list(pool.map(lambda pair: nli.score(*pair), pairs))
    else:
        flat = [nli.score(premise, hypothesis) for premise, hypothesis in pairs]
    width = len(facts)
    rows = tuple(
        tuple(flat[i * width : (i + 1) * width]) for i in range(len(doc))
    )
    return ScoreMatrix(triples=rows)


def base_vector(matrix: ScoreMatrix) -> list[BaseScore]:
    """Column maxima of entailment, with argmax row and the expansion trigger.

    Ties go to the smallest row index. Expansion triggers when the triple at
    the argmax row is not entailment-dominant.
    """
    result = []
    for k in range(matrix.num_facts):
        best_i = 0
        best_e = matrix.triples[0][k].e
        for i in range(1, matrix.num_sentences):
            e = matrix.triples[i][k].e
            if e > best_e:
                best_e, best_i = e, i
        triple = matrix.triples[best_i][k]
        result.append(BaseScore(t=best_e, m_idx=best_i, needs_expansion=not triple.entailment_argmax))
    return result


def expand_windows(num_sentences: int, m_idx: int, gran: int) -> list[list[int]]:
    """Consecutive index runs of length 2..gran containing `m_idx`.

    Ordered by length then start; the singleton [m_idx] is excluded because
    it was already scored.
    """
    if not 0 <= m_idx < num_sentences:
        raise ContractViolation(f"m_idx {m_idx} outside [0, {num_sentences})")
    if gran < 1:
        raise ContractViolation(f"gran must be >= 1, got {gran}")
    windows = []
    for length in range(2, gran + 1):
        for start in range(m_idx - length + 1, m_idx + 1):
            if start < 0 or start + length > num_sentences:
                continue
            windows.append(list(range(start, start + length)))
    return windows


def granularity_expand(
    doc: SentenceList,
    facts: list[AtomicFact],
    matrix: ScoreMatrix,
    gran: int,
    nli: NliScorer,
    max_workers: int = 1,
) -> list[FactScore]:
    """Re-score triggered facts against expanded windows; keep the best of all."""
    if matrix.num_sentences != len(doc) or matrix.num_facts != len(facts):
        raise ContractViolation("matrix dimensions do not match document/facts")
    bases = base_vector(matrix)

    def premise_for(window: list[int]) -> str:
        return WINDOW_JOIN.join(doc[i].text for i in window)

    def expand_one(k: int) -> FactScore:
        base = bases[k]
        if not base.needs_expansion:
            return FactScore(
                fact_index=k,
                base_best_index=base.m_idx,
                base_score=base.t,
                expanded=False,
                windows_tried=(),
                final_score=base.t,
                best_window=(base.m_idx,),
            )
        windows = expand_windows(len(doc), base.m_idx, gran)
        final = base.t
        best_window: tuple[int, ...] = (base.m_idx,)
        for window in windows:
            triple = nli.score(premise_for(window), facts[k].text)
            if triple.e > final:
                final = triple.e
                best_window = tuple(window)
        return FactScore(
            fact_index=k,
            base_best_index=base.m_idx,
            base_score=base.t,
            expanded=True,
            windows_tried=tuple(tuple(w) for w in windows),
            final_score=final,
            best_window=best_window,
        )

    indices = range(len(facts))
    if max_workers > 1 and len(facts) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(expand_one, indices))
    return [expand_one(k) for k in indices]


def fizz_score(fact_scores: list[FactScore]) -> float:
    """Minimum final score over facts."""
    if not fact_scores:
        raise EmptyFactSet("no facts left to aggregate")
    return min(fs.final_score for fs in fact_scores)


@dataclass(frozen=True)
class FizzReport:
    """Everything needed to explain one pair's score."""

    pair_id: str
    atomic_facts: tuple[AtomicFact, ...]
    facts: tuple[FactScore, ...]
    dropped_facts: tuple[DroppedFact, ...]
    fizz_score: float
    config: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.facts:
            raise ContractViolation("a report needs at least one scored fact")
        if len(self.atomic_facts) != len(self.facts):
            raise ContractViolation("fact texts and fact scores out of step")
        if self.fizz_score != min(fs.final_score for fs in self.facts):
            raise ContractViolation("fizz_score is not the minimum final score")

    def to_json_dict(self) -> dict:
        max_fact_tokens = int(self.config.get("max_fact_tokens", 60))
        return {
            "pair_id": self.pair_id,
            "fizz_score": self.fizz_score,
            "facts": [
                {
                    "fact_index": fs.fact_index,
                    "text": fact.text,
                    "source_sentence_index": fact.source_sentence_index,
                    "base_score": fs.base_score,
                    "base_best_index": fs.base_best_index,
                    "expanded": fs.expanded,
                    "windows_tried": [list(w) for w in fs.windows_tried],
                    "best_window": list(fs.best_window),
                    "final_score": fs.final_score,
                    "over_token_bound": count_tokens(fact.text) > max_fact_tokens,
                }
                for fact, fs in zip(self.atomic_facts, self.facts)
            ],
            "dropped_facts": [
                {
                    "text": d.fact.text,
                    "source_sentence_index": d.fact.source_sentence_index,
                    "best_entailment": d.best_entailment,
                    "top_class": d.top_class,
                    "top_class_score": d.top_class_score,
                }
                for d in self.dropped_facts
            ],
            "config": self.config,
        }
