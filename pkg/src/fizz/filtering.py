"""Drop atomic facts the summary itself does not entail.

LLM decomposition sometimes emits facts drawn from model knowledge instead
of the summary ("The mass is a noun."); any such fact would drag the final
minimum score down. A fact survives when at least one summary sentence,
used as the premise, yields an entailment-argmax triple for it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import AtomicFact
from .nli import NliScorer
from .segmentation import SentenceList


@dataclass(frozen=True)
class DroppedFact:
    """A filtered-out fact with its best showing, for the report."""

    fact: AtomicFact
    best_entailment: float
    top_class: str
    top_class_score: float


@dataclass(frozen=True)
class FilterResult:
    kept: tuple[AtomicFact, ...]
    dropped: tuple[DroppedFact, ...]


def partition_facts(
    summary: SentenceList, facts: list[AtomicFact], nli: NliScorer
) -> FilterResult:
    """Split facts into kept (summary-entailed) and dropped, preserving order."""
    kept: list[AtomicFact] = []
    dropped: list[DroppedFact] = []
    for fact in facts:
        triples = [nli.score(sentence.text, fact.text) for sentence in summary]
        if any(triple.entailment_argmax for triple in triples):
            kept.append(fact)
        else:
            best = max(triples, key=lambda t: t.e)
            dropped.append(
                DroppedFact(
                    fact=fact,
                    best_entailment=best.e,
                    top_class=best.argmax_class,
                    top_class_score=best.argmax_value,
                )
            )
    return FilterResult(kept=tuple(kept), dropped=tuple(dropped))


def filter_facts(
    summary: SentenceList, facts: list[AtomicFact], nli: NliScorer
) -> list[AtomicFact]:
    """The kept subsequence of `facts`; see `partition_facts` for diagnostics."""
    return list(partition_facts(summary, facts, nli).kept)
