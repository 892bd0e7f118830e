"""Quality metrics for generated atomic facts against human references.

Content similarity follows a best-match scheme: each generated fact takes
its maximum unigram-overlap score over the human facts, averaged per
summary and then over the dataset. The unigram scorer lower-cases,
whitespace-tokenizes, and clips counts (multiset intersection); no stemming
or stopword removal, so numbers are deterministic.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ContractViolation, DatasetError
from .segmentation import count_tokens

logger = logging.getLogger(__name__)

_METRIC_FIELDS = ("p", "r", "f1")


class Rouge1(NamedTuple):
    p: float
    r: float
    f1: float


@dataclass(frozen=True)
class FactSetPair:
    summary_id: str
    generated: tuple[str, ...]
    human: tuple[str, ...]


def rouge1(candidate: str, reference: str) -> Rouge1:
    """Unigram precision/recall/F1 with clipped counts."""
    cand = Counter(candidate.lower().split())
    ref = Counter(reference.lower().split())
    cand_total = sum(cand.values())
    ref_total = sum(ref.values())
    if cand_total == 0 or ref_total == 0:
        return Rouge1(0.0, 0.0, 0.0)
    overlap = sum((cand & ref).values())
    p = overlap / cand_total
    r = overlap / ref_total
    f1 = (2 * p * r / (p + r)) if (p + r) > 0 else 0.0
    return Rouge1(p, r, f1)


def content_similarity(pairs: list[FactSetPair], metric: str = "f1") -> float:
    """Dataset mean of per-summary mean best-match unigram scores."""
    if metric not in _METRIC_FIELDS:
        raise ContractViolation(f"metric must be one of {_METRIC_FIELDS}")
    if not pairs:
        raise ContractViolation("no fact-set pairs to compare")
    per_summary = []
    for pair in pairs:
        if not pair.human:
            raise ContractViolation(
                f"summary {pair.summary_id}: human fact set must be nonempty"
            )
        if not pair.generated:
            logger.warning(
                "summary %s has no generated facts; contributes 0", pair.summary_id
            )
            per_summary.append(0.0)
            continue
        best_scores = [
            max(getattr(rouge1(cand, ref), metric) for ref in pair.human)
            for cand in pair.generated
        ]
        per_summary.append(sum(best_scores) / len(best_scores))
    return sum(per_summary) / len(per_summary)


def fact_stats(fact_sets: list[list[str]]) -> tuple[float, float]:
    """(mean fact count, mean per-summary total token count)."""
    if not fact_sets:
        logger.warning("no summaries given; fact statistics are zero")
        return 0.0, 0.0
    counts = [len(facts) for facts in fact_sets]
    token_totals = [sum(count_tokens(fact) for fact in facts) for facts in fact_sets]
    return sum(counts) / len(counts), sum(token_totals) / len(token_totals)


def load_fact_pairs(path: str) -> list[FactSetPair]:
    """Read JSONL records of {"id", "generated": [...], "human": [...]}."""
    pairs: list[FactSetPair] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"line {line_no}: invalid JSON: {exc}") from exc
            for key in ("id", "generated", "human"):
                if key not in record:
                    raise DatasetError(f"line {line_no}: missing field {key!r}")
            pairs.append(
                FactSetPair(
                    summary_id=str(record["id"]),
                    generated=tuple(str(f) for f in record["generated"]),
                    human=tuple(str(f) for f in record["human"]),
                )
            )
    return pairs


def analyze_fact_pairs(pairs: list[FactSetPair]) -> dict:
    """The metric block emitted by the fact-analysis command."""
    avg_count, avg_tokens = fact_stats([list(p.generated) for p in pairs])
    return {
        "n_summaries": len(pairs),
        "content_similarity_p": content_similarity(pairs, metric="p"),
        "content_similarity_r": content_similarity(pairs, metric="r"),
        "content_similarity_f1": content_similarity(pairs, metric="f1"),
        "avg_fact_count": avg_count,
        "avg_token_length": avg_tokens,
    }
