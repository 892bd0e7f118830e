"""Atomic-fact factual inconsistency detection for abstractive summaries."""

from .config import PipelineConfig, load_config
from .coref import CorefClusterSet, Mention, MentionKind, ResolvedText, resolve
from .decompose import AtomicFact, build_prompt, decompose, parse_fact_list
from .filtering import filter_facts, partition_facts
from .nli import NliScorer, NliTriple
from .pipeline import FizzPipeline
from .scoring import (
    FactScore,
    FizzReport,
    ScoreMatrix,
    base_vector,
    expand_windows,
    fizz_score,
    granularity_expand,
    score_pairwise,
)
from .segmentation import SentenceList, count_tokens, split_sentences

__version__ = "0.1.0"

__all__ = [
    "AtomicFact",
    "CorefClusterSet",
    "FactScore",
    "FizzPipeline",
    "FizzReport",
    "Mention",
    "MentionKind",
    "NliScorer",
    "NliTriple",
    "PipelineConfig",
    "ResolvedText",
    "ScoreMatrix",
    "SentenceList",
    "base_vector",
    "build_prompt",
    "count_tokens",
    "decompose",
    "expand_windows",
    "filter_facts",
    "fizz_score",
    "granularity_expand",
    "load_config",
    "parse_fact_list",
    "partition_facts",
    "resolve",
    "score_pairwise",
    "split_sentences",
    "__version__",
]
