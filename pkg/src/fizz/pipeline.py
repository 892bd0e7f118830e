"""End-to-end pair scoring: resolve, decompose, filter, score, expand, min."""

from __future__ import annotations

from .backends import (
    HttpCorefClient,
    HttpLlmClient,
    HttpNliBackend,
    ScriptedCorefClient,
    ScriptedLlmClient,
    ScriptedNliBackend,
)
from .config import PipelineConfig
from .coref import resolve
from .decompose import decompose
from .errors import ContractViolation, EmptyFactSet
from .filtering import partition_facts
from .nli import NliScorer
from .scoring import FizzReport, fizz_score, granularity_expand, score_pairwise
from .segmentation import split_sentences


def _build_llm(config: PipelineConfig):
    if config.llm_fixture:
        return ScriptedLlmClient.from_file(config.llm_fixture)
    return HttpLlmClient(
        url=config.llm_url, model=config.llm_model, auth_token=config.llm_auth_token
    )


def _build_nli_backend(config: PipelineConfig):
    if config.nli_fixture:
        return ScriptedNliBackend.from_file(config.nli_fixture)
    return HttpNliBackend(url=config.nli_url)


def _build_coref(config: PipelineConfig):
    if not (config.coref_document or config.coref_summary):
        return None
    if config.coref_fixture:
        return ScriptedCorefClient.from_file(config.coref_fixture)
    return HttpCorefClient(url=config.coref_url)


class FizzPipeline:
    """Holds the configured clients and scores (document, summary) pairs."""

    def __init__(self, config: PipelineConfig, nli: NliScorer | None = None):
        self.config = config.validate()
        self.llm = _build_llm(config)
        self.nli = nli or NliScorer(_build_nli_backend(config), cache_path=config.cache_path)
        self.coref = _build_coref(config)

    def _resolved(self, text: str, enabled: bool) -> str:
        if not enabled or self.coref is None:
            return text
        clusters = self.coref.clusters_for(text)
        return resolve(text, clusters).text

    def run(self, document: str, summary: str, pair_id: str) -> FizzReport:
        document = self._resolved(document, self.config.coref_document)
        summary = self._resolved(summary, self.config.coref_summary)

        summary_sentences = split_sentences(summary)
        if len(summary_sentences) == 0:
            raise ContractViolation(f"pair {pair_id}: summary has no sentences")
        facts = decompose(summary_sentences, self.llm, max_workers=self.config.llm_workers)
        partitioned = partition_facts(summary_sentences, facts, self.nli)
        if not partitioned.kept:
            raise EmptyFactSet(f"pair {pair_id}: every atomic fact was filtered out")

        document_sentences = split_sentences(document)
        if len(document_sentences) == 0:
            raise ContractViolation(f"pair {pair_id}: document has no sentences")
        kept = list(partitioned.kept)
        matrix = score_pairwise(
            document_sentences, kept, self.nli, max_workers=self.config.nli_workers
        )
        fact_scores = granularity_expand(
            document_sentences,
            kept,
            matrix,
            self.config.gran,
            self.nli,
            max_workers=self.config.nli_workers,
        )
        return FizzReport(
            pair_id=pair_id,
            atomic_facts=tuple(kept),
            facts=tuple(fact_scores),
            dropped_facts=partitioned.dropped,
            fizz_score=fizz_score(fact_scores),
            config=self.config.snapshot(),
        )

    def nli_stats(self) -> dict:
        return self.nli.stats()
