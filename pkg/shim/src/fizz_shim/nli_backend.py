"""NLI scoring backends for the shim.

Two providers sit behind one interface: a transformers checkpoint (softmax
over the model's entailment/contradiction/neutral logits) for deployment,
and a deterministic lexical-overlap model for tests and offline work. Both
return probability triples that sum to 1.
"""

from __future__ import annotations

import re
import threading
from collections import Counter
from typing import Protocol

_TOKEN = re.compile(r"[a-z0-9']+")
_NEGATIONS = frozenset(
    {"not", "no", "never", "none", "nobody", "nothing", "cannot", "n't", "without"}
)


class NliModel(Protocol):
    def score_batch(
        self, pairs: list[tuple[str, str]]
    ) -> list[tuple[float, float, float]]: ...

    @property
    def identifier(self) -> str: ...


def _tokens(text: str) -> list[str]:
    return _TOKEN.findall(text.lower().replace("n't", " n't"))


class LexicalNliModel:
    """Deterministic overlap heuristic honoring the triple contract.

    Entailment mass tracks how much of the hypothesis is covered by the
    premise (clipped token counts); a negation-parity mismatch shifts mass
    to contradiction. Identical premise and hypothesis always come out
    entailment-dominant.
    """

    identifier = "lexical-overlap"

    def score_one(self, premise: str, hypothesis: str) -> tuple[float, float, float]:
        premise_tokens = Counter(_tokens(premise))
        hypothesis_tokens = Counter(_tokens(hypothesis))
        total = sum(hypothesis_tokens.values())
        if total == 0:
            coverage = 0.0
        else:
            coverage = sum((premise_tokens & hypothesis_tokens).values()) / total
        premise_negs = sum(v for k, v in premise_tokens.items() if k in _NEGATIONS)
        hypothesis_negs = sum(
            v for k, v in hypothesis_tokens.items() if k in _NEGATIONS
        )
        negation_mismatch = (premise_negs % 2) != (hypothesis_negs % 2)

        e = 0.05 + 0.90 * coverage
        c = 0.05 + (0.90 * coverage if negation_mismatch else 0.0)
        n = 0.05 + 0.90 * (1.0 - coverage)
        if negation_mismatch:
            e *= 0.25
        total_mass = e + c + n
        return e / total_mass, c / total_mass, n / total_mass

    def score_batch(self, pairs):
        return [self.score_one(premise, hypothesis) for premise, hypothesis in pairs]


class TransformersNliModel:
    """Checkpoint-backed scorer; applies softmax over the model's logits."""

    def __init__(self, model_path: str, batch_size: int = 16, device: str = "cpu"):
        import torch
        from transformers import AutoModelForSequenceClassification, AutoTokenizer

        self._torch = torch
        self._tokenizer = AutoTokenizer.from_pretrained(model_path)
        self._model = AutoModelForSequenceClassification.from_pretrained(model_path)
        self._model.eval()
        self._model.to(device)
        self._device = device
        self._batch_size = batch_size
        self._label_index = self._resolve_labels()
        self.identifier = model_path

    def _resolve_labels(self) -> dict[str, int]:
        id2label = {
            int(i): str(label).lower()
            for i, label in self._model.config.id2label.items()
        }
        index: dict[str, int] = {}
        for i, label in id2label.items():
            if label.startswith("entail"):
                index["e"] = i
            elif label.startswith("contradict"):
                index["c"] = i
            elif label.startswith("neutral"):
                index["n"] = i
        if set(index) != {"e", "c", "n"}:
            raise ValueError(
                f"checkpoint labels {id2label} do not cover "
                "entailment/contradiction/neutral"
            )
        return index

    def score_batch(self, pairs):
        torch = self._torch
        results = []
        for start in range(0, len(pairs), self._batch_size):
            chunk = pairs[start : start + self._batch_size]
            encoded = self._tokenizer(
                [p for p, _ in chunk],
                [h for _, h in chunk],
                padding=True,
                truncation=True,
                return_tensors="pt",
            ).to(self._device)
            with torch.no_grad():
                logits = self._model(**encoded).logits
            probs = torch.softmax(logits, dim=-1).cpu()
            for row in probs:
                results.append(
                    (
                        float(row[self._label_index["e"]]),
                        float(row[self._label_index["c"]]),
                        float(row[self._label_index["n"]]),
                    )
                )
        return results


class LockedNliModel:
    """Serialize batch inference; request handling stays concurrent."""

    def __init__(self, inner: NliModel):
        self._inner = inner
        self._lock = threading.Lock()

    @property
    def identifier(self) -> str:
        return self._inner.identifier

    def score_batch(self, pairs):
        with self._lock:
            return self._inner.score_batch(pairs)


def build_nli_model(name: str, batch_size: int = 16, device: str = "cpu") -> NliModel:
    if name == "lexical":
        return LockedNliModel(LexicalNliModel())
    return LockedNliModel(
        TransformersNliModel(name, batch_size=batch_size, device=device)
    )
