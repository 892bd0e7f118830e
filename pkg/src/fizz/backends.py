"""Model-service clients: HTTP backends and scripted fixture backends.

Scripted backends replay recorded completions/triples/clusters from JSON
fixtures for deterministic tests and offline runs. HTTP backends speak the
wire contracts:

* LLM     POST <url>      {"model", "prompt", "temperature", "max_tokens"}
                          -> {"completion": str}  (chat-completion shapes
                          with choices[0].message.content also accepted)
* NLI     POST <url>      {"premise", "hypothesis"}
                          -> {"entailment", "contradiction", "neutral"}
* coref   POST <url>      {"text"} -> {"text", "clusters": [...]}

Transport failures are retried with exponential backoff before giving up.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import requests

from .coref import CorefClusterSet, cluster_set_from_json
from .decompose import LlmRequest, LlmResponse, last_prompt_line
from .errors import FixtureMiss, NliProtocolError, TransportError

DEFAULT_TIMEOUT = 30.0


@dataclass(frozen=True)
class RetryPolicy:
    """Attempts with exponential backoff on transport errors only."""

    attempts: int = 3
    backoffs: tuple[float, ...] = (1.0, 2.0, 4.0)
    sleep: Callable[[float], None] = time.sleep

    def run(self, call: Callable[[], Any], what: str) -> Any:
        last_error: Exception | None = None
        for attempt in range(self.attempts):
            try:
                return call()
            except (requests.RequestException, OSError) as exc:
                last_error = exc
                if attempt + 1 < self.attempts:
                    self.sleep(self.backoffs[min(attempt, len(self.backoffs) - 1)])
        raise TransportError(f"{what} unreachable after {self.attempts} attempts: {last_error}")


def _post_json(url: str, payload: dict, timeout: float, headers: dict | None = None) -> dict:
    response = requests.post(url, json=payload, timeout=timeout, headers=headers)
    response.raise_for_status()
    return response.json()


# ---------------------------------------------------------------------------
# LLM clients


@dataclass
class HttpLlmClient:
    url: str
    model: str = "default"
    auth_token: str | None = None
    timeout: float = DEFAULT_TIMEOUT
    retry: RetryPolicy = field(default_factory=RetryPolicy)

    def complete(self, request: LlmRequest) -> LlmResponse:
        payload = {
            "model": self.model,
            "prompt": request.prompt,
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        }
        headers = (
            {"Authorization": f"Bearer {self.auth_token}"} if self.auth_token else None
        )
        body = self.retry.run(
            lambda: _post_json(self.url, payload, self.timeout, headers), "LLM endpoint"
        )
        return LlmResponse(
            completion=_extract_completion(body),
            finish_reason=str(body.get("finish_reason", "stop")),
        )

    def describe(self) -> str:
        return f"http:{self.url}"


def _extract_completion(body: dict) -> str:
    if "completion" in body:
        return str(body["completion"])
    choices = body.get("choices")
    if isinstance(choices, list) and choices:
        first = choices[0]
        if isinstance(first, dict):
            message = first.get("message")
            if isinstance(message, dict) and "content" in message:
                return str(message["content"])
            if "text" in first:
                return str(first["text"])
    raise TransportError(f"LLM response carries no completion: {list(body)!r}")


@dataclass
class ScriptedLlmClient:
    """Replays completions keyed by the sentence on the prompt's final line."""

    completions: dict[str, str]
    source: str = "inline"

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedLlmClient":
        with open(path, encoding="utf-8") as fh:
            mapping = json.load(fh)
        if not isinstance(mapping, dict):
            raise FixtureMiss(f"LLM fixture {path} must be a JSON object")
        return cls(completions={str(k): str(v) for k, v in mapping.items()},
                   source=Path(path).name)

    def complete(self, request: LlmRequest) -> LlmResponse:
        sentence = last_prompt_line(request.prompt)
        if sentence not in self.completions:
            raise FixtureMiss(f"no scripted completion for sentence: {sentence!r}")
        return LlmResponse(completion=self.completions[sentence])

    def describe(self) -> str:
        return f"scripted:{self.source}"


# ---------------------------------------------------------------------------
# NLI backends (raw triples; caching/validation live in nli.NliScorer)


@dataclass
class HttpNliBackend:
    url: str
    timeout: float = DEFAULT_TIMEOUT
    retry: RetryPolicy = field(default_factory=RetryPolicy)

    def raw_score(self, premise: str, hypothesis: str) -> tuple[float, float, float]:
        payload = {"premise": premise, "hypothesis": hypothesis}
        body = self.retry.run(
            lambda: _post_json(self.url, payload, self.timeout), "NLI endpoint"
        )
        try:
            return (
                float(body["entailment"]),
                float(body["contradiction"]),
                float(body["neutral"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise NliProtocolError(f"malformed NLI response: {body!r}") from exc

    def describe(self) -> str:
        return f"http:{self.url}"


@dataclass
class ScriptedNliBackend:
    """Exact-match lookup over recorded (premise, hypothesis) triples."""

    triples: dict[tuple[str, str], tuple[float, float, float]]
    source: str = "inline"

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedNliBackend":
        with open(path, encoding="utf-8") as fh:
            entries = json.load(fh)
        if not isinstance(entries, list):
            raise FixtureMiss(f"NLI fixture {path} must be a JSON list")
        triples = {}
        for entry in entries:
            key = (entry["premise"], entry["hypothesis"])
            triples[key] = (float(entry["e"]), float(entry["c"]), float(entry["n"]))
        return cls(triples=triples, source=Path(path).name)

    @classmethod
    def from_entries(cls, entries: list[dict]) -> "ScriptedNliBackend":
        return cls(
            triples={
                (entry["premise"], entry["hypothesis"]): (
                    float(entry["e"]),
                    float(entry["c"]),
                    float(entry["n"]),
                )
                for entry in entries
            }
        )

    def raw_score(self, premise: str, hypothesis: str) -> tuple[float, float, float]:
        key = (premise, hypothesis)
        if key not in self.triples:
            raise FixtureMiss(
                f"no scripted triple for premise={premise!r} hypothesis={hypothesis!r}"
            )
        return self.triples[key]

    def describe(self) -> str:
        return f"scripted:{self.source}"


class CountingNliBackend:
    """Wrap a backend and count raw calls (used by instrumented tests)."""

    def __init__(self, inner: Any):
        self.inner = inner
        self.calls = 0

    def raw_score(self, premise: str, hypothesis: str) -> tuple[float, float, float]:
        self.calls += 1
        return self.inner.raw_score(premise, hypothesis)

    def describe(self) -> str:
        return self.inner.describe()


# ---------------------------------------------------------------------------
# Coref cluster providers


@dataclass
class HttpCorefClient:
    url: str
    timeout: float = DEFAULT_TIMEOUT
    retry: RetryPolicy = field(default_factory=RetryPolicy)

    def clusters_for(self, text: str) -> CorefClusterSet:
        body = self.retry.run(
            lambda: _post_json(self.url, {"text": text}, self.timeout), "coref endpoint"
        )
        if "text" not in body:
            body = dict(body, text=text)
        return cluster_set_from_json(body)

    def describe(self) -> str:
        return f"http:{self.url}"


@dataclass
class ScriptedCorefClient:
    """Cluster fixtures keyed by exact text match."""

    by_text: dict[str, CorefClusterSet]
    source: str = "inline"

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedCorefClient":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if isinstance(data, dict):
            data = [data]
        by_text = {}
        for obj in data:
            cluster_set = cluster_set_from_json(obj)
            by_text[cluster_set.text] = cluster_set
        return cls(by_text=by_text, source=Path(path).name)

    def clusters_for(self, text: str) -> CorefClusterSet:
        if text not in self.by_text:
            raise FixtureMiss(f"no scripted clusters for text: {text[:80]!r}")
        return self.by_text[text]

    def describe(self) -> str:
        return f"scripted:{self.source}"
