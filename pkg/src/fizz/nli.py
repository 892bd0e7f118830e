"""Entailment/contradiction/neutral scoring with caching.

`NliScorer` wraps any backend and guarantees at most one backend call per
distinct (premise, hypothesis) pair per run, even under concurrent workers.
Triples are validated on ingest: components must lie in [0, 1] and sum to 1
within 1e-3; in-tolerance drift is renormalized away so downstream argmax
logic never sees it.
"""

from __future__ import annotations

import hashlib
import json
import threading
from concurrent.futures import Future
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

from .errors import ContractViolation, NliProtocolError, NliUnavailable, TransportError

SUM_TOLERANCE = 1e-3
_NORMALIZED_TOLERANCE = 1e-9


@dataclass(frozen=True)
class NliTriple:
    """(entailment, contradiction, neutral) probabilities summing to 1."""

    e: float
    c: float
    n: float

    @classmethod
    def from_raw(cls, e: float, c: float, n: float) -> "NliTriple":
        """Validate and normalize a raw backend triple.

        Rejects components outside [0, 1] and sums off by more than 1e-3;
        smaller drift is divided out (already-normalized triples are kept
        bit-exact).
        """
        for name, value in (("entailment", e), ("contradiction", c), ("neutral", n)):
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise NliProtocolError(f"{name} component is not a number: {value!r}")
            if not 0.0 <= value <= 1.0:
                raise NliProtocolError(f"{name} component outside [0, 1]: {value!r}")
        total = e + c + n
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise NliProtocolError(f"triple sums to {total!r}, outside tolerance")
        if abs(total - 1.0) > _NORMALIZED_TOLERANCE:
            e, c, n = e / total, c / total, n / total
        return cls(e=float(e), c=float(c), n=float(n))

    @property
    def entailment_argmax(self) -> bool:
        """True when entailment strictly dominates both other classes."""
        return self.e > self.c and self.e > self.n

    @property
    def argmax_class(self) -> str:
        if self.entailment_argmax:
            return "e"
        return "c" if self.c >= self.n else "n"

    @property
    def argmax_value(self) -> float:
        return max(self.e, self.c, self.n)


class NliBackend(Protocol):
    """Raw triple source; `describe()` names the backend for reports."""

    def raw_score(self, premise: str, hypothesis: str) -> tuple[float, float, float]: ...

    def describe(self) -> str: ...


def _disk_key(premise: str, hypothesis: str) -> str:
    digest = hashlib.sha256()
    digest.update(premise.encode("utf-8"))
    digest.update(b"\x00")
    digest.update(hypothesis.encode("utf-8"))
    return digest.hexdigest()


class NliScorer:
    """Caching, thread-safe front end over an NLI backend.

    The in-memory cache is keyed on the exact (premise, hypothesis) pair;
    an optional on-disk cache (JSONL, content-hash keyed) persists triples
    across runs so repeated sweeps stay cheap.
    """

    def __init__(self, backend: NliBackend, cache_path: str | Path | None = None):
        self._backend = backend
        self._lock = threading.Lock()
        self._cache: dict[tuple[str, str], NliTriple | Future] = {}
        self._calls = 0
        self._hits = 0
        self._backend_calls = 0
        self._cache_path = Path(cache_path) if cache_path else None
        self._disk: dict[str, NliTriple] = {}
        if self._cache_path and self._cache_path.exists():
            self._load_disk_cache()

    def _load_disk_cache(self) -> None:
        assert self._cache_path is not None
        with open(self._cache_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                entry = json.loads(line)
                self._disk[entry["k"]] = NliTriple(
                    e=entry["e"], c=entry["c"], n=entry["n"]
                )

    def _persist(self, key: str, triple: NliTriple) -> None:
        assert self._cache_path is not None
        entry = {"k": key, "e": triple.e, "c": triple.c, "n": triple.n}
        with open(self._cache_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry) + "\n")

    def score(self, premise: str, hypothesis: str) -> NliTriple:
        if not premise or not hypothesis:
            raise ContractViolation("premise and hypothesis must be nonempty")
        key = (premise, hypothesis)
        with self._lock:
            self._calls += 1
            cached = self._cache.get(key)
            if isinstance(cached, NliTriple):
                self._hits += 1
                return cached
            if cached is None:
                future: Future = Future()
                self._cache[key] = future
                owner = True
            else:
                future = cached
                owner = False
        if not owner:
            # Another worker is already fetching this pair.
            result = future.result()
            with self._lock:
                self._hits += 1
            return result
        try:
            triple = self._fetch(premise, hypothesis)
        except Exception as exc:
            with self._lock:
                del self._cache[key]
            future.set_exception(exc)
            raise
        with self._lock:
            self._cache[key] = triple
        future.set_result(triple)
        return triple

    def _fetch(self, premise: str, hypothesis: str) -> NliTriple:
        disk_key = _disk_key(premise, hypothesis) if self._cache_path else None
        if disk_key is not None:
            found = self._disk.get(disk_key)
            if found is not None:
                return found
        with self._lock:
            self._backend_calls += 1
        try:
            e, c, n = self._backend.raw_score(premise, hypothesis)
        except TransportError as exc:
            raise NliUnavailable(str(exc)) from exc
        triple = NliTriple.from_raw(e, c, n)
        if disk_key is not None:
            self._disk[disk_key] = triple
            self._persist(disk_key, triple)
        return triple

    def stats(self) -> dict[str, float]:
        with self._lock:
            calls, hits, backend = self._calls, self._hits, self._backend_calls
        return {
            "calls": calls,
            "cache_hits": hits,
            "backend_calls": backend,
            "hit_ratio": (hits / calls) if calls else 0.0,
        }

    def describe(self) -> str:
        return self._backend.describe()
