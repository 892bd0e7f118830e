"""Exception hierarchy shared across the pipeline."""

from __future__ import annotations


class FizzError(Exception):
    """Base class for all pipeline errors."""


class ContractViolation(FizzError):
    """An operation was called with arguments that break its preconditions."""


class ConfigError(FizzError):
    """Invalid or contradictory configuration."""


class TransportError(FizzError):
    """An HTTP backend could not be reached, after retries."""


class NliUnavailable(FizzError):
    """The NLI backend is unreachable; the current pair cannot be scored."""


class NliProtocolError(FizzError):
    """The NLI backend returned a malformed probability triple."""


class FixtureMiss(FizzError):
    """A scripted backend has no entry for the requested input."""


class DecompositionEmpty(FizzError):
    """The decomposition model returned no parseable fact bullets."""

    def __init__(self, completion: str):
        super().__init__(
            "no atomic facts parsed from completion: %r" % (completion[:200],)
        )
        self.completion = completion


class DecompositionFailed(FizzError):
    """Decomposition transport failed for a sentence; the pair is aborted."""


class EmptyFactSet(FizzError):
    """Every atomic fact was filtered out; the pair is unscoreable."""


class DegenerateLabels(FizzError):
    """An evaluation operation needs both label classes present."""


class DatasetError(FizzError):
    """A benchmark dataset file is malformed."""
