"""Atomic-fact decomposition of summary sentences via an LLM.

Each coref-resolved summary sentence is sent through a fixed 8-shot prompt
that asks for one short declarative fact per "- " bullet; the completion is
parsed back into `AtomicFact` values tied to their source sentence. All
calls run at temperature 0 so scripted backends reproduce bit-identical
output.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol

from .errors import ContractViolation, DecompositionEmpty, DecompositionFailed, TransportError
from .segmentation import SentenceList

PROMPT_PREAMBLE = (
    "You are a helpful assistant. "
    "Please give me a list of atomic facts of the following texts."
)

# The eight in-context examples, in fixed order.
PROMPT_SHOTS: tuple[tuple[str, tuple[str, ...]], ...] = (
    (
        "lisa courtney, of hertfordshire, has spent most of her life collecting "
        "pokemon memorabilia.",
        (
            "Lisa Courtney is from Hertfordshire.",
            "Lisa Courtney has spent most of her life collecting Pokémon memorabilia.",
        ),
    ),
    (
        "prince jan zylinski said he was fed up with discrimination against poles "
        "living in britain.",
        (
            "Prince Jan Zylinski made a statement.",
            "The statement made by Prince Jan Zylinski was about discrimination.",
            "The statement made by Prince Jan Zylinski was regarding Poles living in Britain.",
            "Prince Jan Zylinski expressed feeling fed up with this type of discrimination.",
        ),
    ),
    (
        "no charges were filed, there will be no travel ban.",
        (
            "No charges were filed.",
            "There will be no travel ban.",
        ),
    ),
    (
        "rudd has pleaded guilty to threatening to kill and possession of drugs in a court.",
        (
            "Rudd has pleaded guilty.",
            "Rudd has pleaded guilty to threatening to kill.",
            "Rudd has pleaded guilty to possession of drugs.",
        ),
    ),
    (
        "Lee made his acting debut in the film The Moon is the Sun's Dream (1992), "
        "and continued to appear in small and supporting roles throughout the 1990s.",
        (
            "Lee made his acting debut in The Moon is the Sun's Dream.",
            "The Moon is the Sun's Dream is a film.",
            "The Moon is the Sun's Dream was released in 1992.",
            "After Lee's acting debut, he appeared in small and supporting roles "
            "throughout the 1990s.",
        ),
    ),
    (
        "In 1963, Collins became one of the third group of astronauts selected by "
        "NASA and he served as the back-up Command Module Pilot for the Gemini 7 mission.",
        (
            "Collins became an astronaut.",
            "Collins became one of the third group of astronauts selected by NASA in 1963.",
            "Collins served as the back-up Command Module Pilot for the Gemini 7 mission.",
        ),
    ),
    (
        "In addition to his acting roles, Bateman has written and directed two short "
        "films and is currently in development on his feature debut.",
        (
            "Bateman has acting roles.",
            "Bateman has written two short films.",
            "Bateman has directed two short films.",
            "Bateman is currently in development on his feature debut.",
        ),
    ),
    (
        "Michael Collins (born October 31, 1930) is a retired American astronaut and "
        "test pilot who was the Command Module Pilot for the Apollo 11 mission in 1969.",
        (
            "Michael Collins was born on October 31, 1930.",
            "Michael Collins is retired.",
            "Michael Collins is an American.",
            "Michael Collins was an astronaut.",
            "Michael Collins was a test pilot.",
            "Michael Collins was the Command Module Pilot for the Apollo 11 mission in 1969.",
        ),
    ),
)

DECOMPOSITION_MAX_TOKENS = 512
DECOMPOSITION_TEMPERATURE = 0.0


@dataclass(frozen=True)
class LlmRequest:
    prompt: str
    max_tokens: int = DECOMPOSITION_MAX_TOKENS
    temperature: float = DECOMPOSITION_TEMPERATURE


@dataclass(frozen=True)
class LlmResponse:
    completion: str
    finish_reason: str = "stop"


class LlmClient(Protocol):
    def complete(self, request: LlmRequest) -> LlmResponse: ...


@dataclass(frozen=True)
class AtomicFact:
    """One short declarative fact traced to its source summary sentence."""

    text: str
    source_sentence_index: int
    raw_line: str

    def __post_init__(self) -> None:
        if not self.text:
            raise ContractViolation("atomic fact text must be nonempty")
        if self.text.startswith("- "):
            raise ContractViolation("atomic fact text still carries its bullet marker")
        if "\n" in self.text:
            raise ContractViolation("atomic fact text must be a single line")
        if self.source_sentence_index < 0:
            raise ContractViolation("source sentence index must be nonnegative")


def build_prompt(sentence: str) -> str:
    """The fixed preamble, the eight shots, then `sentence` on its own line."""
    parts = [PROMPT_PREAMBLE, ""]
    for shot_sentence, facts in PROMPT_SHOTS:
        parts.append(shot_sentence)
        parts.extend("- " + fact for fact in facts)
        parts.append("")
    parts.append(sentence)
    return "\n".join(parts) + "\n"


def last_prompt_line(prompt: str) -> str:
    """The sentence a prompt asks about (its final nonempty line)."""
    for line in reversed(prompt.splitlines()):
        if line.strip():
            return line
    return ""


def parse_fact_list(completion: str, sentence_index: int) -> list[AtomicFact]:
    """Parse "- " bullets into facts; non-bullet lines are ignored.

    Exact duplicate bullets are dropped so one fact cannot be counted twice
    downstream. Raises `DecompositionEmpty` when nothing parses.
    """
    facts: list[AtomicFact] = []
    seen: set[str] = set()
    for raw_line in completion.splitlines():
        line = raw_line.strip()
        if not line.startswith("- "):
            continue
        text = line[2:].strip()
        if not text or text in seen:
            continue
        seen.add(text)
        facts.append(
            AtomicFact(text=text, source_sentence_index=sentence_index, raw_line=raw_line)
        )
    if not facts:
        raise DecompositionEmpty(completion)
    return facts


def decompose(
    summary: SentenceList, llm: LlmClient, max_workers: int = 1
) -> list[AtomicFact]:
    """Decompose every summary sentence, concatenating facts in sentence order.

    Sentence calls may run concurrently up to `max_workers`; output order is
    by sentence index regardless of completion order. A transport failure on
    any sentence aborts the pair (a silently missing sentence would skew the
    minimum score).
    """
    if len(summary) == 0:
        raise ContractViolation("cannot decompose an empty summary")

    def run_one(index: int) -> list[AtomicFact]:
        request = LlmRequest(prompt=build_prompt(summary[index].text))
        try:
            response = llm.complete(request)
        except TransportError as exc:
            raise DecompositionFailed(
                f"decomposition transport failed for sentence {index}: {exc}"
            ) from exc
        return parse_fact_list(response.completion, index)

    indices = range(len(summary))
    if max_workers <= 1 or len(summary) == 1:
        per_sentence = [run_one(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=min(max_workers, len(summary))) as pool:
            per_sentence = list(pool.map(run_one, indices))
    return [fact for facts in per_sentence for fact in facts]
