"""Heuristic coreference cluster extraction for the shim.

Proper-name mentions are maximal runs of capitalized tokens (sentence-
initial stopwords and pronouns excluded); runs whose token sequences
overlap as contiguous subsequences are merged into one entity. Pronouns
from a closed lexicon link to the nearest preceding entity. Only clusters
with at least two mentions are emitted, and mentions never overlap, so the
output always satisfies the consumer's cluster invariants. A checkpoint-
backed provider can replace this behind the same interface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Protocol

PRONOUNS = frozenset(
    """
    i me my mine myself
    we us our ours ourselves
    you your yours yourself yourselves
    he him his himself
    she her hers herself
    it its itself
    they them their theirs themselves
    """.split()
)

# Possessive determiners and absolutes. "her" is ambiguous: it is tagged
# possessive only when a noun-like token follows directly (determiner
# reading), never clause-finally (objective reading).
POSSESSIVE_PRONOUNS = frozenset(
    "my mine our ours your yours his its their theirs hers".split()
)

# Capitalized sentence-starters that are not names by themselves.
_STOPWORDS = frozenset(
    """
    the a an this that these those there here and but or nor so yet for
    if when while after before because although though as once since
    on in at by with from to of over under into onto
    is are was were be been being do does did have has had will would
    can could may might must shall should
    """.split()
)

_WORD = re.compile(r"[A-Za-z][A-Za-z'\-]*")
_SENTENCE_END = frozenset(".!?")


class CorefModel(Protocol):
    def clusters(self, text: str) -> list[list[dict]]: ...

    @property
    def identifier(self) -> str: ...


@dataclass(frozen=True)
class _Token:
    start: int
    end: int
    surface: str
    sentence_initial: bool


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    for match in _WORD.finditer(text):
        preceding = text[: match.start()].rstrip()
        sentence_initial = not preceding or preceding[-1] in _SENTENCE_END
        tokens.append(
            _Token(match.start(), match.end(), match.group(), sentence_initial)
        )
    return tokens


def _is_capitalized_name_token(token: _Token) -> bool:
    surface = token.surface
    if not surface[0].isupper():
        return False
    lowered = surface.casefold()
    if lowered in PRONOUNS:
        return False
    if token.sentence_initial and lowered in _STOPWORDS:
        return False
    return True


def _mention_dict(start: int, end: int, kind: str, possessive: bool = False) -> dict:
    return {"start": start, "end": end, "kind": kind, "possessive": possessive}


def _contiguous_subsequence(needle: list[str], haystack: list[str]) -> bool:
    if len(needle) > len(haystack):
        return False
    return any(
        haystack[i : i + len(needle)] == needle
        for i in range(len(haystack) - len(needle) + 1)
    )


class HeuristicCorefModel:
    identifier = "heuristic-caps-pronoun"

    def clusters(self, text: str) -> list[list[dict]]:
        tokens = _tokenize(text)

        # maximal runs of name-like capitalized tokens; a run starting a
        # sentence is a likely grammatical subject
        runs: list[tuple[int, int, list[str], bool]] = []
        current: list[_Token] = []
        for token in tokens:
            if _is_capitalized_name_token(token):
                if current and token.start - current[-1].end > 1:
                    self._flush(current, runs)
                    current = []
                current.append(token)
            else:
                self._flush(current, runs)
                current = []
        self._flush(current, runs)

        # merge runs naming the same entity
        entities: list[dict] = []
        anchors: list[tuple[int, int, bool]] = []  # (entity idx, end, subject)
        for start, end, words, subject in runs:
            lowered = [w.casefold() for w in words]
            home = None
            for index, entity in enumerate(entities):
                if _contiguous_subsequence(
                    lowered, entity["words"]
                ) or _contiguous_subsequence(entity["words"], lowered):
                    home = index
                    break
            if home is None:
                entities.append({"words": lowered, "mentions": []})
                home = len(entities) - 1
            elif len(lowered) > len(entities[home]["words"]):
                entities[home]["words"] = lowered
            entities[home]["mentions"].append(_mention_dict(start, end, "PROPER_NAME"))
            anchors.append((home, end, subject))

        # link each pronoun to a preceding entity, preferring the most
        # recent subject over a merely nearer non-subject mention
        for position, token in enumerate(tokens):
            lowered = token.surface.casefold()
            if lowered not in PRONOUNS:
                continue
            preceding = [a for a in anchors if a[1] <= token.start]
            if not preceding:
                continue
            entity_index, _, _ = max(preceding, key=lambda a: (a[2], a[1]))
            possessive = lowered in POSSESSIVE_PRONOUNS
            if lowered == "her":
                follower = tokens[position + 1] if position + 1 < len(tokens) else None
                possessive = (
                    follower is not None
                    and follower.start == token.end + 1
                    and not follower.sentence_initial
                )
            entities[entity_index]["mentions"].append(
                _mention_dict(token.start, token.end, "PRONOUN", possessive=possessive)
            )

        return [
            sorted(entity["mentions"], key=lambda m: m["start"])
            for entity in entities
            if len(entity["mentions"]) >= 2
        ]

    @staticmethod
    def _flush(
        current: list[_Token], runs: list[tuple[int, int, list[str], bool]]
    ) -> None:
        if current:
            runs.append(
                (
                    current[0].start,
                    current[-1].end,
                    [t.surface for t in current],
                    current[0].sentence_initial,
                )
            )


def build_coref_model(name: str) -> CorefModel:
    if name == "heuristic":
        return HeuristicCorefModel()
    raise ValueError(
        f"unknown coref provider {name!r}; implement CorefModel for checkpoints"
    )
