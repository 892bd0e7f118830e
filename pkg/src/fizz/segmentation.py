"""Deterministic sentence splitting and token counting.

Every downstream stage consumes the spans produced here, so the splitter is
rule-based rather than statistical: a sentence ends at ``.``, ``!`` or ``?``
(optionally followed by closing quotes) when the next non-space character is
an uppercase letter, a digit, or a quote. A guard list suppresses splits
after known abbreviations ("Mr.", "U.S.", ...). Text with no terminator is
one sentence; empty or whitespace-only text yields no sentences.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import ContractViolation

_CLOSING_QUOTES = "\"'”’"
_OPENING_PUNCT = "\"'“‘([{"

# Terminator, optional closing quotes, the inter-sentence whitespace, then a
# lookahead for how the next sentence must begin.
_BOUNDARY = re.compile(
    r"(?P<punct>[.!?])"
    r"(?P<quotes>[%s]*)"
    r"(?P<ws>\s+)"
    r"(?=[A-Z0-9%s%s])" % (_CLOSING_QUOTES, _CLOSING_QUOTES, "“‘\"'")
)


def _load_default_abbreviations() -> frozenset[str]:
    data = resources.files("fizz.data").joinpath("abbreviations.txt").read_text("utf-8")
    return parse_abbreviations(data)


def parse_abbreviations(data: str) -> frozenset[str]:
    """Parse the one-per-line abbreviation format ('#' starts a comment)."""
    entries = set()
    for line in data.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entries.add(line.casefold())
    return frozenset(entries)


def load_abbreviations(path: str | None = None) -> frozenset[str]:
    """Load the abbreviation guard list, from `path` or the packaged default."""
    if path is None:
        return _load_default_abbreviations()
    with open(path, encoding="utf-8") as fh:
        return parse_abbreviations(fh.read())


_DEFAULT_ABBREVIATIONS = _load_default_abbreviations()


@dataclass(frozen=True)
class Sentence:
    """One sentence span; `text` equals `source[start:end]`."""

    text: str
    start: int
    end: int


@dataclass(frozen=True)
class SentenceList:
    """Ordered, non-overlapping sentence spans over `source_text`.

    Only whitespace may separate consecutive spans, so joining the spans with
    the skipped whitespace reconstructs the source exactly.
    """

    source_text: str
    sentences: tuple[Sentence, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        prev_end = 0
        for sent in self.sentences:
            if not (0 <= sent.start < sent.end <= len(self.source_text)):
                raise ContractViolation(f"span out of range: {sent}")
            if self.source_text[sent.start : sent.end] != sent.text:
                raise ContractViolation(f"span text mismatch: {sent}")
            if not sent.text.strip():
                raise ContractViolation("empty sentence span")
            if sent.start < prev_end:
                raise ContractViolation(f"overlapping spans at {sent.start}")
            if self.source_text[prev_end : sent.start].strip():
                raise ContractViolation(
                    f"non-whitespace gap before span at {sent.start}"
                )
            prev_end = sent.end
        if self.source_text[prev_end:].strip():
            raise ContractViolation("non-whitespace tail after last span")

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __getitem__(self, idx: int) -> Sentence:
        return self.sentences[idx]

    def texts(self) -> list[str]:
        return [sent.text for sent in self.sentences]


def _trimmed_span(text: str, start: int, end: int) -> tuple[int, int]:
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    return start, end


def _word_ending_at(text: str, period_pos: int) -> str:
    """The maximal non-space run ending at the '.' at `period_pos`, inclusive."""
    start = period_pos
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start : period_pos + 1].lstrip(_OPENING_PUNCT)


def split_sentences(
    text: str, abbreviations: frozenset[str] | None = None
) -> SentenceList:
    """Split `text` into sentence spans.

    The abbreviation guard suppresses a split when the token ending at a ``.``
    (case-folded) is in the guard list, e.g. "Mr. Smith left." stays whole.
    """
    if abbreviations is None:
        abbreviations = _DEFAULT_ABBREVIATIONS
    sentences: list[Sentence] = []
    cursor = 0
    for match in _BOUNDARY.finditer(text):
        if match.group("punct") == ".":
            word = _word_ending_at(text, match.start("punct"))
            if word.casefold() in abbreviations:
                continue
        start, end = _trimmed_span(text, cursor, match.end("quotes"))
        if end > start:
            sentences.append(Sentence(text[start:end], start, end))
        cursor = match.end()
    start, end = _trimmed_span(text, cursor, len(text))
    if end > start:
        sentences.append(Sentence(text[start:end], start, end))
    return SentenceList(source_text=text, sentences=tuple(sentences))


def count_tokens(text: str) -> int:
    """Number of whitespace-delimited tokens in `text`."""
    return len(text.split())
