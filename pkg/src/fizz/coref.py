"""Rule-based pronoun and nominal-mention substitution.

Mention clusters arrive precomputed (from a fixture file or the cluster
service); this module owns only the textual substitution rules:

* pronouns in a cluster are replaced by the cluster's representative
  (possessive pronouns get an ``'s`` suffix),
* nominal mentions other than the representative are prefixed with the
  representative followed by a comma, lower-casing a leading article,
* proper-name mentions are never touched,
* clusters containing only pronouns are skipped (there is no name to use).

The representative is the longest proper-name mention; failing that, the
earliest nominal mention. Every substitution is recorded so the rewrite can
be replayed and audited.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import ContractViolation

# Closed lexicon: personal, possessive and reflexive pronouns. A mention is
# PRONOUN exactly when its case-folded surface is in this set.
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

_ARTICLES = frozenset({"the", "a", "an"})


class MentionKind(str, Enum):
    PRONOUN = "PRONOUN"
    PROPER_NAME = "PROPER_NAME"
    NOMINAL = "NOMINAL"


@dataclass(frozen=True)
class Mention:
    """A mention span; `surface` must equal the source slice."""

    start: int
    end: int
    surface: str
    kind: MentionKind
    possessive: bool = False

    def __post_init__(self) -> None:
        if self.start >= self.end:
            raise ContractViolation(
                f"mention span must be non-empty: ({self.start}, {self.end})"
            )
        in_lexicon = self.surface.casefold() in PRONOUNS
        if (self.kind is MentionKind.PRONOUN) != in_lexicon:
            raise ContractViolation(
                f"kind {self.kind.value} inconsistent with surface {self.surface!r}"
            )


@dataclass(frozen=True)
class CorefClusterSet:
    """Mention clusters over `text`; mentions never overlap."""

    text: str
    clusters: tuple[tuple[Mention, ...], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        spans: list[tuple[int, int, Mention]] = []
        for cluster in self.clusters:
            if not cluster:
                raise ContractViolation("empty cluster")
            for mention in cluster:
                if mention.end > len(self.text):
                    raise ContractViolation(f"mention out of range: {mention}")
                if self.text[mention.start : mention.end] != mention.surface:
                    raise ContractViolation(
                        f"surface mismatch at ({mention.start}, {mention.end}): "
                        f"{mention.surface!r}"
                    )
                spans.append((mention.start, mention.end, mention))
        spans.sort(key=lambda item: (item[0], item[1]))
        for (s1, e1, m1), (s2, e2, m2) in zip(spans, spans[1:]):
            if s2 < e1:
                raise ContractViolation(
                    f"overlapping mentions: ({s1}, {e1}) and ({s2}, {e2})"
                )


@dataclass(frozen=True)
class Substitution:
    start: int
    end: int
    replacement: str
    rule: str


@dataclass(frozen=True)
class ResolvedText:
    """Rewritten text plus the substitutions that produced it."""

    text: str
    substitutions: tuple[Substitution, ...] = field(default_factory=tuple)


def select_representative(cluster: tuple[Mention, ...] | list[Mention]) -> Mention:
    """Pick the mention whose surface will stand in for the cluster.

    Longest proper name wins (ties broken by earliest position); otherwise
    the earliest nominal; an all-pronoun cluster returns its earliest mention
    and is skipped by `resolve`.
    """
    if not cluster:
        raise ContractViolation("cannot select a representative of an empty cluster")
    proper = [m for m in cluster if m.kind is MentionKind.PROPER_NAME]
    if proper:
        return max(proper, key=lambda m: (len(m.surface), -m.start))
    nominal = [m for m in cluster if m.kind is MentionKind.NOMINAL]
    if nominal:
        return min(nominal, key=lambda m: m.start)
    return min(cluster, key=lambda m: m.start)


def _lower_leading_article(surface: str) -> str:
    head = surface.split(None, 1)[0] if surface.split() else surface
    if head.casefold() in _ARTICLES:
        return surface[0].lower() + surface[1:]
    return surface


def _match_case(original: str, replacement: str) -> str:
    """Carry the mention's sentence-position capitalization onto the replacement."""
    if not replacement:
        return replacement
    if original[0].isupper() and replacement[0].islower():
        return replacement[0].upper() + replacement[1:]
    if original[0].islower():
        return _lower_leading_article(replacement)
    return replacement


def nominal_prefix(representative: str, nominal: str) -> str:
    """Prefix a nominal with the entity name, lower-casing a leading article."""
    return _match_case(nominal, representative + ", " + _lower_leading_article(nominal))


def _replacement_for(mention: Mention, representative: Mention) -> tuple[str, str] | None:
    """(replacement, rule) for one mention, or None when it stays untouched."""
    if mention is representative or mention.kind is MentionKind.PROPER_NAME:
        return None
    if mention.kind is MentionKind.PRONOUN:
        if mention.possessive:
            return _match_case(mention.surface, representative.surface + "'s"), (
                "possessive-pronoun"
            )
        return _match_case(mention.surface, representative.surface), "pronoun"
    return nominal_prefix(representative.surface, mention.surface), "nominal-prefix"


def apply_substitutions(text: str, substitutions: tuple[Substitution, ...]) -> str:
    """Replay recorded substitutions; right-to-left so offsets stay valid."""
    result = text
    for sub in sorted(substitutions, key=lambda s: s.start, reverse=True):
        result = result[: sub.start] + sub.replacement + result[sub.end :]
    return result


def resolve(text: str, clusters: CorefClusterSet) -> ResolvedText:
    """Rewrite `text` according to its mention clusters."""
    if clusters.text != text:
        raise ContractViolation("cluster set was built over a different text")
    substitutions: list[Substitution] = []
    for cluster in clusters.clusters:
        if all(m.kind is MentionKind.PRONOUN for m in cluster):
            continue
        representative = select_representative(cluster)
        for mention in cluster:
            outcome = _replacement_for(mention, representative)
            if outcome is None:
                continue
            replacement, rule = outcome
            substitutions.append(
                Substitution(mention.start, mention.end, replacement, rule)
            )
    substitutions.sort(key=lambda s: s.start)
    return ResolvedText(
        text=apply_substitutions(text, tuple(substitutions)),
        substitutions=tuple(substitutions),
    )


def cluster_set_from_json(obj: dict) -> CorefClusterSet:
    """Build a cluster set from the wire/fixture schema.

    Expected shape: ``{"text": str, "clusters": [[{"start": int, "end": int,
    "kind": str, "possessive": bool}, ...], ...]}``; mention surfaces are
    derived from the text slices.
    """
    try:
        text = obj["text"]
        raw_clusters = obj["clusters"]
    except (KeyError, TypeError) as exc:
        raise ContractViolation(f"malformed cluster payload: missing {exc}") from exc
    clusters = []
    for raw_cluster in raw_clusters:
        mentions = []
        for raw in raw_cluster:
            try:
                start, end = int(raw["start"]), int(raw["end"])
                kind = MentionKind(raw["kind"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ContractViolation(f"malformed mention {raw!r}") from exc
            mentions.append(
                Mention(
                    start=start,
                    end=end,
                    surface=text[start:end],
                    kind=kind,
                    possessive=bool(raw.get("possessive", False)),
                )
            )
        clusters.append(tuple(mentions))
    return CorefClusterSet(text=text, clusters=tuple(clusters))


def cluster_set_to_json(clusters: CorefClusterSet) -> dict:
    return {
        "text": clusters.text,
        "clusters": [
            [
                {
                    "start": m.start,
                    "end": m.end,
                    "kind": m.kind.value,
                    "possessive": m.possessive,
                }
                for m in cluster
            ]
            for cluster in clusters.clusters
        ],
    }
