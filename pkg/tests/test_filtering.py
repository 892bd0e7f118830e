import random

import pytest

from support import make_scripted_scorer
from fizz.decompose import AtomicFact
from fizz.errors import NliUnavailable, TransportError
from fizz.filtering import filter_facts, partition_facts
from fizz.nli import NliScorer
from fizz.segmentation import split_sentences


def fact(text: str, j: int = 0) -> AtomicFact:
    return AtomicFact(text=text, source_sentence_index=j, raw_line="- " + text)


def scorer_for(summary_texts, fact_texts, triples):
    """triples[j][k] -> (e, c, n) for summary sentence j against fact k."""
    entries = []
    for j, premise in enumerate(summary_texts):
        for k, hypothesis in enumerate(fact_texts):
            e, c, n = triples[j][k]
            entries.append(
                {"premise": premise, "hypothesis": hypothesis, "e": e, "c": c, "n": n}
            )
    return make_scripted_scorer(entries)


def keep_oracle(summary_texts, fact_texts, triples):
    """Exhaustive keep-predicate over every (sentence, fact) pair."""
    kept = []
    for k, text in enumerate(fact_texts):
        entailed = False
        for j in range(len(summary_texts)):
            e, c, n = triples[j][k]
            if e > c and e > n:
                entailed = True
        if entailed:
            kept.append(text)
    return kept


class TestFilterFacts:
    def test_model_knowledge_fact_dropped(self):
        summary = split_sentences("The mass measures roughly 1,000 ft long.")
        facts = [fact("The mass is a noun."), fact("The mass is long.")]
        scorer = scorer_for(
            summary.texts(),
            [f.text for f in facts],
            [[(0.05, 0.15, 0.80), (0.90, 0.05, 0.05)]],
        )
        kept = filter_facts(summary, facts, scorer)
        assert [f.text for f in kept] == ["The mass is long."]

    def test_self_identical_fact_kept(self):
        summary = split_sentences("The council rejected the budget.")
        facts = [fact("The council rejected the budget.")]
        scorer = scorer_for(
            summary.texts(), [facts[0].text], [[(0.95, 0.02, 0.03)]]
        )
        assert filter_facts(summary, facts, scorer) == facts

    def test_keep_pattern_from_matrix(self):
        summary = split_sentences("S one. S two.")
        facts = [fact("f1"), fact("f2"), fact("f3")]
        triples = [
            [(0.8, 0.1, 0.1), (0.2, 0.2, 0.6), (0.1, 0.1, 0.8)],
            [(0.1, 0.8, 0.1), (0.3, 0.3, 0.4), (0.7, 0.2, 0.1)],
        ]
        scorer = scorer_for(summary.texts(), [f.text for f in facts], triples)
        kept = filter_facts(summary, facts, scorer)
        assert [f.text for f in kept] == ["f1", "f3"]
        assert [f.text for f in kept] == keep_oracle(
            summary.texts(), [f.text for f in facts], triples
        )

    def test_output_is_ordered_subsequence(self):
        rng = random.Random(7)
        summary = split_sentences("A b. C d. E f.")
        facts = [fact(f"fact {k}") for k in range(6)]
        triples = [
            [random_triple(rng) for _ in facts] for _ in range(len(summary))
        ]
        scorer = scorer_for(summary.texts(), [f.text for f in facts], triples)
        kept = filter_facts(summary, facts, scorer)
        it = iter(facts)
        assert all(f in it for f in kept)  # subsequence check

    def test_adding_sentence_only_grows_kept_set(self):
        fact_texts = [f"fact {k}" for k in range(5)]
        facts = [fact(t) for t in fact_texts]
        rng = random.Random(13)
        triples = [
            [random_triple(rng) for _ in fact_texts] for _ in range(3)
        ]
        summaries = ["Sent one.", "Sent one. Sent two.", "Sent one. Sent two. Sent three."]
        previous: set[str] = set()
        for n, text in enumerate(summaries, start=1):
            summary = split_sentences(text)
            scorer = scorer_for(summary.texts(), fact_texts, triples[:n])
            kept = {f.text for f in filter_facts(summary, facts, scorer)}
            assert previous <= kept
            previous = kept

    def test_dropped_facts_carry_best_class_and_score(self):
        summary = split_sentences("Only sentence.")
        facts = [fact("Unsupported claim.")]
        scorer = scorer_for(
            summary.texts(), [facts[0].text], [[(0.2, 0.1, 0.7)]]
        )
        result = partition_facts(summary, facts, scorer)
        assert result.kept == ()
        dropped = result.dropped[0]
        assert dropped.best_entailment == 0.2
        assert dropped.top_class == "n"
        assert dropped.top_class_score == 0.7

    def test_nli_unavailable_propagates(self):
        class DownBackend:
            def raw_score(self, premise, hypothesis):
                raise TransportError("down")

            def describe(self):
                return "down"

        summary = split_sentences("Only sentence.")
        with pytest.raises(NliUnavailable):
            filter_facts(summary, [fact("f")], NliScorer(DownBackend()))


def random_triple(rng: random.Random) -> tuple[float, float, float]:
    a, b, c = rng.random(), rng.random(), rng.random()
    total = a + b + c
    return a / total, b / total, c / total
