import pytest
from hypothesis import given
from hypothesis import strategies as st

from fizz.errors import ContractViolation
from fizz.factquality import (
    FactSetPair,
    analyze_fact_pairs,
    content_similarity,
    fact_stats,
    load_fact_pairs,
    rouge1,
)


class TestRouge1:
    def test_identical_strings(self):
        assert rouge1("a b c", "a b c") == (1.0, 1.0, 1.0)

    def test_disjoint_token_sets(self):
        assert rouge1("a b", "c d") == (0.0, 0.0, 0.0)

    def test_two_of_three_overlap(self):
        p, r, f1 = rouge1("a b c", "a b d")
        assert (p, r, f1) == (2 / 3, 2 / 3, 2 / 3)

    def test_clipped_counts(self):
        # candidate repeats "a" three times but the reference has it once
        p, r, f1 = rouge1("a a a", "a b")
        assert p == 1 / 3
        assert r == 1 / 2

    def test_lower_casing(self):
        assert rouge1("The Cat", "the cat") == (1.0, 1.0, 1.0)

    def test_empty_sides_are_zero(self):
        assert rouge1("", "a") == (0.0, 0.0, 0.0)
        assert rouge1("a", "") == (0.0, 0.0, 0.0)

    @given(st.lists(st.sampled_from("abcdef"), max_size=8),
           st.lists(st.sampled_from("abcdef"), max_size=8))
    def test_precision_recall_symmetry(self, xs, ys):
        a, b = " ".join(xs), " ".join(ys)
        assert rouge1(a, b).p == rouge1(b, a).r


def pair(generated, human, pid="s1"):
    return FactSetPair(summary_id=pid, generated=tuple(generated), human=tuple(human))


class TestContentSimilarity:
    def test_identical_sets_score_one(self):
        facts = ["Fact one.", "Fact two.", "Fact three."]
        assert content_similarity([pair(facts, facts)]) == 1.0

    def test_generated_subset_of_human_scores_one(self):
        human = ["Fact one.", "Fact two.", "Fact three."]
        assert content_similarity([pair(human[:2], human)]) == 1.0

    def test_two_pair_fixture_matches_double_loop_oracle(self):
        pairs = [
            pair(["a b c", "d e"], ["a b", "d e f"], "s1"),
            pair(["x y"], ["x z", "y w"], "s2"),
        ]
        expected = 0.0
        for p in pairs:
            per_fact = []
            for cand in p.generated:
                best = 0.0
                for ref in p.human:
                    best = max(best, rouge1(cand, ref).f1)
                per_fact.append(best)
            expected += sum(per_fact) / len(per_fact)
        expected /= len(pairs)
        assert content_similarity(pairs) == expected

    def test_score_stays_in_unit_interval(self):
        pairs = [pair(["a b"], ["c d"]), pair(["a"], ["a"])]
        value = content_similarity(pairs)
        assert 0.0 <= value <= 1.0

    def test_empty_generated_contributes_zero_with_warning(self, caplog):
        pairs = [pair([], ["a"]), pair(["a"], ["a"])]
        with caplog.at_level("WARNING"):
            value = content_similarity(pairs)
        assert value == 0.5
        assert any("no generated facts" in r.message for r in caplog.records)

    def test_empty_human_set_rejected(self):
        with pytest.raises(ContractViolation):
            content_similarity([pair(["a"], [])])

    def test_precision_and_recall_variants(self):
        pairs = [pair(["a b c"], ["a b"])]
        assert content_similarity(pairs, metric="p") == 2 / 3
        assert content_similarity(pairs, metric="r") == 1.0


class TestFactStats:
    def test_single_summary(self):
        avg_count, avg_tokens = fact_stats([["A b.", "C d e."]])
        assert avg_count == 2.0
        assert avg_tokens == 5.0

    def test_empty_corpus_warns(self, caplog):
        with caplog.at_level("WARNING"):
            assert fact_stats([]) == (0.0, 0.0)
        assert caplog.records

    def test_three_summary_fixture(self):
        sets = [["a b", "c"], ["d e f"], ["g", "h", "i j"]]
        avg_count, avg_tokens = fact_stats(sets)
        assert avg_count == (2 + 1 + 3) / 3
        assert avg_tokens == (3 + 3 + 4) / 3

    def test_order_invariance(self):
        sets = [["a b"], ["c d e"], ["f"]]
        assert fact_stats(sets) == fact_stats(list(reversed(sets)))


class TestLoadAndAnalyze:
    def test_load_and_analyze_fixture(self, corpus_dir):
        pairs = load_fact_pairs(str(corpus_dir / "fact_pairs.jsonl"))
        assert [p.summary_id for p in pairs] == ["rose-1", "rose-2"]
        metrics = analyze_fact_pairs(pairs)
        assert metrics["n_summaries"] == 2
        assert 0.0 <= metrics["content_similarity_f1"] <= 1.0
        assert metrics["avg_fact_count"] == 2.0
