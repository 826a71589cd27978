"""Aggregation, extractors, merges, and domain-matrix masking."""

import io
import random

import numpy as np
import pytest

from facetwise.association import Measure
from facetwise.ingestion import (
    IngestionConfig,
    ObservationRecord,
    aggregate,
    build_domain_matrices,
    extract_adjacency_contexts,
    extract_sentence_contexts,
    parse_triples,
    shares_lemma_prefix,
    write_triples,
)
from facetwise.matrix import ContextFamily

SYN = ContextFamily.SYNTACTIC
SENT = ContextFamily.SENTENCE

NO_CUTS = IngestionConfig(min_word_frequency=1, min_pair_count=1)


def rec(word, label, count=1, family=SYN):
    return ObservationRecord(word, label, count, family)


class TestAggregate:
    def test_empty_stream(self):
        result = aggregate([], NO_CUTS)
        assert result.families == {}
        assert result.skipped == 0

    def test_duplicate_triples_sum(self):
        result = aggregate([rec("w", "c")] * 3, NO_CUTS)
        agg = result.families[SYN]
        w = agg.vocabulary.id_of("w")
        c = agg.contexts.id_of("c")
        assert agg.counts.pair_count(w, c) == 3

    def test_word_threshold_drops_and_marginals_consistent(self):
        records = [
            rec("common", "c1", 5),
            rec("common", "c2", 5),
            rec("rare", "c1", 2),
        ]
        result = aggregate(records, IngestionConfig(min_word_frequency=4, min_pair_count=1))
        agg = result.families[SYN]
        assert "rare" not in agg.vocabulary
        assert "common" in agg.vocabulary
        # marginals re-derived by brute force over surviving pairs
        agg.counts.validate()
        c1 = agg.contexts.id_of("c1")
        assert agg.counts.context_marginals[c1] == 5

    def test_pair_threshold(self):
        records = [rec("w", "often", 5), rec("w", "once", 1)]
        result = aggregate(records, IngestionConfig(min_word_frequency=1, min_pair_count=2))
        agg = result.families[SYN]
        assert "once" not in agg.contexts
        assert "often" in agg.contexts

    def test_order_insensitive(self):
        records = [
            rec("a", "x", 2),
            rec("b", "y", 3),
            rec("a", "y", 1),
            rec("b", "x", 4),
            rec("a", "x", 1),
        ]
        base = aggregate(records, NO_CUTS).families[SYN]
        for seed in range(5):
            shuffled = records[:]
            random.Random(seed).shuffle(shuffled)
            other = aggregate(shuffled, NO_CUTS).families[SYN]
            assert other.vocabulary.terms == base.vocabulary.terms
            assert other.contexts.labels == base.contexts.labels
            assert np.array_equal(other.counts.counts, base.counts.counts)
            assert np.array_equal(other.counts.word_ids, base.counts.word_ids)

    def test_malformed_records_counted(self):
        records = [rec("w", "c"), rec("", "c"), rec("w", ""), rec("w", "c", 0)]
        result = aggregate(records, NO_CUTS)
        assert result.skipped == 3
        assert result.families[SYN].counts.total == 1

    def test_lowercasing(self):
        result = aggregate([rec("Car", "ModifiedBy#Red")], NO_CUTS)
        agg = result.families[SYN]
        assert "car" in agg.vocabulary
        assert "ModifiedBy#red" in agg.contexts

    def test_families_kept_separate(self):
        records = [rec("w", "c", 1, SYN), rec("w", "c", 1, SENT)]
        result = aggregate(records, NO_CUTS)
        assert set(result.families) == {SYN, SENT}
        assert result.families[SYN].counts.total == 1
        assert result.families[SENT].counts.total == 1

    def test_synthetic_merge_sums_rows(self):
        records = [
            rec("cat", "x", 2),
            rec("cat", "y", 1),
            rec("denver", "x", 3),
            rec("denver", "z", 4),
            rec("dog", "x", 5),
        ]
        merges = {"cat": "catdenver", "denver": "catdenver"}
        merged = aggregate(records, IngestionConfig(1, 1, synthetic_merges=merges)).families[SYN]
        plain = aggregate(records, NO_CUTS).families[SYN]
        m = merged.vocabulary.id_of("catdenver")
        for label in ("x", "y", "z"):
            want = sum(
                plain.counts.pair_count(plain.vocabulary.id_of(t), plain.contexts.id_of(label))
                for t in ("cat", "denver")
            )
            got = merged.counts.pair_count(m, merged.contexts.id_of(label))
            assert got == want
        assert "cat" not in merged.vocabulary
        assert "denver" not in merged.vocabulary

    def test_merge_applies_to_labels(self):
        records = [
            rec("pet", "cat", 2, SENT),
            rec("airport", "denver", 3, SENT),
            rec("pet", "ModifiedBy#cat", 2, SYN),
        ]
        merges = {"cat": "catdenver", "denver": "catdenver"}
        result = aggregate(records, IngestionConfig(1, 1, synthetic_merges=merges))
        assert "catdenver" in result.families[SENT].contexts
        assert "cat" not in result.families[SENT].contexts
        assert "ModifiedBy#catdenver" in result.families[SYN].contexts


class TestTripleParsing:
    def test_round_trip(self):
        records = [rec("w", "c", 2, SYN), rec("a", "b", 1, SENT)]
        buf = io.StringIO()
        write_triples(records, buf)
        parsed = list(parse_triples(buf.getvalue().splitlines()))
        assert parsed == records

    def test_malformed_lines_become_invalid_records(self):
        lines = ["w\tc\t2\tsyntactic", "toofew\tcols", "w\tc\tNaN\tsyntactic", "w\tc\t2\tnofamily"]
        parsed = list(parse_triples(lines))
        assert parsed[0].is_valid()
        assert sum(1 for p in parsed if not p.is_valid()) == 3

    def test_comments_and_blanks_skipped(self):
        parsed = list(parse_triples(["# header", "", "w\tc\t1\tsyntactic"]))
        assert len(parsed) == 1


class TestSentenceExtractor:
    def test_single_token(self):
        assert extract_sentence_contexts(["a"]) == []

    def test_two_tokens(self):
        got = {(r.word, r.label) for r in extract_sentence_contexts(["a", "b"])}
        assert got == {("a", "b"), ("b", "a")}

    def test_repeated_token_self_pairs(self):
        records = extract_sentence_contexts(["a", "b", "a"])
        assert len(records) == 6
        pairs = [(r.word, r.label) for r in records]
        assert pairs.count(("a", "a")) == 2
        assert all(r.family is SENT for r in records)


class TestAdjacencyExtractor:
    def test_adjective_noun(self):
        got = extract_adjacency_contexts([("red", "ADJ"), ("car", "NOUN")])
        pairs = {(r.word, r.label) for r in got}
        assert pairs == {("car", "ModifiedBy#red"), ("red", "Modifies#car")}
        assert all(r.family is SYN for r in got)

    def test_empty(self):
        assert extract_adjacency_contexts([]) == []

    def test_verb_noun(self):
        got = extract_adjacency_contexts([("eat", "VERB"), ("apple", "NOUN")])
        assert {(r.word, r.label) for r in got} == {("apple", "ObjectOf#eat")}

    def test_noun_verb(self):
        got = extract_adjacency_contexts([("author", "NOUN"), ("write", "VERB")])
        assert {(r.word, r.label) for r in got} == {("author", "SubjectOf#write")}


class TestPrefixRule:
    def test_india_indian_retained(self):
        # shared prefix "india" is 5 chars of a 6-char longer string
        assert shares_lemma_prefix("india", "indian")
        assert shares_lemma_prefix("indian", "india")

    def test_unrelated_dropped(self):
        assert not shares_lemma_prefix("evolution", "number")
        assert not shares_lemma_prefix("theory", "number")

    def test_identical(self):
        assert shares_lemma_prefix("cat", "cat")

    def test_boundary_is_strict(self):
        # 4 of 5 chars = 0.8 exactly, which is not more than 0.8
        assert not shares_lemma_prefix("abcd", "abcde")
        assert shares_lemma_prefix("abcde", "abcdef")

    def test_empty_strings(self):
        assert not shares_lemma_prefix("", "")
        assert not shares_lemma_prefix("a", "")


class TestDomainMatrices:
    def build(self, pairs):
        records = []
        for w, c, n in pairs:
            records.append(rec(w, c, n, SENT))
        agg = aggregate(records, NO_CUTS).families[SENT]
        d_vc, d_cv = build_domain_matrices(agg, Measure.PPMI)
        return agg, d_vc, d_cv

    def test_masking_keeps_lemma_pairs_and_diagonal(self):
        agg, d_vc, d_cv = self.build(
            [
                ("india", "indian", 9),
                ("india", "rupee", 1),
                ("india", "india", 4),
                ("rupee", "india", 1),
                ("rupee", "rupee", 30),
                ("indian", "rupee", 2),
            ]
        )
        vocab, contexts = agg.vocabulary, agg.contexts
        kept = set()
        for w in range(d_vc.n_rows):
            cols, _ = d_vc.row(w)
            for c in cols:
                kept.add((vocab.term_of(w), contexts.label_of(int(c))))
        assert ("india", "indian") in kept
        assert ("india", "india") in kept
        assert ("rupee", "rupee") in kept
        assert ("india", "rupee") not in kept
        assert ("indian", "rupee") not in kept

    def test_every_retained_offdiagonal_satisfies_predicate(self):
        agg, d_vc, _ = self.build(
            [
                ("evolution", "theory", 5),
                ("number", "theory", 5),
                ("theory", "evolution", 5),
                ("theory", "number", 5),
                ("india", "indian", 7),
                ("indian", "india", 7),
            ]
        )
        for w in range(d_vc.n_rows):
            word = agg.vocabulary.term_of(w)
            cols, _ = d_vc.row(w)
            for c in cols:
                label = agg.contexts.label_of(int(c))
                assert word == label or shares_lemma_prefix(word, label)

    def test_cv_side_not_masked(self):
        agg, d_vc, d_cv = self.build(
            [
                ("india", "indian", 9),
                ("indian", "rupee", 8),
                ("rupee", "indian", 8),
                ("india", "cricket", 1),
                ("cricket", "india", 1),
                ("indian", "india", 9),
            ]
        )
        # the context-rows matrix keeps non-lemma co-occurrences
        indian_ctx = agg.contexts.id_of("indian")
        cols, _ = d_cv.row(indian_ctx)
        terms = {agg.vocabulary.term_of(int(c)) for c in cols}
        assert "rupee" in terms

    def test_requires_sentence_family(self):
        records = [rec("w", "c", 2, SYN)]
        agg = aggregate(records, NO_CUTS).families[SYN]
        with pytest.raises(ValueError):
            build_domain_matrices(agg, Measure.PPMI)
