"""Shape and determinism of the shipped synthetic corpora."""

from facetwise.datasets import (
    demo_corpus,
    merged_polysemy_corpus,
    multi_facet_benchmark,
    FIXTURE_ANIMALS,
    FIXTURE_CITIES,
)
from facetwise.matrix import ContextFamily


def test_demo_corpus_deterministic():
    a = demo_corpus()
    b = demo_corpus()
    assert a == b
    families = {r.family for r in a}
    assert families == {ContextFamily.SYNTACTIC, ContextFamily.SENTENCE}


def test_merged_polysemy_fixture_shape():
    records, merges = merged_polysemy_corpus()
    assert merges == {"cat": "catdenver", "denver": "catdenver"}
    words = {r.word for r in records}
    assert "cat" in words and "denver" in words
    assert set(FIXTURE_ANIMALS) < words
    assert set(FIXTURE_CITIES) < words
    assert records == merged_polysemy_corpus()[0]


def test_benchmark_shape():
    bench = multi_facet_benchmark()
    assert len(bench.categories) == 3
    names = [c.name for c in bench.categories]
    assert names == ["gems", "herbs", "fish"]
    for cat in bench.categories:
        assert len(cat.synsets) == 12
        assert all(len(s) == 1 for s in cat.synsets)
        assert cat.kind == "closed"
        members = {v for s in cat.synsets for v in s}
        assert set(cat.seed_pool) <= members
    herbs = bench.categories[1]
    assert set(herbs.seed_pool).isdisjoint({"basil", "sage", "rosemary"})
    assert bench.records == multi_facet_benchmark().records
