"""Acceptance suite: one test per release criterion.

Each test prints a single PASS line on success (run with `pytest -s` or
`-v` to see them); a failed criterion fails its test and prints
nothing, so the printed lines are exactly the criteria that hold.
"""

import math

import numpy as np
import pytest

from facetwise.analogy import squash_combine
from facetwise.association import (
    CooccurrenceCounts,
    Direction,
    Measure,
    apmi,
    apmi_value,
    appmi,
    pmi,
    pmi_value,
    ppmi,
)
from facetwise.datasets import (
    FIXTURE_ANIMALS,
    FIXTURE_CITIES,
    merged_polysemy_corpus,
    multi_facet_benchmark,
)
from facetwise.evaluation import (
    TrialConfig,
    load_builtin,
    map_at_n,
    map_score,
    run_trials,
)
from facetwise.expansion import ExpansionEngine, ExpansionParams, compute_focus, expand_ids
from facetwise.ingestion import (
    IngestionConfig,
    aggregate,
    build_domain_matrices,
    shares_lemma_prefix,
)
from facetwise.matrix import (
    BadMagicError,
    ContextFamily,
    MatrixHeader,
    Orientation,
    SparseAssociationMatrix,
    TruncatedDataError,
    VersionMismatchError,
    build_matrices,
)

from oracles import ProbabilityTableOracle, brute_force_focus, random_counts

NO_CUTS = IngestionConfig(min_word_frequency=1, min_pair_count=1)


def report(n: int, name: str) -> None:
    print(f"ACCEPTANCE {n:02d} {name}: PASS", flush=True)


def test_criterion_01_expansion_matches_dense_oracle():
    """Unweighted expansion equals the dense matrix-product similarity."""
    rng = np.random.default_rng(20240201)
    corpora = 0
    while corpora < 20:
        counts = random_counts(rng, max_words=50, max_contexts=50, density=0.2)
        m_vc, m_cv = build_matrices(counts, Measure.PPMI)
        if m_vc.nnz == 0:
            continue
        corpora += 1
        dense_vc = m_vc.to_dense()
        dense_cv = m_cv.to_dense()
        nonempty = [w for w in range(counts.n_words) if len(m_vc.row(w)[0])]
        k = min(len(nonempty), int(rng.integers(1, 4)))
        seeds = [int(s) for s in rng.choice(nonempty, size=k, replace=False)]

        params = ExpansionParams(
            rho=0.0,
            n=counts.n_contexts,
            result_limit=counts.n_words,
            include_seeds=True,
        )
        scored, _, _ = expand_ids(m_cv, m_vc, seeds, params)

        s = np.zeros(counts.n_words)
        s[seeds] = 1.0
        oracle = dense_cv.T @ (dense_vc.T @ s)

        got = dict(scored)
        for w in range(counts.n_words):
            if oracle[w] > 0:
                assert abs(got[w] - oracle[w]) <= 1e-4 * abs(oracle[w])
            else:
                assert w not in got
        positives = np.flatnonzero(oracle > 0)
        oracle_order = sorted(positives, key=lambda w: (-oracle[w], w))
        assert [w for w, _ in scored] == [int(w) for w in oracle_order]
    report(1, "expansion matches dense similarity oracle")


def test_criterion_02_transpose_property():
    """PPMI matrix pairs are exact transposes; the asymmetric measure is not."""
    rng = np.random.default_rng(20240202)
    for _ in range(20):
        counts = random_counts(rng, max_words=40, max_contexts=40, density=0.25)
        m_vc, m_cv = build_matrices(counts, Measure.PPMI)
        assert np.array_equal(m_vc.to_dense(), m_cv.to_dense().T)
    skewed = CooccurrenceCounts.from_pairs({(0, 0): 2, (1, 0): 2, (1, 1): 4}, 2, 2)
    a_vc, a_cv = build_matrices(skewed, Measure.APPMI, shift_k=1.0)
    assert not np.array_equal(a_vc.to_dense(), a_cv.to_dense().T)
    report(2, "transpose property and appmi asymmetry")


def test_criterion_03_association_unit_suite():
    """Worked association examples plus invariants over 1000 tables."""
    counts = CooccurrenceCounts.from_pairs({(0, 0): 2, (1, 1): 2, (2, 2): 4}, 3, 3)
    oracle = ProbabilityTableOracle(counts)
    assert pmi(counts, 0, 0) == pytest.approx(math.log(4), rel=1e-12)
    assert pmi(counts, 0, 0) == pytest.approx(oracle.pmi(0, 0), rel=1e-12)
    assert ppmi(counts, 0, 0) == pytest.approx(math.log(4), rel=1e-12)

    negative = CooccurrenceCounts.from_pairs(
        {(0, 0): 1, (0, 1): 3, (1, 0): 3, (1, 1): 1}, 2, 2
    )
    assert ProbabilityTableOracle(negative).pmi(0, 0) < 0
    assert ppmi(negative, 0, 0) == 0.0

    skewed = CooccurrenceCounts.from_pairs({(0, 0): 2, (1, 0): 2, (1, 1): 4}, 2, 2)
    s_oracle = ProbabilityTableOracle(skewed)
    assert apmi(skewed, 0, 0) == pytest.approx(math.log(2), rel=1e-12)
    assert apmi(skewed, 0, 0) == pytest.approx(s_oracle.apmi(0, 0), rel=1e-12)
    assert apmi(skewed, 0, 0, Direction.CONTEXT_TO_WORD) == pytest.approx(0.0, abs=1e-12)
    assert appmi(skewed, 0, 0, k=1.0) == pytest.approx(math.log(2) + 1.0, rel=1e-12)
    assert appmi(negative, 0, 0, k=0.0) == 0.0
    value = apmi(negative, 0, 0)
    assert appmi(negative, 0, 0, k=3.0) == pytest.approx(value + 3.0, rel=1e-12)

    rng = np.random.default_rng(20240203)
    for _ in range(1000):
        table = random_counts(rng, max_words=6, max_contexts=6, density=0.5, max_count=9)
        t_oracle = ProbabilityTableOracle(table)
        k = float(rng.uniform(0, 5))
        w = int(rng.integers(table.n_words))
        c = int(rng.integers(table.n_contexts))

        p = ppmi(table, w, c)
        ap = appmi(table, w, c, k)
        assert p >= 0.0 and ap >= 0.0
        assert ap <= p + k + 1e-12
        if table.pair_count(w, c):
            assert pmi(table, w, c) == pytest.approx(t_oracle.pmi(w, c), rel=1e-10, abs=1e-12)
            assert apmi(table, w, c) == pytest.approx(t_oracle.apmi(w, c), rel=1e-10, abs=1e-12)

        factor = int(rng.integers(2, 9))
        scaled = CooccurrenceCounts(
            table.word_ids, table.context_ids, table.counts * factor,
            table.n_words, table.n_contexts,
        )
        if table.pair_count(w, c):
            assert pmi(table, w, c) == pmi(scaled, w, c)
            assert apmi(table, w, c) == apmi(scaled, w, c)

        first, second = float(rng.integers(5, 100)), float(rng.integers(5, 100))
        total = float(rng.integers(200, 2000))
        lo = float(rng.integers(1, 4))
        hi = lo + float(rng.integers(1, 4))
        assert pmi_value(hi, first, second, total) >= pmi_value(lo, first, second, total)
        assert apmi_value(hi, first, second, total) >= apmi_value(lo, first, second, total)
    report(3, "association measures vs probability-table oracle")


def test_criterion_04_focus_matches_brute_force():
    """Focus selection equals the literal transcription, exactly."""
    rng = np.random.default_rng(20240204)
    for _ in range(1000):
        n_words = int(rng.integers(2, 12))
        n_contexts = int(rng.integers(2, 15))
        dense = (
            rng.random((n_words, n_contexts)) * (rng.random((n_words, n_contexts)) < 0.4)
        ).astype(np.float32)
        rows, cols = np.nonzero(dense)
        indptr = np.zeros(n_words + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n_words), out=indptr[1:])
        header = MatrixHeader(
            Orientation.V_ROWS, ContextFamily.SYNTACTIC, Measure.PPMI,
            5.0, n_words, n_contexts, 0,
        )
        m_vc = SparseAssociationMatrix(header, indptr, cols.astype(np.uint32), dense[rows, cols])

        k = int(rng.integers(1, min(4, n_words) + 1))
        seeds = [int(s) for s in rng.choice(n_words, size=k, replace=False)]
        rho = float(rng.choice([0.0, 0.5, 1.0, 3.0, 6.0]))
        n = int(rng.integers(1, n_contexts + 3))

        focus = compute_focus(m_vc, seeds, ExpansionParams(rho=rho, n=n))
        got = {e.context_id: e.weight for e in focus.entries}
        want = brute_force_focus(dense.astype(np.float64), seeds, rho, n)
        assert got == want
    report(4, "context focus matches brute-force transcription")


@pytest.fixture(scope="module")
def polysemy_engine():
    records, merges = merged_polysemy_corpus()
    config = IngestionConfig(min_word_frequency=1, min_pair_count=1, synthetic_merges=merges)
    agg = aggregate(records, config).families[ContextFamily.SYNTACTIC]
    m_vc, m_cv = build_matrices(agg.counts, Measure.APPMI, 5.0, ContextFamily.SYNTACTIC)
    return ExpansionEngine(agg.vocabulary, agg.contexts, m_vc, m_cv)


def test_criterion_05_merged_token_sense_selection(polysemy_engine):
    """One extra seed picks the sense of the artificial two-sense token."""
    params = ExpansionParams(rho=3.0, n=100, result_limit=40, include_seeds=False)

    def ranks(seeds):
        items = polysemy_engine.expand(seeds, params).items
        return {t: i for i, (t, _) in enumerate(items)}

    animal_side = ranks(["catdenver", "dog"])
    animals = [a for a in FIXTURE_ANIMALS if a != "dog"]
    assert all(a in animal_side for a in animals)
    assert all(c in animal_side for c in FIXTURE_CITIES)
    worst_animal = max(animal_side[a] for a in animals)
    best_city = min(animal_side[c] for c in FIXTURE_CITIES)
    assert worst_animal < best_city

    city_side = ranks(["catdenver", "phoenix"])
    cities = [c for c in FIXTURE_CITIES if c != "phoenix"]
    worst_city = max(city_side[c] for c in cities)
    best_animal = min(city_side[a] for a in FIXTURE_ANIMALS)
    assert worst_city < best_animal
    report(5, "merged-token polysemy resolved by the second seed")


def test_criterion_06_map_correctness():
    """Worked MAP cases, the closed-set identity, and order invariances."""
    gold_ab = [frozenset({"a"}), frozenset({"b"})]
    assert map_score(["a", "x", "b"], gold_ab) == pytest.approx(5 / 6)
    assert map_score([], gold_ab) == 0.0
    gold4 = [frozenset({c}) for c in "abcd"]
    assert map_at_n(["a", "x", "b", "c"], gold4, 2) == pytest.approx(5 / 6)
    assert map_at_n(["a", "x"], gold_ab, 1) == 1.0

    states = load_builtin("us_states")
    assert len(states.synsets) == 50
    rng = np.random.default_rng(20240206)
    variants = [sorted(s)[0] for s in states.synsets]
    for _ in range(25):
        items = variants + ["snake", "river", "lake"]
        rng.shuffle(items)
        items = items[: int(rng.integers(1, len(items) + 1))]
        assert map_at_n(items, states.synsets, 50) == pytest.approx(
            map_score(items, states.synsets)
        )
        perm = list(states.synsets)
        rng.shuffle(perm)
        assert map_score(items, perm) == pytest.approx(map_score(items, states.synsets))

    # duplicates: second sighting counts as a gold item but adds no sample
    assert map_score(["a", "a", "b"], gold_ab) == pytest.approx(1.0)
    assert map_at_n(["a", "a", "b"], gold_ab, 2) == pytest.approx(1.0)
    report(6, "map and map_n correctness")


def test_criterion_07_squash_combiner():
    assert squash_combine(0.0, 0.0) == 0.0
    assert squash_combine(1.0, 1.0) == 2.0
    assert squash_combine(99.0, 99.0) == 100.0
    rng = np.random.default_rng(20240207)
    for _ in range(1000):
        m, d = rng.uniform(0, 2000, size=2)
        value = squash_combine(m, d)
        assert 0 <= value < 200
        assert squash_combine(m + 1e-3, d) > value
        assert squash_combine(m, d + 1e-3) > value
    report(7, "squash combiner values and bounds")


def test_criterion_08_domain_masking():
    records = []
    pairs = [
        ("india", "indian", 9),
        ("indian", "india", 9),
        ("india", "rupee", 1),
        ("rupee", "india", 1),
        ("indian", "rupee", 6),
        ("rupee", "indian", 6),
        ("evolution", "theory", 6),
        ("theory", "evolution", 6),
        ("number", "theory", 6),
        ("theory", "number", 6),
        ("india", "india", 4),
        ("evolution", "evolution", 4),
    ]
    from facetwise.ingestion import ObservationRecord

    for w, c, n in pairs:
        records.append(ObservationRecord(w, c, n, ContextFamily.SENTENCE))
    agg = aggregate(records, NO_CUTS).families[ContextFamily.SENTENCE]
    d_vc, _ = build_domain_matrices(agg, Measure.APPMI, 5.0)

    kept = set()
    for w in range(d_vc.n_rows):
        word = agg.vocabulary.term_of(w)
        cols, _ = d_vc.row(w)
        for c in cols:
            kept.add((word, agg.contexts.label_of(int(c))))
    assert ("india", "indian") in kept
    assert ("evolution", "number") not in kept
    assert ("evolution", "theory") not in kept
    assert ("number", "theory") not in kept
    for word, label in kept:
        assert word == label or shares_lemma_prefix(word, label)
    assert shares_lemma_prefix("india", "indian")
    assert not shares_lemma_prefix("evolution", "number")
    report(8, "domain matrix prefix masking")


def test_criterion_09_persistence_round_trip():
    """Bit-exact round trips up to a million stored scores."""
    rng = np.random.default_rng(20240209)
    for n_rows, n_cols, density in ((20, 30, 0.2), (700, 900, 0.25), (1200, 4200, 0.2)):
        mask = rng.random((n_rows, n_cols)) < density
        rows, cols = np.nonzero(mask)
        vals = rng.uniform(1e-4, 20.0, size=len(rows)).astype(np.float32)
        indptr = np.zeros(n_rows + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n_rows), out=indptr[1:])
        header = MatrixHeader(
            Orientation.C_ROWS, ContextFamily.SENTENCE, Measure.APPMI,
            3.25, n_rows, n_cols, int(rng.integers(2**60)),
        )
        matrix = SparseAssociationMatrix(header, indptr, cols.astype(np.uint32), vals)
        blob = matrix.to_bytes()
        again = SparseAssociationMatrix.from_bytes(blob)
        assert again.header == matrix.header
        assert again.data.tobytes() == matrix.data.tobytes()
        assert np.array_equal(again.indices, matrix.indices)
        assert np.array_equal(again.indptr, matrix.indptr)
    assert len(rows) > 1_000_000  # the last matrix is the big one

    corrupted = bytearray(blob)
    corrupted[:4] = b"XXXX"
    with pytest.raises(BadMagicError):
        SparseAssociationMatrix.from_bytes(bytes(corrupted))
    versioned = bytearray(blob)
    versioned[4:8] = (77).to_bytes(4, "little")
    with pytest.raises(VersionMismatchError):
        SparseAssociationMatrix.from_bytes(bytes(versioned))
    for cut in (3, 40, len(blob) // 3, len(blob) - 5):
        with pytest.raises(TruncatedDataError):
            SparseAssociationMatrix.from_bytes(blob[:cut])
    report(9, "bit-exact persistence and error kinds")


def test_criterion_10_benchmark_config_ordering():
    """Support penalty and asymmetric association help, individually
    and jointly, on the shipped multi-facet benchmark."""
    bench = multi_facet_benchmark()
    agg = aggregate(bench.records, NO_CUTS).families[ContextFamily.SYNTACTIC]

    def mean_map(measure: Measure, rho: float) -> float:
        m_vc, m_cv = build_matrices(agg.counts, measure, 5.0, ContextFamily.SYNTACTIC)
        engine = ExpansionEngine(agg.vocabulary, agg.contexts, m_vc, m_cv)
        params = ExpansionParams(rho=rho, n=100, result_limit=60, include_seeds=True)

        def expander(seeds):
            return [t for t, _ in engine.expand(seeds, params).items]

        scores = []
        for category in bench.categories:
            config = TrialConfig(trials=50, seeds_per_trial=3, rng_seed=42)
            scores.append(run_trials(category, expander, config).mean_map)
        return sum(scores) / len(scores)

    ppmi_rho0 = mean_map(Measure.PPMI, 0.0)
    appmi_rho0 = mean_map(Measure.APPMI, 0.0)
    appmi_rho3 = mean_map(Measure.APPMI, 3.0)
    assert appmi_rho3 >= appmi_rho0
    assert appmi_rho3 >= ppmi_rho0
    print(
        f"  benchmark mean MAP: ppmi rho0 {ppmi_rho0:.3f} | "
        f"appmi rho0 {appmi_rho0:.3f} | appmi rho3 {appmi_rho3:.3f}"
    )
    report(10, "benchmark ordering across measure and penalty settings")
