"""Scoring expansions with MAP over gold synsets, and the benchmark grid.

A gold category is a list of synsets (surface variants of one entity).
MAP averages, over the synsets, the precision of the ranked list at
each synset's first sighting; map_at_n generalizes this to open-ended
categories by averaging over the first n synsets seen.

The second half runs the shipped multi-facet benchmark: three closed
categories whose members carry deliberately lopsided senses, expanded
under three association/weighting settings. The support penalty (rho)
and the shifted asymmetric measure each repair a different failure, so
the combined setting wins.

Run from the repository root:  python3 demos/04_evaluation.py
"""

from facetwise import (
    ExpansionEngine,
    ExpansionParams,
    IngestionConfig,
    Measure,
    TrialConfig,
    aggregate,
    build_matrices,
    load_builtin,
    map_at_n,
    map_score,
    run_trials,
)
from facetwise.datasets import multi_facet_benchmark
from facetwise.matrix import ContextFamily

# --- the metric itself, on a list you can check by hand ---------------

gold = [frozenset({"california", "ca"}), frozenset({"texas", "tx"})]
ranked = ["california", "borderlands", "tx"]
print(f"gold: {gold}")
print(f"list: {ranked}")
print(f"map        = {map_score(ranked, gold):.4f}   "
      "(california at 1: precision 1; texas at 3: precision 2/3)")
print(f"map_at_n=1 = {map_at_n(ranked, gold, 1):.4f}")

states = load_builtin("us_states")
print(f"\nshipped gold categories: us_states ({len(states.synsets)} synsets), "
      f"nfl_teams, break_verbs (open set, scored at map_at_n=30)")

# --- the benchmark grid ------------------------------------------------

bench = multi_facet_benchmark()
agg = aggregate(
    bench.records, IngestionConfig(min_word_frequency=1, min_pair_count=1)
).families[ContextFamily.SYNTACTIC]

settings = [
    ("ppmi  rho=0", Measure.PPMI, 0.0),
    ("ppmi  rho=3", Measure.PPMI, 3.0),
    ("appmi rho=0", Measure.APPMI, 0.0),
    ("appmi rho=3", Measure.APPMI, 3.0),
]

names = [c.name for c in bench.categories]
print(f"\nmean MAP over 50 trials x 3 random seeds, per category:")
print(f"  {'setting':<12} " + " ".join(f"{n:>7}" for n in names) + f" {'overall':>8}")
for label, measure, rho in settings:
    m_vc, m_cv = build_matrices(agg.counts, measure, 5.0, ContextFamily.SYNTACTIC)
    engine = ExpansionEngine(agg.vocabulary, agg.contexts, m_vc, m_cv)
    params = ExpansionParams(rho=rho, n=100, result_limit=60, include_seeds=True)

    def expander(seeds):
        return [t for t, _ in engine.expand(seeds, params).items]

    scores = [
        run_trials(cat, expander, TrialConfig(trials=50, seeds_per_trial=3, rng_seed=42)).mean_map
        for cat in bench.categories
    ]
    overall = sum(scores) / len(scores)
    print(f"  {label:<12} " + " ".join(f"{s:7.3f}" for s in scores) + f" {overall:8.3f}")

print(
    "\ngems punishes rho=0 (a frequent name sense floods the expansion);\n"
    "herbs punishes ppmi (three members have negative pmi with every herb\n"
    "context and vanish); fish is easy everywhere. Raising rho and switching\n"
    "to the shifted asymmetric measure help separately and together."
)
