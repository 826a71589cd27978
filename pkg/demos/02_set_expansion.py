"""Context-focused set expansion: the seeds decide what similarity means.

`ford` is both a president and a car in the demo corpus. Expanding
{ford, nixon} and {ford, chevy} from the same matrices gives entirely
different sets, because the focus step keeps only the contexts the
seeds share and penalizes the rest by the support fraction raised to
rho.

Run from the repository root:  python3 demos/02_set_expansion.py
"""

from facetwise import (
    ExpansionEngine,
    ExpansionParams,
    IngestionConfig,
    Measure,
    aggregate,
    build_matrices,
)
from facetwise.datasets import demo_corpus, merged_polysemy_corpus
from facetwise.matrix import ContextFamily

result = aggregate(demo_corpus(), IngestionConfig(min_word_frequency=1, min_pair_count=1))
syn = result.families[ContextFamily.SYNTACTIC]
m_vc, m_cv = build_matrices(syn.counts, Measure.APPMI, 5.0, ContextFamily.SYNTACTIC)
engine = ExpansionEngine(syn.vocabulary, syn.contexts, m_vc, m_cv)

params = ExpansionParams(rho=3.0, n=100, result_limit=8)
for seeds in (["ford", "nixon"], ["ford", "chevy"]):
    expansion = engine.expand(seeds, params)
    print(f"expand {seeds}:")
    for term, score in expansion.items:
        print(f"  {term:<10} {score:9.2f}")
    print()

# The focus is the explanation: which contexts were kept, how strongly
# they were activated, and what fraction of the seeds support them.
expansion = engine.expand(["ford", "nixon"], ExpansionParams(rho=3.0, n=6, result_limit=5))
print("focus behind {ford, nixon} (top 6 contexts):")
print(f"  {'context':<28} {'a':>7} {'f':>5} {'score':>8} {'weight':>7}")
for row in engine.describe_focus(expansion.focus):
    print(f"  {row['context']:<28} {row['activation']:7.2f} {row['support']:5.2f} "
          f"{row['score']:8.2f} {row['weight']:7.3f}")

# rho = 0 turns the support penalty off, which makes the car contexts
# (supported by only half the seeds) count at full strength.
print("\nsame seeds with rho=0 (no support penalty):")
loose = engine.expand(["ford", "nixon"], ExpansionParams(rho=0.0, n=100, result_limit=8))
for term, score in loose.items:
    print(f"  {term:<10} {score:9.2f}")

# A harsher illustration: merge two unrelated words into one token and
# watch a single extra seed pick out the intended sense.
records, merges = merged_polysemy_corpus()
config = IngestionConfig(min_word_frequency=1, min_pair_count=1, synthetic_merges=merges)
agg = aggregate(records, config).families[ContextFamily.SYNTACTIC]
v_vc, v_cv = build_matrices(agg.counts, Measure.APPMI, 5.0, ContextFamily.SYNTACTIC)
merged_engine = ExpansionEngine(agg.vocabulary, agg.contexts, v_vc, v_cv)

print("\nafter merging cat+denver into the token 'catdenver':")
for seeds in (["catdenver", "dog"], ["catdenver", "phoenix"]):
    items = merged_engine.expand(seeds, ExpansionParams(rho=3.0, result_limit=6)).items
    ranked = ", ".join(t for t, _ in items)
    print(f"  expand {seeds}: {ranked}")
