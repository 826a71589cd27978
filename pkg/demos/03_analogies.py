"""Two-term analogies: "what is the dollar of india?"

Two ingredients, each a singleton expansion:

  * a LIKE list over the syntactic matrices (things similar to dollar:
    other currencies), and
  * a DOMAIN list over sentence-co-occurrence matrices (things seen
    around india and its related word forms).

Candidates on both lists are combined in squash space, a bounded score
where each side saturates, so an answer needs standing on both sides.

The domain matrices get one extra trick: in the vocabulary-rows matrix
every off-diagonal entry is dropped unless the word and the context
label share most of a prefix (india/indian survives). Without that,
expanding a word by co-occurrence returns the neighbors of its
neighbors, which is far too broad.

Run from the repository root:  python3 demos/03_analogies.py
"""

from facetwise import (
    AnalogyQuery,
    ExpansionEngine,
    IngestionConfig,
    Measure,
    aggregate,
    build_domain_matrices,
    build_matrices,
    solve,
    squash_combine,
)
from facetwise.datasets import demo_corpus
from facetwise.matrix import ContextFamily

result = aggregate(demo_corpus(), IngestionConfig(min_word_frequency=1, min_pair_count=1))
syn = result.families[ContextFamily.SYNTACTIC]
dom = result.families[ContextFamily.SENTENCE]

m_vc, m_cv = build_matrices(syn.counts, Measure.APPMI, 5.0, ContextFamily.SYNTACTIC)
d_vc, d_cv = build_domain_matrices(dom, Measure.APPMI, 5.0)
print(f"domain vocabulary-rows matrix after prefix masking: {d_vc.nnz} entries "
      f"(context-rows side keeps {d_cv.nnz})")

like_engine = ExpansionEngine(syn.vocabulary, syn.contexts, m_vc, m_cv)
domain_engine = ExpansionEngine(dom.vocabulary, dom.contexts, d_vc, d_cv)

print("\nthe squash transform saturates each side near 100:")
for m, d in ((1.0, 1.0), (10.0, 1.0), (99.0, 99.0), (500.0, 0.5)):
    print(f"  combine(m={m:>5}, d={d:>5}) = {squash_combine(m, d):7.3f}")

print()
for like, of in (("dollar", "india"), ("ganga", "egypt"), ("civic", "toyota")):
    answer = solve(AnalogyQuery(like, of), like_engine, domain_engine)
    print(f"what is the {like} of {of}?")
    for cand in answer.items[:3]:
        print(f"  {cand.term:<10} combined {cand.combined:7.2f}  "
              f"(like-side {cand.m_score:8.2f}, domain-side {cand.d_score:7.2f})")

# No shared candidate means no answer, by design: rivers are never
# seen around usa in this corpus.
empty = solve(AnalogyQuery("ganga", "usa"), like_engine, domain_engine)
print(f"\nwhat is the ganga of usa? -> {len(empty.items)} candidates ({empty.reason})")
