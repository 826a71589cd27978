"""Build sparse association matrices from raw observations and poke at them.

The pipeline has three stages:

  1. observations  -- (word, context, count) triples, possibly streamed
  2. aggregation   -- per-family counts with frequency thresholds
  3. matrices      -- two sparse score matrices per family: one with
                      vocabulary rows (word -> its contexts) and one with
                      context rows (context -> its words)

Run from the repository root:  python3 demos/01_build_and_inspect.py
"""

import numpy as np

from facetwise import (
    Direction,
    IngestionConfig,
    Measure,
    aggregate,
    apmi,
    build_matrices,
    pmi,
)
from facetwise.datasets import demo_corpus
from facetwise.matrix import ContextFamily, SparseAssociationMatrix

records = demo_corpus()
print(f"corpus: {len(records)} observation records")

# Thresholds are 1 here because the toy corpus is tiny; real corpora
# want the defaults (min_word_frequency=5, min_pair_count=2).
result = aggregate(records, IngestionConfig(min_word_frequency=1, min_pair_count=1))
syn = result.families[ContextFamily.SYNTACTIC]
print(f"syntactic family: |V|={len(syn.vocabulary)} |C|={len(syn.contexts)} "
      f"pairs={syn.counts.nnz} total={syn.counts.total}")

# Plain PMI is symmetric; the asymmetric variant is not. Compare the
# two directions for one (word, context) pair.
w = syn.vocabulary.id_of("nixon")
c = syn.contexts.id_of("SubjectOf#veto")
print(f"\npmi(nixon, SubjectOf#veto)  = {pmi(syn.counts, w, c):.4f}")
print(f"apmi word->context          = {apmi(syn.counts, w, c):.4f}")
print(f"apmi context->word          = {apmi(syn.counts, w, c, Direction.CONTEXT_TO_WORD):.4f}")

# Build both matrix orientations with the shifted asymmetric measure.
m_vc, m_cv = build_matrices(syn.counts, Measure.APPMI, shift_k=5.0,
                            family=ContextFamily.SYNTACTIC)
print(f"\nmatrices: vc {m_vc.n_rows}x{m_vc.n_cols} nnz={m_vc.nnz}, "
      f"cv {m_cv.n_rows}x{m_cv.n_cols} nnz={m_cv.nnz}")

cols, vals = m_vc.row(syn.vocabulary.id_of("ford"))
print("\nford's strongest contexts:")
for col, val in sorted(zip(cols, vals), key=lambda t: -t[1])[:6]:
    print(f"  {syn.contexts.label_of(int(col)):<28} {val:.3f}")

# Matrices round-trip through a compact binary format, bit for bit.
blob = m_vc.to_bytes()
again = SparseAssociationMatrix.from_bytes(blob)
assert again.data.tobytes() == m_vc.data.tobytes()
print(f"\nserialized vc matrix: {len(blob)} bytes, round-trips bit-exact")

# Under PPMI the two orientations are exact transposes of each other;
# the asymmetric measure breaks that on purpose.
p_vc, p_cv = build_matrices(syn.counts, Measure.PPMI)
assert np.array_equal(p_vc.to_dense(), p_cv.to_dense().T)
assert not np.array_equal(m_vc.to_dense(), m_cv.to_dense().T)
print("ppmi pair is an exact transpose pair; appmi pair is not")
