"""Sparse word-context association matrices with context-sensitive
set expansion, two-term analogies, and ranked-list evaluation.

The pipeline: aggregate (word, context) observations into counts, turn
the counts into a pair of sparse association matrices per context
family, then answer queries by seed-focused matrix products. See the
README for a walkthrough and `demos/` for runnable examples.
"""

from .association import (
    AssociationConfig,
    CooccurrenceCounts,
    Direction,
    Measure,
    apmi,
    appmi,
    pmi,
    ppmi,
)
from .analogy import (
    AnalogyCandidate,
    AnalogyQuery,
    AnalogyResult,
    UnresolvableTermError,
    solve,
    squash_combine,
)
from .evaluation import (
    GoldCategory,
    TrialConfig,
    TrialReport,
    load_builtin,
    load_gold_file,
    map_at_n,
    map_score,
    precision_at,
    run_trials,
)
from .expansion import (
    ContextFocus,
    Expansion,
    ExpansionEngine,
    ExpansionParams,
    SeedSet,
    UnresolvedSeedsError,
    compute_focus,
    expand_ids,
)
from .ingestion import (
    AggregatedCounts,
    AggregateResult,
    IngestionConfig,
    ObservationRecord,
    aggregate,
    build_domain_matrices,
    extract_adjacency_contexts,
    extract_sentence_contexts,
    parse_triples,
    read_triples,
    shares_lemma_prefix,
)
from .matrix import (
    BadMagicError,
    ContextFamily,
    ContextInventory,
    MatrixFormatError,
    Orientation,
    SparseAssociationMatrix,
    TruncatedDataError,
    VersionMismatchError,
    Vocabulary,
    build_matrices,
    check_matrix_pair,
)

__version__ = "0.1.0"

__all__ = [
    "AssociationConfig",
    "CooccurrenceCounts",
    "Direction",
    "Measure",
    "pmi",
    "ppmi",
    "apmi",
    "appmi",
    "Vocabulary",
    "ContextInventory",
    "ContextFamily",
    "Orientation",
    "SparseAssociationMatrix",
    "MatrixFormatError",
    "BadMagicError",
    "VersionMismatchError",
    "TruncatedDataError",
    "build_matrices",
    "check_matrix_pair",
    "ObservationRecord",
    "IngestionConfig",
    "AggregatedCounts",
    "AggregateResult",
    "aggregate",
    "parse_triples",
    "read_triples",
    "extract_sentence_contexts",
    "extract_adjacency_contexts",
    "shares_lemma_prefix",
    "build_domain_matrices",
    "ExpansionParams",
    "SeedSet",
    "ContextFocus",
    "Expansion",
    "ExpansionEngine",
    "UnresolvedSeedsError",
    "compute_focus",
    "expand_ids",
    "AnalogyQuery",
    "AnalogyCandidate",
    "AnalogyResult",
    "UnresolvableTermError",
    "squash_combine",
    "solve",
    "GoldCategory",
    "TrialConfig",
    "TrialReport",
    "precision_at",
    "map_score",
    "map_at_n",
    "run_trials",
    "load_gold_file",
    "load_builtin",
]
