"""Streaming aggregation of (word, context) observations into counts.

The primary input is a TSV stream of pre-extracted triples:

    word <TAB> context-label <TAB> count <TAB> family

with family one of "syntactic" or "sentence-cooccurrence". Two minimal
reference extractors are included so the pipeline can also run on plain
text (one sentence per line): a same-sentence co-occurrence extractor
for the domain family, and an adjacency extractor that emits
`Relation#headword` labels for adjective-noun and verb-noun adjacency
given coarse POS tags.

Aggregation is order-insensitive: ids are assigned lexicographically
after counting, so any permutation of the record stream produces
identical counts.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, TextIO

import numpy as np

from .association import CooccurrenceCounts, Measure
from .matrix import (
    ContextFamily,
    ContextInventory,
    SparseAssociationMatrix,
    Vocabulary,
    build_matrices,
)

LEMMA_PREFIX_THRESHOLD = 0.8


@dataclass(frozen=True)
class ObservationRecord:
    word: str
    label: str
    count: int = 1
    family: ContextFamily = ContextFamily.SYNTACTIC

    def is_valid(self) -> bool:
        return bool(self.word) and bool(self.label) and self.count >= 1


@dataclass(frozen=True)
class IngestionConfig:
    min_word_frequency: int = 5
    min_pair_count: int = 2
    lowercase: bool = True
    # surface term -> merged token, e.g. {"cat": "catdenver", "denver": "catdenver"}
    synthetic_merges: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.min_word_frequency < 0 or self.min_pair_count < 0:
            raise ValueError("thresholds must be non-negative")

    @classmethod
    def with_merges(cls, merges: Iterable[tuple[Iterable[str], str]], **kwargs):
        """Build a config from (term-set, merged-token) replacement groups."""
        table: dict[str, str] = {}
        for terms, merged in merges:
            for t in terms:
                table[t] = merged
        return cls(synthetic_merges=table, **kwargs)


@dataclass
class AggregatedCounts:
    """One family's vocabulary, context inventory, and frozen counts."""

    vocabulary: Vocabulary
    contexts: ContextInventory
    counts: CooccurrenceCounts


@dataclass
class AggregateResult:
    families: dict[ContextFamily, AggregatedCounts]
    skipped: int = 0


def _merge_token(token: str, merges: dict[str, str]) -> str:
    return merges.get(token, token)


def _merge_label(label: str, family: ContextFamily, merges: dict[str, str]) -> str:
    if not merges:
        return label
    if family is ContextFamily.SENTENCE:
        return _merge_token(label, merges)
    # syntactic labels are Relation#headword; merge only the headword
    relation, sep, head = label.partition("#")
    if sep:
        return relation + sep + _merge_token(head, merges)
    return label


def _normalize_label(label: str, family: ContextFamily) -> str:
    if family is ContextFamily.SENTENCE:
        return label.lower()
    relation, sep, head = label.partition("#")
    if sep:
        return relation + sep + head.lower()
    return label


def aggregate(
    records: Iterable[ObservationRecord], config: IngestionConfig | None = None
) -> AggregateResult:
    """Sum records into per-family counts, then apply frequency cuts.

    Words whose summed occurrence count falls below min_word_frequency
    are dropped, then pairs below min_pair_count; marginals and totals
    are recomputed from the surviving pairs. Malformed records are
    skipped and counted, never fatal.
    """
    config = config or IngestionConfig()
    sums: dict[ContextFamily, Counter] = defaultdict(Counter)
    skipped = 0
    for rec in records:
        if not isinstance(rec.family, ContextFamily) or not rec.is_valid():
            skipped += 1
            continue
        word = rec.word.lower() if config.lowercase else rec.word
        label = _normalize_label(rec.label, rec.family) if config.lowercase else rec.label
        word = _merge_token(word, config.synthetic_merges)
        label = _merge_label(label, rec.family, config.synthetic_merges)
        sums[rec.family][(word, label)] += rec.count

    families: dict[ContextFamily, AggregatedCounts] = {}
    for family, pair_sums in sums.items():
        word_freq: Counter = Counter()
        for (word, _), n in pair_sums.items():
            word_freq[word] += n
        kept = {
            (word, label): n
            for (word, label), n in pair_sums.items()
            if word_freq[word] >= config.min_word_frequency
            and n >= config.min_pair_count
        }
        terms = sorted({word for word, _ in kept})
        labels = sorted({label for _, label in kept})
        vocabulary = Vocabulary(terms, [word_freq[t] for t in terms])
        contexts = ContextInventory(labels, family)
        pairs = {
            (vocabulary.id_of(word), contexts.id_of(label)): n
            for (word, label), n in kept.items()
        }
        counts = CooccurrenceCounts.from_pairs(pairs, len(vocabulary), len(contexts))
        families[family] = AggregatedCounts(vocabulary, contexts, counts)
    return AggregateResult(families=families, skipped=skipped)


# --- TSV triple streams ---


def parse_triples(lines: Iterable[str]) -> Iterator[ObservationRecord]:
    """Parse TSV triples; malformed lines yield invalid records so the
    aggregator can count them."""
    by_value = {f.value: f for f in ContextFamily}
    for line in lines:
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4 or parts[3] not in by_value:
            yield ObservationRecord("", "", 0)
            continue
        word, label, count_s, family_s = parts
        try:
            count = int(count_s)
        except ValueError:
            count = 0
        yield ObservationRecord(word, label, count, by_value[family_s])


def read_triples(path: str | Path) -> Iterator[ObservationRecord]:
    with open(path, encoding="utf-8") as f:
        yield from parse_triples(f)


def write_triples(records: Iterable[ObservationRecord], out: TextIO) -> None:
    for r in records:
        out.write(f"{r.word}\t{r.label}\t{r.count}\t{r.family.value}\n")


# --- reference extractors ---


def extract_sentence_contexts(tokens: list[str]) -> list[ObservationRecord]:
    """Every ordered pair of distinct positions becomes one observation.

    A token appearing twice therefore co-occurs with itself; only the
    pairing of a position with itself is excluded.
    """
    records = []
    for i, word in enumerate(tokens):
        for j, other in enumerate(tokens):
            if i == j:
                continue
            records.append(
                ObservationRecord(word, other, 1, ContextFamily.SENTENCE)
            )
    return records


ADJECTIVE = "ADJ"
NOUN = "NOUN"
VERB = "VERB"


def extract_adjacency_contexts(
    tagged: list[tuple[str, str]]
) -> list[ObservationRecord]:
    """Adjacency rules over coarse POS tags.

    adjective + noun  ->  (noun, ModifiedBy#adjective), (adjective, Modifies#noun)
    verb + noun       ->  (noun, ObjectOf#verb)
    noun + verb       ->  (noun, SubjectOf#verb)
    """
    records = []
    for (tok_a, pos_a), (tok_b, pos_b) in zip(tagged, tagged[1:]):
        if pos_a == ADJECTIVE and pos_b == NOUN:
            records.append(
                ObservationRecord(tok_b, f"ModifiedBy#{tok_a}", 1, ContextFamily.SYNTACTIC)
            )
            records.append(
                ObservationRecord(tok_a, f"Modifies#{tok_b}", 1, ContextFamily.SYNTACTIC)
            )
        elif pos_a == VERB and pos_b == NOUN:
            records.append(
                ObservationRecord(tok_b, f"ObjectOf#{tok_a}", 1, ContextFamily.SYNTACTIC)
            )
        elif pos_a == NOUN and pos_b == VERB:
            records.append(
                ObservationRecord(tok_a, f"SubjectOf#{tok_b}", 1, ContextFamily.SYNTACTIC)
            )
    return records


# --- domain matrices ---


def shares_lemma_prefix(a: str, b: str, threshold: float = LEMMA_PREFIX_THRESHOLD) -> bool:
    """True when the common prefix covers more than `threshold` of the
    longer string. Computed on Unicode scalar values.
    """
    longer = max(len(a), len(b))
    if longer == 0:
        return False
    common = 0
    for ch_a, ch_b in zip(a, b):
        if ch_a != ch_b:
            break
        common += 1
    return common / longer > threshold


def build_domain_matrices(
    aggregated: AggregatedCounts,
    measure: Measure = Measure.PPMI,
    shift_k: float = 5.0,
) -> tuple[SparseAssociationMatrix, SparseAssociationMatrix]:
    """Build the sentence-co-occurrence matrix pair used for domain
    ("seen with") queries.

    The context-rows matrix is built exactly like the syntactic one. In
    the vocabulary-rows matrix every off-diagonal entry is dropped
    unless the word and the context label look like forms of the same
    lemma (shared-prefix rule), which keeps rows like india -> indian
    while cutting second-order neighbors.
    """
    if aggregated.contexts.family is not ContextFamily.SENTENCE:
        raise ValueError("domain matrices require sentence-cooccurrence counts")
    d_vc, d_cv = build_matrices(
        aggregated.counts, measure, shift_k, ContextFamily.SENTENCE
    )
    vocab = aggregated.vocabulary
    contexts = aggregated.contexts

    keep_rows = []
    keep_cols = []
    keep_vals = []
    for w in range(d_vc.n_rows):
        cols, vals = d_vc.row(w)
        word = vocab.term_of(w)
        for c, v in zip(cols, vals):
            label = contexts.label_of(int(c))
            if word == label or shares_lemma_prefix(word, label):
                keep_rows.append(w)
                keep_cols.append(int(c))
                keep_vals.append(v)
    indptr = np.zeros(d_vc.n_rows + 1, dtype=np.int64)
    rows = np.array(keep_rows, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=d_vc.n_rows), out=indptr[1:])
    masked = SparseAssociationMatrix(
        d_vc.header,
        indptr,
        np.array(keep_cols, dtype=np.uint32),
        np.array(keep_vals, dtype=np.float32),
    )
    return masked, d_cv
