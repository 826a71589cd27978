"""Word-context association measures over aggregated co-occurrence counts.

Four measures are supported, all derived from maximum-likelihood
probability estimates P(w,c) = pair/total, P(w) = word_marginal/total,
P(c) = context_marginal/total:

    pmi(w, c)      = ln( P(w,c) / (P(w) P(c)) )
    ppmi(w, c)     = max(0, pmi(w, c))
    apmi(w, c)     = pmi(w, c) + ln( P(w,c) / P(w) )
                   = ln( P(w,c)^2 / (P(w)^2 P(c)) )
    appmi(w, c, k) = max(0, apmi(w, c) + k)

apmi is asymmetric: the extra conditional term divides by the marginal
of whichever argument plays the "word" role, so apmi(w, c) and
apmi(c, w) generally differ. The shift k rescues moderately negative
apmi values; it trades matrix size for recall and is recorded alongside
any matrix built from it.

All logs are natural. Absent pairs are never materialized: pmi/apmi of
an absent pair is -inf, and the clipped measures return 0.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from typing import Iterable, Mapping

import numpy as np

DEFAULT_SHIFT_K = 5.0


class Measure(enum.Enum):
    PPMI = "ppmi"
    APPMI = "appmi"


class Direction(enum.Enum):
    """Which argument of an asymmetric measure plays the word role."""

    WORD_TO_CONTEXT = "word-to-context"
    CONTEXT_TO_WORD = "context-to-word"


@dataclasses.dataclass(frozen=True)
class AssociationConfig:
    """Measure selection for one matrix orientation.

    `direction` only matters for APPMI; PPMI is symmetric.
    """

    measure: Measure = Measure.PPMI
    shift_k: float = DEFAULT_SHIFT_K
    direction: Direction = Direction.WORD_TO_CONTEXT

    def __post_init__(self):
        if self.shift_k < 0:
            raise ValueError("shift k must be non-negative")


class CooccurrenceCounts:
    """Frozen (word, context) pair counts with derived marginals.

    Pairs are stored sorted by (word_id, context_id) in parallel arrays;
    marginals and the grand total are computed from the pairs, so the
    consistency invariants hold by construction. Zero-count pairs are
    rejected rather than stored.
    """

    __slots__ = (
        "word_ids",
        "context_ids",
        "counts",
        "word_marginals",
        "context_marginals",
        "total",
        "n_words",
        "n_contexts",
    )

    def __init__(
        self,
        word_ids: np.ndarray,
        context_ids: np.ndarray,
        counts: np.ndarray,
        n_words: int,
        n_contexts: int,
    ):
        word_ids = np.asarray(word_ids, dtype=np.int64)
        context_ids = np.asarray(context_ids, dtype=np.int64)
        counts = np.asarray(counts, dtype=np.int64)
        if not (len(word_ids) == len(context_ids) == len(counts)):
            raise ValueError("pair arrays must have equal length")
        if counts.size and counts.min() <= 0:
            raise ValueError("pair counts must be positive")
        if word_ids.size:
            if word_ids.min() < 0 or word_ids.max() >= n_words:
                raise ValueError("word id out of range")
            if context_ids.min() < 0 or context_ids.max() >= n_contexts:
                raise ValueError("context id out of range")
        order = np.lexsort((context_ids, word_ids))
        self.word_ids = word_ids[order]
        self.context_ids = context_ids[order]
        self.counts = counts[order]
        key = self.word_ids * max(n_contexts, 1) + self.context_ids
        if key.size and np.any(np.diff(key) == 0):
            raise ValueError("duplicate (word, context) pair")
        self.n_words = int(n_words)
        self.n_contexts = int(n_contexts)
        self.word_marginals = np.bincount(
            self.word_ids, weights=self.counts, minlength=n_words
        ).astype(np.int64)
        self.context_marginals = np.bincount(
            self.context_ids, weights=self.counts, minlength=n_contexts
        ).astype(np.int64)
        self.total = int(self.counts.sum())

    @classmethod
    def from_pairs(
        cls,
        pairs: Mapping[tuple[int, int], int] | Iterable[tuple[int, int, int]],
        n_words: int,
        n_contexts: int,
    ) -> "CooccurrenceCounts":
        if isinstance(pairs, Mapping):
            items = [(w, c, n) for (w, c), n in pairs.items()]
        else:
            items = list(pairs)
        if not items:
            empty = np.zeros(0, dtype=np.int64)
            return cls(empty, empty, empty, n_words, n_contexts)
        w, c, n = zip(*items)
        return cls(np.array(w), np.array(c), np.array(n), n_words, n_contexts)

    @property
    def nnz(self) -> int:
        return len(self.counts)

    def pair_count(self, w: int, c: int) -> int:
        """Count for (w, c), or 0 if the pair is absent."""
        lo = np.searchsorted(self.word_ids, w, side="left")
        hi = np.searchsorted(self.word_ids, w, side="right")
        idx = lo + np.searchsorted(self.context_ids[lo:hi], c, side="left")
        if idx < hi and self.context_ids[idx] == c:
            return int(self.counts[idx])
        return 0

    def validate(self) -> None:
        """Re-derive marginals and total by brute force; raise on mismatch."""
        wm = np.zeros(self.n_words, dtype=np.int64)
        cm = np.zeros(self.n_contexts, dtype=np.int64)
        for w, c, n in zip(self.word_ids, self.context_ids, self.counts):
            wm[w] += n
            cm[c] += n
        if not np.array_equal(wm, self.word_marginals):
            raise AssertionError("word marginals inconsistent")
        if not np.array_equal(cm, self.context_marginals):
            raise AssertionError("context marginals inconsistent")
        if int(wm.sum()) != self.total or int(cm.sum()) != self.total:
            raise AssertionError("total inconsistent")


# Raw-number forms shared by the scalar API and the vectorized matrix
# builder. `first` is the marginal of the argument in the word role.


def pmi_value(pair: float, first: float, second: float, total: float) -> float:
    if pair <= 0:
        return -math.inf
    return math.log((pair * total) / (first * second))


def apmi_value(pair: float, first: float, second: float, total: float) -> float:
    if pair <= 0:
        return -math.inf
    return math.log((pair * pair * total) / (first * first * second))


def association_values(
    pair: np.ndarray,
    first: np.ndarray,
    second: np.ndarray,
    total: float,
    measure: Measure,
    shift_k: float = DEFAULT_SHIFT_K,
) -> np.ndarray:
    """Vectorized measure evaluation; no clipping is applied here.

    The PPMI branch computes ln((pair*total)/(first*second)). The products
    commute, so evaluating with roles swapped yields bit-identical
    values, which is what makes the two PPMI matrix orientations exact
    transposes of each other.
    """
    pair = pair.astype(np.float64)
    first = first.astype(np.float64)
    second = second.astype(np.float64)
    if measure is Measure.PPMI:
        return np.log((pair * total) / (first * second))
    if measure is Measure.APPMI:
        return np.log((pair * pair * total) / (first * first * second)) + shift_k
    raise ValueError(f"unknown measure: {measure}")


def pmi(counts: CooccurrenceCounts, w: int, c: int) -> float:
    """PMI of a present pair; -inf for an absent pair."""
    if counts.total <= 0:
        raise ValueError("pmi undefined for empty counts")
    return pmi_value(
        counts.pair_count(w, c),
        counts.word_marginals[w],
        counts.context_marginals[c],
        counts.total,
    )


def ppmi(counts: CooccurrenceCounts, w: int, c: int) -> float:
    return max(0.0, pmi(counts, w, c))


def apmi(
    counts: CooccurrenceCounts,
    w: int,
    c: int,
    direction: Direction = Direction.WORD_TO_CONTEXT,
) -> float:
    """Asymmetric PMI; `direction` picks which marginal is squared."""
    wm = counts.word_marginals[w]
    cm = counts.context_marginals[c]
    first, second = (wm, cm) if direction is Direction.WORD_TO_CONTEXT else (cm, wm)
    return apmi_value(counts.pair_count(w, c), first, second, counts.total)


def appmi(
    counts: CooccurrenceCounts,
    w: int,
    c: int,
    k: float = DEFAULT_SHIFT_K,
    direction: Direction = Direction.WORD_TO_CONTEXT,
) -> float:
    if k < 0:
        raise ValueError("shift k must be non-negative")
    value = apmi(counts, w, c, direction)
    if value == -math.inf:
        return 0.0
    return max(0.0, value + k)
