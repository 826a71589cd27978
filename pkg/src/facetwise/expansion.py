"""Context-focused set expansion.

Given seed words, a diagonal context weighting is computed first: each
context c gets an activation a(c) (summed association over the seeds),
a support fraction f(c) (fraction of seeds whose row contains c), and a
selection score s(c) = f(c)^rho * a(c). The top n contexts by score are
retained with weight f(c)^rho; everything else is zeroed. Expansion then
scores every word t as

    score(t) = sum over retained c of  M_cv[c, t] * W[c] * a(c)

which is the seed-summed similarity restricted and reweighted to the
contexts the seeds share. rho = 0 turns the weighting off (selection by
raw activation, all weights 1); a large rho approaches a hard
intersection of the seeds' context sets.

Ties are broken deterministically: context selection ties on s(c) go to
the lower context id, result ties on score to the lower word id.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matrix import ContextInventory, SparseAssociationMatrix, Vocabulary, check_matrix_pair

REASON_EMPTY_FOCUS = "empty-focus"
REASON_NO_CANDIDATES = "no-candidates"


class UnresolvedSeedsError(ValueError):
    """No input seed resolved against the vocabulary."""


@dataclass(frozen=True)
class ExpansionParams:
    rho: float = 3.0
    n: int = 100
    result_limit: int = 50
    include_seeds: bool = False

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError("rho must be non-negative")
        if self.n < 1:
            raise ValueError("context footprint n must be >= 1")
        if self.result_limit < 1:
            raise ValueError("result_limit must be >= 1")


@dataclass
class SeedSet:
    """Resolved seed ids plus the inputs that did not resolve."""

    ids: list[int]
    unresolved: list[str] = field(default_factory=list)

    @classmethod
    def resolve(cls, vocabulary: Vocabulary, terms: list[str]) -> "SeedSet":
        ids: list[int] = []
        unresolved: list[str] = []
        seen: set[int] = set()
        for term in terms:
            key = term.lower()
            if key in vocabulary:
                i = vocabulary.id_of(key)
                if i not in seen:
                    seen.add(i)
                    ids.append(i)
            else:
                unresolved.append(term)
        return cls(ids=ids, unresolved=unresolved)


@dataclass(frozen=True)
class FocusEntry:
    context_id: int
    activation: float
    support: float
    score: float
    weight: float


@dataclass
class ContextFocus:
    """Retained contexts in selection order (score desc, id asc)."""

    entries: list[FocusEntry]

    def __len__(self) -> int:
        return len(self.entries)

    def weights(self) -> dict[int, float]:
        return {e.context_id: e.weight for e in self.entries}


def _support_power(f: np.ndarray, rho: float) -> np.ndarray:
    if rho == 0.0:
        return np.ones_like(f)  # includes 0^0 == 1
    return f**rho


def compute_focus(
    m_vc: SparseAssociationMatrix, seed_ids: list[int], params: ExpansionParams
) -> ContextFocus:
    """Score and select contexts from the seeds' rows.

    Only contexts with positive activation are candidates; all stored
    scores are positive, so those contexts also have positive support.
    """
    if not seed_ids:
        raise UnresolvedSeedsError("focus requires at least one resolved seed")
    activation = np.zeros(m_vc.n_cols, dtype=np.float64)
    support_count = np.zeros(m_vc.n_cols, dtype=np.int64)
    for w in seed_ids:
        cols, vals = m_vc.row(w)
        activation[cols] += vals.astype(np.float64)
        support_count[cols] += 1

    candidates = np.flatnonzero(activation > 0)
    if candidates.size == 0:
        return ContextFocus(entries=[])

    f = support_count[candidates] / len(seed_ids)
    weight = _support_power(f, params.rho)
    score = weight * activation[candidates]

    order = np.lexsort((candidates, -score))
    top = order[: params.n]
    entries = [
        FocusEntry(
            context_id=int(candidates[i]),
            activation=float(activation[candidates[i]]),
            support=float(f[i]),
            score=float(score[i]),
            weight=float(weight[i]),
        )
        for i in top
    ]
    return ContextFocus(entries=entries)


@dataclass
class Expansion:
    """Ranked (term, score) pairs plus the focus that produced them."""

    items: list[tuple[str, float]]
    focus: ContextFocus
    unresolved_seeds: list[str] = field(default_factory=list)
    reason: str | None = None


def expand_ids(
    m_cv: SparseAssociationMatrix,
    m_vc: SparseAssociationMatrix,
    seed_ids: list[int],
    params: ExpansionParams,
) -> tuple[list[tuple[int, float]], ContextFocus, str | None]:
    """Id-level expansion kernel; see module docstring for the math.

    Context rows are accumulated in ascending context-id order into a
    dense vocabulary-sized buffer, so results are deterministic.
    """
    focus = compute_focus(m_vc, seed_ids, params)
    if len(focus) == 0:
        return [], focus, REASON_EMPTY_FOCUS

    scores = np.zeros(m_cv.n_cols, dtype=np.float64)
    for entry in sorted(focus.entries, key=lambda e: e.context_id):
        cols, vals = m_cv.row(entry.context_id)
        scores[cols] += vals.astype(np.float64) * (entry.weight * entry.activation)

    if not params.include_seeds:
        scores[seed_ids] = 0.0
    ranked = np.flatnonzero(scores > 0)
    if ranked.size == 0:
        return [], focus, REASON_NO_CANDIDATES
    order = np.lexsort((ranked, -scores[ranked]))
    top = ranked[order[: params.result_limit]]
    return [(int(t), float(scores[t])) for t in top], focus, None


class ExpansionEngine:
    """A loaded matrix pair with its vocabulary and context inventory."""

    def __init__(
        self,
        vocabulary: Vocabulary,
        contexts: ContextInventory,
        m_vc: SparseAssociationMatrix,
        m_cv: SparseAssociationMatrix,
    ):
        check_matrix_pair(m_vc, m_cv)
        if m_vc.n_rows != len(vocabulary) or m_vc.n_cols != len(contexts):
            raise ValueError("matrix dimensions do not match vocabulary/contexts")
        self.vocabulary = vocabulary
        self.contexts = contexts
        self.m_vc = m_vc
        self.m_cv = m_cv

    @property
    def family(self):
        return self.contexts.family

    def resolve(self, terms: list[str]) -> SeedSet:
        return SeedSet.resolve(self.vocabulary, terms)

    def expand(
        self, seeds: list[str] | SeedSet, params: ExpansionParams | None = None
    ) -> Expansion:
        params = params or ExpansionParams()
        seed_set = seeds if isinstance(seeds, SeedSet) else self.resolve(seeds)
        if not seed_set.ids:
            raise UnresolvedSeedsError(
                f"no seeds resolved (unresolved: {', '.join(seed_set.unresolved) or 'none given'})"
            )
        scored, focus, reason = expand_ids(self.m_cv, self.m_vc, seed_set.ids, params)
        items = [(self.vocabulary.term_of(i), s) for i, s in scored]
        return Expansion(
            items=items,
            focus=focus,
            unresolved_seeds=seed_set.unresolved,
            reason=reason,
        )

    def describe_focus(self, focus: ContextFocus) -> list[dict]:
        """Focus diagnostics with labels, for explanation output."""
        return [
            {
                "context": self.contexts.label_of(e.context_id),
                "activation": e.activation,
                "support": e.support,
                "score": e.score,
                "weight": e.weight,
            }
            for e in focus.entries
        ]
