"""Two-term analogies: "What is the LIKE of DOMAIN?".

The LIKE side is a singleton expansion over the syntactic matrices
(what is this thing similar to), the DOMAIN side a singleton expansion
over the sentence-co-occurrence matrices (what is seen with this
thing). Candidates appearing in both lists are scored in squash space:

    combined(m, d) = 100m/(99+m) + 100d/(99+d)

Each side saturates at 100, so a candidate needs standing on both sides
to win. Terms missing from either list are not backed off; the input
terms themselves are removed from the candidates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .expansion import Expansion, ExpansionEngine, ExpansionParams

REASON_NO_SHARED = "no-shared-candidates"

DEFAULT_DEPTH_FACTOR = 10


class UnresolvableTermError(ValueError):
    def __init__(self, side: str, term: str):
        self.side = side
        self.term = term
        super().__init__(f"{side} term {term!r} is not in that side's vocabulary")


def squash_combine(m: float, d: float) -> float:
    if m < 0 or d < 0:
        raise ValueError("squash_combine requires non-negative scores")
    return 100.0 * m / (99.0 + m) + 100.0 * d / (99.0 + d)


@dataclass(frozen=True)
class AnalogyQuery:
    like_term: str
    domain_term: str
    like_params: ExpansionParams = ExpansionParams()
    domain_params: ExpansionParams = ExpansionParams()
    result_limit: int = 25
    # each side's list is intersected over its top result_limit * depth_factor
    depth_factor: int = DEFAULT_DEPTH_FACTOR

    def __post_init__(self):
        if not self.like_term or not self.domain_term:
            raise ValueError("both analogy terms must be non-empty")


@dataclass(frozen=True)
class AnalogyCandidate:
    term: str
    combined: float
    m_score: float
    d_score: float


@dataclass
class AnalogyResult:
    items: list[AnalogyCandidate]
    like_list: Expansion
    domain_list: Expansion
    intersection_depth: int
    reason: str | None = None
    unresolved: list[str] = field(default_factory=list)


def combine_candidates(
    m_items: list[tuple[str, float]],
    d_items: list[tuple[str, float]],
    exclude: set[str],
    limit: int,
) -> list[AnalogyCandidate]:
    """Intersect the two scored lists and rank by the squashed sum.

    Ties on combined score break on the term string so results are
    stable across runs.
    """
    d_scores = dict(d_items)
    merged = []
    for term, m in m_items:
        if term in exclude or term not in d_scores:
            continue
        d = d_scores[term]
        merged.append(AnalogyCandidate(term, squash_combine(m, d), m, d))
    merged.sort(key=lambda cand: (-cand.combined, cand.term))
    return merged[:limit]


def solve(
    query: AnalogyQuery,
    like_engine: ExpansionEngine,
    domain_engine: ExpansionEngine,
) -> AnalogyResult:
    like_key = query.like_term.lower()
    domain_key = query.domain_term.lower()
    if like_key not in like_engine.vocabulary:
        raise UnresolvableTermError("like", query.like_term)
    if domain_key not in domain_engine.vocabulary:
        raise UnresolvableTermError("domain", query.domain_term)

    depth = query.result_limit * query.depth_factor
    like_params = ExpansionParams(
        rho=query.like_params.rho,
        n=query.like_params.n,
        result_limit=depth,
        include_seeds=False,
    )
    domain_params = ExpansionParams(
        rho=query.domain_params.rho,
        n=query.domain_params.n,
        result_limit=depth,
        include_seeds=False,
    )
    like_list = like_engine.expand([like_key], like_params)
    domain_list = domain_engine.expand([domain_key], domain_params)

    items = combine_candidates(
        like_list.items,
        domain_list.items,
        exclude={like_key, domain_key},
        limit=query.result_limit,
    )
    return AnalogyResult(
        items=items,
        like_list=like_list,
        domain_list=domain_list,
        intersection_depth=depth,
        reason=None if items else REASON_NO_SHARED,
    )
