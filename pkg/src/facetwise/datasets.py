"""Small deterministic corpora for demos, tests, and benchmarking.

Everything here is generated, not collected: the corpora are shaped so
that specific qualitative behaviors (sense selection by a second seed,
two-term analogies, the benefit of support penalties and asymmetric
association) are visible at desk scale. Counts carry a little
deterministic jitter so scores are not artificially tied.

`multi_facet_benchmark` is the documented evaluation fixture: three
closed categories, each salted with members whose dominant corpus sense
lies in a high-frequency distractor group (lopsided polysemy). The
distractor pull is what separates the association/weighting settings:

* `gems` floods the expansion with person names at rho=0 because three
  gem terms are mostly seen as first names; a support penalty pushes
  the name contexts out of the focus.
* `herbs` contains three herb terms whose herb sense is so rare that
  the plain PMI against herb contexts is negative: PPMI drops those
  members entirely, while the shifted asymmetric measure keeps them
  reachable from the context side.
* `fish` is mildly polysemous and behaves well everywhere; it keeps
  the benchmark from being a pure stress test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evaluation import GoldCategory
from .ingestion import ObservationRecord
from .matrix import ContextFamily

SYN = ContextFamily.SYNTACTIC
SENT = ContextFamily.SENTENCE


def _jittered(rng: np.random.Generator, base: int, spread: float = 0.25) -> int:
    lo = max(1, int(base * (1 - spread)))
    hi = max(lo + 1, int(base * (1 + spread)) + 1)
    return int(rng.integers(lo, hi))


# --- demo corpus: presidents, cars, currencies, rivers -----------------

_PRESIDENTS = ["nixon", "reagan", "carter", "obama", "lincoln", "truman"]
_CARS = ["chevy", "toyota", "honda", "nissan", "bmw", "audi"]
_COMPACTS = ["civic", "corolla", "sentra"]
_MIDSIZE = ["camry", "accord"]
_CURRENCIES = ["dollar", "rupee", "euro", "yen", "peso"]
_RIVERS = ["ganga", "nile", "amazon", "danube"]

_PRESIDENT_CTX = [
    "ElectedTo#office",
    "SubjectOf#veto",
    "ModifiedBy#presidential",
    "SubjectOf#govern",
    "ObjectOf#impeach",
]
_CAR_CTX = [
    "ObjectOf#drive",
    "ModifiedBy#reliable",
    "ObjectOf#park",
    "MadeBy#factory",
    "ObjectOf#sell",
]
_COMPACT_CTX = ["ModifiedBy#compact", "ModifiedBy#fuel-efficient"]
_MIDSIZE_CTX = ["ModifiedBy#midsize", "ModifiedBy#roomy"]
_CURRENCY_CTX = [
    "ObjectOf#devalue",
    "ModifiedBy#strong",
    "UnitOf#currency",
    "SubjectOf#depreciate",
]
_RIVER_CTX = [
    "SubjectOf#flow",
    "ObjectOf#cross",
    "FlowsThrough#valley",
    "ModifiedBy#sacred",
]

# domain-side co-occurrence: (word, other word in sentence, count)
_SENTENCE_PAIRS = [
    ("india", "indian", 40),
    ("india", "delhi", 15),
    ("india", "cricket", 12),
    ("india", "rupee", 2),
    ("india", "india", 6),
    ("indian", "rupee", 25),
    ("indian", "delhi", 10),
    ("indian", "cricket", 8),
    ("egypt", "egyptian", 40),
    ("egypt", "cairo", 15),
    ("egypt", "nile", 3),
    ("egypt", "egypt", 6),
    ("egyptian", "nile", 25),
    ("egyptian", "cairo", 10),
    ("toyota", "corolla", 30),
    ("toyota", "camry", 18),
    ("toyota", "japan", 10),
    ("toyota", "toyota", 6),
    ("honda", "civic", 30),
    ("honda", "accord", 18),
    ("honda", "japan", 10),
    ("usa", "dollar", 25),
    ("usa", "american", 30),
    ("usa", "washington", 10),
    ("usa", "usa", 6),
    ("american", "dollar", 15),
    ("japan", "yen", 20),
    ("japan", "tokyo", 15),
    ("japan", "japanese", 25),
    ("japan", "japan", 6),
    ("japanese", "yen", 15),
]


def _facet(
    records: list[ObservationRecord],
    rng: np.random.Generator,
    members: list[str],
    contexts: list[str],
    base: int,
) -> None:
    for member in members:
        for ctx in contexts:
            records.append(
                ObservationRecord(member, ctx, _jittered(rng, base), SYN)
            )


def demo_corpus() -> list[ObservationRecord]:
    """Multi-facet toy corpus behind the README walkthrough.

    `ford` carries both a president and a car sense, so its expansion
    depends on the second seed. The sentence-co-occurrence records feed
    the domain matrices used by analogies such as "dollar of india".
    """
    rng = np.random.default_rng(7)
    records: list[ObservationRecord] = []
    _facet(records, rng, _PRESIDENTS + ["ford"], _PRESIDENT_CTX, 14)
    _facet(records, rng, _CARS + _COMPACTS + _MIDSIZE + ["ford"], _CAR_CTX, 14)
    _facet(records, rng, _COMPACTS, _COMPACT_CTX, 16)
    _facet(records, rng, _MIDSIZE, _MIDSIZE_CTX, 16)
    _facet(records, rng, _CURRENCIES, _CURRENCY_CTX, 15)
    _facet(records, rng, _RIVERS, _RIVER_CTX, 15)
    for word, other, count in _SENTENCE_PAIRS:
        records.append(ObservationRecord(word, other, count, SENT))
        if word != other:
            records.append(ObservationRecord(other, word, count, SENT))
    return records


# --- merged-token polysemy fixture --------------------------------------

_ANIMALS = ["cat", "dog", "kitten", "puppy", "rabbit", "hamster"]
_CITIES = ["denver", "phoenix", "chicago", "atlanta", "seattle", "boston"]
_ANIMAL_CTX = [
    "ObjectOf#feed",
    "ObjectOf#adopt",
    "ModifiedBy#furry",
    "ObjectOf#pet",
    "SubjectOf#play",
]
_CITY_CTX = [
    "ObjectOf#visit",
    "ModifiedBy#downtown",
    "SubjectOf#host",
    "ObjectOf#tour",
    "LocatedIn#west",
]


def merged_polysemy_corpus() -> tuple[list[ObservationRecord], dict[str, str]]:
    """Animals and cities, plus the merge table that fuses one animal
    and one city into the artificial token `catdenver`.

    Aggregating with the merge applied produces a token whose row is
    the sum of the two source rows, a controlled stand-in for a
    two-sense word.
    """
    rng = np.random.default_rng(11)
    records: list[ObservationRecord] = []
    _facet(records, rng, _ANIMALS, _ANIMAL_CTX, 16)
    _facet(records, rng, _CITIES, _CITY_CTX, 16)
    merges = {"cat": "catdenver", "denver": "catdenver"}
    return records, merges


FIXTURE_ANIMALS = [a for a in _ANIMALS if a != "cat"]
FIXTURE_CITIES = [c for c in _CITIES if c != "denver"]


# --- multi-facet benchmark ----------------------------------------------


@dataclass
class Benchmark:
    records: list[ObservationRecord]
    categories: list[GoldCategory]


def _benchmark_category(
    records: list[ObservationRecord],
    rng: np.random.Generator,
    name: str,
    members: list[str],
    lopsided: list[str],
    cat_contexts: list[str],
    cat_count: int,
    lop_count: int,
    distractors: list[str],
    dis_contexts: list[str],
    dis_count: int,
    lop_dis_count: int,
    member_ballast: int = 0,
    pure_seeds_only: bool = False,
) -> GoldCategory:
    for member in members:
        count = lop_count if member in lopsided else cat_count
        for ctx in cat_contexts:
            records.append(ObservationRecord(member, ctx, _jittered(rng, count), SYN))
        if member_ballast:
            # a private high-count context per member keeps the niche
            # category from winning on rarity alone
            records.append(
                ObservationRecord(member, f"Ballast#{member}", member_ballast, SYN)
            )
    for term in distractors:
        for ctx in dis_contexts:
            records.append(ObservationRecord(term, ctx, _jittered(rng, dis_count), SYN))
    for member in lopsided:
        for ctx in dis_contexts:
            records.append(
                ObservationRecord(member, ctx, _jittered(rng, lop_dis_count), SYN)
            )
    pool = [m for m in members if m not in lopsided] if pure_seeds_only else list(members)
    return GoldCategory(
        name=name,
        synsets=[frozenset([m]) for m in members],
        kind="closed",
        seed_pool=pool,
    )


_GEMS = [
    "beryl", "topaz", "opal", "garnet", "jasper", "amber",
    "onyx", "jade", "peridot", "citrine", "zircon", "spinel",
]
_NAMES = [
    "sophia", "liam", "noah", "emma", "mia", "lucas",
    "ethan", "chloe", "felix", "oscar", "theo", "nina",
]
_HERBS = [
    "basil", "sage", "rosemary", "thyme", "dill", "fennel",
    "mint", "oregano", "parsley", "tarragon", "chive", "lovage",
]
_SCHOLARS = [
    "elder", "mentor", "scholar", "monk", "deacon", "abbot",
    "curate", "vicar", "squire", "warden", "bailiff", "provost",
]
_FISH = [
    "perch", "sole", "bass", "pike", "trout", "cod",
    "carp", "tuna", "herring", "mackerel", "snapper", "halibut",
]
_MUSIC = [
    "drums", "guitar", "keys", "vocals", "chorus", "riff",
    "tempo", "chord", "melody", "rhythm", "verse", "bridge",
]


def multi_facet_benchmark() -> Benchmark:
    """Three closed categories with engineered lopsided polysemy."""
    rng = np.random.default_rng(101)
    records: list[ObservationRecord] = []
    categories = []

    # The name sense of opal/jasper/amber is strong across many name
    # contexts while the gem members carry private ballast mass, so at
    # rho=0 the name contexts collectively outgun the four gem contexts
    # and flood the expansion with first names.
    categories.append(
        _benchmark_category(
            records,
            rng,
            name="gems",
            members=_GEMS,
            lopsided=["opal", "jasper", "amber"],
            cat_contexts=[f"GemCtx#{i:02d}" for i in range(4)],
            cat_count=12,
            lop_count=8,
            distractors=_NAMES,
            dis_contexts=[f"NameCtx#{i:02d}" for i in range(60)],
            dis_count=25,
            lop_dis_count=30,
            member_ballast=100,
        )
    )
    # The herb sense of basil/sage/rosemary is so rare next to the
    # person sense that their PMI with herb contexts is negative: PPMI
    # cannot retrieve them at all, the shifted asymmetric measure keeps
    # them reachable from the context side. Seeds are drawn from the
    # pure members only, as with an open category's curated seed list.
    categories.append(
        _benchmark_category(
            records,
            rng,
            name="herbs",
            members=_HERBS,
            lopsided=["basil", "sage", "rosemary"],
            cat_contexts=[f"HerbCtx#{i:02d}" for i in range(10)],
            cat_count=20,
            lop_count=6,
            distractors=_SCHOLARS,
            dis_contexts=[f"WiseCtx#{i:02d}" for i in range(30)],
            dis_count=40,
            lop_dis_count=150,
            pure_seeds_only=True,
        )
    )
    categories.append(
        _benchmark_category(
            records,
            rng,
            name="fish",
            members=_FISH,
            lopsided=["bass", "sole"],
            cat_contexts=[f"FishCtx#{i:02d}" for i in range(8)],
            cat_count=15,
            lop_count=10,
            distractors=_MUSIC,
            dis_contexts=[f"MusicCtx#{i:02d}" for i in range(12)],
            dis_count=25,
            lop_dis_count=60,
        )
    )
    return Benchmark(records=records, categories=categories)
