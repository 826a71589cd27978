"""Ranked-expansion scoring against gold synsets, and trial harnesses.

Gold data is a list of synsets, each a set of surface variants naming
one entity (e.g. a state name and its abbreviation). An expansion list
L is scored with mean average precision:

    precision_at(L, i)  fraction of the first i items that are in some synset
    Precision_S(L)      precision_at(L, j), j the first index where any
                        variant of synset S appears; 0 if S never appears
    map                 average of Precision_S over all synsets
    map_at_n            average of Precision_S over the first n distinct
                        synsets seen, missing ones counting 0

map_at_n generalizes map to open-ended categories; on a closed category
with n equal to the synset count the two are identical.

Gold files are human-editable text: one synset per line, variants
comma-separated, with `# key: value` directives for category metadata
(kind, seed pool, n). The categories shipped in `data/` are US states,
NFL teams, and break/fail verbs (open set, scored with map_at_n=30,
morphological variants included in the synsets).
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

BUILTIN_CATEGORIES = ("us_states", "nfl_teams", "break_verbs")


@dataclass
class GoldCategory:
    name: str
    synsets: list[frozenset[str]]
    kind: str = "closed"  # closed | open
    seed_pool: list[str] = field(default_factory=list)
    map_n: int | None = None

    def __post_init__(self):
        if any(not s for s in self.synsets):
            raise ValueError("synsets must be non-empty")
        seen: set[str] = set()
        for s in self.synsets:
            if seen & s:
                raise ValueError(f"synsets are not pairwise disjoint: {seen & s}")
            seen |= s

    @property
    def effective_n(self) -> int:
        return self.map_n if self.map_n is not None else len(self.synsets)


def _synset_index(gold: Sequence[frozenset[str]]) -> dict[str, int]:
    table: dict[str, int] = {}
    for i, synset in enumerate(gold):
        for variant in synset:
            table[variant.lower()] = i
    return table


def precision_at(items: Sequence[str], i: int, gold: Sequence[frozenset[str]]) -> float:
    """Fraction of the first i items that belong to at least one synset."""
    if not 1 <= i <= len(items):
        raise ValueError(f"index {i} outside 1..{len(items)}")
    table = _synset_index(gold)
    hits = sum(1 for t in items[:i] if t.lower() in table)
    return hits / i


def map_score(items: Sequence[str], gold: Sequence[frozenset[str]]) -> float:
    """Average precision-at-first-sighting over all synsets."""
    if not gold:
        return 0.0
    table = _synset_index(gold)
    first_seen: dict[int, int] = {}
    running_hits = 0
    precisions_at: list[float] = []
    for pos, term in enumerate(items, start=1):
        synset = table.get(term.lower())
        if synset is not None:
            running_hits += 1  # repeats of a seen synset still count as gold
            if synset not in first_seen:
                first_seen[synset] = pos
        precisions_at.append(running_hits / pos)
    total = sum(precisions_at[pos - 1] for pos in first_seen.values())
    return total / len(gold)


def map_at_n(items: Sequence[str], gold: Sequence[frozenset[str]], n: int) -> float:
    """Average Precision_S over the first n distinct synsets seen."""
    if n < 1:
        raise ValueError("n must be >= 1")
    table = _synset_index(gold)
    running_hits = 0
    collected: list[float] = []
    seen: set[int] = set()
    for pos, term in enumerate(items, start=1):
        synset = table.get(term.lower())
        if synset is None:
            continue
        running_hits += 1
        if synset not in seen:
            seen.add(synset)
            if len(collected) < n:
                collected.append(running_hits / pos)
    return sum(collected) / n


@dataclass(frozen=True)
class TrialConfig:
    trials: int = 50
    seeds_per_trial: int = 3
    rng_seed: int = 0
    count_seeds: bool = True  # when off, seed terms are stripped before scoring

    def __post_init__(self):
        if self.trials < 1 or self.seeds_per_trial < 1:
            raise ValueError("trials and seeds_per_trial must be >= 1")


@dataclass
class TrialRow:
    trial: int
    seeds: list[str]
    map: float
    map_n: float


@dataclass
class TrialReport:
    category: str
    n_for_map_n: int
    rows: list[TrialRow]

    @property
    def mean_map(self) -> float:
        return sum(r.map for r in self.rows) / len(self.rows)

    @property
    def mean_map_n(self) -> float:
        return sum(r.map_n for r in self.rows) / len(self.rows)

    def to_tsv(self) -> str:
        lines = ["trial\tseeds\tmap\tmap_n"]
        for r in self.rows:
            lines.append(f"{r.trial}\t{' '.join(r.seeds)}\t{r.map:.6f}\t{r.map_n:.6f}")
        lines.append(f"mean\t\t{self.mean_map:.6f}\t{self.mean_map_n:.6f}")
        return "\n".join(lines) + "\n"

    def format_table(self) -> str:
        width = max(len(" ".join(r.seeds)) for r in self.rows) if self.rows else 5
        width = max(width, len("seeds"))
        head = f"{'trial':>5}  {'seeds':<{width}}  {'map':>8}  {'map_' + str(self.n_for_map_n):>8}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(
                f"{r.trial:>5}  {' '.join(r.seeds):<{width}}  {r.map:8.4f}  {r.map_n:8.4f}"
            )
        lines.append(
            f"{'mean':>5}  {'':<{width}}  {self.mean_map:8.4f}  {self.mean_map_n:8.4f}"
        )
        return "\n".join(lines)


def run_trials(
    category: GoldCategory,
    expander: Callable[[list[str]], list[str]],
    config: TrialConfig | None = None,
) -> TrialReport:
    """Repeated random-seed expansions scored against the gold synsets.

    Deterministic for a fixed rng seed: seed draws, expansion, and
    report assembly all have fixed order.
    """
    config = config or TrialConfig()
    pool = list(category.seed_pool)
    if config.seeds_per_trial > len(pool):
        raise ValueError(
            f"seed pool of {len(pool)} cannot supply {config.seeds_per_trial} seeds"
        )
    rng = np.random.default_rng(config.rng_seed)
    n = category.effective_n
    rows: list[TrialRow] = []
    for t in range(config.trials):
        picks = rng.choice(len(pool), size=config.seeds_per_trial, replace=False)
        seeds = [pool[i] for i in picks]
        items = list(expander(seeds))
        if not config.count_seeds:
            seed_set = {s.lower() for s in seeds}
            items = [x for x in items if x.lower() not in seed_set]
        rows.append(
            TrialRow(
                trial=t + 1,
                seeds=seeds,
                map=map_score(items, category.synsets),
                map_n=map_at_n(items, category.synsets, n),
            )
        )
    return TrialReport(category=category.name, n_for_map_n=n, rows=rows)


# --- gold file I/O ---


def parse_gold_file(text: str, name: str) -> GoldCategory:
    synsets: list[frozenset[str]] = []
    meta: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            key, sep, value = body.partition(":")
            if sep:
                meta[key.strip().lower()] = value.strip()
            continue
        variants = [v.strip().lower() for v in line.split(",") if v.strip()]
        if variants:
            synsets.append(frozenset(variants))

    kind = meta.get("kind", "closed")
    map_n = int(meta["map_n"]) if "map_n" in meta else None
    seeds_spec = meta.get("seeds", "first")
    if seeds_spec == "first":
        # pool is the first variant on each synset line
        pool = []
        for raw in text.splitlines():
            line = raw.strip()
            if line and not line.startswith("#"):
                pool.append(line.split(",")[0].strip().lower())
    else:
        pool = [s.strip().lower() for s in seeds_spec.split(",") if s.strip()]
    return GoldCategory(
        name=name, synsets=synsets, kind=kind, seed_pool=pool, map_n=map_n
    )


def load_gold_file(path: str | Path) -> GoldCategory:
    path = Path(path)
    return parse_gold_file(path.read_text(encoding="utf-8"), path.stem)


def load_builtin(name: str) -> GoldCategory:
    if name not in BUILTIN_CATEGORIES:
        raise KeyError(
            f"unknown category {name!r}; available: {', '.join(BUILTIN_CATEGORIES)}"
        )
    text = (
        importlib.resources.files("facetwise")
        .joinpath(f"data/{name}.txt")
        .read_text(encoding="utf-8")
    )
    return parse_gold_file(text, name)
