"""Command line surface: build, expand, analogy, eval, repl.

The matrix directory defaults to $FACETWISE_MATRIX_DIR. Output is a
pretty table by default; `--format tsv` and `--format text` (key=value
lines) exist so scripts never have to parse tables.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import TextIO

from .analogy import AnalogyQuery, UnresolvableTermError, solve
from .association import Measure
from .evaluation import (
    BUILTIN_CATEGORIES,
    TrialConfig,
    load_builtin,
    load_gold_file,
    run_trials,
)
from .expansion import Expansion, ExpansionEngine, ExpansionParams, UnresolvedSeedsError
from .ingestion import (
    IngestionConfig,
    aggregate,
    build_domain_matrices,
    extract_adjacency_contexts,
    extract_sentence_contexts,
    read_triples,
)
from .matrix import (
    ContextFamily,
    build_matrices,
    load_store,
    save_store,
    store_families,
)

MATRIX_DIR_ENV = "FACETWISE_MATRIX_DIR"


def _add_common_query_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--matrix-dir", default=os.environ.get(MATRIX_DIR_ENV), help="matrix store directory (default: $FACETWISE_MATRIX_DIR)")
    p.add_argument("--rho", type=float, default=3.0, help="limited support penalty (default 3)")
    p.add_argument("--n", type=int, default=100, help="context footprint (default 100)")
    p.add_argument("--limit", type=int, default=25, help="number of results (default 25)")
    p.add_argument("--format", choices=("table", "tsv", "text"), default="table", help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="facetwise", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build association matrices from triples or text")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--triples", help="TSV file: word<TAB>context<TAB>count<TAB>family")
    src.add_argument("--text", help="plain text corpus, one sentence per line")
    b.add_argument("--pos-lexicon", help="TSV token<TAB>tag lexicon enabling the adjacency extractor on --text input")
    b.add_argument("--out", required=True, help="output matrix directory")
    b.add_argument("--measure", choices=[m.value for m in Measure], default="appmi")
    b.add_argument("--k", type=float, default=5.0, help="shift constant for appmi (default 5)")
    b.add_argument("--min-word-freq", type=int, default=5)
    b.add_argument("--min-pair-count", type=int, default=2)
    b.add_argument("--no-lowercase", action="store_true")
    b.add_argument(
        "--merge",
        action="append",
        default=[],
        metavar="a,b=merged",
        help="merge surface terms into one synthetic token (repeatable)",
    )

    e = sub.add_parser("expand", help="expand a seed set")
    e.add_argument("seeds", nargs="+", help="seed terms")
    _add_common_query_flags(e)
    e.add_argument("--include-seeds", action="store_true")
    e.add_argument("--explain", action="store_true", help="print focus diagnostics")

    a = sub.add_parser("analogy", help='answer "what is the LIKE of OF?"')
    a.add_argument("--like", required=True, help="the term the answer should be similar to")
    a.add_argument("--of", required=True, help="the term whose domain the answer lives in")
    _add_common_query_flags(a)

    v = sub.add_parser("eval", help="run randomized expansion trials against a gold category")
    v.add_argument("--category", required=True, help=f"builtin ({', '.join(BUILTIN_CATEGORIES)}) or a gold file path")
    _add_common_query_flags(v)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seeds-per-trial", type=int, default=3)
    v.add_argument("--rng-seed", type=int, default=0)
    v.add_argument("--no-count-seeds", action="store_true", help="strip seed terms from lists before scoring")

    r = sub.add_parser("repl", help="interactive expansion/analogy session")
    _add_common_query_flags(r)

    return parser


def _parse_merges(specs: list[str]) -> dict[str, str]:
    table: dict[str, str] = {}
    for spec in specs:
        terms, sep, merged = spec.partition("=")
        if not sep or not merged.strip():
            raise SystemExit(f"bad --merge {spec!r}: expected a,b=merged")
        for t in terms.split(","):
            t = t.strip().lower()
            if t:
                table[t] = merged.strip().lower()
    return table


def _load_pos_lexicon(path: str) -> dict[str, str]:
    lexicon = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            token, _, tag = line.partition("\t")
            if tag:
                lexicon[token.lower()] = tag.strip().upper()
    return lexicon


def _text_records(path: str, lexicon: dict[str, str] | None, lowercase: bool):
    with open(path, encoding="utf-8") as f:
        for line in f:
            tokens = line.split()
            if lowercase:
                tokens = [t.lower() for t in tokens]
            if not tokens:
                continue
            yield from extract_sentence_contexts(tokens)
            if lexicon:
                tagged = [(t, lexicon.get(t, "UNK")) for t in tokens]
                yield from extract_adjacency_contexts(tagged)


def cmd_build(args) -> int:
    config = IngestionConfig(
        min_word_frequency=args.min_word_freq,
        min_pair_count=args.min_pair_count,
        lowercase=not args.no_lowercase,
        synthetic_merges=_parse_merges(args.merge),
    )
    if args.triples:
        records = read_triples(args.triples)
    else:
        lexicon = _load_pos_lexicon(args.pos_lexicon) if args.pos_lexicon else None
        records = _text_records(args.text, lexicon, config.lowercase)
    result = aggregate(records, config)
    measure = Measure(args.measure)

    out = Path(args.out)
    if not result.families:
        out.mkdir(parents=True, exist_ok=True)
    for family, agg in sorted(result.families.items(), key=lambda kv: kv[0].value):
        if family is ContextFamily.SENTENCE:
            m_vc, m_cv = build_domain_matrices(agg, measure, args.k)
        else:
            m_vc, m_cv = build_matrices(agg.counts, measure, args.k, family)
        save_store(out, family, agg.vocabulary, agg.contexts, m_vc, m_cv)
        print(
            f"{family.value}: |V|={len(agg.vocabulary)} |C|={len(agg.contexts)} "
            f"nnz(vc)={m_vc.nnz} nnz(cv)={m_cv.nnz}"
        )
    if result.skipped:
        print(f"skipped {result.skipped} malformed records", file=sys.stderr)
    if not result.families:
        print("empty input: |V|=0 |C|=0 nnz(vc)=0 nnz(cv)=0")
    return 0


def _require_matrix_dir(args) -> Path:
    if not args.matrix_dir:
        raise SystemExit("no matrix directory: pass --matrix-dir or set $" + MATRIX_DIR_ENV)
    d = Path(args.matrix_dir)
    if not d.is_dir():
        raise SystemExit(f"matrix directory not found: {d}")
    return d


def _load_engine(directory: Path, family: ContextFamily) -> ExpansionEngine:
    try:
        vocabulary, contexts, m_vc, m_cv = load_store(directory, family)
    except FileNotFoundError as err:
        raise SystemExit(
            f"no {family.value} store in {directory} (missing {Path(err.filename).name})"
        )
    return ExpansionEngine(vocabulary, contexts, m_vc, m_cv)


def _print_rows(rows: list[dict], fmt: str, out: TextIO) -> None:
    if not rows:
        return
    keys = list(rows[0].keys())
    if fmt == "tsv":
        out.write("\t".join(keys) + "\n")
        for row in rows:
            out.write("\t".join(_fmt_cell(row[k]) for k in keys) + "\n")
    elif fmt == "text":
        for row in rows:
            out.write(" ".join(f"{k}={_fmt_cell(row[k])}" for k in keys) + "\n")
    else:
        widths = {
            k: max(len(k), max(len(_fmt_cell(r[k])) for r in rows)) for k in keys
        }
        out.write("  ".join(f"{k:<{widths[k]}}" for k in keys) + "\n")
        for row in rows:
            out.write("  ".join(f"{_fmt_cell(row[k]):<{widths[k]}}" for k in keys) + "\n")


def _fmt_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _expansion_rows(expansion: Expansion) -> list[dict]:
    return [
        {"rank": i + 1, "term": term, "score": score}
        for i, (term, score) in enumerate(expansion.items)
    ]


def _print_expansion(
    engine: ExpansionEngine, expansion: Expansion, fmt: str, explain: bool, out: TextIO
) -> None:
    if expansion.unresolved_seeds:
        print(
            "unresolved seeds: " + ", ".join(expansion.unresolved_seeds),
            file=sys.stderr,
        )
    if not expansion.items:
        out.write(f"no results ({expansion.reason})\n")
    else:
        _print_rows(_expansion_rows(expansion), fmt, out)
    if explain:
        rows = [
            {
                "context": d["context"],
                "activation": d["activation"],
                "support": d["support"],
                "score": d["score"],
                "weight": d["weight"],
            }
            for d in engine.describe_focus(expansion.focus)
        ]
        out.write("# focus\n")
        _print_rows(rows, fmt, out)


def cmd_expand(args) -> int:
    directory = _require_matrix_dir(args)
    engine = _load_engine(directory, ContextFamily.SYNTACTIC)
    params = ExpansionParams(
        rho=args.rho, n=args.n, result_limit=args.limit, include_seeds=args.include_seeds
    )
    try:
        expansion = engine.expand(args.seeds, params)
    except UnresolvedSeedsError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    _print_expansion(engine, expansion, args.format, args.explain, sys.stdout)
    return 0


def cmd_analogy(args) -> int:
    directory = _require_matrix_dir(args)
    like_engine = _load_engine(directory, ContextFamily.SYNTACTIC)
    domain_engine = _load_engine(directory, ContextFamily.SENTENCE)
    params = ExpansionParams(rho=args.rho, n=args.n)
    query = AnalogyQuery(
        like_term=args.like,
        domain_term=args.of,
        like_params=params,
        domain_params=params,
        result_limit=args.limit,
    )
    try:
        result = solve(query, like_engine, domain_engine)
    except UnresolvableTermError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if not result.items:
        print(f"no shared candidates ({result.reason})")
        return 0
    rows = [
        {
            "rank": i + 1,
            "term": c.term,
            "combined": c.combined,
            "m_score": c.m_score,
            "d_score": c.d_score,
        }
        for i, c in enumerate(result.items)
    ]
    _print_rows(rows, args.format, sys.stdout)
    return 0


def cmd_eval(args) -> int:
    directory = _require_matrix_dir(args)
    engine = _load_engine(directory, ContextFamily.SYNTACTIC)
    if args.category in BUILTIN_CATEGORIES:
        category = load_builtin(args.category)
    elif Path(args.category).exists():
        category = load_gold_file(args.category)
    else:
        print(
            f"error: unknown category {args.category!r}; "
            f"available: {', '.join(BUILTIN_CATEGORIES)} or a gold file path",
            file=sys.stderr,
        )
        return 1
    params = ExpansionParams(
        rho=args.rho, n=args.n, result_limit=args.limit, include_seeds=True
    )

    def expander(seeds: list[str]) -> list[str]:
        try:
            return [t for t, _ in engine.expand(seeds, params).items]
        except UnresolvedSeedsError:
            return []

    config = TrialConfig(
        trials=args.trials,
        seeds_per_trial=args.seeds_per_trial,
        rng_seed=args.rng_seed,
        count_seeds=not args.no_count_seeds,
    )
    try:
        report = run_trials(category, expander, config)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if args.format == "tsv":
        sys.stdout.write(report.to_tsv())
    else:
        print(f"category: {report.category} (map_n over first {report.n_for_map_n} synsets)")
        print(report.format_table())
    return 0


REPL_HELP = """commands:
  term [term ...]        expand the seed set
  :analogy LIKE DOMAIN   answer "what is the LIKE of DOMAIN?"
  :rho X | :n X | :limit X   set query parameters
  :explain on|off        toggle focus diagnostics
  :quit                  leave
"""


def repl(
    like_engine: ExpansionEngine,
    domain_engine: ExpansionEngine | None,
    params: ExpansionParams,
    in_stream: TextIO,
    out_stream: TextIO,
    fmt: str = "table",
) -> None:
    """Line-oriented session; stateless apart from the setting values."""
    settings = {
        "rho": params.rho,
        "n": params.n,
        "limit": params.result_limit,
        "explain": False,
    }

    def current_params() -> ExpansionParams:
        return ExpansionParams(
            rho=settings["rho"],
            n=int(settings["n"]),
            result_limit=int(settings["limit"]),
        )

    out_stream.write(REPL_HELP)
    while True:
        out_stream.write("> ")
        out_stream.flush()
        line = in_stream.readline()
        if not line:
            break
        line = line.strip()
        if not line:
            continue
        try:
            if line.startswith(":"):
                parts = line[1:].split()
                cmd = parts[0].lower() if parts else ""
                if cmd in ("quit", "exit", "q"):
                    break
                elif cmd in ("rho", "n", "limit") and len(parts) == 2:
                    settings[cmd] = float(parts[1]) if cmd == "rho" else int(parts[1])
                elif cmd == "explain" and len(parts) == 2:
                    settings["explain"] = parts[1].lower() in ("on", "true", "1")
                elif cmd == "analogy" and len(parts) == 3:
                    if domain_engine is None:
                        out_stream.write("no sentence-cooccurrence store loaded\n")
                        continue
                    query = AnalogyQuery(
                        like_term=parts[1],
                        domain_term=parts[2],
                        like_params=current_params(),
                        domain_params=current_params(),
                        result_limit=int(settings["limit"]),
                    )
                    result = solve(query, like_engine, domain_engine)
                    if not result.items:
                        out_stream.write(f"no shared candidates ({result.reason})\n")
                    else:
                        rows = [
                            {"term": c.term, "combined": c.combined, "m": c.m_score, "d": c.d_score}
                            for c in result.items
                        ]
                        _print_rows(rows, fmt, out_stream)
                else:
                    out_stream.write(REPL_HELP)
            else:
                seeds = line.split()
                expansion = like_engine.expand(seeds, current_params())
                _print_expansion(
                    like_engine, expansion, fmt, settings["explain"], out_stream
                )
        except (UnresolvedSeedsError, UnresolvableTermError, ValueError) as err:
            out_stream.write(f"error: {err}\n")


def cmd_repl(args) -> int:
    directory = _require_matrix_dir(args)
    like_engine = _load_engine(directory, ContextFamily.SYNTACTIC)
    domain_engine = None
    if ContextFamily.SENTENCE in store_families(directory):
        domain_engine = _load_engine(directory, ContextFamily.SENTENCE)
    params = ExpansionParams(rho=args.rho, n=args.n, result_limit=args.limit)
    repl(like_engine, domain_engine, params, sys.stdin, sys.stdout, args.format)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "build": cmd_build,
        "expand": cmd_expand,
        "analogy": cmd_analogy,
        "eval": cmd_eval,
        "repl": cmd_repl,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
