"""Command-line interface: index, search, evaluate, serve, config."""
from __future__ import annotations

import argparse
import json
import os
import sys

from .config import AppConfig, ConfigError, config_to_dict, default_config, load_config
from .evaluation import (
    AgreementPolicy,
    compare_rankers,
    load_judgments,
    report_to_dict,
    searcher_systems,
)
from .index import (
    ConfigMismatch,
    IndexFormatError,
    Searcher,
    build_index,
    load_index,
    save_index,
)
from .ingest import NoDocumentsFound, load_corpus
from .ontology import QueryError, TaxonomyError
from .scoring import RelevanceLevel
from .synth import build_planted_corpus
from .textproc import build_pipeline

CONFIG_ENV = "FUZZYRANK_CONFIG"

_LEVEL_PARAM = {
    "high": RelevanceLevel.HIGH,
    "medium": RelevanceLevel.MEDIUM,
    "low": RelevanceLevel.LOW,
}


def _effective_config(explicit_path: str | None) -> AppConfig:
    """Flag beats the FUZZYRANK_CONFIG variable beats the defaults."""
    path = explicit_path or os.environ.get(CONFIG_ENV)
    return load_config(path) if path else default_config()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fuzzyrank",
        description="Zone-weighted article search with fuzzy relevance levels.",
    )
    p.add_argument("--config", help="configuration JSON (overrides $FUZZYRANK_CONFIG)")
    sub = p.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="index a directory of articles")
    p_index.add_argument("--corpus", required=True, help="directory of .txt/.xml files")
    p_index.add_argument("--out", required=True, help="index file to write")

    p_search = sub.add_parser("search", help="query an index")
    p_search.add_argument("query")
    p_search.add_argument("--index", required=True, help="index file")
    p_search.add_argument("--level", choices=sorted(_LEVEL_PARAM))
    p_search.add_argument("--limit", type=int, default=10)
    p_search.add_argument("--offset", type=int, default=0)
    p_search.add_argument("--explain", action="store_true")
    p_search.add_argument("--json", action="store_true", dest="as_json")

    p_eval = sub.add_parser("evaluate", help="agreement statistics and ranker comparison")
    p_eval.add_argument("--format", choices=("table", "json"), default="table")
    p_eval.add_argument("--judgments", help="judgment CSV (bundled study data otherwise)")
    p_eval.add_argument(
        "--policy",
        choices=tuple(p.value for p in AgreementPolicy),
        default=AgreementPolicy.MAJORITY.value,
    )
    p_eval.add_argument("--seed", type=int, default=2026)

    p_serve = sub.add_parser("serve", help="serve the HTTP API")
    p_serve.add_argument("--index", required=True, help="index file")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static", help="directory of browser client files")

    p_cfg = sub.add_parser("config", help="show configuration")
    p_cfg.add_argument(
        "--print-default", action="store_true", help="defaults, ignoring overrides"
    )
    return p


def _cmd_index(args: argparse.Namespace) -> int:
    cfg = _effective_config(args.config)
    pipe = build_pipeline(cfg.pipeline)
    corpus, records = load_corpus(args.corpus, cfg.ingest, pipe)
    for rec in records:
        if rec.status == "error":
            print(f"skipped {rec.path}: {rec.error}", file=sys.stderr)
    if not len(corpus):
        print("no documents loaded", file=sys.stderr)
        return 1
    index = build_index(corpus, cfg, pipe)
    save_index(index, args.out)
    n_err = sum(1 for r in records if r.status == "error")
    print(f"indexed {len(corpus)} documents ({n_err} skipped) -> {args.out}")
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    cfg_override = _effective_config(args.config) if _has_config(args) else None
    index = load_index(args.index)
    searcher = Searcher.from_index(index, config=cfg_override)
    results = searcher.search(
        args.query,
        level=_LEVEL_PARAM.get(args.level or ""),
        offset=args.offset,
        limit=args.limit,
        explain=args.explain,
    )
    if args.as_json:
        print(json.dumps({"query": args.query, "results": [r.to_dict() for r in results]}, indent=2))
        return 0
    if not results:
        print("no matching documents")
        return 0
    for n, r in enumerate(results, start=args.offset + 1):
        date = f" ({r.date})" if r.date else ""
        print(f"{n:3d}. [{r.label}] {r.doc_id}{date}  {r.title}  total={r.total:g}")
        if args.explain and r.breakdown:
            for occ in r.breakdown["occurrences"]:
                flag = "" if occ["scored"] else "  [unscored]"
                ctx = "  [context]" if occ["in_context"] else ""
                print(
                    f"       {occ['term']!r} {occ['match_type']} in {occ['zone']}"
                    f" zone={occ['zone_weight']:g} ont={occ['ontology_weight']:g}"
                    f" score={occ['score']:g}{ctx}{flag}"
                )
    return 0


def _has_config(args: argparse.Namespace) -> bool:
    return bool(args.config or os.environ.get(CONFIG_ENV))


def _cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = _effective_config(args.config)
    study = load_judgments(args.judgments)
    corpus, planted_js = build_planted_corpus(cfg, seed=args.seed)
    searcher = Searcher.from_index(build_index(corpus, cfg))
    fuzzy, baseline = searcher_systems(searcher)
    comparison = compare_rankers(
        fuzzy, baseline, planted_js, AgreementPolicy(args.policy)
    )
    report = report_to_dict(study, comparison)
    if args.format == "json":
        print(json.dumps(report, indent=2))
        return 0
    ij = report["inter_judge"]
    print("Inter-judge agreement (study data)")
    for label, key in (
        ("not relevant", "not_relevant"),
        ("relevant, two of three", "relevant_two_of_three"),
        ("relevant, unanimous", "relevant_unanimous"),
        ("unanimous overall", "unanimous_overall"),
    ):
        row = ij[key]
        print(
            f"  {label:<24}{row['agreements']:>3}/{row['candidates']:<3}"
            f"  {row['rate'] * 100:5.1f}%"
        )
    sc = report["system_comparison"]
    print()
    print(f"System vs judges (synthetic corpus, {sc['policy']} policy)")
    for label, key in (("zone-weighted", "fuzzy"), ("occurrence-count", "baseline")):
        row = sc[key]
        print(
            f"  {label:<24}{row['agreements']:>3}/{row['pairs']:<3}"
            f"  {row['rate'] * 100:5.1f}%"
        )
    print(f"  {'gap':<24}{sc['gap_points']:.1f} points")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    cfg_override = _effective_config(args.config) if _has_config(args) else None
    index = load_index(args.index)
    searcher = Searcher.from_index(index, config=cfg_override)
    app = create_app(searcher, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _cmd_config(args: argparse.Namespace) -> int:
    cfg = default_config() if args.print_default else _effective_config(args.config)
    print(json.dumps(config_to_dict(cfg), indent=2, sort_keys=True))
    return 0


_COMMANDS = {
    "index": _cmd_index,
    "search": _cmd_search,
    "evaluate": _cmd_evaluate,
    "serve": _cmd_serve,
    "config": _cmd_config,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (
        ConfigError,
        ConfigMismatch,
        IndexFormatError,
        NoDocumentsFound,
        QueryError,
        TaxonomyError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
