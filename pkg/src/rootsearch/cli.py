"""Command-line interface tying generation, indexing, querying and evaluation
into reproducible runs.

With no flags, ``rootsearch gen-corpus && rootsearch run-eval`` regenerates
the default 10,000-document corpus and evaluates all four engines over its
100 queries, writing results/*.tsv.

Exit codes: 0 success, 1 validation error, 2 infrastructure error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import (
    DEFAULT_SEED,
    CorpusSpec,
    generate_corpus,
    load_manifest,
    manifest_digest,
)
from .errors import RootSearchError
from .evaluation import build_engines, fixed4, run_evaluation, write_report
from .index import IndexMode, build_index, save_index
from .p2p import build_overlay, format_message_log, p2p_search
from .search import (
    BASELINE,
    ENGINES,
    EXPANDED,
    Query,
    search_exact,
    search_expanded,
)

DEFAULT_CORPUS_DIR = "corpus"
DEFAULT_RESULTS_DIR = "results"

_DEFAULT_PEERS = 4
_DEFAULT_SUPERPEERS = 2

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INFRASTRUCTURE = 2


def _resolve_spec(args: argparse.Namespace) -> CorpusSpec:
    # When peer counts are not given explicitly, shrink the defaults to the
    # largest value that divides evenly, so scaled-down corpora work without
    # extra flags. Explicit values are validated as-is.
    peers = args.peers
    if peers is None:
        peers = max(k for k in range(1, _DEFAULT_PEERS + 1) if args.roots % k == 0)
    super_peers = args.super_peers
    if super_peers is None:
        super_peers = max(m for m in range(1, _DEFAULT_SUPERPEERS + 1) if peers % m == 0)
    return CorpusSpec(
        root_count=args.roots,
        words_per_root=args.words_per_root,
        peer_count=peers,
        superpeer_count=super_peers,
        roots_per_peer=max(1, args.roots // peers),
        seed=args.seed,
    )


def cmd_gen_corpus(args: argparse.Namespace) -> int:
    spec = _resolve_spec(args)
    manifest = generate_corpus(spec, args.out)
    print(
        f"generated {len(manifest.documents)} documents"
        f" ({len(manifest.roots)} roots x {spec.words_per_root} words)"
        f" across {spec.peer_count} peers -> {args.out}"
    )
    print(f"seed: {spec.seed}")
    print(f"corpus digest: {manifest_digest(args.out)}")
    return EXIT_OK


def cmd_build_index(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.corpus)
    mode = IndexMode(args.mode)
    index = build_index(manifest.documents, mode, manifest.lexicon)
    out = args.out or f"index-{mode.value}.bin"
    save_index(index, out)
    print(f"built {mode.value} index: {len(index)} keys, {index.doc_count} documents -> {out}")
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.corpus)
    query = Query.parse("cli", args.word)
    print(f"query: {args.word} -> {query.normalized}")

    messages = None
    peers_contacted = None
    if args.engine in (BASELINE, EXPANDED):
        index = build_index(manifest.documents, IndexMode.SIMPLE, manifest.lexicon)
        if args.engine == BASELINE:
            result = search_exact(query, index)
        else:
            result = search_expanded(query, index, manifest.lexicon)
    else:
        mode = IndexMode.SIMPLE if args.engine == "p2p-simple" else IndexMode.ADVANCED
        overlay = build_overlay(manifest, mode)
        outcome = p2p_search(query, overlay, args.origin)
        result = outcome.result
        messages = outcome.messages
        peers_contacted = outcome.peers_contacted

    if result.degraded:
        print(
            f"warning: no root resolved for {query.normalized!r};"
            " degraded to exact search",
            file=sys.stderr,
        )
    if result.expanded_terms:
        print(f"expanded terms ({len(result.expanded_terms)}): "
              + " ".join(result.expanded_terms))
    print(f"found ({len(result.found)}):")
    for doc_id in result.found:
        print(doc_id)
    if peers_contacted is not None:
        print(f"peers contacted: {peers_contacted}")
        print("messages:")
        print(format_message_log(messages), end="")
    return EXIT_OK


def cmd_run_eval(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.corpus)
    digest = manifest_digest(args.corpus)
    engines = build_engines(manifest, args.engines, origin=args.origin)
    report = run_evaluation(manifest, engines, corpus_digest=digest)
    write_report(report, args.out)
    print(f"corpus digest: {digest}")
    print("engine\tqueries\tmean_precision\tmean_recall\tfailures")
    for engine in report.engine_names:
        print(
            f"{engine}\t{len(report.records[engine])}"
            f"\t{fixed4(report.mean_precision(engine))}"
            f"\t{fixed4(report.mean_recall(engine))}"
            f"\t{report.failures(engine)}"
        )
    print(f"results written to {args.out}")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    results_dir = Path(args.results)
    summary = (results_dir / "summary.tsv").read_text("utf-8").splitlines()
    engines = [line.split("\t")[0] for line in summary[2:] if line.strip()]
    means = {line.split("\t")[0]: line.split("\t")[2:4] for line in summary[2:] if line.strip()}

    per_query: dict[str, dict[str, tuple[str, str]]] = {}
    words: dict[str, str] = {}
    order: list[str] = []
    for engine in engines:
        lines = (results_dir / f"{engine}.tsv").read_text("utf-8").splitlines()
        for line in lines[2:]:
            if not line.strip():
                continue
            query_id, word, _found, _relevant, prec, rec, _peers = line.split("\t")
            if query_id not in per_query:
                per_query[query_id] = {}
                words[query_id] = word
                order.append(query_id)
            per_query[query_id][engine] = (prec, rec)

    header = ["query_id", "word"] + [f"{e} P\t{e} R" for e in engines]
    print("\t".join(header))
    for query_id in order:
        cells = [query_id, words[query_id]]
        for engine in engines:
            prec, rec = per_query[query_id].get(engine, ("-", "-"))
            cells.append(f"{prec}\t{rec}")
        print("\t".join(cells))
    cells = ["ALL", "-"]
    for engine in engines:
        cells.append("\t".join(means[engine]))
    print("\t".join(cells))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootsearch",
        description="Arabic retrieval testbed: exact vs root-expanded search, "
        "centralized and over a simulated super-peer overlay.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-corpus", help="generate the document corpus")
    gen.add_argument("--out", default=DEFAULT_CORPUS_DIR, help="corpus directory")
    gen.add_argument("--seed", type=int, default=DEFAULT_SEED)
    gen.add_argument("--roots", type=int, default=100)
    gen.add_argument("--words-per-root", type=int, default=100)
    gen.add_argument("--peers", type=int, default=None)
    gen.add_argument("--super-peers", type=int, default=None)
    gen.set_defaults(handler=cmd_gen_corpus)

    build = sub.add_parser("build-index", help="build and snapshot an index")
    build.add_argument("--corpus", default=DEFAULT_CORPUS_DIR)
    build.add_argument("--mode", choices=[m.value for m in IndexMode], default="simple")
    build.add_argument("--out", default=None, help="snapshot file path")
    build.set_defaults(handler=cmd_build_index)

    query = sub.add_parser("query", help="run one query word")
    query.add_argument("word")
    query.add_argument("--corpus", default=DEFAULT_CORPUS_DIR)
    query.add_argument("--engine", choices=ENGINES, default=BASELINE)
    query.add_argument("--origin", default="peer-1", help="originating peer (p2p engines)")
    query.set_defaults(handler=cmd_query)

    run = sub.add_parser("run-eval", help="evaluate engines over all queries")
    run.add_argument("--corpus", default=DEFAULT_CORPUS_DIR)
    run.add_argument("--out", default=DEFAULT_RESULTS_DIR)
    run.add_argument("--engines", nargs="+", choices=ENGINES, default=list(ENGINES))
    run.add_argument("--origin", default="peer-1")
    run.set_defaults(handler=cmd_run_eval)

    report = sub.add_parser("report", help="render saved results side by side")
    report.add_argument("--results", default=DEFAULT_RESULTS_DIR)
    report.set_defaults(handler=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (RootSearchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFRASTRUCTURE


if __name__ == "__main__":
    sys.exit(main())
