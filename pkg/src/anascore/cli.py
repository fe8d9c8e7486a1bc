"""Command-line entry point.

``anascore score`` evaluates a response file against a key file locally;
``anascore serve`` starts the HTTP scoring service.
"""

from __future__ import annotations

import argparse
import sys

from .corpus import CorpusParseError, parse_corpus
from .report import render_json, render_text
from .scoring import score_corpora, validate_corpus
from .service import parse_metric_names

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anascore",
        description="Coreference scorer with split-antecedent anaphora support",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    score = sub.add_parser("score", help="score a response file against a key file")
    score.add_argument("--key", required=True, help="gold-standard corpus file")
    score.add_argument("--response", required=True, help="system output corpus file")
    score.add_argument(
        "--metrics",
        default="all",
        help="comma-separated subset of muc,b3,ceafm,ceafe,lea,blanc, or 'all'",
    )
    score.add_argument(
        "--lea-beta",
        type=float,
        default=1.0,
        help="LEA importance multiplier for entities with accommodated sets",
    )
    score.add_argument(
        "--split-only",
        action="store_true",
        help="also report scores over split-antecedent anaphors only",
    )
    score.add_argument(
        "--format",
        choices=["text", "json"],
        default="text",
        dest="report_format",
        help="report format (json carries numerators/denominators)",
    )
    score.add_argument(
        "--strict",
        action="store_true",
        help="treat validation violations as fatal",
    )
    score.add_argument(
        "--only-docs-with-splits",
        action="store_true",
        help="restrict scoring to documents whose key has a split-antecedent",
    )

    serve = sub.add_parser("serve", help="run the HTTP scoring service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _load_corpus(path: str):
    try:
        with open(path, "rb") as handle:
            data = handle.read()
    except OSError as err:
        raise CorpusParseError(f"cannot read {path}: {err.strerror}") from None
    return parse_corpus(data)


def run_score(args: argparse.Namespace) -> int:
    try:
        selected = parse_metric_names(
            [x.strip() for x in args.metrics.split(",") if x.strip()]
        )
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    try:
        key = _load_corpus(args.key)
        response = _load_corpus(args.response)
    except CorpusParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    violations = validate_corpus(key) + validate_corpus(response)
    for violation in violations:
        print(f"validation: {violation}", file=sys.stderr)
    if violations and args.strict:
        print("error: validation failed (--strict)", file=sys.stderr)
        return EXIT_VALIDATION
    report = score_corpora(
        key,
        response,
        selected=selected,
        lea_beta=args.lea_beta,
        include_split_only=args.split_only,
        only_docs_with_splits=args.only_docs_with_splits,
    )
    if args.report_format == "json":
        sys.stdout.write(render_json(report))
    else:
        sys.stdout.write(render_text(report))
    return EXIT_OK


def run_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "score":
        return run_score(args)
    return run_serve(args)


if __name__ == "__main__":
    sys.exit(main())
