"""Command-line interface.

Three subcommands: ``compare A B`` for one pair, ``corpus DIR`` for all
unordered pairs of submission subdirectories, and ``dump-tokens PATH`` for
the post-processing token listing. Exit codes: 0 success, 1 usage error,
2 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional

from .compare import Mode
from .corpus import run_corpus
from .errors import LowdupError
from .pipeline import RunConfig, compare_paths, dump_tokens, load_submission
from .report import (
    corpus_dict,
    render_corpus_csv,
    render_corpus_text,
    render_csv,
    render_json,
    render_text,
    report_dict,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2


class _ArgumentParser(argparse.ArgumentParser):
    """argparse with the documented usage-error exit code (1, not 2)."""

    def error(self, message: str):  # noqa: A003 - argparse API name
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=[mode.value for mode in Mode],
        default=Mode.LA.value,
        help="comparison scenario: la (abstract linearization + inlining), "
        "lam (inlining only), slt (lexical source baseline)",
    )
    parser.add_argument(
        "--min-match", type=int, default=2, metavar="N",
        help="shortest tile RKGST accepts (default 2)",
    )
    parser.add_argument(
        "--pairing-threshold", type=float, default=0.5, metavar="X",
        help="minimum signature similarity to pair two methods (default 0.5)",
    )
    parser.add_argument(
        "--involved", choices=["min", "max", "mean"], default="min",
        help="baseline token count for MT/similarity (default min)",
    )
    parser.add_argument(
        "--format", choices=["text", "json", "csv"], default="text",
        help="output format (default text)",
    )
    parser.add_argument(
        "--verbose", action="store_true",
        help="include per-method-pair and tile detail",
    )
    parser.add_argument(
        "--jobs", type=int, default=1, metavar="N",
        help="parallel pair comparisons for corpus runs (default 1)",
    )
    parser.add_argument(
        "--exclude-synthetic", action="store_true",
        help="drop compiler-generated methods (synthetic, bridge, <init>, <clinit>)",
    )
    parser.add_argument(
        "--slt-abstract-identifiers", action="store_true",
        help="SLT only: map every identifier to one token class",
    )


def build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="lowdup",
        description="Low-level token plagiarism detector for JVM programs.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    compare = subparsers.add_parser("compare", help="compare two submissions")
    compare.add_argument("path_a", type=Path)
    compare.add_argument("path_b", type=Path)
    _add_common_flags(compare)

    corpus = subparsers.add_parser(
        "corpus", help="compare all pairs of submission subdirectories"
    )
    corpus.add_argument("directory", type=Path)
    _add_common_flags(corpus)

    dump = subparsers.add_parser(
        "dump-tokens", help="print the mode-processed token listing"
    )
    dump.add_argument("path", type=Path)
    _add_common_flags(dump)

    return parser


def _config_from_args(parser: _ArgumentParser, args: argparse.Namespace) -> RunConfig:
    try:
        return RunConfig(
            mode=Mode(args.mode),
            min_match=args.min_match,
            pairing_threshold=args.pairing_threshold,
            involved_baseline=args.involved,
            include_synthetic=not args.exclude_synthetic,
            output_format=args.format,
            verbose=args.verbose,
            jobs=args.jobs,
            slt_abstract_identifiers=args.slt_abstract_identifiers,
        )
    except ValueError as exc:
        parser.error(str(exc))
        raise AssertionError("unreachable")  # parser.error always exits


def _color_enabled(config: RunConfig) -> bool:
    if config.output_format != "text":
        return False
    if os.environ.get("LOWDUP_NO_COLOR"):
        return False
    return sys.stdout.isatty()


def _run_compare(args: argparse.Namespace, config: RunConfig) -> str:
    report = compare_paths(args.path_a, args.path_b, config)
    name_a, name_b = args.path_a.name, args.path_b.name
    if config.output_format == "json":
        return render_json(report_dict(name_a, name_b, report, config.verbose))
    if config.output_format == "csv":
        return render_csv(name_a, name_b, report)
    return render_text(name_a, name_b, report, config.verbose, _color_enabled(config))


def _run_corpus(args: argparse.Namespace, config: RunConfig) -> str:
    result = run_corpus(args.directory, config)
    if config.output_format == "json":
        return render_json(corpus_dict(result, config.verbose))
    if config.output_format == "csv":
        return render_corpus_csv(result)
    return render_corpus_text(result, config.verbose, _color_enabled(config))


def _run_dump(args: argparse.Namespace, config: RunConfig) -> str:
    return dump_tokens(config, args.path)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(parser, args)

    if args.command == "dump-tokens" and config.mode is Mode.SLT:
        parser.error("dump-tokens supports --mode la or lam")

    try:
        if args.command == "compare":
            output = _run_compare(args, config)
        elif args.command == "corpus":
            output = _run_corpus(args, config)
        else:
            output = _run_dump(args, config)
    except LowdupError as exc:
        print(f"lowdup: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"lowdup: error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
