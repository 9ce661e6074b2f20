"""Command-line entry point.

Usage:
    python -m src.entity_hallucination.main <subcommand> --input corpus.jsonl [options]

Exit codes: 0 success, 1 usage or configuration error, 2 data error.
"""

import argparse
import asyncio
import sys
from typing import NoReturn, Optional, Sequence

from pydantic import ValidationError

from src.entity_hallucination import __version__
from src.entity_hallucination.config import (
    ExtractorChoice,
    FilterStrategy,
    ModeChoice,
    ReportFormat,
    RunConfig,
    Subcommand,
    SystemSpec,
    settings,
)
from src.entity_hallucination.dataset.schemas import CleaningPolicy, LengthAction, LengthPolicy
from src.entity_hallucination.handlers.commands import COMMANDS, EXIT_DATA, EXIT_USAGE
from src.entity_hallucination.matching.policy import MatchPolicy, TargetMatchMode
from src.entity_hallucination.utils.logger import logger
from src.entity_hallucination.utils.safety import ToolkitError


# ============================================
# Argument Parsing
# ============================================

class UsageErrorParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


_DESCRIPTIONS = {
    Subcommand.SCORE: "score generated summaries (prec_s, prec_t, recall_t, F1_t, ROUGE)",
    Subcommand.FILTER: "remove entity hallucinations from a training corpus",
    Subcommand.AUGMENT: "prepend summary-worthy entity chains to targets (JAENS)",
    Subcommand.CLEAN: "clean texts and enforce length budgets",
    Subcommand.STATS: "corpus statistics",
    Subcommand.EXTRACT: "per-record entity lists",
}


def _add_shared_arguments(parser: argparse.ArgumentParser) -> None:
    io = parser.add_argument_group("input/output")
    io.add_argument("--input", required=True, help="input corpus (JSON Lines)")
    io.add_argument("--output", help="output corpus (filter, augment, clean, extract)")
    io.add_argument("--report", help="structured JSON report file (score, stats)")
    io.add_argument("--audit", help="audit sidecar for filter/clean (default <output>.audit.jsonl)")
    io.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.TABLE.value,
                    help="stdout rendering (default: table)")
    io.add_argument("--system", action="append", metavar="LABEL[=FIELD]",
                    help="score: one table row LABEL for summaries in record field FIELD "
                         "(default field: hypothesis); repeat to compare systems")

    entities = parser.add_argument_group("entities and matching")
    entities.add_argument("--mode", choices=[m.value for m in ModeChoice],
                          help="counting variant (default: both; nu for pair filtering)")
    entities.add_argument("--extractor", choices=[e.value for e in ExtractorChoice],
                          default=ExtractorChoice.HEURISTIC.value, help="entity source (default: heuristic)")
    entities.add_argument("--stopwords", help="stop-word file, one word per line (default: built-in list)")
    entities.add_argument("--target-match", choices=[t.value for t in TargetMatchMode],
                          default=TargetMatchMode.EXACT_KEY.value,
                          help="hypothesis vs reference entity comparison (default: exact-key)")
    entities.add_argument("--no-stopword-block", action="store_true",
                          help="allow single stop-word components to match")
    entities.add_argument("--numeric-block", action="store_true",
                          help="forbid purely numeric single-token components")

    filtering = parser.add_argument_group("filtering and JAENS")
    filtering.add_argument("--strategy", choices=[s.value for s in FilterStrategy],
                           default=FilterStrategy.SENTENCE.value, help="filter strategy (default: sentence)")
    filtering.add_argument("--threshold", type=float, default=1.0, help="pair-filter prec_s threshold (default: 1.0)")
    filtering.add_argument("--separator", default=settings.separator,
                           help=f"JAENS separator token (default: {settings.separator})")
    filtering.add_argument("--jaens-hypothesis", action="store_true",
                           help="score only the summary part of JAENS-formatted hypotheses")

    cleaning = parser.add_argument_group("cleaning and length budgets")
    for flag, what in (("case", "letter case"), ("citations", "citation markers"), ("symbols", "symbol runs"),
                       ("punctuation", "punctuation"), ("numerals", "numeral tokens")):
        cleaning.add_argument(f"--keep-{flag}", action="store_true", help=f"do not remove {what}")
    budgets = LengthPolicy()
    cleaning.add_argument("--max-source-tokens", type=int, default=budgets.max_source_tokens)
    cleaning.add_argument("--max-target-tokens", type=int, default=budgets.max_target_tokens)
    cleaning.add_argument("--min-target-tokens", type=int, default=budgets.min_target_tokens)
    cleaning.add_argument("--length-action", choices=[a.value for a in LengthAction],
                          default=budgets.action.value, help="out-of-budget handling (default: truncate)")

    run = parser.add_argument_group("run")
    run.add_argument("--strict", action="store_true", help="exit with 2 when any record fails")
    run.add_argument("--jobs", type=int, default=settings.jobs, help="parallel record workers")


def build_parser() -> argparse.ArgumentParser:
    parser = UsageErrorParser(
        prog="entity-hallucination",
        description="Entity-level hallucination metrics and corpus tools for summarization.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")
    for command in Subcommand:
        sub = subparsers.add_parser(command.value, help=_DESCRIPTIONS[command], description=_DESCRIPTIONS[command])
        _add_shared_arguments(sub)
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    """RunConfig from parsed arguments.

    Raises:
        ValidationError: if any value is out of range or a path is unusable
    """
    command = Subcommand(args.command)
    mode = args.mode
    if mode is None:
        pair_filter = command == Subcommand.FILTER and args.strategy == FilterStrategy.PAIR.value
        mode = ModeChoice.NU.value if pair_filter else ModeChoice.BOTH.value

    systems = {"systems": tuple(SystemSpec.parse(raw) for raw in args.system)} if args.system else {}

    return RunConfig(
        command=command,
        input_path=args.input,
        output_path=args.output,
        report_path=args.report,
        audit_path=args.audit,
        mode=mode,
        extractor=args.extractor,
        stopwords_path=args.stopwords,
        strategy=args.strategy,
        threshold=args.threshold,
        separator=args.separator,
        jaens_hypothesis=args.jaens_hypothesis,
        **systems,
        policy=MatchPolicy(
            unigram_stopword_block=not args.no_stopword_block,
            target_match_mode=args.target_match,
            numeric_unigram_block=args.numeric_block,
        ),
        cleaning=CleaningPolicy(
            lowercase=not args.keep_case,
            remove_citations=not args.keep_citations,
            remove_symbols=not args.keep_symbols,
            remove_punctuation=not args.keep_punctuation,
            remove_numerals=not args.keep_numerals,
        ),
        length=LengthPolicy(
            max_source_tokens=args.max_source_tokens,
            max_target_tokens=args.max_target_tokens,
            min_target_tokens=args.min_target_tokens,
            action=args.length_action,
        ),
        output_format=args.format,
        strict=args.strict,
        jobs=args.jobs,
    )


# ============================================
# Entry Point
# ============================================

def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, validate the run configuration and dispatch."""
    args = build_parser().parse_args(argv)

    try:
        config = build_config(args)
    except ValidationError as e:
        for error in e.errors():
            location = ".".join(str(part) for part in error["loc"]) or "config"
            print(f"error: {location}: {error['msg']}", file=sys.stderr)
        return EXIT_USAGE

    logger.info(f"Running '{config.command.value}' on {config.input_path} (jobs={config.jobs})")
    try:
        return asyncio.run(COMMANDS[config.command.value](config))
    except ToolkitError as e:
        logger.error(f"Aborted: {e.log_details}")
        print(f"error: {e.user_message}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
