"""Subcommand handlers.

Each ``cmd_*`` coroutine streams the input corpus through the ordered runner,
writes its artifacts atomically and returns the process exit code.
"""
import sys
from typing import Any, Optional, Union

from src.entity_hallucination.config import FilterStrategy, ReportFormat, RunConfig, SystemSpec
from src.entity_hallucination.dataset.cleaning import clean_record, enforce_length
from src.entity_hallucination.dataset.filtering import filter_pairs, filter_sentences
from src.entity_hallucination.dataset.jaens import augment_record
from src.entity_hallucination.dataset.schemas import CorpusRecord, FilterOutcome, LengthOutcome
from src.entity_hallucination.dataset.stats import RecordProfile, profile_record, render_stats, summarize_profiles
from src.entity_hallucination.entities.extractors import EntityExtractor, build_extractor, record_annotations
from src.entity_hallucination.metrics.aggregate import aggregate
from src.entity_hallucination.metrics.report import render_json, render_table
from src.entity_hallucination.metrics.schemas import ComparisonReport, MetricReport, RecordScores
from src.entity_hallucination.metrics.scoring import score_record
from src.entity_hallucination.pipeline.corpus_io import (
    AtomicJsonlWriter,
    CorpusLine,
    dumps,
    read_corpus,
    write_text_atomic,
)
from src.entity_hallucination.pipeline.runner import map_ordered
from src.entity_hallucination.textproc.stopwords import StopwordSet, load_stopwords
from src.entity_hallucination.utils.logger import logger
from src.entity_hallucination.utils.safety import (
    InvalidArgumentError,
    RecordError,
    SeparatorCollisionError,
    record_guard,
)
from src.entity_hallucination.utils.timer import ScopeTimer

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


# ============================================
# Shared Helpers
# ============================================

def _resources(config: RunConfig) -> tuple[StopwordSet, EntityExtractor]:
    stopwords = load_stopwords(config.stopwords_file())
    return stopwords, build_extractor(config.extractor.value, stopwords)


def _finish(config: RunConfig, errors: list[RecordError], processed: int) -> int:
    """Log the error tally and pick the exit code."""
    if errors:
        logger.warning(f"{len(errors)} of {processed} input records could not be processed")
        for error in errors:
            where = f"record '{error.record_id}'" if error.record_id else "record"
            print(f"line {error.line_number}: {where}: {error.message}", file=sys.stderr)
        if config.strict:
            return EXIT_DATA
    return EXIT_OK


def _distinct_errors(per_system: list[list[RecordError]]) -> list[RecordError]:
    """Errors of all systems in line order; an unreadable line is reported once."""
    seen: set[tuple[int, Optional[str], str]] = set()
    merged: list[RecordError] = []
    for errors in per_system:
        for error in errors:
            key = (error.line_number, error.record_id, error.message)
            if key not in seen:
                seen.add(key)
                merged.append(error)
    return sorted(merged, key=lambda error: error.line_number)


def _error_entry(error: RecordError) -> dict[str, Any]:
    return {"record_id": error.record_id, "line_number": error.line_number, "error": error.message}


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _guarded(worker):
    """Per-line worker: unreadable lines pass through as errors, the rest run guarded."""
    guarded = record_guard(worker)

    def run(line: CorpusLine):
        if not line.ok:
            return line.to_error()
        return guarded(line)

    return run


# ============================================
# score
# ============================================

async def cmd_score(config: RunConfig) -> int:
    """Score hypotheses and print the corpus report, one row per system."""
    stopwords, extractor = _resources(config)
    separator = config.separator if config.jaens_hypothesis else None

    def scorer(system: SystemSpec):
        def score_line(line: CorpusLine) -> RecordScores:
            assert line.record is not None
            return score_record(
                line.record, extractor, stopwords, config.policy, separator,
                hypothesis_field=system.field,
            )

        return _guarded(score_line)

    scorers = [scorer(system) for system in config.systems]
    per_record: list[list[RecordScores]] = [[] for _ in config.systems]
    system_errors: list[list[RecordError]] = [[] for _ in config.systems]
    processed = 0

    with ScopeTimer(f"Scoring {config.input_path.name}") as timer:
        async for _, results in map_ordered(
            read_corpus(config.input_path), lambda line: [score(line) for score in scorers], config.jobs
        ):
            processed += 1
            timer.tick()
            for index, result in enumerate(results):
                if isinstance(result, RecordError):
                    system_errors[index].append(result)
                else:
                    per_record[index].append(result)

    errors = _distinct_errors(system_errors)
    for system, scores in zip(config.systems, per_record):
        if not scores:
            where = f" for system '{system.label}'" if len(config.systems) > 1 else ""
            print(f"error: no scorable records in the input{where}", file=sys.stderr)
            _finish(config, errors, processed)
            return EXIT_DATA

    if len(config.systems) == 1:
        report: Union[MetricReport, ComparisonReport] = aggregate(
            per_record[0], config.policy, system_errors[0], meta=config.meta(), system=config.systems[0].label
        )
    else:
        report = ComparisonReport(
            meta=config.meta(),
            systems=[
                aggregate(scores, config.policy, errs, system=system.label)
                for system, scores, errs in zip(config.systems, per_record, system_errors)
            ],
        )

    if config.report_path is not None:
        write_text_atomic(config.report_path, render_json(report))

    if config.output_format == ReportFormat.JSON:
        _emit(render_json(report))
    else:
        _emit(render_table(report, config.count_modes()))

    logger.info(f"Scored {len(config.systems)} system(s) over {processed} records")
    return _finish(config, errors, processed)


# ============================================
# filter
# ============================================

async def cmd_filter(config: RunConfig) -> int:
    """Write the filtered corpus and one audit entry per input record."""
    stopwords, extractor = _resources(config)

    def filter_line(line: CorpusLine) -> tuple[CorpusRecord, FilterOutcome]:
        record = line.record
        assert record is not None
        if config.strategy == FilterStrategy.SENTENCE:
            return filter_sentences(record, extractor, stopwords, config.policy)
        outcome = filter_pairs(
            record, extractor, stopwords, config.policy,
            threshold=config.threshold, modes=config.count_modes(),
        )
        return record, outcome

    errors: list[RecordError] = []
    processed = kept = 0
    assert config.output_path is not None and config.resolved_audit_path is not None

    with ScopeTimer(f"Filtering {config.input_path.name} ({config.strategy.value})") as timer:
        with AtomicJsonlWriter(config.output_path, config.meta()) as out, \
                AtomicJsonlWriter(config.resolved_audit_path, config.meta()) as audit:
            async for _, result in map_ordered(read_corpus(config.input_path), _guarded(filter_line), config.jobs):
                processed += 1
                timer.tick()
                if isinstance(result, RecordError):
                    errors.append(result)
                    audit.write_entry(_error_entry(result))
                    continue
                record, outcome = result
                audit.write_entry(outcome.model_dump(mode="json"))
                if outcome.record_kept:
                    out.write_record(record)
                    kept += 1

    logger.info(f"Kept {kept}/{processed} records")
    return _finish(config, errors, processed)


# ============================================
# augment
# ============================================

async def cmd_augment(config: RunConfig) -> int:
    """Replace targets by serialized JAENS targets.

    Any separator collision aborts the run before the output appears.
    """
    _, extractor = _resources(config)

    def augment_line(line: CorpusLine) -> Union[CorpusRecord, SeparatorCollisionError]:
        assert line.record is not None
        try:
            return augment_record(line.record, extractor, config.separator)
        except SeparatorCollisionError as e:
            return e

    errors: list[RecordError] = []
    collisions: list[str] = []
    processed = 0
    assert config.output_path is not None

    with ScopeTimer(f"Augmenting {config.input_path.name}") as timer, \
            AtomicJsonlWriter(config.output_path, config.meta()) as out:
        async for _, result in map_ordered(read_corpus(config.input_path), _guarded(augment_line), config.jobs):
            processed += 1
            timer.tick()
            if isinstance(result, SeparatorCollisionError):
                collisions.extend(result.record_ids)
            elif isinstance(result, RecordError):
                errors.append(result)
            elif not collisions:
                out.write_record(result)
        if collisions:
            raise SeparatorCollisionError(config.separator, collisions)

    logger.info(f"Augmented {processed - len(errors)} records")
    return _finish(config, errors, processed)


# ============================================
# clean
# ============================================

async def cmd_clean(config: RunConfig) -> int:
    """Clean texts, apply presence and length checks, audit every record."""
    length = config.length

    def clean_line(line: CorpusLine) -> LengthOutcome:
        assert line.record is not None
        return enforce_length(
            clean_record(line.record, config.cleaning),
            max_source_tokens=length.max_source_tokens,
            max_target_tokens=length.max_target_tokens,
            min_target_tokens=length.min_target_tokens,
            action=length.action,
        )

    errors: list[RecordError] = []
    processed = kept = 0
    assert config.output_path is not None and config.resolved_audit_path is not None

    with ScopeTimer(f"Cleaning {config.input_path.name}") as timer:
        with AtomicJsonlWriter(config.output_path, config.meta()) as out, \
                AtomicJsonlWriter(config.resolved_audit_path, config.meta()) as audit:
            async for _, result in map_ordered(read_corpus(config.input_path), _guarded(clean_line), config.jobs):
                processed += 1
                timer.tick()
                if isinstance(result, RecordError):
                    errors.append(result)
                    audit.write_entry(_error_entry(result))
                    continue
                audit.write_entry(result.audit_entry())
                if result.record is not None:
                    out.write_record(result.record)
                    kept += 1

    logger.info(f"Kept {kept}/{processed} records after cleaning")
    return _finish(config, errors, processed)


# ============================================
# stats
# ============================================

async def cmd_stats(config: RunConfig) -> int:
    """Print corpus statistics."""
    _, extractor = _resources(config)

    def profile_line(line: CorpusLine) -> RecordProfile:
        assert line.record is not None
        return profile_record(line.record, extractor)

    profiles: list[RecordProfile] = []
    errors: list[RecordError] = []
    processed = 0
    with ScopeTimer(f"Profiling {config.input_path.name}") as timer:
        async for _, result in map_ordered(read_corpus(config.input_path), _guarded(profile_line), config.jobs):
            processed += 1
            timer.tick()
            if isinstance(result, RecordError):
                errors.append(result)
            else:
                profiles.append(result)

    try:
        stats = summarize_profiles(profiles)
    except InvalidArgumentError as e:
        print(f"error: {e.user_message}", file=sys.stderr)
        return EXIT_DATA

    payload = dumps({"meta": config.meta(), "stats": stats.model_dump(mode="json")})
    if config.report_path is not None:
        write_text_atomic(config.report_path, payload + "\n")
    _emit(payload + "\n" if config.output_format == ReportFormat.JSON else render_stats(stats))
    return _finish(config, errors, processed)


# ============================================
# extract
# ============================================

_EXTRACT_FIELDS: tuple[tuple[str, str], ...] = (
    ("source", "entities_source"),
    ("target", "entities_target"),
    ("hypothesis", "entities_hypothesis"),
)


def extract_entities(record: CorpusRecord, extractor: EntityExtractor) -> dict[str, Any]:
    """Entity summaries of every text field present in ``record``."""
    entities: dict[str, Any] = {}
    for text_field, annotation_field in _EXTRACT_FIELDS:
        text = getattr(record, text_field)
        if not text:
            continue
        annotations = record_annotations(extractor, record, annotation_field)
        entities[text_field] = extractor.extract(text, annotations).to_summary()
    return {"id": record.id, "entities": entities}


async def cmd_extract(config: RunConfig) -> int:
    """Write per-record entity lists."""
    _, extractor = _resources(config)

    def extract_line(line: CorpusLine) -> dict[str, Any]:
        assert line.record is not None
        return extract_entities(line.record, extractor)

    errors: list[RecordError] = []
    processed = 0
    assert config.output_path is not None

    with ScopeTimer(f"Extracting entities from {config.input_path.name}") as timer, \
            AtomicJsonlWriter(config.output_path, config.meta()) as out:
        async for _, result in map_ordered(read_corpus(config.input_path), _guarded(extract_line), config.jobs):
            processed += 1
            timer.tick()
            if isinstance(result, RecordError):
                errors.append(result)
            else:
                out.write_entry(result)

    return _finish(config, errors, processed)


COMMANDS = {
    "score": cmd_score,
    "filter": cmd_filter,
    "augment": cmd_augment,
    "clean": cmd_clean,
    "stats": cmd_stats,
    "extract": cmd_extract,
}


