"""Corpus statistics: sentence, token and entity counts of a training corpus."""
from typing import NamedTuple, Sequence

import numpy as np

from src.entity_hallucination.dataset.schemas import CorpusRecord, CorpusStats, Distribution
from src.entity_hallucination.entities.extractors import EntityExtractor, record_annotations
from src.entity_hallucination.entities.schemas import CountMode
from src.entity_hallucination.textproc.tokenizer import tokenize
from src.entity_hallucination.utils.safety import InvalidArgumentError


class RecordProfile(NamedTuple):
    """Per-record counts feeding ``corpus_stats``."""

    target_sentences: int
    source_tokens: int
    target_tokens: int
    target_entities_u: int
    target_entities_nu: int


def profile_record(record: CorpusRecord, extractor: EntityExtractor) -> RecordProfile:
    target = tokenize(record.target)
    entities = extractor.extract(record.target, record_annotations(extractor, record, "entities_target"))
    return RecordProfile(
        target_sentences=target.sentence_count,
        source_tokens=len(tokenize(record.source)),
        target_tokens=len(target),
        target_entities_u=entities.count(CountMode.U),
        target_entities_nu=entities.count(CountMode.NU),
    )


def _distribution(values: Sequence[int]) -> Distribution:
    data = np.asarray(values, dtype=float)
    q1, median, q3 = np.percentile(data, [25, 50, 75])
    return Distribution(
        mean=float(data.mean()),
        median=float(median),
        min=float(data.min()),
        max=float(data.max()),
        q1=float(q1),
        q3=float(q3),
    )


def summarize_profiles(profiles: Sequence[RecordProfile]) -> CorpusStats:
    """Fold per-record profiles into corpus statistics.

    Raises:
        InvalidArgumentError: if there are no profiles
    """
    if not profiles:
        raise InvalidArgumentError("cannot compute statistics of an empty corpus")

    columns = np.asarray(profiles, dtype=float)
    return CorpusStats(
        record_count=len(profiles),
        target_sentences=_distribution([p.target_sentences for p in profiles]),
        source_tokens_mean=float(columns[:, 1].mean()),
        target_tokens_mean=float(columns[:, 2].mean()),
        target_entities_u=_distribution([p.target_entities_u for p in profiles]),
        target_entities_nu=_distribution([p.target_entities_nu for p in profiles]),
    )


def corpus_stats(records: Sequence[CorpusRecord], extractor: EntityExtractor) -> CorpusStats:
    """Record count, sentences per target, mean token counts and target entity counts.

    Raises:
        InvalidArgumentError: if ``records`` is empty
    """
    return summarize_profiles([profile_record(record, extractor) for record in records])


def render_stats(stats: CorpusStats) -> str:
    """Plain-text rendering for the ``stats`` command."""
    def row(label: str, d: Distribution) -> str:
        return (
            f"{label:<24}mean {d.mean:.2f}  median {d.median:.2f}  "
            f"min {d.min:.0f}  max {d.max:.0f}  q1 {d.q1:.2f}  q3 {d.q3:.2f}"
        )

    lines = [
        f"{'records':<24}{stats.record_count}",
        row("target sentences", stats.target_sentences),
        f"{'source tokens':<24}mean {stats.source_tokens_mean:.2f}",
        f"{'target tokens':<24}mean {stats.target_tokens_mean:.2f}",
        row("target entities (U)", stats.target_entities_u),
        row("target entities (NU)", stats.target_entities_nu),
    ]
    return "\n".join(lines) + "\n"
